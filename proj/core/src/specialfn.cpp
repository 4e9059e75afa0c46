#include "bergman/specialfn.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

bool is_nonpositive_integer(double x) { return x <= 0.0 && std::floor(x) == x; }

}  // namespace

double pochhammer(double a, unsigned n) {
  double r = 1.0;
  for (unsigned k = 0; k < n; ++k) r *= a + k;
  return r;
}

double log_gamma(double x) {
  if (is_nonpositive_integer(x)) throw DomainError("log_gamma: pole at " + std::to_string(x));
  return boost::math::lgamma(x);
}

double gamma_fn(double x) {
  if (is_nonpositive_integer(x)) throw DomainError("gamma_fn: pole at " + std::to_string(x));
  return boost::math::tgamma(x);
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta: arguments must be positive");
  return boost::math::lgamma(a) + boost::math::lgamma(b) - boost::math::lgamma(a + b);
}

double beta_fn(double a, double b) { return std::exp(log_beta(a, b)); }

double digamma(double x) {
  if (is_nonpositive_integer(x)) throw DomainError("digamma: pole");
  return boost::math::digamma(x);
}

double trigamma(double x) {
  if (is_nonpositive_integer(x)) throw DomainError("trigamma: pole");
  return boost::math::trigamma(x);
}

std::complex<double> pfq(const HypergeometricSpec& spec) {
  const auto& a = spec.numerator_params;
  const auto& b = spec.denominator_params;
  const std::complex<double> z = spec.argument;
  if (!(spec.tolerance > 0.0)) throw DomainError("pfq: tolerance must be positive");
  if (spec.max_terms < 1) throw DomainError("pfq: max_terms must be positive");
  for (double bj : b)
    if (is_nonpositive_integer(bj)) throw DomainError("pfq: non-positive integer denominator parameter");

  bool terminating = false;
  for (double ai : a)
    if (is_nonpositive_integer(ai)) terminating = true;

  const double az = std::abs(z);
  if (!terminating && z != 0.0) {
    if (az > 1.0 + 1e-15) throw DomainError("pfq: |argument| > 1");
    const std::size_t p = a.size(), q = b.size();
    if (p > q + 1) throw NonConvergent("pfq: p > q + 1 series diverges");
    if (p == q + 1 && az >= 1.0 - 1e-15) {
      const double excess = std::accumulate(b.begin(), b.end(), 0.0) -
                            std::accumulate(a.begin(), a.end(), 0.0) - 1.0;
      if (!(excess > 0.0))
        throw NonConvergent("pfq: terms not summable on the unit circle");
    }
  }

  std::complex<double> sum = 1.0, term = 1.0;
  int small = 0;
  for (long n = 0; n < spec.max_terms; ++n) {
    double ratio = 1.0 / static_cast<double>(n + 1);
    for (double ai : a) ratio *= ai + n;
    for (double bj : b) ratio /= bj + n;
    term *= ratio * z;
    sum += term;
    if (std::abs(term) < spec.tolerance * (1.0 + std::abs(sum))) {
      if (++small == 3) return sum;
    } else {
      small = 0;
    }
  }
  throw NonConvergent("pfq: max_terms reached");
}

std::complex<double> pfq(std::vector<double> numerator, std::vector<double> denominator,
                         std::complex<double> argument, double tolerance, long max_terms) {
  HypergeometricSpec spec;
  spec.numerator_params = std::move(numerator);
  spec.denominator_params = std::move(denominator);
  spec.argument = argument;
  spec.tolerance = tolerance;
  spec.max_terms = max_terms;
  return pfq(spec);
}

}  // namespace bergman
