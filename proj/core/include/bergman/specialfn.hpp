#pragma once

#include <complex>
#include <vector>

namespace bergman {

/// Rising factorial (a)_n = a(a+1)...(a+n-1); the empty product is 1.
double pochhammer(double a, unsigned n);

/// log|Gamma(x)|; x must not be a non-positive integer.
double log_gamma(double x);

/// Gamma(x), including negative non-integer arguments.
double gamma_fn(double x);

/// log B(a, b) for a, b > 0.
double log_beta(double a, double b);

/// Euler Beta function B(a, b) = Gamma(a)Gamma(b)/Gamma(a+b), computed in log space.
/// Throws DomainError unless a > 0 and b > 0.
double beta_fn(double a, double b);

double digamma(double x);
double trigamma(double x);

/// Parameters of a generalized hypergeometric series pFq(a; b | z).
struct HypergeometricSpec {
  std::vector<double> numerator_params;
  std::vector<double> denominator_params;
  std::complex<double> argument{0.0, 0.0};
  double tolerance = 1e-14;
  long max_terms = 100000;
};

/// Sums pFq term by term. Summation stops once three consecutive terms satisfy
/// |term| < tol * (1 + |partial sum|).
///
/// The argument must satisfy |z| <= 1. On the unit circle a non-terminating
/// series with p = q + 1 is accepted only when sum(b) - sum(a) - 1 > 0, so that
/// the terms decay summably; p > q + 1 converges only when it terminates.
///
/// Throws DomainError for non-positive integer denominators, a non-positive
/// tolerance or |z| > 1, and NonConvergent when the term budget runs out.
std::complex<double> pfq(const HypergeometricSpec& spec);

/// Convenience wrapper for real parameters and argument.
std::complex<double> pfq(std::vector<double> numerator, std::vector<double> denominator,
                         std::complex<double> argument, double tolerance = 1e-14,
                         long max_terms = 100000);

}  // namespace bergman
