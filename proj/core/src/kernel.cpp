#include "bergman/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bergman/errors.hpp"
#include "bergman/specialfn.hpp"

namespace bergman {

namespace {

constexpr double kSeriesTol = 1e-17;
constexpr double kCircleTol = 1e-14;
constexpr long kMaxTerms = 100000;

bool is_nonnegative_integer(double x) { return x >= 0.0 && std::floor(x) == x; }

// Sums G^{(j)} for j = 0..order at a real point in one pass over the coefficients.
template <int Order>
std::array<double, Order + 1> g_series_jet(const Params& p, double t) {
  std::array<double, Order + 1> acc{};
  acc[0] = 1.0;
  if (p.beta == 0.0) return acc;
  std::array<double, Order + 1> pw{};  // pw[j] = t^{n-j} once n >= j
  pw[0] = 1.0;
  double poch = 1.0;  // (-alpha-1)_n / n!
  int small = 0;
  for (long n = 1; n < kMaxTerms; ++n) {
    for (int j = 0; j <= Order && j < n; ++j) pw[j] *= t;
    if (n <= Order) pw[n] = 1.0;
    poch *= (n - 2.0 - p.alpha) / static_cast<double>(n);
    const double c = p.beta / (n + p.beta) * poch;
    double falling = 1.0;
    bool all_small = true;
    for (int j = 0; j <= Order && j <= n; ++j) {
      const double term = c * falling * pw[j];
      acc[j] += term;
      if (std::abs(term) >= kSeriesTol * (1.0 + std::abs(acc[j]))) all_small = false;
      falling *= static_cast<double>(n - j);
    }
    if (all_small && n > Order) {
      if (++small == 3) return acc;
    } else {
      small = 0;
    }
  }
  throw NonConvergent("G series: term budget exhausted");
}

}  // namespace

Reduction reduce(double beta) {
  if (!(beta > -1.0)) throw DomainError("beta must exceed -1");
  if (beta <= 0.0) return {beta, 0};
  const int s = static_cast<int>(std::ceil(beta));
  return {beta - s, s};
}

Params Params::make(double alpha, double beta) {
  if (!(alpha > -1.0)) throw DomainError("alpha must exceed -1");
  const Reduction r = reduce(beta);
  Params p;
  p.alpha = alpha;
  p.beta = beta;
  p.beta0 = r.beta0;
  p.s = r.s;
  return p;
}

GSeries::GSeries(const Params& params) : params_(params) {}

double GSeries::coefficient(int n) const {
  if (n < 0) return 0.0;
  if (n == 0) return 1.0;
  const double a = params_.alpha, b = params_.beta;
  double poch = 1.0;
  for (int k = 0; k < n; ++k) poch *= (k - a - 1.0) / static_cast<double>(k + 1);
  return b / (n + b) * poch;
}

bool GSeries::terminating() const {
  return params_.beta == 0.0 || is_nonnegative_integer(params_.alpha);
}

std::complex<double> g_eval(const Params& p, std::complex<double> xi) {
  const double r = std::abs(xi);
  if (r > 1.0 + 1e-15) throw DomainError("g_eval: |xi| > 1");
  if (p.beta == 0.0) return 1.0;
  if (xi == std::complex<double>(1.0, 0.0)) return (p.alpha + 1.0) * beta_fn(p.alpha + 1.0, p.beta + 1.0);
  const bool on_circle = r >= 1.0 - 1e-15;
  if (on_circle && !(p.alpha > 0.0) && !is_nonnegative_integer(p.alpha))
    throw NonConvergent("g_eval: series on the unit circle requires alpha > 0");
  const double tol = on_circle ? kCircleTol : kSeriesTol;
  std::complex<double> sum = 1.0, pw = 1.0;
  double poch = 1.0;
  int small = 0;
  for (long n = 1; n < kMaxTerms; ++n) {
    poch *= (n - 1 - p.alpha - 1.0) / static_cast<double>(n);
    pw *= xi;
    const std::complex<double> term = p.beta / (n + p.beta) * poch * pw;
    sum += term;
    if (std::abs(term) < tol * (1.0 + std::abs(sum))) {
      if (++small == 3) return sum;
    } else {
      small = 0;
    }
  }
  throw NonConvergent("g_eval: term budget exhausted");
}

double g_eval(const Params& p, double t) {
  if (t == 1.0) return (p.alpha + 1.0) * beta_fn(p.alpha + 1.0, p.beta + 1.0);
  return g_eval(p, std::complex<double>(t, 0.0)).real();
}

double g_derivative_series(const Params& p, double t) {
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("g_derivative: t must lie in [0, 1)");
  return g_series_jet<1>(p, t)[1];
}

double g_derivative(const Params& p, double t) {
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("g_derivative: t must lie in [0, 1)");
  if (p.beta == 0.0) return 0.0;
  if (t == 0.0) return -p.beta * (p.alpha + 1.0) / (p.beta + 1.0);
  if (t < 0.125) return g_series_jet<1>(p, t)[1];
  return p.beta * (std::pow(1.0 - t, p.alpha + 1.0) - g_eval(p, t)) / t;
}

std::complex<double> g_derivative(const Params& p, std::complex<double> xi) {
  if (!(std::abs(xi) < 1.0)) throw DomainError("g_derivative: |xi| must be < 1");
  if (p.beta == 0.0) return 0.0;
  std::complex<double> sum = 0.0, pw = 1.0;  // pw = xi^{n-1}
  double poch = 1.0;
  int small = 0;
  for (long n = 1; n < kMaxTerms; ++n) {
    poch *= (n - 1 - p.alpha - 1.0) / static_cast<double>(n);
    const std::complex<double> term = p.beta / (n + p.beta) * poch * static_cast<double>(n) * pw;
    sum += term;
    pw *= xi;
    if (std::abs(term) < kSeriesTol * (1.0 + std::abs(sum))) {
      if (++small == 3 && n > 2) return sum;
    } else {
      small = 0;
    }
  }
  throw NonConvergent("g_derivative: term budget exhausted");
}

std::array<double, 5> g_jet(const Params& p, double t) {
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("g_jet: t must lie in [0, 1)");
  return g_series_jet<4>(p, t);
}

std::complex<double> kernel_eval(const Params& p, std::complex<double> xi) {
  if (!(std::abs(xi) < 1.0)) throw DomainError("kernel_eval: |xi| must be < 1");
  if (p.s >= 1 && xi == 0.0) throw SingularArgument("kernel_eval: pole at 0 for beta > 0");
  const Params red = p.reduced();
  std::complex<double> v = g_eval(red, xi) * std::pow(1.0 - xi, -(p.alpha + 2.0));
  if (p.s >= 1) {
    v *= pochhammer(p.beta0 + 1.0, p.s) / pochhammer(p.alpha + p.beta0 + 2.0, p.s);
    v *= std::pow(xi, -p.s);
  }
  return v;
}

std::complex<double> kernel_eval_hypergeometric(const Params& p, std::complex<double> xi) {
  if (!(std::abs(xi) < 1.0)) throw DomainError("kernel_eval: |xi| must be < 1");
  if (p.s >= 1 && xi == 0.0) throw SingularArgument("kernel_eval: pole at 0 for beta > 0");
  std::complex<double> v =
      pfq({1.0, p.alpha + p.beta0 + 2.0}, {p.beta0 + 1.0}, xi, 1e-16, 1000000);
  if (p.s >= 1) {
    v *= pochhammer(p.beta0 + 1.0, p.s) / pochhammer(p.alpha + p.beta0 + 2.0, p.s);
    v *= std::pow(xi, -p.s);
  }
  return v;
}

std::complex<double> kernel_derivative(const Params& p, std::complex<double> xi) {
  if (p.s != 0) throw DomainError("kernel_derivative: reduce beta first");
  if (!(std::abs(xi) < 1.0)) throw DomainError("kernel_derivative: |xi| must be < 1");
  const std::complex<double> om = 1.0 - xi;
  const std::complex<double> base = std::pow(om, -(p.alpha + 2.0));
  return g_derivative(p, xi) * base + (p.alpha + 2.0) * g_eval(p, xi) * base / om;
}

KernelDerivatives kernel_derivatives(const Params& p, double t) {
  if (p.s != 0) throw DomainError("kernel_derivatives: reduce beta first");
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("kernel_derivatives: t must lie in [0, 1)");
  const double A = p.alpha + p.beta + 2.0, B = p.beta + 1.0;
  KernelDerivatives d{1.0, 0.0, 0.0};
  if (t == 0.0) {
    d.K1 = A / B;
    d.K2 = 2.0 * A * (A + 1.0) / (B * (B + 1.0));
    return d;
  }
  double an = 1.0;   // a_n
  double pw = 1.0;   // t^{n-2}
  int small = 0;
  for (long n = 1; n < 10 * kMaxTerms; ++n) {
    an *= (A + n - 1) / (B + n - 1);
    if (n >= 3) pw *= t;
    const double t2 = n >= 2 ? an * n * (n - 1.0) * pw : 0.0;
    const double t1 = n >= 2 ? an * n * pw * t : an;
    const double t0 = n >= 2 ? an * pw * t * t : an * t;
    d.K += t0;
    d.K1 += t1;
    d.K2 += t2;
    const bool decaying = (A + n) / (B + n) * t < 1.0;
    if (decaying && t2 < kSeriesTol * d.K2 && t1 < kSeriesTol * d.K1 && t0 < kSeriesTol * d.K) {
      if (++small == 3) return d;
    } else {
      small = 0;
    }
  }
  throw NonConvergent("kernel_derivatives: term budget exhausted");
}

std::array<double, 5> log_kernel_jet(const Params& p, double t, int order) {
  if (p.s != 0) throw DomainError("log_kernel_jet: reduce beta first");
  if (order < 0 || order > 4) throw DomainError("log_kernel_jet: order must lie in 0..4");
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("log_kernel_jet: t must lie in [0, 1)");
  std::array<double, 5> G{};
  if (order <= 2) {
    const auto g = g_series_jet<2>(p, t);
    std::copy(g.begin(), g.end(), G.begin());
  } else {
    G = g_series_jet<4>(p, t);
  }
  const double r1 = G[1] / G[0], r2 = G[2] / G[0], r3 = G[3] / G[0], r4 = G[4] / G[0];
  std::array<double, 5> L{};
  L[0] = std::log(G[0]);
  L[1] = r1;
  L[2] = r2 - r1 * r1;
  if (order >= 3) L[3] = r3 - 3.0 * r1 * r2 + 2.0 * r1 * r1 * r1;
  if (order >= 4) L[4] = r4 - 4.0 * r3 * r1 - 3.0 * r2 * r2 + 12.0 * r2 * r1 * r1 - 6.0 * r1 * r1 * r1 * r1;
  const double c = p.alpha + 2.0, om = 1.0 - t;
  L[0] -= c * std::log(om);
  double fact = 1.0, pw = 1.0;
  for (int k = 1; k <= order; ++k) {
    pw *= om;
    L[k] += c * fact / pw;
    fact *= k;
  }
  for (int k = order + 1; k <= 4; ++k) L[k] = 0.0;
  return L;
}

double kernel_angular_moment(const Params& p, int k, double x) {
  if (p.s != 0) throw DomainError("kernel_angular_moment: reduce beta first");
  if (k < 0) throw DomainError("kernel_angular_moment: k must be non-negative");
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("kernel_angular_moment: x must lie in [0, 1)");
  const double A = p.alpha + p.beta + 2.0, B = p.beta + 1.0;
  double term = 1.0;
  for (int j = 0; j < k; ++j) term *= (A + j) / (B + j);
  double sum = term;
  if (x == 0.0) return sum;
  int small = 0;
  for (long m = 0; m < 10 * kMaxTerms; ++m) {
    const double ratio = (A + m) * (A + m + k) / ((B + m) * (B + m + k)) * x;
    term *= ratio;
    sum += term;
    if (ratio < 1.0 && term < kSeriesTol * sum) {
      if (++small == 3) return sum;
    } else {
      small = 0;
    }
  }
  throw NonConvergent("kernel_angular_moment: term budget exhausted");
}

}  // namespace bergman
