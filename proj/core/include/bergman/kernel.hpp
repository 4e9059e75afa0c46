#pragma once

#include <array>
#include <complex>

namespace bergman {

/// Splits beta > -1 as beta0 + s with s the least natural number >= beta.
struct Reduction {
  double beta0;
  int s;
};

/// Throws DomainError unless beta > -1.
Reduction reduce(double beta);

/// Weight parameters (alpha, beta) with the derived pair (beta0, s).
struct Params {
  double alpha = 0.0;
  double beta = 0.0;
  double beta0 = 0.0;
  int s = 0;

  /// Validates alpha > -1, beta > -1 and fills in beta0, s.
  static Params make(double alpha, double beta);

  /// The same alpha with beta replaced by beta0.
  Params reduced() const { return make(alpha, beta0); }
};

/// Coefficients c_n = beta/(n+beta) * (-alpha-1)_n / n! of G_{alpha,beta}.
/// G is defined directly from (alpha, beta); beta0 plays no role here.
class GSeries {
 public:
  explicit GSeries(const Params& params);

  /// c_n, generated by the recurrence on (-alpha-1)_n / n!.
  double coefficient(int n) const;

  /// True when every coefficient past some index vanishes.
  bool terminating() const;

  const Params& params() const { return params_; }

 private:
  Params params_;
};

/// G_{alpha,beta}(xi) for |xi| <= 1. On |xi| = 1 the series is summed only when
/// alpha > 0; xi = 1 itself uses (alpha+1) B(alpha+1, beta+1).
std::complex<double> g_eval(const Params& params, std::complex<double> xi);
double g_eval(const Params& params, double t);

/// G'(t) on [0, 1). Uses t G' = beta((1-t)^{alpha+1} - G) where that quotient is
/// well conditioned and the termwise series near 0.
double g_derivative(const Params& params, double t);

/// G'(t) from the termwise differentiated series.
double g_derivative_series(const Params& params, double t);

/// G'(xi) for complex |xi| < 1, termwise.
std::complex<double> g_derivative(const Params& params, std::complex<double> xi);

/// G and its first four derivatives at t in [0, 1), termwise.
std::array<double, 5> g_jet(const Params& params, double t);

/// The kernel K_{alpha,beta}(xi), evaluated as
/// (beta0+1)_s/(alpha+beta0+2)_s * xi^{-s} * G_{alpha,beta0}(xi) / (1-xi)^{alpha+2}.
/// Throws DomainError if |xi| >= 1 and SingularArgument at xi = 0 when s >= 1.
std::complex<double> kernel_eval(const Params& params, std::complex<double> xi);

/// Same value through the raw 2F1(1, alpha+beta0+2; beta0+1 | xi) series.
/// Slow near the boundary; meant as a cross-check for |xi| <= 0.9.
std::complex<double> kernel_eval_hypergeometric(const Params& params, std::complex<double> xi);

/// d/dxi K(xi) for s = 0, through G and G'.
std::complex<double> kernel_derivative(const Params& params, std::complex<double> xi);

struct KernelDerivatives {
  double K;
  double K1;
  double K2;
};

/// K, K', K'' at real t in [0, 1) from the power series sum (A)_n/(B)_n t^n with
/// A = alpha+beta+2, B = beta+1. Requires s = 0.
KernelDerivatives kernel_derivatives(const Params& params, double t);

/// Derivatives of log K(t) of orders 1 through `order` (at most 4), computed from
/// the G jet; higher entries are left at zero. Requires s = 0. Index 0 holds log K(t).
std::array<double, 5> log_kernel_jet(const Params& params, double t, int order = 4);

/// S_k(x) = sum_m a_m a_{m+k} x^m with a_n = (A)_n/(B)_n and x in [0, 1).
/// The circle mean of |K(r e^{i psi})|^2 e^{-i k psi} equals r^k S_k(r^2).
/// Requires s = 0 and k >= 0.
double kernel_angular_moment(const Params& params, int k, double x);

}  // namespace bergman
