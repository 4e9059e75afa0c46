#pragma once

#include <complex>
#include <vector>

#include "bergman/diskquad.hpp"
#include "bergman/kernel.hpp"

namespace bergman {

struct BerezinOptions {
  int radial_order = 80;
  int angular_count = 256;
  double tolerance = 1e-12;
  /// Points with |z| above this are rejected with QuadratureAccuracyError.
  double max_radius = 0.99;
};

/// Reduced parameters plus the quadrature rule for mu_{alpha,beta0}.
/// The transform for beta equals the one for beta0, so the context always
/// stores the reduced pair.
class BerezinContext {
 public:
  static BerezinContext make(double alpha, double beta, const BerezinOptions& options = {});

  /// Reduced parameters (s = 0).
  const Params& params() const { return params_; }
  /// The parameters the context was requested for.
  const Params& requested() const { return requested_; }
  const QuadratureRule& rule() const { return rule_; }
  const BerezinOptions& options() const { return options_; }

 private:
  Params params_;
  Params requested_;
  QuadratureRule rule_;
  BerezinOptions options_;
};

/// The Berezin transform at z. Modal test functions are integrated mode by mode:
/// the angular integral of |K(z conj w)|^2 is summed in closed form, leaving a
/// one-dimensional Gauss-Jacobi integral per mode. Callable functions use the
/// tensor rule.
std::complex<double> berezin_apply(const BerezinContext& ctx, const TestFunction& f, std::complex<double> z);

/// The Berezin transform by direct tensor-rule summation of f |K(z conj w)|^2 / K(|z|^2).
std::complex<double> berezin_apply_grid(const BerezinContext& ctx, const TestFunction& f,
                                        std::complex<double> z);

/// The Berezin transform rebuilt from moments of f:
/// (1/K(|z|^2)) sum_{n,k <= max_degree} a_n a_k z^n conj(z)^k moment(f, n, k).
std::complex<double> berezin_from_moments(const BerezinContext& ctx, const TestFunction& f,
                                          std::complex<double> z, int max_degree);

/// Adjoint of the transform with respect to the pairing of L^2(mu_{a,b}) at w.
/// Throws SingularArgument at w = 0 when beta < b.
std::complex<double> berezin_adjoint_apply(const BerezinContext& ctx, const TestFunction& g,
                                           std::complex<double> w, double a, double b);

/// sqrt(B(|f|^2)(z) - |B f(z)|^2), with small negative round-off clamped to zero.
double mean_oscillation(const BerezinContext& ctx, const TestFunction& f, std::complex<double> z);

/// Largest mean oscillation over the grid; a lower bound for the BMO norm.
double bmo_norm(const BerezinContext& ctx, const TestFunction& f,
                const std::vector<std::complex<double>>& grid);

/// Polar grid with radii 0.05, 0.10, ..., 0.95 and `angles` equally spaced angles.
std::vector<std::complex<double>> default_bmo_grid(int angles = 32);

/// |B f(r xi) - f(xi)| for each r. xi must lie on the unit circle.
std::vector<double> boundary_limit_check(const BerezinContext& ctx, const TestFunction& f,
                                         std::complex<double> xi, const std::vector<double>& radii);

}  // namespace bergman
