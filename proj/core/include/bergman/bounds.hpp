#pragma once

#include <complex>
#include <vector>

#include "bergman/berezin.hpp"
#include "bergman/diskquad.hpp"
#include "bergman/kernel.hpp"

namespace bergman {

/// Exponents and weights for the L^p(mu_{a,b}) boundedness question.
struct LpSetting {
  double alpha = 0.0;
  double beta = 0.0;
  double a = 0.0;
  double b = 0.0;
  double p = 2.0;
  /// Conjugate exponent; +infinity when p = 1.
  double q = 2.0;

  /// Throws DomainError unless alpha, a, b > -1, beta in (-1, 0] and p >= 1.
  static LpSetting make(double alpha, double beta, double a, double b, double p);
};

struct AsymptoticClass {
  enum class Kind { Bounded, Logarithmic, Power };
  Kind kind = Kind::Bounded;
  /// alpha - d in the Power case, 0 otherwise.
  double exponent = 0.0;
};

/// I_{c,d}(w) = integral of |K(z conj w)|^2 / K(|z|^2) |z|^{2c} (1-|z|^2)^d dA(z), with dA
/// the normalized area measure. Writing 1/K(t) = (1-t)^{alpha+2}/G(t) turns it into
/// B(c+1, alpha+d+3) times a Jacobi average of S_0(|w|^2 t)/G(t).
/// Requires reduced parameters.
double icd_numeric(double c, double d, std::complex<double> w, const Params& params, const QuadratureRule& rule);

/// J_{c,d}(w) = B(c+1, alpha+d+3) 4F3(1, A, A, c+1; B, B, alpha+c+d+4 | |w|^2).
double jcd_closed(double c, double d, std::complex<double> w, const Params& params);

/// The integral defining J_{c,d} evaluated by Jacobi quadrature of S_0(|w|^2 t).
double jcd_numeric(double c, double d, std::complex<double> w, const Params& params, int radial_order = 80);

/// Growth of I_{c,d}(w) as |w| -> 1. Equality alpha = d is tested with absolute tolerance 1e-12.
AsymptoticClass classify_asymptotic(double alpha, double d);

/// The predicate from the boundedness theorem:
/// p(alpha+1) > a+1 and (b <= beta if p = 1, b < p(beta+1) - 1 if p > 1).
bool bounded_predicate(const LpSetting& setting);

/// Whether both open Schur-test intervals are non-empty. Requires p > 1.
bool schur_intervals_nonempty(const LpSetting& setting);

struct ProbeOptions {
  std::vector<double> radius_ladder{0.5, 0.7, 0.8, 0.9, 0.95, 0.99};
  int radial_nodes = 24;
  int angular_nodes = 8;
};

struct ProbeResult {
  /// max over the sample of ||B f||_p / ||f||_p on the largest disk of the ladder.
  double ratio = 0.0;
  /// The same maximum on each disk |z| <= R of the ladder.
  std::vector<double> ladder_ratios;
  /// Least-squares slope of log ratio against log 1/(1-R^2); near 0 when bounded.
  double growth_exponent = 0.0;
  /// For p = 1: B*1 evaluated at |w| = R for each R of the ladder.
  std::vector<double> adjoint_values;
};

/// Ratios of truncated L^p(mu_{a,b}) norms ||B f|| / ||f|| over the sample,
/// integrating over |z| <= R for each R in the ladder. Only a lower bound for
/// the operator norm; growth along the ladder is reported, never asserted.
ProbeResult empirical_bound_probe(const LpSetting& setting, const BerezinContext& ctx,
                                  const std::vector<TestFunction>& sample, const ProbeOptions& options = {});

}  // namespace bergman
