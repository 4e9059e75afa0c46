#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bergman/berezin.hpp"
#include "bergman/diskquad.hpp"
#include "bergman/kernel.hpp"

namespace bergman {

/// Piecewise-linear curve through points of the open disk.
class PathPolyline {
 public:
  /// Throws DomainError unless there are at least two points, all strictly
  /// inside the disk, with consecutive points distinct.
  static PathPolyline make(std::vector<std::complex<double>> points);

  const std::vector<std::complex<double>>& points() const { return points_; }
  std::size_t segments() const { return points_.empty() ? 0 : points_.size() - 1; }
  PathPolyline reversed() const;
  /// Keeps every k-th vertex (and the last one) so that at most max_segments remain.
  PathPolyline coarsened(std::size_t max_segments) const;

 private:
  std::vector<std::complex<double>> points_;
};

/// rho^2 = (log K)' + t (log K)'' at t = |z|^2 together with its first two
/// t-derivatives. The density does not depend on s, so params are reduced first.
struct DensityJet {
  double F;
  double F1;
  double F2;
};
DensityJet density_jet(const Params& params, double t);

/// The Bergman-Poincare density at z.
double rho(const Params& params, std::complex<double> z);

/// Sum over segments of Gauss-Legendre quadrature of rho |dz|.
double path_length(const Params& params, const PathPolyline& path, int samples_per_segment = 16);

/// Length of the radial segment between radii r0 and r1 on one ray.
double radial_distance(const Params& params, double r0, double r1);

struct GeodesicOptions {
  /// Total Newton iterations allowed across all refinement levels.
  int budget = 2000;
  double relative_tolerance = 1e-8;
  int min_segments = 8;
  int max_segments = 8192;
  int nodes_per_segment = 4;
};

struct GeodesicResult {
  /// Length of the returned path; an upper bound for the distance.
  double distance = 0.0;
  PathPolyline path;
  int iterations = 0;
  int segments = 0;
  /// True when the pair lies on a line through 0 and the exact 1-D integral was used.
  bool radial = false;
  /// False when max_segments was reached before the relative tolerance.
  bool converged = true;
};

/// Carries the best upper bound found when the iteration budget runs out.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted(double best, PathPolyline path)
      : std::runtime_error("geodesic optimizer budget exhausted"), best_(best), path_(std::move(path)) {}
  double best() const { return best_; }
  const PathPolyline& path() const { return path_; }

 private:
  double best_;
  PathPolyline path_;
};

/// Distance as the infimum of path lengths, approximated from above. Pairs on a
/// line through the origin use the exact radial integral. Otherwise the path is
/// a polyline over the chord whose vertices move along the chord normal; the
/// length is minimized by damped Newton steps with analytic segment derivatives,
/// and the segment count is doubled until the relative change drops below the
/// tolerance.
GeodesicResult geodesic_distance(const Params& params, std::complex<double> z, std::complex<double> w,
                                 const GeodesicOptions& options = {});

/// The unit-norm kernel section at center: phi(z) = K(z conj(center)) / sqrt(K(|center|^2)).
struct CoherentState {
  std::complex<double> center;
  Params params;
};
std::complex<double> coherent_state_eval(const CoherentState& state, std::complex<double> z);

/// Rank-one projection onto the coherent state: phi(z) <f, phi>, the inner product by the rule.
std::complex<double> coherent_projection(const CoherentState& state, const TestFunction& f,
                                         std::complex<double> z, const QuadratureRule& rule);

struct ProjectionIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
  double norm_a_sq = 0.0;
  double norm_d_sq = 0.0;
  /// Re <A, D>; equals norm_d_sq.
  double inner_ad = 0.0;
  /// |gamma'|^2 / K(|gamma|^2) (A/B) 3F2(2, 2, A+1; 1, B+1 | |gamma|^2).
  double norm_a_sq_closed = 0.0;
};

/// Compares ||(I - P) d/dt phi_gamma|| with |gamma'| rho(gamma), computing the norms of
/// the two parts of the derivative of the coherent state by the tensor rule.
ProjectionIdentity projection_norm_identity_check(const Params& params, std::complex<double> gamma,
                                                  std::complex<double> velocity, const QuadratureRule& rule);

struct LipschitzOptions {
  /// Use this BMO value instead of computing it on the default grid.
  std::optional<double> bmo;
  GeodesicOptions geodesic;
  /// The certificate integral runs over the optimized path coarsened to this many segments.
  std::size_t certificate_segments = 64;
  int certificate_nodes = 8;
};

struct LipschitzReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double bmo = 0.0;
  double distance = 0.0;
  /// 2 * integral of MO(f) rho |dz| along the path.
  double path_certificate = 0.0;
  /// 2 * max MO(f) along the path * path length.
  double path_certificate_max = 0.0;
};

LipschitzReport lipschitz_check(const BerezinContext& ctx, const Params& params, const TestFunction& f,
                                std::complex<double> z, std::complex<double> w, const LipschitzOptions& options = {});

struct DerivativeSample {
  /// Global curve parameter in [0, 1].
  double t;
  double lhs;
  double rhs;
};

/// Along gamma(t) traversing the polyline at constant speed per segment (scaled by
/// `speed`), compares |d/dt B f(gamma(t))| by central differences with Richardson
/// extrapolation against 2 MO(f)(gamma) |gamma'| rho(gamma).
std::vector<DerivativeSample> derivative_bound_check(const BerezinContext& ctx, const Params& params,
                                                     const TestFunction& f, const PathPolyline& path,
                                                     int samples_per_segment = 3, double speed = 1.0);

}  // namespace bergman
