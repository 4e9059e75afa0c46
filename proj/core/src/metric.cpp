#include "bergman/metric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bergman/errors.hpp"
#include "bergman/specialfn.hpp"

namespace bergman {

namespace {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<double, 4>;  // row-major

double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
double quad_form(const Vec2& n, const Mat2& H) {
  return n[0] * (H[0] * n[0] + H[1] * n[1]) + n[1] * (H[2] * n[0] + H[3] * n[1]);
}

struct DensityEval {
  double P;
  Vec2 grad;
  Mat2 hess;
};

DensityEval density_eval(const Params& red, const Vec2& x) {
  const double t = x[0] * x[0] + x[1] * x[1];
  const DensityJet j = density_jet(red, t);
  if (!(j.F > 0.0)) throw QuadratureAccuracyError("density vanished along the path");
  DensityEval e;
  e.P = std::sqrt(j.F);
  const double g = j.F1 / e.P;
  e.grad = {g * x[0], g * x[1]};
  const double c = 2.0 * j.F2 / e.P - j.F1 * j.F1 / (e.P * e.P * e.P);
  e.hess = {g + c * x[0] * x[0], c * x[0] * x[1], c * x[0] * x[1], g + c * x[1] * x[1]};
  return e;
}

struct SegmentTerms {
  double length;
  Vec2 gp, gq;
  Mat2 hpp, hpq, hqq;
};

// Length of the segment p -> q and its derivatives with respect to both ends.
SegmentTerms segment_terms(const Params& red, const Vec2& p, const Vec2& q, const JacobiRule& gl) {
  const Vec2 d{q[0] - p[0], q[1] - p[1]};
  const double u = std::sqrt(dot(d, d));
  const Vec2 e{d[0] / u, d[1] / u};
  double I0 = 0.0;
  Vec2 I1p{0, 0}, I1q{0, 0};
  Mat2 Hpp{0, 0, 0, 0}, Hpq{0, 0, 0, 0}, Hqq{0, 0, 0, 0};
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double s = gl.nodes[i], w = gl.weights[i];
    const DensityEval ev = density_eval(red, {p[0] + s * d[0], p[1] + s * d[1]});
    I0 += w * ev.P;
    for (int k = 0; k < 2; ++k) {
      I1p[k] += w * (1.0 - s) * ev.grad[k];
      I1q[k] += w * s * ev.grad[k];
    }
    for (int k = 0; k < 4; ++k) {
      Hpp[k] += w * (1.0 - s) * (1.0 - s) * ev.hess[k];
      Hpq[k] += w * s * (1.0 - s) * ev.hess[k];
      Hqq[k] += w * s * s * ev.hess[k];
    }
  }
  SegmentTerms st;
  st.length = u * I0;
  for (int k = 0; k < 2; ++k) {
    st.gp[k] = -e[k] * I0 + u * I1p[k];
    st.gq[k] = e[k] * I0 + u * I1q[k];
  }
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const double proj = ((r == c) ? 1.0 : 0.0) - e[r] * e[c];
      const int k = 2 * r + c;
      st.hpp[k] = proj * I0 / u - e[r] * I1p[c] - I1p[r] * e[c] + u * Hpp[k];
      st.hpq[k] = -proj * I0 / u - e[r] * I1q[c] + I1p[r] * e[c] + u * Hpq[k];
      st.hqq[k] = proj * I0 / u + e[r] * I1q[c] + I1q[r] * e[c] + u * Hqq[k];
    }
  return st;
}

double ray_integral(const Params& red, double r0, double r1) {
  if (r0 == r1) return 0.0;
  auto f = [&](double r) { return rho(red, r); };
  return std::abs(boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, std::min(r0, r1),
                                                                                std::max(r0, r1), 12, 1e-12));
}

// Solves the symmetric tridiagonal system (diag + lambda, off) x = rhs; false if not positive definite.
bool solve_tridiagonal(std::vector<double> diag, const std::vector<double>& off, std::vector<double> rhs,
                       double lambda, std::vector<double>& x) {
  const std::size_t n = diag.size();
  for (double& d : diag) d += lambda;
  std::vector<double> l(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      l[i] = off[i - 1] / diag[i - 1];
      diag[i] -= l[i] * off[i - 1];
      rhs[i] -= l[i] * rhs[i - 1];
    }
    if (!(diag[i] > 0.0)) return false;
  }
  x.assign(n, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    x[k] = rhs[k] / diag[k];
    if (k + 1 < n) x[k] -= off[k] * x[k + 1] / diag[k];
  }
  return true;
}

}  // namespace

PathPolyline PathPolyline::make(std::vector<std::complex<double>> points) {
  if (points.size() < 2) throw DomainError("path needs at least two points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(std::abs(points[i]) < 1.0)) throw DomainError("path point outside the open disk");
    if (i > 0 && points[i] == points[i - 1]) throw DomainError("consecutive path points coincide");
  }
  PathPolyline p;
  p.points_ = std::move(points);
  return p;
}

PathPolyline PathPolyline::reversed() const {
  PathPolyline p = *this;
  std::reverse(p.points_.begin(), p.points_.end());
  return p;
}

PathPolyline PathPolyline::coarsened(std::size_t max_segments) const {
  if (max_segments == 0 || segments() <= max_segments) return *this;
  const std::size_t step = (segments() + max_segments - 1) / max_segments;
  std::vector<std::complex<double>> pts;
  for (std::size_t i = 0; i < points_.size(); i += step) pts.push_back(points_[i]);
  if (pts.back() != points_.back()) pts.push_back(points_.back());
  return make(std::move(pts));
}

DensityJet density_jet(const Params& params, double t) {
  const auto L = log_kernel_jet(params.reduced(), t, 4);
  return {L[1] + t * L[2], 2.0 * L[2] + t * L[3], 3.0 * L[3] + t * L[4]};
}

double rho(const Params& params, std::complex<double> z) {
  if (!(std::abs(z) < 1.0)) throw DomainError("rho: point outside the open disk");
  const double t = std::norm(z);
  const auto L = log_kernel_jet(params.reduced(), t, 2);
  const double F = L[1] + t * L[2];
  if (F < 0.0) {
    if (F < -1e-12) throw QuadratureAccuracyError("rho: negative density squared");
    return 0.0;
  }
  return std::sqrt(F);
}

double path_length(const Params& params, const PathPolyline& path, int samples_per_segment) {
  if (samples_per_segment < 1) throw DomainError("path_length: need at least one sample per segment");
  const auto gl = jacobi_rule(0.0, 0.0, samples_per_segment);
  const Params red = params.reduced();
  double total = 0.0;
  const auto& pts = path.points();
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    const std::complex<double> d = pts[s + 1] - pts[s];
    double seg = 0.0;
    for (std::size_t i = 0; i < gl->nodes.size(); ++i) seg += gl->weights[i] * rho(red, pts[s] + gl->nodes[i] * d);
    total += std::abs(d) * seg;
  }
  return total;
}

double radial_distance(const Params& params, double r0, double r1) {
  if (!(r0 >= 0.0 && r0 < 1.0 && r1 >= 0.0 && r1 < 1.0)) throw DomainError("radial_distance: radii must lie in [0,1)");
  return ray_integral(params.reduced(), r0, r1);
}

GeodesicResult geodesic_distance(const Params& params, std::complex<double> z, std::complex<double> w,
                                 const GeodesicOptions& opt) {
  if (!(std::abs(z) < 1.0) || !(std::abs(w) < 1.0)) throw DomainError("geodesic_distance: points must lie in the disk");
  if (opt.min_segments < 1 || opt.max_segments < opt.min_segments || opt.nodes_per_segment < 1)
    throw DomainError("geodesic_distance: invalid options");
  const Params red = params.reduced();
  GeodesicResult res;
  if (z == w) {
    res.distance = 0.0;
    res.path = PathPolyline();
    res.radial = true;
    return res;
  }

  const double cross = std::imag(z * std::conj(w));
  if (std::abs(cross) <= 1e-15 * std::max(1e-300, std::abs(z) * std::abs(w)) || z == 0.0 || w == 0.0) {
    const double rz = std::abs(z), rw = std::abs(w);
    const bool same_ray = std::real(z * std::conj(w)) >= 0.0;
    res.distance = same_ray ? ray_integral(red, rz, rw) : ray_integral(red, 0.0, rz) + ray_integral(red, 0.0, rw);
    std::vector<std::complex<double>> pts{z};
    if (!same_ray) pts.push_back(0.0);
    pts.push_back(w);
    res.path = PathPolyline::make(pts);
    res.radial = true;
    res.segments = static_cast<int>(pts.size() - 1);
    return res;
  }

  const auto gl = jacobi_rule(0.0, 0.0, opt.nodes_per_segment);
  const Vec2 z2{z.real(), z.imag()};
  const Vec2 chord{w.real() - z.real(), w.imag() - z.imag()};
  const double chord_len = std::sqrt(dot(chord, chord));
  const Vec2 nrm{-chord[1] / chord_len, chord[0] / chord_len};

  auto vertex = [&](int n, int v, double y) -> Vec2 {
    const double s = static_cast<double>(v) / n;
    return {z2[0] + s * chord[0] + y * nrm[0], z2[1] + s * chord[1] + y * nrm[1]};
  };
  auto inside = [&](int n, const std::vector<double>& y) {
    for (int v = 1; v < n; ++v) {
      const Vec2 p = vertex(n, v, y[v]);
      if (!(dot(p, p) < 1.0 - 1e-12)) return false;
    }
    return true;
  };
  auto energy = [&](int n, const std::vector<double>& y) {
    double E = 0.0;
    for (int s = 0; s < n; ++s) {
      const Vec2 p = vertex(n, s, y[s]), q = vertex(n, s + 1, y[s + 1]);
      const Vec2 d{q[0] - p[0], q[1] - p[1]};
      double I0 = 0.0;
      for (std::size_t i = 0; i < gl->nodes.size(); ++i)
        I0 += gl->weights[i] * rho(red, {p[0] + gl->nodes[i] * d[0], p[1] + gl->nodes[i] * d[1]});
      E += std::sqrt(dot(d, d)) * I0;
    }
    return E;
  };
  auto to_path = [&](int n, const std::vector<double>& y) {
    std::vector<std::complex<double>> pts(n + 1);
    for (int v = 0; v <= n; ++v) {
      const Vec2 p = vertex(n, v, y[v]);
      pts[v] = {p[0], p[1]};
    }
    pts.front() = z;
    pts.back() = w;
    return PathPolyline::make(pts);
  };

  int n = opt.min_segments;
  std::vector<double> y(n + 1, 0.0);
  double prev_level = -1.0;
  int iterations = 0;
  double E = energy(n, y);
  while (true) {
    // Damped Newton on the interior offsets at this resolution.
    double lambda = 0.0;
    for (int it = 0; it < 100; ++it) {
      if (iterations >= opt.budget) throw BudgetExhausted(E, to_path(n, y));
      ++iterations;
      const int m = n - 1;
      std::vector<double> g(m, 0.0), hd(m, 0.0), ho(m > 0 ? m - 1 : 0, 0.0);
      E = 0.0;
      for (int s = 0; s < n; ++s) {
        const SegmentTerms st = segment_terms(red, vertex(n, s, y[s]), vertex(n, s + 1, y[s + 1]), *gl);
        E += st.length;
        if (s >= 1) {
          g[s - 1] += dot(nrm, st.gp);
          hd[s - 1] += quad_form(nrm, st.hpp);
        }
        if (s + 1 <= m) {
          g[s] += dot(nrm, st.gq);
          hd[s] += quad_form(nrm, st.hqq);
        }
        if (s >= 1 && s + 1 <= m) ho[s - 1] = quad_form(nrm, st.hpq);
      }
      std::vector<double> neg_g(m);
      for (int i = 0; i < m; ++i) neg_g[i] = -g[i];
      std::vector<double> step;
      double lam = lambda;
      while (!solve_tridiagonal(hd, ho, neg_g, lam, step)) lam = lam == 0.0 ? 1e-8 * (1.0 + *std::max_element(hd.begin(), hd.end())) : lam * 10.0;
      double predicted = 0.0;
      for (int i = 0; i < m; ++i) predicted -= 0.5 * g[i] * step[i];
      if (predicted <= 1e-17 * E) break;
      double alpha_ls = 1.0, E_new = E;
      std::vector<double> y_new(y);
      bool accepted = false;
      for (int ls = 0; ls < 40; ++ls) {
        for (int i = 0; i < m; ++i) y_new[i + 1] = y[i + 1] + alpha_ls * step[i];
        if (inside(n, y_new)) {
          E_new = energy(n, y_new);
          if (E_new <= E + 1e-15 * E) {
            accepted = true;
            break;
          }
        }
        alpha_ls *= 0.5;
      }
      double max_step = 0.0;
      for (double s : step) max_step = std::max(max_step, std::abs(alpha_ls * s));
      if (!accepted) break;  // no descent left at this resolution
      y = y_new;
      E = E_new;
      lambda = alpha_ls < 1.0 ? std::max(lam, 1e-12) * 4.0 : lam * 0.25;
      if (max_step < 1e-13 * chord_len) break;
    }
    res.iterations = iterations;
    res.segments = n;
    if (prev_level > 0.0 && n >= opt.min_segments &&
        std::abs(prev_level - E) <= opt.relative_tolerance * E) {
      res.converged = true;
      break;
    }
    if (2 * n > opt.max_segments) {
      res.converged = false;
      break;
    }
    prev_level = E;
    std::vector<double> y2(2 * n + 1);
    for (int v = 0; v <= n; ++v) y2[2 * v] = y[v];
    for (int v = 0; v < n; ++v) y2[2 * v + 1] = 0.5 * (y[v] + y[v + 1]);
    n *= 2;
    y = std::move(y2);
    E = energy(n, y);
  }
  res.path = to_path(n, y);
  res.distance = path_length(params, res.path, std::max(8, opt.nodes_per_segment));
  return res;
}

std::complex<double> coherent_state_eval(const CoherentState& state, std::complex<double> z) {
  const Params red = state.params.reduced();
  return kernel_eval(red, z * std::conj(state.center)) /
         std::sqrt(kernel_eval(red, std::norm(state.center)).real());
}

std::complex<double> coherent_projection(const CoherentState& state, const TestFunction& f,
                                         std::complex<double> z, const QuadratureRule& rule) {
  const std::complex<double> inner = rule.grid_sum(
      [&](std::complex<double> u) { return f(u) * std::conj(coherent_state_eval(state, u)); });
  return coherent_state_eval(state, z) * inner;
}

ProjectionIdentity projection_norm_identity_check(const Params& params, std::complex<double> gamma,
                                                  std::complex<double> velocity, const QuadratureRule& rule) {
  if (!(std::abs(gamma) < 1.0)) throw DomainError("projection identity: gamma outside the disk");
  if (velocity == 0.0) throw DomainError("projection identity: zero velocity");
  if (std::abs(gamma) > 0.95) throw QuadratureAccuracyError("projection identity: |gamma| > 0.95");
  const Params red = params.reduced();
  const double x = std::norm(gamma);
  const double K = kernel_eval(red, x).real();
  const double K1 = kernel_derivative(red, x).real();
  const std::complex<double> gc = std::conj(gamma), vc = std::conj(velocity);
  const std::complex<double> dcoef = K1 * gamma * vc / std::pow(K, 1.5);
  const double sqrtK = std::sqrt(K);

  double aa = 0.0, dd = 0.0, ad = 0.0;
  const int M = rule.angular_count();
  for (int i = 0; i < rule.radial_order(); ++i) {
    const double r = std::sqrt(rule.radial_nodes()[i]);
    double saa = 0.0, sdd = 0.0, sad = 0.0;
    for (int j = 0; j < M; ++j) {
      const std::complex<double> u = std::polar(r, 2.0 * std::numbers::pi * j / M);
      const std::complex<double> xi = u * gc;
      const std::complex<double> A = kernel_derivative(red, xi) * u * vc / sqrtK;
      const std::complex<double> D = kernel_eval(red, xi) * dcoef;
      saa += std::norm(A);
      sdd += std::norm(D);
      sad += std::real(A * std::conj(D));
    }
    aa += rule.radial_weights()[i] * saa / M;
    dd += rule.radial_weights()[i] * sdd / M;
    ad += rule.radial_weights()[i] * sad / M;
  }
  ProjectionIdentity out;
  out.norm_a_sq = aa;
  out.norm_d_sq = dd;
  out.inner_ad = ad;
  out.lhs = std::sqrt(std::max(0.0, aa - dd));
  out.rhs = std::abs(velocity) * rho(red, gamma);
  const double A = red.alpha + red.beta + 2.0, B = red.beta + 1.0;
  out.norm_a_sq_closed =
      std::norm(velocity) / K * (A / B) * pfq({2.0, 2.0, A + 1.0}, {1.0, B + 1.0}, x, 1e-16, 1000000).real();
  return out;
}

LipschitzReport lipschitz_check(const BerezinContext& ctx, const Params& params, const TestFunction& f,
                                std::complex<double> z, std::complex<double> w, const LipschitzOptions& opt) {
  LipschitzReport rep;
  rep.lhs = std::abs(berezin_apply(ctx, f, z) - berezin_apply(ctx, f, w));
  rep.bmo = opt.bmo ? *opt.bmo : bmo_norm(ctx, f, default_bmo_grid());
  if (z == w) return rep;
  GeodesicResult g;
  try {
    g = geodesic_distance(params, z, w, opt.geodesic);
  } catch (const BudgetExhausted& e) {
    g.distance = e.best();
    g.path = e.path();
  }
  rep.distance = g.distance;
  rep.rhs = 2.0 * rep.bmo * rep.distance;
  rep.margin = rep.rhs - rep.lhs;

  const PathPolyline coarse = g.path.coarsened(opt.certificate_segments);
  const auto gl = jacobi_rule(0.0, 0.0, opt.certificate_nodes);
  const Params red = params.reduced();
  double integral = 0.0, mo_max = 0.0, length = 0.0;
  const auto& pts = coarse.points();
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    const std::complex<double> d = pts[s + 1] - pts[s];
    double seg = 0.0, seg_len = 0.0;
    for (std::size_t i = 0; i < gl->nodes.size(); ++i) {
      const std::complex<double> p = pts[s] + gl->nodes[i] * d;
      const double mo = mean_oscillation(ctx, f, p);
      const double r = rho(red, p);
      mo_max = std::max(mo_max, mo);
      seg += gl->weights[i] * mo * r;
      seg_len += gl->weights[i] * r;
    }
    integral += std::abs(d) * seg;
    length += std::abs(d) * seg_len;
  }
  rep.path_certificate = 2.0 * integral;
  rep.path_certificate_max = 2.0 * mo_max * length;
  return rep;
}

std::vector<DerivativeSample> derivative_bound_check(const BerezinContext& ctx, const Params& params,
                                                     const TestFunction& f, const PathPolyline& path,
                                                     int samples_per_segment, double speed) {
  if (samples_per_segment < 1) throw DomainError("derivative_bound_check: need samples");
  if (!(speed > 0.0)) throw DomainError("derivative_bound_check: speed must be positive");
  const Params red = params.reduced();
  const auto& pts = path.points();
  const std::size_t nseg = path.segments();
  std::vector<DerivativeSample> out;
  for (std::size_t s = 0; s < nseg; ++s) {
    // gamma(t) = pts[s] + (speed * nseg * t - s) * d on this segment.
    const std::complex<double> d = pts[s + 1] - pts[s];
    const std::complex<double> vel = speed * static_cast<double>(nseg) * d;
    for (int k = 1; k <= samples_per_segment; ++k) {
      const double tau = static_cast<double>(k) / (samples_per_segment + 1);
      const std::complex<double> p = pts[s] + tau * d;
      auto value = [&](double h) { return berezin_apply(ctx, f, p + h * vel); };
      const double h = std::min(1e-4, 0.25 * std::min(tau, 1.0 - tau) / (speed * nseg));
      const std::complex<double> D1 = (value(h) - value(-h)) / (2.0 * h);
      const std::complex<double> D2 = (value(0.5 * h) - value(-0.5 * h)) / h;
      const std::complex<double> D = (4.0 * D2 - D1) / 3.0;
      DerivativeSample sample;
      sample.t = (static_cast<double>(s) + tau) / (speed * static_cast<double>(nseg));
      sample.lhs = std::abs(D);
      sample.rhs = 2.0 * mean_oscillation(ctx, f, p) * std::abs(vel) * rho(red, p);
      out.push_back(sample);
    }
  }
  return out;
}

}  // namespace bergman
