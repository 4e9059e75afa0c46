#include "bergman/berezin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "bergman/errors.hpp"
#include "bergman/specialfn.hpp"

namespace bergman {

namespace {

void check_point(const BerezinContext& ctx, std::complex<double> z) {
  const double r = std::abs(z);
  if (!(r < 1.0)) throw DomainError("evaluation point must lie in the open disk");
  if (r > ctx.options().max_radius)
    throw QuadratureAccuracyError("evaluation point too close to the boundary for the configured rule");
}

void check_integrable(const Params& p, const ModalFunction& f) {
  for (const Mode& m : f.modes())
    if (!(p.beta + m.radial.t_power > -1.0) || !(p.alpha + m.radial.one_minus_t_power > -1.0))
      throw IntegrabilityError("function is not integrable against mu");
}

double diag_kernel(const Params& p, double t) { return kernel_eval(p, std::complex<double>(t, 0.0)).real(); }

}  // namespace

BerezinContext BerezinContext::make(double alpha, double beta, const BerezinOptions& options) {
  if (!(options.tolerance > 0.0)) throw DomainError("tolerance must be positive");
  if (!(options.max_radius > 0.0 && options.max_radius < 1.0)) throw DomainError("max_radius must lie in (0,1)");
  BerezinContext ctx;
  ctx.requested_ = Params::make(alpha, beta);
  ctx.params_ = ctx.requested_.reduced();
  ctx.rule_ = QuadratureRule::build(ctx.params_, options.radial_order, options.angular_count);
  ctx.options_ = options;
  return ctx;
}

std::complex<double> berezin_apply(const BerezinContext& ctx, const TestFunction& f, std::complex<double> z) {
  if (!f.modal()) return berezin_apply_grid(ctx, f, z);
  check_point(ctx, z);
  const Params& p = ctx.params();
  const ModalFunction& m = *f.modal();
  check_integrable(p, m);
  const double r = std::abs(z), r2 = r * r, phi = std::arg(z);
  std::complex<double> total = 0.0;
  for (const Mode& md : m.modes()) {
    const int k = std::abs(md.k);
    if (k > 0 && r == 0.0) continue;
    const std::complex<double> radial = ctx.rule().radial_integral(
        md.radial, [&](double t) { return std::complex<double>(kernel_angular_moment(p, k, r2 * t)); },
        0.5 * k);
    total += md.coeff * std::polar(std::pow(r, k), md.k * phi) * radial;
  }
  return total / diag_kernel(p, r2);
}

std::complex<double> berezin_apply_grid(const BerezinContext& ctx, const TestFunction& f,
                                        std::complex<double> z) {
  check_point(ctx, z);
  const Params& p = ctx.params();
  if (f.modal()) check_integrable(p, *f.modal());
  const std::complex<double> sum = ctx.rule().grid_sum([&](std::complex<double> w) {
    return f(w) * std::norm(kernel_eval(p, z * std::conj(w)));
  });
  return sum / diag_kernel(p, std::norm(z));
}

std::complex<double> berezin_from_moments(const BerezinContext& ctx, const TestFunction& f,
                                          std::complex<double> z, int max_degree) {
  check_point(ctx, z);
  const Params& p = ctx.params();
  const double A = p.alpha + p.beta + 2.0, B = p.beta + 1.0;
  std::vector<double> a(max_degree + 1, 1.0);
  for (int n = 1; n <= max_degree; ++n) a[n] = a[n - 1] * (A + n - 1) / (B + n - 1);
  std::complex<double> total = 0.0;
  for (int n = 0; n <= max_degree; ++n) {
    for (int k = 0; k <= max_degree; ++k) {
      if (f.modal()) {
        // Only angular frequencies cancelling some mode of f survive.
        bool hit = false;
        for (const Mode& md : f.modal()->modes())
          if (md.k + k - n == 0) hit = true;
        if (!hit) continue;
      }
      total += a[n] * a[k] * std::pow(z, n) * std::pow(std::conj(z), k) * moment(f, n, k, ctx.rule());
    }
  }
  return total / diag_kernel(p, std::norm(z));
}

std::complex<double> berezin_adjoint_apply(const BerezinContext& ctx, const TestFunction& g,
                                           std::complex<double> w, double a, double b) {
  check_point(ctx, w);
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("adjoint weight parameters must exceed -1");
  const Params& p = ctx.params();
  const double rw = std::abs(w), t_w = rw * rw;
  if (rw == 0.0) {
    if (p.beta < b) throw SingularArgument("adjoint: |w|^{2(beta-b)} is singular at 0");
    if (p.beta > b) return 0.0;
  }
  const double prefactor = std::exp(log_beta(a + 1.0, b + 1.0) - log_beta(p.alpha + 1.0, p.beta + 1.0)) *
                           (rw == 0.0 ? 1.0 : std::pow(t_w, p.beta - b)) * std::pow(1.0 - t_w, p.alpha - a);
  const int n = ctx.rule().radial_order();
  std::complex<double> integral = 0.0;
  if (g.modal()) {
    for (const Mode& md : g.modal()->modes()) {
      if (!(b + md.radial.t_power > -1.0) || !(a + md.radial.one_minus_t_power + p.alpha + 2.0 > -1.0))
        throw IntegrabilityError("adjoint integrand is not integrable");
      const int k = std::abs(md.k);
      if (k > 0 && rw == 0.0) continue;
      RadialFactor R = md.radial;
      R.t_power += 0.5 * k;
      R.one_minus_t_power += p.alpha + 2.0;  // 1/K(t) = (1-t)^{alpha+2} / G(t)
      const std::complex<double> radial = weighted_radial_integral(a, b, n, R, [&](double t) {
        return std::complex<double>(kernel_angular_moment(p, k, t_w * t) / g_eval(p, t));
      });
      integral += md.coeff * std::polar(std::pow(rw, k), md.k * std::arg(w)) * radial;
    }
  } else {
    const QuadratureRule rule = QuadratureRule::build(Params::make(a, b), n, ctx.rule().angular_count());
    integral = rule.grid_sum([&](std::complex<double> z) {
      return g(z) * std::norm(kernel_eval(p, z * std::conj(w))) / diag_kernel(p, std::norm(z));
    });
  }
  return prefactor * integral;
}

double mean_oscillation(const BerezinContext& ctx, const TestFunction& f, std::complex<double> z) {
  const double second = berezin_apply(ctx, f.abs_squared(), z).real();
  const double first = std::norm(berezin_apply(ctx, f, z));
  const double var = second - first;
  const double scale = std::max(1.0, std::abs(second));
  if (var < 0.0) {
    if (var < -ctx.options().tolerance * scale)
      throw QuadratureAccuracyError("mean oscillation: negative variance beyond round-off");
    return 0.0;
  }
  return std::sqrt(var);
}

double bmo_norm(const BerezinContext& ctx, const TestFunction& f, const std::vector<std::complex<double>>& grid) {
  if (grid.empty()) throw DomainError("bmo_norm: empty grid");
  double best = 0.0;
  for (const auto& z : grid) best = std::max(best, mean_oscillation(ctx, f, z));
  return best;
}

std::vector<std::complex<double>> default_bmo_grid(int angles) {
  if (angles < 1) throw DomainError("default_bmo_grid: need at least one angle");
  std::vector<std::complex<double>> grid;
  for (int i = 1; i <= 19; ++i)
    for (int j = 0; j < angles; ++j)
      grid.push_back(std::polar(0.05 * i, 2.0 * std::numbers::pi * j / angles));
  return grid;
}

std::vector<double> boundary_limit_check(const BerezinContext& ctx, const TestFunction& f,
                                         std::complex<double> xi, const std::vector<double>& radii) {
  if (std::abs(std::abs(xi) - 1.0) > 1e-12) throw DomainError("boundary_limit_check: xi must be unimodular");
  const std::complex<double> target = f(xi);
  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii) out.push_back(std::abs(berezin_apply(ctx, f, r * xi) - target));
  return out;
}

}  // namespace bergman
