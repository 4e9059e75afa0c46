#include "bergman/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bergman/errors.hpp"
#include "bergman/specialfn.hpp"

namespace bergman {

LpSetting LpSetting::make(double alpha, double beta, double a, double b, double p) {
  if (!(alpha > -1.0) || !(a > -1.0) || !(b > -1.0)) throw DomainError("weight parameters must exceed -1");
  if (!(beta > -1.0 && beta <= 0.0)) throw DomainError("beta must lie in (-1, 0]");
  if (!(p >= 1.0)) throw DomainError("p must be at least 1");
  LpSetting s;
  s.alpha = alpha;
  s.beta = beta;
  s.a = a;
  s.b = b;
  s.p = p;
  s.q = p == 1.0 ? std::numeric_limits<double>::infinity() : p / (p - 1.0);
  return s;
}

double icd_numeric(double c, double d, std::complex<double> w, const Params& params, const QuadratureRule& rule) {
  if (params.s != 0) throw DomainError("icd_numeric: reduce beta first");
  if (!(c > -1.0) || !(d > -params.alpha - 3.0)) throw IntegrabilityError("icd_numeric: need c > -1, d > -alpha-3");
  const double x = std::norm(w);
  if (!(x < 1.0)) throw DomainError("icd_numeric: |w| must be < 1");
  const RadialFactor none{};
  const std::complex<double> avg =
      weighted_radial_integral(params.alpha + 2.0 + d, c, rule.radial_order(), none, [&](double t) {
        return std::complex<double>(kernel_angular_moment(params, 0, x * t) / g_eval(params, t));
      });
  return beta_fn(c + 1.0, params.alpha + d + 3.0) * avg.real();
}

double jcd_closed(double c, double d, std::complex<double> w, const Params& params) {
  if (!(c > -1.0) || !(params.alpha + d + 3.0 > 0.0)) throw DomainError("jcd_closed: need c > -1, alpha+d+3 > 0");
  const double x = std::norm(w);
  if (!(x < 1.0)) throw DomainError("jcd_closed: |w| must be < 1");
  const double A = params.alpha + params.beta + 2.0, B = params.beta + 1.0;
  const std::complex<double> f =
      pfq({1.0, A, A, c + 1.0}, {B, B, params.alpha + c + d + 4.0}, x, 1e-16, 1000000);
  return beta_fn(c + 1.0, params.alpha + d + 3.0) * f.real();
}

double jcd_numeric(double c, double d, std::complex<double> w, const Params& params, int radial_order) {
  if (params.s != 0) throw DomainError("jcd_numeric: reduce beta first");
  if (!(c > -1.0) || !(params.alpha + d + 3.0 > 0.0)) throw DomainError("jcd_numeric: need c > -1, alpha+d+3 > 0");
  const double x = std::norm(w);
  const std::complex<double> avg =
      weighted_radial_integral(params.alpha + 2.0 + d, c, radial_order, RadialFactor{}, [&](double t) {
        return std::complex<double>(kernel_angular_moment(params, 0, x * t));
      });
  return beta_fn(c + 1.0, params.alpha + d + 3.0) * avg.real();
}

AsymptoticClass classify_asymptotic(double alpha, double d) {
  AsymptoticClass out;
  if (std::abs(alpha - d) <= 1e-12) {
    out.kind = AsymptoticClass::Kind::Logarithmic;
  } else if (alpha < d) {
    out.kind = AsymptoticClass::Kind::Bounded;
  } else {
    out.kind = AsymptoticClass::Kind::Power;
    out.exponent = alpha - d;
  }
  return out;
}

bool bounded_predicate(const LpSetting& s) {
  if (!(s.p * (s.alpha + 1.0) > s.a + 1.0)) return false;
  if (s.p == 1.0) return s.b <= s.beta;
  return s.b < s.p * (s.beta + 1.0) - 1.0;
}

bool schur_intervals_nonempty(const LpSetting& s) {
  if (!(s.p > 1.0)) throw DomainError("schur_intervals_nonempty: requires p > 1");
  const double p = s.p, q = s.q;
  const double lo1 = std::max((s.b - s.beta) / p, 0.0);
  const double hi1 = std::min((s.b + 1.0) / p, (s.beta + 1.0) / q);
  const double lo2 = std::max((s.a - s.alpha) / p, -(s.alpha + 2.0) / q);
  const double hi2 = std::min((s.a + s.alpha + 3.0) / p, (s.alpha + 1.0) / q);
  return lo1 < hi1 && lo2 < hi2;
}

namespace {

// Most negative power of t among the modes; the weight absorbs it.
double singular_t_power(const TestFunction& f) {
  double sigma = 0.0;
  if (f.modal())
    for (const Mode& m : f.modal()->modes()) sigma = std::min(sigma, m.radial.t_power);
  return sigma;
}

// integral over |z| <= R of |F|^p d mu_{a,b}, with t^{p sigma} factored into the weight.
double truncated_lp(const std::function<std::complex<double>(std::complex<double>)>& F, double R, double a,
                    double b, double p, double sigma, const ProbeOptions& opt) {
  const double bb = b + p * sigma;
  if (!(bb > -1.0)) throw IntegrabilityError("probe: function is not in L^p(mu_{a,b})");
  const auto rule = jacobi_rule(0.0, bb, opt.radial_nodes);
  const double R2 = R * R;
  // t = R^2 u; t^b dt = R^{2(b+1)} u^b du and the u^bb rule carries 1/(bb+1).
  const double scale = std::exp((bb + 1.0) * std::log(R2) - std::log(bb + 1.0) - log_beta(a + 1.0, b + 1.0));
  double total = 0.0;
  for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
    const double t = R2 * rule->nodes[i];
    double ring = 0.0;
    for (int j = 0; j < opt.angular_nodes; ++j) {
      const std::complex<double> z = std::polar(std::sqrt(t), 2.0 * std::numbers::pi * (j + 0.5) / opt.angular_nodes);
      ring += std::pow(std::abs(F(z)), p) * std::pow(t, -p * sigma);
    }
    total += rule->weights[i] * std::pow(1.0 - t, a) * ring / opt.angular_nodes;
  }
  return scale * total;
}

}  // namespace

ProbeResult empirical_bound_probe(const LpSetting& s, const BerezinContext& ctx,
                                  const std::vector<TestFunction>& sample, const ProbeOptions& opt) {
  if (sample.empty()) throw DomainError("probe: empty sample");
  if (opt.radius_ladder.empty()) throw DomainError("probe: empty radius ladder");
  ProbeResult out;
  for (double R : opt.radius_ladder) {
    if (!(R > 0.0 && R <= ctx.options().max_radius)) throw DomainError("probe: ladder radius out of range");
    double best = 0.0;
    for (const TestFunction& f : sample) {
      const double nf = truncated_lp([&](std::complex<double> z) { return f(z); }, R, s.a, s.b, s.p,
                                     singular_t_power(f), opt);
      const double nb = truncated_lp([&](std::complex<double> z) { return berezin_apply(ctx, f, z); }, R, s.a,
                                     s.b, s.p, 0.0, opt);
      if (nf > 0.0) best = std::max(best, std::pow(nb / nf, 1.0 / s.p));
    }
    out.ladder_ratios.push_back(best);
    if (s.p == 1.0)
      out.adjoint_values.push_back(berezin_adjoint_apply(ctx, TestFunction::one(), R, s.a, s.b).real());
  }
  out.ratio = out.ladder_ratios.back();
  const std::size_t n = opt.radius_ladder.size();
  if (n >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double R = opt.radius_ladder[i];
      const double x = std::log(1.0 / (1.0 - R * R));
      const double y = std::log(std::max(out.ladder_ratios[i], 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double den = n * sxx - sx * sx;
    out.growth_exponent = den > 0.0 ? (n * sxy - sx * sy) / den : 0.0;
  }
  return out;
}

}  // namespace bergman
