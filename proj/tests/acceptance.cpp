// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bergman/berezin.hpp"
#include "bergman/bounds.hpp"
#include "bergman/diskquad.hpp"
#include "bergman/kernel.hpp"
#include "bergman/metric.hpp"
#include "bergman/specialfn.hpp"
#include "cli.hpp"
#include "oracles.hpp"

using namespace bergman;
using cd = std::complex<double>;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome g_identities() {
  cli::RunConfig c;
  c.command = "verify-lemma1";
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = cli::cmd_verify_lemma1(c);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  double worst = 0.0;
  for (const auto& row : r.table.rows)
    if (std::get<std::string>(row[0]) != "large_beta_limit") worst = std::max(worst, std::get<double>(row[3]));
  const bool ok = r.failures.empty() && worst < 1e-10 && secs < 10.0;
  return {ok, "max residual " + fmt("%.2e", worst) + ", " + fmt("%.2f", secs) + " s"};
}

Outcome kernel_consistency() {
  double worst = 0.0, worst0 = 0.0;
  oracle::Gen gen(2);
  for (double al : {-0.5, 0.0, 1.0, 1.3, 2.0, 3.7})
    for (double be : {-0.9, -0.5, -0.1, 0.0, 0.7, 2.0}) {
      const Params p = Params::make(al, be);
      for (int i = 0; i < 25; ++i) {
        cd xi = gen.point(0.9);
        if (p.s > 0 && std::abs(xi) < 1e-3) xi = 0.3;
        const cd a = kernel_eval(p, xi), b = kernel_eval_hypergeometric(p, xi);
        worst = std::max(worst, std::abs(a - b) / std::abs(b));
        if (be == 0.0) worst0 = std::max(worst0, std::abs(a - std::pow(1.0 - xi, -(al + 2))) / std::abs(a));
      }
    }
  return {worst < 1e-10 && worst0 < 1e-12, "two routes " + fmt("%.2e", worst) + ", beta=0 closed form " + fmt("%.2e", worst0)};
}

Outcome measure() {
  double mass = 0.0, mom = 0.0;
  for (double al : {-0.5, 0.0, 1.0, 1.3, 2.0, 3.7})
    for (double be : {-0.9, -0.5, -0.1, 0.0}) {
      const Params p = Params::make(al, be);
      const auto rule = QuadratureRule::build(p);
      mass = std::max(mass, std::abs(disk_integrate(TestFunction::one(), rule) - 1.0));
      for (int n = 1; n <= 12; ++n) {
        const double ref = pochhammer(be + 1, n) / pochhammer(al + be + 2, n);
        mom = std::max(mom, std::abs(disk_integrate(TestFunction::monomial(n, n), rule).real() - ref) / ref);
      }
    }
  return {mass < 1e-12 && mom < 1e-10, "mass " + fmt("%.2e", mass) + ", moments " + fmt("%.2e", mom)};
}

Outcome berezin_fixed_points() {
  const auto t0 = std::chrono::steady_clock::now();
  double e1 = 0.0, eh = 0.0;
  oracle::Gen gen(4);
  for (double al : {-0.5, 0.0, 1.3, 3.7})
    for (double be : {-0.9, -0.5, 0.0}) {
      const auto ctx = BerezinContext::make(al, be);
      for (double r : {0.0, 0.3, 0.6, 0.8, 0.9, 0.95})
        for (double th : {0.0, 1.0, 2.5})
          e1 = std::max(e1, std::abs(berezin_apply(ctx, TestFunction::one(), std::polar(r, th)) - 1.0));
      for (int i = 0; i < 20; ++i) {
        const cd z = gen.point(0.9);
        for (int n = 0; n <= 4; ++n) {
          eh = std::max(eh, std::abs(berezin_apply(ctx, TestFunction::harmonic_re(n), z) - std::pow(z, n).real()));
          eh = std::max(eh, std::abs(berezin_apply(ctx, TestFunction::harmonic_im(n), z) - std::pow(z, n).imag()));
        }
      }
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {e1 < 1e-10 && eh < 1e-8 && secs < 60.0,
          "B1 " + fmt("%.2e", e1) + ", harmonic " + fmt("%.2e", eh) + ", " + fmt("%.2f", secs) + " s"};
}

Outcome log_counterexample() {
  double worst = 0.0, gap = 1e300, literal = 0.0;
  for (double be : {-0.9, -0.5, -0.1}) {
    const auto ctx = BerezinContext::make(0.0, be);
    for (cd z : {cd(0.0), cd(0.3), cd(0.0, 0.5), cd(0.7)}) {
      const double t = std::norm(z);
      const double v = berezin_apply(ctx, TestFunction::log_mod_sq(), z).real();
      worst = std::max(worst, std::abs(v + (1 - t) / (be + 1 - be * t)));
      literal = std::max(literal, std::abs(v - (1 - t) / (be + 1 - be * t)));
    }
    gap = std::min(gap, std::abs(berezin_apply(ctx, TestFunction::log_mod_sq(), 0.5).real() - std::log(0.25)));
  }
  return {worst < 1e-8 && gap > 0.1,
          "|B log - (-(1-t)/(beta+1-beta t))| " + fmt("%.2e", worst) + " (unsigned expression off by " +
              fmt("%.3g", literal) + "), deviation from log|z|^2 at 0.5: " + fmt("%.3f", gap)};
}

Outcome icd_bounds() {
  double sandwich = 0.0, closed = 0.0, bracket = 0.0;
  const double c = -0.5;
  for (double al : {0.0, 1.0}) {
    const Params p = Params::make(al, -0.5);
    const auto rule = QuadratureRule::build(p);
    const double G1 = g_eval(p, 1.0);
    for (double d : {al + 1.0, al, al - 1.5}) {
      const auto cls = classify_asymptotic(al, d);
      double lo = 1e300, hi = 0.0;
      for (double r : {0.0, 0.2, 0.5, 0.8, 0.9, 0.95, 0.99}) {
        const double I = icd_numeric(c, d, r, p, rule), J = jcd_closed(c, d, r, p);
        sandwich = std::max({sandwich, J / G1 - I, I - J});
        if (r <= 0.8) closed = std::max(closed, std::abs(J - jcd_numeric(c, d, r, p)) / J);
        if (r >= 0.9) {
          const double x = r * r;
          double v = I;
          if (cls.kind == AsymptoticClass::Kind::Logarithmic) v /= std::log(1 / (1 - x));
          if (cls.kind == AsymptoticClass::Kind::Power) v *= std::pow(1 - x, cls.exponent);
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
      bracket = std::max(bracket, hi / lo);
    }
  }
  return {sandwich <= 1e-9 && closed < 1e-8 && bracket <= 3.0,
          "sandwich violation " + fmt("%.2e", std::max(0.0, sandwich)) + ", 4F3 vs quadrature " + fmt("%.2e", closed) +
              ", worst bracket " + fmt("%.3f", bracket)};
}

Outcome boundedness() {
  const auto t0 = std::chrono::steady_clock::now();
  cli::RunConfig c;
  c.command = "boundedness";
  c.sweep = 5000;
  const auto r = cli::cmd_boundedness(c);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {r.failures.empty() && r.table.rows.size() == 5000 && secs < 5.0,
          std::to_string(r.table.rows.size()) + " tuples, " + std::to_string(r.failures.size()) + " disagreement report(s), " +
              fmt("%.3f", secs) + " s, seed " + std::to_string(r.seed)};
}

Outcome projection() {
  double rel = 0.0, closed = 0.0;
  for (double al : {0.0, 1.0}) {
    const Params p = Params::make(al, -0.5);
    const auto rule = QuadratureRule::build(p);
    for (cd g : {cd(0.3), std::polar(0.5, M_PI / 4), cd(0.0, 0.8)})
      for (cd v : {cd(1.0), cd(0.0, 1.0), cd(1.0, 1.0)}) {
        const auto r = projection_norm_identity_check(p, g, v, rule);
        rel = std::max(rel, std::abs(r.lhs - r.rhs) / r.rhs);
        closed = std::max(closed, std::abs(r.norm_a_sq - r.norm_a_sq_closed) / r.norm_a_sq_closed);
      }
  }
  return {rel < 1e-6 && closed < 1e-8, "lhs/rhs " + fmt("%.2e", rel) + ", 3F2 closed form " + fmt("%.2e", closed)};
}

Outcome metric() {
  const auto t0 = std::chrono::steady_clock::now();
  double radial = 0.0;
  for (double al : {0.0, 1.3, 3.7}) {
    const Params p = Params::make(al, 0.0);
    for (double r : {0.3, 0.6, 0.9}) {
      const double ex = std::sqrt(al + 2) * std::atanh(r);
      radial = std::max(radial, std::abs(geodesic_distance(p, 0.0, r).distance - ex) / ex);
    }
  }
  const Params p = Params::make(1.3, -0.5);
  oracle::Gen gen(20240611);
  double sym = 0.0, tri = 0.0;
  for (int i = 0; i < 50; ++i) {
    const cd z = gen.point(0.85), w = gen.point(0.85), u = gen.point(0.85);
    const double zw = geodesic_distance(p, z, w).distance, wz = geodesic_distance(p, w, z).distance;
    const double zu = geodesic_distance(p, z, u).distance, uw = geodesic_distance(p, u, w).distance;
    sym = std::max(sym, std::abs(zw - wz) / std::max(1.0, zw));
    tri = std::max(tri, zw - zu - uw);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {radial < 1e-6 && sym < 1e-6 && tri < 1e-6,
          "radial " + fmt("%.2e", radial) + ", symmetry " + fmt("%.2e", sym) + ", triangle excess " + fmt("%.2e", std::max(0.0, tri)) +
              ", " + fmt("%.1f", secs) + " s"};
}

Outcome lipschitz() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_deriv = -1e300;
  std::size_t samples = 0;
  {
    const double al = 1.0, be = -0.5;
    const auto ctx = BerezinContext::make(al, be);
    const Params p = Params::make(al, be);
    const std::vector<std::pair<TestFunction, PathPolyline>> paths{
        {TestFunction::monomial(1, 1), PathPolyline::make({0.05, 0.85})},
        {TestFunction::harmonic_re(2), PathPolyline::make({cd(0.2, 0.1), cd(-0.3, 0.4), cd(0.1, -0.6)})},
        {TestFunction::monomial(2, 1), PathPolyline::make({cd(-0.7, 0.0), cd(0.0, 0.7)})},
        {TestFunction::one_minus_mod_sq_pow(2), PathPolyline::make({cd(0.6, 0.6), cd(0.0, 0.1), cd(-0.5, -0.5)})},
        {TestFunction::harmonic_im(3), geodesic_distance(p, cd(0.5, -0.2), cd(-0.4, 0.5)).path.coarsened(8)}};
    for (const auto& [f, path] : paths)
      for (const auto& s : derivative_bound_check(ctx, p, f, path, 3)) {
        worst_deriv = std::max(worst_deriv, s.lhs - s.rhs);
        ++samples;
      }
  }
  oracle::Gen gen(77);
  const std::vector<TestFunction> family{TestFunction::monomial(1, 1), TestFunction::harmonic_re(2),
                                         TestFunction::harmonic_im(3), TestFunction::monomial(2, 0),
                                         TestFunction::one_minus_mod_sq_pow(3)};
  double worst_margin = 1e300, worst_cert = -1e300;
  const auto ctx = BerezinContext::make(0.0, -0.5);
  const Params p = Params::make(0.0, -0.5);
  std::vector<double> bmo(family.size());
  for (std::size_t k = 0; k < family.size(); ++k) bmo[k] = bmo_norm(ctx, family[k], default_bmo_grid());
  for (int i = 0; i < 25; ++i) {
    const int k = gen.integer(0, static_cast<int>(family.size()) - 1);
    const cd z = gen.point(0.85), w = gen.point(0.85);
    LipschitzOptions opt;
    opt.bmo = bmo[k];
    const auto r = lipschitz_check(ctx, p, family[k], z, w, opt);
    worst_margin = std::min(worst_margin, r.margin);
    worst_cert = std::max(worst_cert, r.lhs - r.path_certificate);
  }
  cli::RunConfig c;
  c.command = "verify-all";
  const auto ta = std::chrono::steady_clock::now();
  const auto all = cli::cmd_verify_all(c);
  const double all_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - ta).count();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst_deriv <= 1e-8 && worst_margin >= -1e-8 && worst_cert <= 1e-8 && all.failures.empty() && all_secs < 300.0,
          std::to_string(samples) + " derivative samples, worst lhs-rhs " + fmt("%.2e", worst_deriv) + "; 25 triples, min margin " +
              fmt("%.3e", worst_margin) + ", worst lhs-certificate " + fmt("%.3e", worst_cert) + "; verify-all " +
              fmt("%.1f", all_secs) + " s with " + std::to_string(all.failures.size()) + " failure(s); " + fmt("%.1f", secs) + " s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"G-function identities and inequalities", g_identities},
      {"kernel two-route consistency", kernel_consistency},
      {"measure normalization and moments", measure},
      {"Berezin normalization and harmonic fixed points", berezin_fixed_points},
      {"log |z|^2 counterexample", log_counterexample},
      {"I_{c,d} sandwich, 4F3 closed form and regimes", icd_bounds},
      {"boundedness predicate vs Schur test", boundedness},
      {"projection norm identity", projection},
      {"metric closed form, symmetry, triangle", metric},
      {"derivative bound and Lipschitz estimate", lipschitz}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
