#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "bergman/berezin.hpp"
#include "bergman/bounds.hpp"
#include "bergman/errors.hpp"
#include "bergman/kernel.hpp"
#include "bergman/metric.hpp"
#include "bergman/specialfn.hpp"

namespace bergman::cli {

namespace {

using cd = std::complex<double>;

double tol_or(const RunConfig& c, double fallback) { return c.tol > 0.0 ? c.tol : fallback; }

std::string point_text(cd z) { return format_number(z.real()) + "," + format_number(z.imag()); }

// G_{alpha,beta}(1) by shifting alpha upward with the contiguous relation
// (alpha+beta+2) G_{alpha+1,beta}(1) = (alpha+2) G_{alpha,beta}(1) and summing the
// coefficient series where it decays like n^{-6} or faster.
double g_at_one_by_series(double alpha, double beta) {
  if (beta == 0.0) return 1.0;
  double factor = 1.0;
  double a = alpha;
  while (a < 3.0) {
    factor *= (a + beta + 2.0) / (a + 2.0);
    a += 1.0;
  }
  double sum = 1.0, poch = 1.0;
  for (long n = 1; n < 200000; ++n) {
    poch *= (n - 2.0 - a) / static_cast<double>(n);
    sum += beta / (n + beta) * poch;
    if (poch == 0.0) break;
  }
  return factor * sum;
}

void add_check_row(Report& r, const std::string& check, double alpha, double beta, double residual, double tol) {
  const bool ok = std::isfinite(residual) && residual <= tol;
  r.table.rows.push_back({check, alpha, beta, residual, tol, ok});
  if (!ok) {
    std::ostringstream os;
    os << check << " at alpha=" << format_number(alpha) << " beta=" << format_number(beta)
       << ": residual " << format_number(residual);
    r.failures.push_back(os.str());
  }
}

// Marks non-finite numeric cells as failures.
void scan_non_finite(Report& r) {
  for (std::size_t i = 0; i < r.table.rows.size(); ++i)
    for (std::size_t j = 0; j < r.table.rows[i].size(); ++j)
      if (const double* v = std::get_if<double>(&r.table.rows[i][j]); v && !std::isfinite(*v))
        r.failures.push_back("non-finite value in row " + std::to_string(i) + ", column " + r.table.columns[j]);
}

std::optional<cd> expected_berezin(const std::string& spec, const Params& p, cd z) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  if (head == "one") return cd(1.0);
  if (head == "re" || head == "im") return parse_function(spec)(z);
  if (head == "monomial") {
    int n = 0, m = 0;
    if (std::sscanf(spec.c_str() + colon + 1, "%d,%d", &n, &m) == 2 && (n == 0 || m == 0))
      return parse_function(spec)(z);
  }
  if (head == "log" && p.alpha == 0.0) {
    const double t = std::norm(z);
    return cd(-(1.0 - t) / (p.beta0 + 1.0 - p.beta0 * t));
  }
  return std::nullopt;
}

}  // namespace

std::string format_number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << t.columns[j];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) os << ",";
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              os << format_number(v);
            } else if constexpr (std::is_same_v<T, bool>) {
              os << (v ? "true" : "false");
            } else if constexpr (std::is_same_v<T, std::string>) {
              if (v.find_first_of(",\"\n") != std::string::npos) {
                std::string q = v;
                for (std::size_t k = q.find('"'); k != std::string::npos; k = q.find('"', k + 2)) q.insert(k, "\"");
                os << '"' << q << '"';
              } else {
                os << v;
              }
            } else {
              os << v;
            }
          },
          row[j]);
    }
    os << "\n";
  }
  return os.str();
}

std::string to_json(const Table& t) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t j = 0; j < row.size(); ++j) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              const std::string s = format_number(v);
              obj[t.columns[j]] = s.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(std::stod(s));
            } else {
              obj[t.columns[j]] = v;
            }
          },
          row[j]);
    }
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

TestFunction parse_function(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto numbers = [&](std::size_t count) {
    std::vector<double> out;
    std::stringstream ss(args);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    if (out.size() != count) throw std::invalid_argument("function '" + spec + "' expects " + std::to_string(count) + " argument(s)");
    return out;
  };
  auto as_int = [&](double v) {
    if (std::floor(v) != v) throw std::invalid_argument("function '" + spec + "' expects integer arguments");
    return static_cast<int>(v);
  };
  if (head == "one") return TestFunction::one();
  if (head == "log") return TestFunction::log_mod_sq();
  if (head == "monomial") {
    const auto v = numbers(2);
    return TestFunction::monomial(as_int(v[0]), as_int(v[1]));
  }
  if (head == "gn") return TestFunction::g_n(numbers(1)[0]);
  if (head == "h") {
    const auto v = numbers(2);
    return TestFunction::h_family(v[0], v[1]);
  }
  if (head == "re") return TestFunction::harmonic_re(as_int(numbers(1)[0]));
  if (head == "im") return TestFunction::harmonic_im(as_int(numbers(1)[0]));
  throw std::invalid_argument("unknown function '" + spec + "'");
}

cd parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {std::stod(text), 0.0};
  return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

std::pair<cd, cd> parse_pair(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("pair '" + text + "' must look like x1,y1:x2,y2");
  return {parse_point(text.substr(0, colon)), parse_point(text.substr(colon + 1))};
}

Report cmd_verify_lemma1(const RunConfig& cfg) {
  Report r;
  r.command = "verify-lemma1";
  r.seed = cfg.seed;
  r.table.columns = {"check", "alpha", "beta", "max_residual", "tolerance", "pass"};
  const double tol = tol_or(cfg, 1e-10);
  std::vector<double> alphas{-0.5, 0.0, 1.0, 1.3, 2.0, 3.7}, betas{-0.9, -0.5, -0.1, 0.0};
  if (cfg.alpha_set) alphas = {cfg.alpha};
  if (cfg.beta_set) betas = {cfg.beta};
  std::vector<double> ts;
  for (int i = 0; i < 20; ++i) ts.push_back(0.05 * i);

  for (double al : alphas) {
    for (double be : betas) {
      const Params p = Params::make(al, be), p_a1 = Params::make(al + 1.0, be), p_b1 = Params::make(al, be + 1.0);
      double r1 = 0, r2 = 0, r3 = 0, r4 = 0, r5 = 0, h = 0;
      double prev = -1e300;
      for (double t : ts) {
        const double G = g_eval(p, t), Ga1 = g_eval(p_a1, t), Gb1 = g_eval(p_b1, t);
        r1 = std::max(r1, std::abs(t * g_derivative_series(p, t) - be * (std::pow(1.0 - t, al + 1.0) - G)));
        r2 = std::max(r2, std::abs((al + be + 2.0) * Ga1 - (al + 2.0) * G - be * std::pow(1.0 - t, al + 2.0)));
        r3 = std::max(r3, std::abs(t * Gb1 - (be + 1.0) / (al + be + 2.0) * (G - std::pow(1.0 - t, al + 2.0))));
        const double lower2 = std::pow(1.0 - t, al + 2.0), lower1 = std::pow(1.0 - t, al + 1.0);
        r4 = std::max({r4, std::max(0.0, lower2 - Gb1 - 1e-12), std::max(0.0, lower1 - Gb1 - 1e-12),
                       std::max(0.0, Gb1 - G - 1e-12)});
        if (be <= 0.0) r5 = std::max(r5, std::max(0.0, prev - G));
        prev = G;
        if (al == 0.0) h = std::max(h, std::abs(G - Gb1 - t / ((be + 1.0) * (be + 2.0))));
      }
      add_check_row(r, "identity1", al, be, r1, tol);
      add_check_row(r, "identity2", al, be, r2, tol);
      add_check_row(r, "identity3", al, be, r3, tol);
      add_check_row(r, "inequality4", al, be, r4, tol);
      add_check_row(r, "monotone5", al, be, r5, tol);
      add_check_row(r, "endpoint0", al, be, std::abs(g_eval(p, 0.0) - 1.0), tol);
      const double closed = (al + 1.0) * beta_fn(al + 1.0, be + 1.0);
      add_check_row(r, "endpoint1", al, be, std::abs(g_at_one_by_series(al, be) - closed) / closed, tol);
      if (al == 0.0) add_check_row(r, "h0_spot", al, be, h, tol);
    }
    // G_{alpha,beta}(t) -> (1-t)^{alpha+1} as beta grows; errors must shrink.
    double last = 1e300;
    for (double be : {10.0, 100.0, 1000.0}) {
      const Params p = Params::make(al, be);
      double err = 0.0;
      for (double t : ts) err = std::max(err, std::abs(g_eval(p, t) - std::pow(1.0 - t, al + 1.0)));
      const bool ok = err < last;
      r.table.rows.push_back({std::string("large_beta_limit"), al, be, err, last, ok});
      if (!ok) r.failures.push_back("large_beta_limit not decreasing at alpha=" + format_number(al));
      last = err;
    }
  }
  scan_non_finite(r);
  return r;
}

Report cmd_berezin_eval(const RunConfig& cfg) {
  Report r;
  r.command = "berezin-eval";
  r.seed = cfg.seed;
  r.table.columns = {"function", "alpha", "beta", "z_re", "z_im", "value_re", "value_im", "expected", "error", "pass"};
  const double tol = tol_or(cfg, 1e-8);
  BerezinOptions opt;
  opt.radial_order = cfg.radial_order;
  opt.angular_count = cfg.angular_count;
  const auto ctx = BerezinContext::make(cfg.alpha, cfg.beta, opt);
  const TestFunction f = parse_function(cfg.function);
  std::vector<cd> pts = cfg.points;
  if (pts.empty()) pts = {0.0, 0.3, cd(0.0, 0.5), 0.7, std::polar(0.9, 1.0), 0.95};
  for (cd z : pts) {
    const cd v = berezin_apply(ctx, f, z);
    const auto expected = expected_berezin(cfg.function, ctx.params(), z);
    if (expected) {
      const double err = std::abs(v - *expected);
      const bool ok = err <= tol;
      r.table.rows.push_back({cfg.function, cfg.alpha, cfg.beta, z.real(), z.imag(), v.real(), v.imag(),
                              point_text(*expected), err, ok});
      if (!ok) r.failures.push_back("berezin " + cfg.function + " at " + point_text(z) + ": error " + format_number(err));
    } else {
      r.table.rows.push_back({cfg.function, cfg.alpha, cfg.beta, z.real(), z.imag(), v.real(), v.imag(),
                              std::string("n/a"), std::string("n/a"), true});
    }
  }
  scan_non_finite(r);
  return r;
}

Report cmd_asymptotics(const RunConfig& cfg) {
  Report r;
  r.command = "asymptotics";
  r.seed = cfg.seed;
  r.table.columns = {"alpha", "beta", "c", "d", "class", "radius", "icd", "jcd", "jcd_quadrature",
                     "sandwich_ok", "predicted", "ratio", "pass"};
  const Params p = Params::make(cfg.alpha, cfg.beta).reduced();
  const auto rule = QuadratureRule::build(p, cfg.radial_order, cfg.angular_count);
  const double G1 = g_eval(p, 1.0);
  std::vector<double> ds = cfg.d_set ? std::vector<double>{cfg.d}
                                     : std::vector<double>{p.alpha + 1.0, p.alpha, p.alpha - 1.5};
  std::vector<double> radii = cfg.radii;
  if (radii.empty()) radii = {0.0, 0.2, 0.5, 0.8, 0.9, 0.92, 0.94, 0.96, 0.98, 0.99};
  const double slack = 1e-9;
  for (double d : ds) {
    const AsymptoticClass cls = classify_asymptotic(p.alpha, d);
    const std::string name = cls.kind == AsymptoticClass::Kind::Bounded
                                 ? "bounded"
                                 : (cls.kind == AsymptoticClass::Kind::Logarithmic ? "logarithmic" : "power");
    double lo = 1e300, hi = 0.0;
    for (double rad : radii) {
      const double I = icd_numeric(cfg.c, d, rad, p, rule);
      const double J = jcd_closed(cfg.c, d, rad, p);
      const double Jq = jcd_numeric(cfg.c, d, rad, p, cfg.radial_order);
      const double x = rad * rad;
      double predicted = 1.0;
      if (cls.kind == AsymptoticClass::Kind::Logarithmic) predicted = std::log(1.0 / (1.0 - x));
      if (cls.kind == AsymptoticClass::Kind::Power) predicted = std::pow(1.0 - x, -cls.exponent);
      const double ratio = I / predicted;
      const bool sandwich = J / G1 <= I + slack * std::max(1.0, J) && I <= J + slack * std::max(1.0, J);
      bool ok = sandwich;
      if (rad <= 0.8 + 1e-12 && std::abs(J - Jq) > 1e-8 * J) ok = false;
      if (rad == 0.0 && std::abs(J - beta_fn(cfg.c + 1.0, p.alpha + d + 3.0)) > 1e-12 * J) ok = false;
      if (rad >= 0.9 - 1e-12) {
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
      // The logarithmic prediction vanishes at w = 0.
      const bool blank = rad == 0.0 && cls.kind == AsymptoticClass::Kind::Logarithmic;
      r.table.rows.push_back({p.alpha, p.beta, cfg.c, d, name, rad, I, J, Jq, sandwich,
                              blank ? Cell(std::string("n/a")) : Cell(predicted),
                              blank ? Cell(std::string("n/a")) : Cell(ratio), ok});
      if (!ok) r.failures.push_back("asymptotics " + name + " at |w|=" + format_number(rad));
    }
    if (hi > 0.0 && hi / lo > 3.0)
      r.failures.push_back("asymptotics " + name + ": ratio varies by " + format_number(hi / lo) + " over |w| >= 0.9");
  }
  scan_non_finite(r);
  return r;
}

Report cmd_boundedness(const RunConfig& cfg) {
  Report r;
  r.command = "boundedness";
  r.seed = cfg.seed;
  r.table.columns = {"alpha", "beta", "a", "b", "p", "predicate", "schur", "probe_ratio", "probe_growth", "seed"};
  std::vector<LpSetting> settings;
  const bool any = cfg.alpha_set || cfg.beta_set || cfg.a_set || cfg.b_set || cfg.p_set;
  if (any) {
    settings.push_back(LpSetting::make(cfg.alpha, cfg.beta, cfg.a, cfg.b, cfg.p));
  } else if (cfg.sweep == 0) {
    settings = {LpSetting::make(0, 0, 0, 0, 2), LpSetting::make(0, 0, 0, 0, 1),
                LpSetting::make(1, -0.5, 0.5, -0.6, 1), LpSetting::make(0, -0.5, 0, 0, 2)};
  }
  for (const LpSetting& s : settings) {
    const bool pred = bounded_predicate(s);
    Cell schur = std::string("n/a");
    if (s.p > 1.0) {
      const bool sc = schur_intervals_nonempty(s);
      schur = sc;
      if (sc != pred) r.failures.push_back("predicate and Schur intervals disagree");
    }
    BerezinOptions opt;
    opt.radial_order = cfg.radial_order;
    opt.angular_count = cfg.angular_count;
    const auto ctx = BerezinContext::make(s.alpha, s.beta, opt);
    std::vector<TestFunction> sample{TestFunction::one()};
    const double sh = (s.b + 1.0) / (2.0 * s.p), th = (s.a + 1.0) / (2.0 * s.p);
    if (sh < s.beta + 1.0 && th < s.alpha + 1.0) sample.push_back(TestFunction::h_family(sh, th));
    const ProbeResult pr = empirical_bound_probe(s, ctx, sample);
    r.table.rows.push_back({s.alpha, s.beta, s.a, s.b, s.p, pred, schur, pr.ratio, pr.growth_exponent,
                            static_cast<long long>(cfg.seed)});
  }
  if (cfg.sweep > 0) {
    std::mt19937_64 gen(cfg.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    // Open lower ends: map [0,1) to (lo, hi].
    auto draw = [&](double lo, double hi) { return hi - (hi - lo) * u01(gen); };
    long disagreements = 0;
    for (int i = 0; i < cfg.sweep; ++i) {
      double al = draw(-1.0, 4.0), be = draw(-1.0, 0.0), a = draw(-1.0, 4.0), b = draw(-1.0, 4.0), p = draw(1.0, 5.0);
      if (al <= -1.0 || be <= -1.0 || a <= -1.0 || b <= -1.0 || p <= 1.0) {
        --i;
        continue;
      }
      const LpSetting s = LpSetting::make(al, be, a, b, p);
      const bool pred = bounded_predicate(s), sc = schur_intervals_nonempty(s);
      if (pred != sc) ++disagreements;
      r.table.rows.push_back({al, be, a, b, p, pred, sc, std::string("n/a"), std::string("n/a"),
                              static_cast<long long>(cfg.seed)});
    }
    if (disagreements > 0)
      r.failures.push_back("sweep: " + std::to_string(disagreements) + " disagreement(s) between predicate and Schur test");
  }
  scan_non_finite(r);
  return r;
}

Report cmd_metric(const RunConfig& cfg) {
  Report r;
  r.command = "metric";
  r.seed = cfg.seed;
  r.table.columns = {"alpha", "beta", "z_re", "z_im", "w_re", "w_im", "distance", "reverse_distance",
                     "chord_length", "segments", "radial", "expected", "rel_error", "pass"};
  const double tol = tol_or(cfg, 1e-6);
  const Params p = Params::make(cfg.alpha, cfg.beta);
  auto pairs = cfg.pairs;
  if (pairs.empty())
    pairs = {{0.3, 0.3}, {0.0, 0.6}, {cd(0.5, 0.3), cd(-0.4, 0.6)}, {cd(0.85, -0.3), cd(-0.2, 0.88)}, {-0.5, 0.9}};
  for (const auto& [z, w] : pairs) {
    const GeodesicResult g = geodesic_distance(p, z, w);
    const GeodesicResult gr = geodesic_distance(p, w, z);
    const double chord = z == w ? 0.0 : path_length(p, PathPolyline::make({z, w}), 32);
    bool ok = std::abs(g.distance - gr.distance) <= tol * std::max(1.0, g.distance) && g.distance <= chord + 1e-12;
    Cell expected = std::string("n/a"), rel = std::string("n/a");
    if (p.beta0 == 0.0) {
      const double ex = std::sqrt(p.alpha + 2.0) * std::atanh(std::abs((z - w) / (1.0 - z * std::conj(w))));
      const double re = ex == 0.0 ? g.distance : std::abs(g.distance - ex) / ex;
      expected = ex;
      rel = re;
      ok = ok && re <= tol;
    }
    r.table.rows.push_back({p.alpha, p.beta, z.real(), z.imag(), w.real(), w.imag(), g.distance, gr.distance, chord,
                            static_cast<long long>(g.segments), g.radial, expected, rel, ok});
    if (!ok) r.failures.push_back("metric pair " + point_text(z) + " -> " + point_text(w));
  }
  scan_non_finite(r);
  return r;
}

Report cmd_lipschitz(const RunConfig& cfg) {
  Report r;
  r.command = "lipschitz";
  r.seed = cfg.seed;
  r.table.columns = {"function", "alpha", "beta", "z_re", "z_im", "w_re", "w_im", "lhs", "rhs", "margin",
                     "bmo", "distance", "path_certificate", "path_certificate_max", "pass"};
  const double tol = tol_or(cfg, 1e-8);
  BerezinOptions opt;
  opt.radial_order = cfg.radial_order;
  opt.angular_count = cfg.angular_count;
  const auto ctx = BerezinContext::make(cfg.alpha, cfg.beta, opt);
  const Params p = Params::make(cfg.alpha, cfg.beta);
  const TestFunction f = parse_function(cfg.function);
  if (!f.bounded()) throw DomainError("lipschitz: the function must be bounded");
  auto pairs = cfg.pairs;
  if (pairs.empty())
    pairs = {{0.0, 0.5}, {cd(0.0, 0.3), cd(-0.4, 0.2)}, {0.6, 0.6}, {cd(0.2, 0.1), cd(0.7, -0.3)}};
  LipschitzOptions lo;
  lo.bmo = bmo_norm(ctx, f, default_bmo_grid());
  for (const auto& [z, w] : pairs) {
    const LipschitzReport rep = lipschitz_check(ctx, p, f, z, w, lo);
    const bool ok = rep.margin >= -tol && rep.lhs <= rep.path_certificate + tol;
    r.table.rows.push_back({cfg.function, cfg.alpha, cfg.beta, z.real(), z.imag(), w.real(), w.imag(), rep.lhs,
                            rep.rhs, rep.margin, rep.bmo, rep.distance, rep.path_certificate,
                            rep.path_certificate_max, ok});
    if (!ok) r.failures.push_back("lipschitz pair " + point_text(z) + " -> " + point_text(w));
  }
  scan_non_finite(r);
  return r;
}

Report cmd_verify_all(const RunConfig& cfg) {
  Report r;
  r.command = "verify-all";
  r.seed = cfg.seed;
  r.table.columns = {"command", "label", "rows", "failures", "seconds", "pass"};
  auto record = [&](const std::string& label, const std::function<Report()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    const Report sub = fn();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.table.rows.push_back({sub.command, label, static_cast<long long>(sub.table.rows.size()),
                            static_cast<long long>(sub.failures.size()), secs, sub.failures.empty()});
    for (const auto& f : sub.failures) r.failures.push_back(sub.command + " [" + label + "]: " + f);
  };
  RunConfig base = cfg;
  base.alpha_set = base.beta_set = base.a_set = base.b_set = base.p_set = false;
  base.tol = 0.0;
  base.points.clear();
  base.pairs.clear();
  base.radii.clear();

  record("lemma1 grid", [&] { return cmd_verify_lemma1(base); });
  for (const std::string fn : {"one", "re:3", "im:2", "monomial:0,2"}) {
    RunConfig c = base;
    c.function = fn;
    c.alpha = 1.3;
    c.beta = -0.5;
    record(fn, [&] { return cmd_berezin_eval(c); });
  }
  for (double be : {-0.9, -0.5, -0.1}) {
    RunConfig c = base;
    c.function = "log";
    c.alpha = 0.0;
    c.beta = be;
    c.points = {0.0, 0.3, cd(0.0, 0.5), 0.7};
    record("log beta=" + format_number(be), [&] { return cmd_berezin_eval(c); });
  }
  {
    RunConfig c = base;
    c.alpha = 1.0;
    c.beta = -0.5;
    record("alpha=1 beta=-0.5", [&] { return cmd_asymptotics(c); });
  }
  {
    RunConfig c = base;
    c.sweep = 0;
    record("classical rows", [&] { return cmd_boundedness(c); });
    c.sweep = 5000;
    record("sweep 5000", [&] {
      RunConfig s = c;
      s.alpha_set = false;
      Report rep = cmd_boundedness(s);
      return rep;
    });
  }
  {
    RunConfig c = base;
    c.alpha = 1.0;
    c.beta = 0.0;
    record("beta=0 closed form", [&] { return cmd_metric(c); });
    c.alpha = 1.3;
    c.beta = -0.5;
    record("alpha=1.3 beta=-0.5", [&] { return cmd_metric(c); });
  }
  {
    RunConfig c = base;
    c.alpha = 0.0;
    c.beta = -0.5;
    c.function = "monomial:1,1";
    record("monomial:1,1", [&] { return cmd_lipschitz(c); });
    c.function = "re:2";
    record("re:2", [&] { return cmd_lipschitz(c); });
  }
  return r;
}

Report run_command(const RunConfig& cfg) {
  if (cfg.command == "verify-lemma1") return cmd_verify_lemma1(cfg);
  if (cfg.command == "berezin-eval") return cmd_berezin_eval(cfg);
  if (cfg.command == "asymptotics") return cmd_asymptotics(cfg);
  if (cfg.command == "boundedness") return cmd_boundedness(cfg);
  if (cfg.command == "metric") return cmd_metric(cfg);
  if (cfg.command == "lipschitz") return cmd_lipschitz(cfg);
  if (cfg.command == "verify-all") return cmd_verify_all(cfg);
  throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"Numerics for the modified Bergman kernel, its Berezin transform and the Bergman-Poincare metric"};
  app.require_subcommand(1, 1);
  RunConfig cfg;
  std::string format = "csv";
  std::vector<std::string> point_args, pair_args;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"verify-lemma1", "Check the G-function identities and inequalities on the parameter grid"},
      {"berezin-eval", "Evaluate the Berezin transform of a test function at points"},
      {"asymptotics", "Tabulate I_{c,d}, J_{c,d} and the growth prediction on a radius ladder"},
      {"boundedness", "Boundedness predicate, Schur intervals and an empirical norm probe"},
      {"metric", "Geodesic distances for pairs of points"},
      {"lipschitz", "Lipschitz estimate for the Berezin transform with path certificates"},
      {"verify-all", "Run every verification suite with default settings"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--alpha", cfg.alpha, "weight exponent alpha > -1");
    sub->add_option("--beta", cfg.beta, "weight exponent beta > -1");
    sub->add_option("--a", cfg.a, "target weight exponent a > -1");
    sub->add_option("--b", cfg.b, "target weight exponent b > -1");
    sub->add_option("--p", cfg.p, "Lebesgue exponent p >= 1");
    sub->add_option("--radial-order", cfg.radial_order, "radial Gauss-Jacobi nodes")->check(CLI::Range(2, 4000));
    sub->add_option("--angular-count", cfg.angular_count, "angular nodes")->check(CLI::Range(4, 1 << 16));
    sub->add_option("--tol", cfg.tol, "tolerance override")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for random sweeps");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--function", cfg.function, "one | monomial:n,m | gn:N | log | h:s,tau | re:n | im:n");
    sub->add_option("--points", point_args, "evaluation points x,y");
    sub->add_option("--pairs", pair_args, "point pairs x1,y1:x2,y2");
    sub->add_option("--c", cfg.c, "radial exponent c > -1");
    sub->add_option("--d", cfg.d, "boundary exponent d");
    sub->add_option("--radii", cfg.radii, "radius ladder");
    sub->add_option("--sweep", cfg.sweep, "number of random settings")->check(CLI::NonNegativeNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  cfg.alpha_set = sub->count("--alpha") > 0;
  cfg.beta_set = sub->count("--beta") > 0;
  cfg.a_set = sub->count("--a") > 0;
  cfg.b_set = sub->count("--b") > 0;
  cfg.p_set = sub->count("--p") > 0;
  cfg.d_set = sub->count("--d") > 0;
  cfg.format = format == "json" ? Format::Json : Format::Csv;

  try {
    for (const auto& s : point_args) cfg.points.push_back(parse_point(s));
    for (const auto& s : pair_args) cfg.pairs.push_back(parse_pair(s));
    const Report rep = run_command(cfg);
    const std::string text = cfg.format == Format::Json ? to_json(rep.table) : to_csv(rep.table);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream os(cfg.out);
      if (!os) throw std::runtime_error("cannot open " + cfg.out);
      os << text;
    }
    for (const auto& f : rep.failures) std::cerr << "FAIL: " << f << "\n";
    std::cerr << rep.command << ": " << rep.table.rows.size() << " row(s), " << rep.failures.size()
              << " failure(s), seed " << rep.seed << "\n";
    return rep.failures.empty() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace bergman::cli
