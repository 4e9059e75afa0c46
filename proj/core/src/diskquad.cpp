#include "bergman/diskquad.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "bergman/errors.hpp"
#include "bergman/specialfn.hpp"

namespace bergman {

namespace {

std::shared_ptr<const JacobiRule> build_jacobi(double a, double b, int n) {
  // Recurrence coefficients of the monic orthogonal polynomials in t.
  std::vector<double> diag(n), off(n > 0 ? n - 1 : 0);
  const double ab = a + b;
  for (int k = 0; k < n; ++k) {
    double alpha_k;
    if (k == 0) {
      alpha_k = (b - a) / (ab + 2.0);
    } else {
      const double m = 2.0 * k + ab;
      alpha_k = (b * b - a * a) / (m * (m + 2.0));
    }
    diag[k] = 0.5 * (1.0 + alpha_k);
  }
  for (int k = 1; k < n; ++k) {
    double beta_k;
    if (k == 1) {
      beta_k = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double m = 2.0 * k + ab;
      beta_k = 4.0 * k * (k + a) * (k + b) * (k + ab) / (m * m * (m + 1.0) * (m - 1.0));
    }
    off[k - 1] = 0.5 * std::sqrt(beta_k);
  }

  Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(diag.data(), n);
  Eigen::VectorXd e = Eigen::Map<Eigen::VectorXd>(off.data(), n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw BuildError("Golub-Welsch eigensolver failed");

  auto rule = std::make_shared<JacobiRule>();
  rule->a = a;
  rule->b = b;
  rule->nodes.resize(n);
  rule->weights.resize(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    rule->nodes[i] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    rule->weights[i] = v * v;
    total += rule->weights[i];
  }
  for (int i = 0; i < n; ++i) {
    if (!(rule->nodes[i] > 0.0 && rule->nodes[i] < 1.0) || !(rule->weights[i] > 0.0))
      throw BuildError("Jacobi rule produced a node outside (0,1) or a non-positive weight");
    if (i > 0 && !(rule->nodes[i] > rule->nodes[i - 1]))
      throw BuildError("Jacobi nodes are not strictly increasing");
  }
  if (std::abs(total - 1.0) > 1e-12) throw BuildError("Jacobi weights do not sum to one");

  // Moments of log t and log^2 t against the orthonormal polynomials p_k.
  const double lb0 = log_beta(a + 1.0, b + 1.0);
  const double psi_b = digamma(b + 1.0);
  std::vector<double> L1(n), L2(n);
  L1[0] = psi_b - digamma(ab + 2.0);
  L2[0] = L1[0] * L1[0] + trigamma(b + 1.0) - trigamma(ab + 2.0);
  double harmonic = 0.0;  // H_{k-1}
  for (int k = 1; k < n; ++k) {
    const double log_norm_sq = log_gamma(k + 1.0) + log_gamma(2.0 * k + ab + 1.0) -
                               log_gamma(k + ab + 1.0) + log_beta(b + k + 1.0, a + k + 1.0) - lb0;
    const double log_mag = log_gamma(static_cast<double>(k)) + log_beta(b + 1.0, a + k + 1.0) - lb0 -
                           0.5 * log_norm_sq;
    const double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k+1}
    const double base = std::exp(log_mag);
    L1[k] = sign * base;
    L2[k] = 2.0 * sign * base * (psi_b - digamma(ab + k + 2.0) - harmonic);
    harmonic += 1.0 / k;
  }

  rule->log_weights.assign(n, 0.0);
  rule->log2_weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double t = rule->nodes[i];
    double prev = 0.0, cur = 1.0;
    double s1 = L1[0], s2 = L2[0];
    for (int k = 0; k + 1 < n; ++k) {
      const double next = ((t - diag[k]) * cur - (k > 0 ? off[k - 1] * prev : 0.0)) / off[k];
      prev = cur;
      cur = next;
      s1 += cur * L1[k + 1];
      s2 += cur * L2[k + 1];
    }
    rule->log_weights[i] = rule->weights[i] * s1;
    rule->log2_weights[i] = rule->weights[i] * s2;
  }
  return rule;
}

bool is_nonneg_integer(double x) { return x >= 0.0 && std::floor(x) == x; }

}  // namespace

std::shared_ptr<const JacobiRule> jacobi_rule(double a, double b, int n) {
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("jacobi_rule: parameters must exceed -1");
  if (n < 1) throw DomainError("jacobi_rule: need at least one node");
  static std::mutex mutex;
  static std::map<std::tuple<double, double, int>, std::shared_ptr<const JacobiRule>> cache;
  const auto key = std::make_tuple(a, b, n);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto rule = build_jacobi(a, b, n);
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

double RadialFactor::operator()(double t) const {
  double v = 1.0;
  if (t_power != 0.0) v *= std::pow(t, t_power);
  if (one_minus_t_power != 0.0) v *= std::pow(1.0 - t, one_minus_t_power);
  if (log_power != 0) v *= std::pow(std::log(t), log_power);
  return v;
}

ModalFunction::ModalFunction(std::vector<Mode> modes) : modes_(std::move(modes)) { merge(); }

void ModalFunction::merge() {
  std::vector<Mode> out;
  for (const Mode& m : modes_) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Mode& o) {
      return o.k == m.k && o.radial == m.radial;
    });
    if (it == out.end()) {
      out.push_back(m);
    } else {
      it->coeff += m.coeff;
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Mode& m) { return m.coeff == 0.0; }),
            out.end());
  modes_ = std::move(out);
}

std::complex<double> ModalFunction::operator()(std::complex<double> z) const {
  const double t = std::norm(z);
  const double theta = std::arg(z);
  std::complex<double> sum = 0.0;
  for (const Mode& m : modes_) sum += m.coeff * std::polar(1.0, m.k * theta) * m.radial(t);
  return sum;
}

ModalFunction ModalFunction::conj() const {
  std::vector<Mode> out = modes_;
  for (Mode& m : out) {
    m.k = -m.k;
    m.coeff = std::conj(m.coeff);
  }
  return ModalFunction(std::move(out));
}

ModalFunction ModalFunction::operator*(const ModalFunction& o) const {
  std::vector<Mode> out;
  for (const Mode& x : modes_)
    for (const Mode& y : o.modes_) {
      Mode m;
      m.k = x.k + y.k;
      m.coeff = x.coeff * y.coeff;
      m.radial.t_power = x.radial.t_power + y.radial.t_power;
      m.radial.one_minus_t_power = x.radial.one_minus_t_power + y.radial.one_minus_t_power;
      m.radial.log_power = x.radial.log_power + y.radial.log_power;
      out.push_back(m);
    }
  return ModalFunction(std::move(out));
}

ModalFunction ModalFunction::operator+(const ModalFunction& o) const {
  std::vector<Mode> out = modes_;
  out.insert(out.end(), o.modes_.begin(), o.modes_.end());
  return ModalFunction(std::move(out));
}

ModalFunction ModalFunction::scaled(std::complex<double> c) const {
  std::vector<Mode> out = modes_;
  for (Mode& m : out) m.coeff *= c;
  return ModalFunction(std::move(out));
}

namespace {

ModalFunction single(int k, std::complex<double> c, double p, double q, int L) {
  Mode m;
  m.k = k;
  m.coeff = c;
  m.radial = RadialFactor{p, q, L};
  return ModalFunction({m});
}

}  // namespace

TestFunction TestFunction::monomial(int n, int m) {
  if (n < 0 || m < 0) throw DomainError("monomial: exponents must be non-negative");
  TestFunction f;
  f.tag_ = Tag::Monomial;
  f.modal_ = single(n - m, 1.0, 0.5 * (n + m), 0.0, 0);
  f.label_ = "monomial(" + std::to_string(n) + "," + std::to_string(m) + ")";
  return f;
}

TestFunction TestFunction::one_minus_mod_sq_pow(double N) {
  TestFunction f;
  f.tag_ = Tag::OneMinusModSqPow;
  f.modal_ = single(0, 1.0, 0.0, N, 0);
  f.bounded_ = N >= 0.0;
  f.label_ = "one_minus_mod_sq_pow(" + std::to_string(N) + ")";
  return f;
}

TestFunction TestFunction::log_mod_sq() {
  TestFunction f;
  f.tag_ = Tag::LogModSq;
  f.modal_ = single(0, 1.0, 0.0, 0.0, 1);
  f.bounded_ = false;
  f.label_ = "log_mod_sq";
  return f;
}

TestFunction TestFunction::h_family(double s, double tau) {
  TestFunction f;
  f.tag_ = Tag::HFamily;
  f.modal_ = single(0, 1.0, -s, -tau, 0);
  f.bounded_ = s <= 0.0 && tau <= 0.0;
  f.label_ = "h(" + std::to_string(s) + "," + std::to_string(tau) + ")";
  return f;
}

TestFunction TestFunction::g_n(double N) {
  if (!(N >= 0.0)) throw DomainError("g_n: N must be non-negative");
  TestFunction f = one_minus_mod_sq_pow(N);
  f.tag_ = Tag::GN;
  f.label_ = "g(" + std::to_string(N) + ")";
  return f;
}

TestFunction TestFunction::harmonic_re(int n) {
  if (n < 0) throw DomainError("harmonic_re: n must be non-negative");
  TestFunction f;
  f.tag_ = Tag::HarmonicReZn;
  f.modal_ = single(n, 0.5, 0.5 * n, 0.0, 0) + single(-n, 0.5, 0.5 * n, 0.0, 0);
  f.label_ = "re(z^" + std::to_string(n) + ")";
  return f;
}

TestFunction TestFunction::harmonic_im(int n) {
  if (n < 0) throw DomainError("harmonic_im: n must be non-negative");
  TestFunction f;
  f.tag_ = Tag::HarmonicImZn;
  const std::complex<double> half_i(0.0, 0.5);
  f.modal_ = single(n, -half_i, 0.5 * n, 0.0, 0) + single(-n, half_i, 0.5 * n, 0.0, 0);
  f.label_ = "im(z^" + std::to_string(n) + ")";
  return f;
}

TestFunction TestFunction::callable(Callback cb, bool bounded, std::string label) {
  TestFunction f;
  f.tag_ = Tag::Callable;
  f.callback_ = std::move(cb);
  f.bounded_ = bounded;
  f.label_ = std::move(label);
  return f;
}

TestFunction TestFunction::modal(ModalFunction m, std::string label) {
  TestFunction f;
  f.tag_ = Tag::Modal;
  f.bounded_ = true;
  for (const Mode& md : m.modes())
    if (md.radial.t_power < 0.0 || md.radial.one_minus_t_power < 0.0 || md.radial.log_power != 0)
      f.bounded_ = false;
  f.modal_ = std::move(m);
  f.label_ = std::move(label);
  return f;
}

std::complex<double> TestFunction::operator()(std::complex<double> z) const {
  if (modal_) return (*modal_)(z);
  return callback_(z);
}

TestFunction TestFunction::abs_squared() const {
  if (modal_) {
    TestFunction f = modal(modal_->abs_squared(), "|" + label_ + "|^2");
    f.bounded_ = bounded_;
    return f;
  }
  Callback cb = callback_;
  return callable([cb](std::complex<double> z) { return std::complex<double>(std::norm(cb(z))); },
                  bounded_, "|" + label_ + "|^2");
}

TestFunction TestFunction::times_monomial(int k, int n) const {
  const TestFunction mono = monomial(k, n);
  if (modal_) {
    TestFunction f = modal(*modal_ * *mono.modal(), label_ + "*" + mono.label());
    f.bounded_ = bounded_;
    return f;
  }
  Callback cb = callback_;
  return callable(
      [cb, k, n](std::complex<double> z) { return cb(z) * std::pow(z, k) * std::pow(std::conj(z), n); },
      bounded_, label_ + "*" + mono.label());
}

QuadratureRule QuadratureRule::build(const Params& params, int radial_order, int angular_count) {
  if (radial_order < 2) throw DomainError("radial_order must be at least 2");
  if (angular_count < 4) throw DomainError("angular_count must be at least 4");
  QuadratureRule r;
  r.params_ = params;
  r.angular_count_ = angular_count;
  r.radial_ = jacobi_rule(params.alpha, params.beta, radial_order);
  return r;
}

std::complex<double> weighted_radial_integral(double a, double b, int n, const RadialFactor& R,
                                              const std::function<std::complex<double>(double)>& g) {
  const double a2 = a + R.one_minus_t_power, b2 = b + R.t_power;
  if (!(a2 > -1.0) || !(b2 > -1.0))
    throw IntegrabilityError("radial factor is not integrable against the weight");
  if (R.log_power < 0 || R.log_power > 2)
    throw DomainError("only log powers 0, 1 and 2 are supported");
  const auto rule = jacobi_rule(a2, b2, n);
  const std::vector<double>& w =
      R.log_power == 0 ? rule->weights : (R.log_power == 1 ? rule->log_weights : rule->log2_weights);
  std::complex<double> sum = 0.0;
  for (int i = 0; i < n; ++i) sum += w[i] * g(rule->nodes[i]);
  const double scale =
      (a2 == a && b2 == b) ? 1.0 : std::exp(log_beta(b2 + 1.0, a2 + 1.0) - log_beta(b + 1.0, a + 1.0));
  return scale * sum;
}

std::complex<double> QuadratureRule::radial_integral(
    const RadialFactor& R, const std::function<std::complex<double>(double)>& g,
    double extra_t_power) const {
  if (!(params_.beta + R.t_power > -1.0) || !(params_.alpha + R.one_minus_t_power > -1.0))
    throw IntegrabilityError("radial factor is not integrable against mu");
  RadialFactor shifted = R;
  shifted.t_power += extra_t_power;
  return weighted_radial_integral(params_.alpha, params_.beta, radial_order(), shifted, g);
}

std::complex<double> QuadratureRule::grid_sum(
    const std::function<std::complex<double>(std::complex<double>)>& f, double angle_offset) const {
  const int M = angular_count_;
  std::vector<std::complex<double>> phases(M);
  for (int j = 0; j < M; ++j) phases[j] = std::polar(1.0, angle_offset + 2.0 * std::numbers::pi * j / M);
  std::complex<double> total = 0.0;
  for (int i = 0; i < radial_order(); ++i) {
    const double r = std::sqrt(radial_->nodes[i]);
    std::complex<double> ring = 0.0;
    for (int j = 0; j < M; ++j) ring += f(r * phases[j]);
    total += radial_->weights[i] * ring / static_cast<double>(M);
  }
  return total;
}

namespace {

bool grid_friendly(const ModalFunction& f) {
  for (const Mode& m : f.modes()) {
    if (m.radial.log_power != 0 || !is_nonneg_integer(m.radial.one_minus_t_power)) return false;
    if (m.k == 0 && !is_nonneg_integer(m.radial.t_power)) return false;
  }
  return true;
}

}  // namespace

std::complex<double> disk_integrate(const TestFunction& f, const QuadratureRule& rule) {
  if (!f.modal()) return rule.grid_sum([&](std::complex<double> z) { return f(z); });
  const ModalFunction& m = *f.modal();
  for (const Mode& md : m.modes())
    if (!(rule.params().beta + md.radial.t_power > -1.0) ||
        !(rule.params().alpha + md.radial.one_minus_t_power > -1.0))
      throw IntegrabilityError("integrand is not integrable against mu: " + f.label());
  if (grid_friendly(m)) return rule.grid_sum([&](std::complex<double> z) { return m(z); });
  std::complex<double> total = 0.0;
  for (const Mode& md : m.modes()) {
    if (md.k != 0) continue;
    total += md.coeff * rule.radial_integral(md.radial, [](double) { return std::complex<double>(1.0); });
  }
  return total;
}

std::complex<double> moment(const TestFunction& f, int n, int k, const QuadratureRule& rule) {
  if (n < 0 || k < 0) throw DomainError("moment: indices must be non-negative");
  return disk_integrate(f.times_monomial(k, n), rule);
}

}  // namespace bergman
