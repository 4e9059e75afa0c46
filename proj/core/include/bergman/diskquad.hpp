#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bergman/kernel.hpp"

namespace bergman {

/// Gauss-Jacobi rule on (0,1) for the probability weight t^b (1-t)^a / B(b+1, a+1).
///
/// Besides the ordinary weights it carries product-integration weights for the
/// factors log t and log^2 t, so that sum_i log_weights[i] g(t_i) approximates
/// the integral of g(t) log t against the weight with spectral accuracy for
/// smooth g, even when b is close to -1.
struct JacobiRule {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> log_weights;
  std::vector<double> log2_weights;
};

/// Cached, thread-safe construction by Golub-Welsch. Throws BuildError when the
/// result fails validation and DomainError unless a, b > -1 and n >= 1.
std::shared_ptr<const JacobiRule> jacobi_rule(double a, double b, int n);

/// Radial factor t^p (1-t)^q (log t)^L in the variable t = |z|^2.
struct RadialFactor {
  double t_power = 0.0;
  double one_minus_t_power = 0.0;
  int log_power = 0;

  double operator()(double t) const;
  bool operator==(const RadialFactor& o) const {
    return t_power == o.t_power && one_minus_t_power == o.one_minus_t_power &&
           log_power == o.log_power;
  }
};

/// One angular mode coeff * e^{i k theta} * R(|z|^2).
struct Mode {
  int k = 0;
  std::complex<double> coeff{1.0, 0.0};
  RadialFactor radial;
};

/// Finite sum of modes; closed under products and conjugation.
class ModalFunction {
 public:
  ModalFunction() = default;
  explicit ModalFunction(std::vector<Mode> modes);

  const std::vector<Mode>& modes() const { return modes_; }
  std::complex<double> operator()(std::complex<double> z) const;
  ModalFunction conj() const;
  ModalFunction operator*(const ModalFunction& o) const;
  ModalFunction operator+(const ModalFunction& o) const;
  ModalFunction scaled(std::complex<double> c) const;
  /// |f|^2 as a modal function.
  ModalFunction abs_squared() const { return *this * conj(); }

 private:
  void merge();
  std::vector<Mode> modes_;
};

/// The closed family of integrands used throughout the library.
class TestFunction {
 public:
  enum class Tag {
    Monomial,          // z^n conj(z)^m
    OneMinusModSqPow,  // (1-|z|^2)^N
    LogModSq,          // log |z|^2
    HFamily,           // |z|^{-2s} (1-|z|^2)^{-tau}
    GN,                // (1-|z|^2)^N
    HarmonicReZn,      // Re z^n
    HarmonicImZn,      // Im z^n
    Callable,
    Modal,
  };
  using Callback = std::function<std::complex<double>(std::complex<double>)>;

  static TestFunction one() { return monomial(0, 0); }
  static TestFunction monomial(int n, int m);
  static TestFunction one_minus_mod_sq_pow(double N);
  static TestFunction log_mod_sq();
  static TestFunction h_family(double s, double tau);
  static TestFunction g_n(double N);
  static TestFunction harmonic_re(int n);
  static TestFunction harmonic_im(int n);
  static TestFunction callable(Callback f, bool bounded = true, std::string label = "callable");
  static TestFunction modal(ModalFunction f, std::string label = "modal");

  Tag tag() const { return tag_; }
  std::complex<double> operator()(std::complex<double> z) const;
  /// The modal expansion; empty for Callable.
  const std::optional<ModalFunction>& modal() const { return modal_; }
  /// Whether |f| is bounded on the disk.
  bool bounded() const { return bounded_; }
  const std::string& label() const { return label_; }

  /// |f|^2, kept modal when possible.
  TestFunction abs_squared() const;
  /// f(w) conj(w)^n w^k.
  TestFunction times_monomial(int k, int n) const;

 private:
  Tag tag_ = Tag::Monomial;
  std::optional<ModalFunction> modal_;
  Callback callback_;
  bool bounded_ = true;
  std::string label_;
};

/// Tensor rule for mu_{alpha,beta}: radial Gauss-Jacobi in t = |z|^2 and the
/// uniform M-point angular rule.
class QuadratureRule {
 public:
  static QuadratureRule build(const Params& params, int radial_order = 80, int angular_count = 256);

  const Params& params() const { return params_; }
  int radial_order() const { return static_cast<int>(radial_->nodes.size()); }
  int angular_count() const { return angular_count_; }
  const std::vector<double>& radial_nodes() const { return radial_->nodes; }
  const std::vector<double>& radial_weights() const { return radial_->weights; }
  const JacobiRule& radial() const { return *radial_; }

  /// integral of R(t) g(t) against the radial part of mu with R absorbed into
  /// the weight. Throws IntegrabilityError if R is not integrable.
  std::complex<double> radial_integral(const RadialFactor& R,
                                       const std::function<std::complex<double>(double)>& g,
                                       double extra_t_power = 0.0) const;

  /// Two-dimensional tensor sum of f over the disk nodes.
  std::complex<double> grid_sum(const std::function<std::complex<double>(std::complex<double>)>& f,
                                double angle_offset = 0.0) const;

 private:
  Params params_;
  int angular_count_ = 0;
  std::shared_ptr<const JacobiRule> radial_;
};

/// Integrates R(t) g(t) against t^b (1-t)^a / B(b+1, a+1) on (0,1) by folding R
/// into a shifted Jacobi rule of n nodes.
std::complex<double> weighted_radial_integral(double a, double b, int n, const RadialFactor& R,
                                              const std::function<std::complex<double>(double)>& g);

/// Integral of f against mu_{alpha,beta}. Smooth modal integrands go through the
/// tensor rule; singular radial factors go through shifted one-dimensional rules;
/// Callable integrands use the tensor rule.
std::complex<double> disk_integrate(const TestFunction& f, const QuadratureRule& rule);

/// integral of f(w) conj(w)^n w^k d mu(w).
std::complex<double> moment(const TestFunction& f, int n, int k, const QuadratureRule& rule);

}  // namespace bergman
