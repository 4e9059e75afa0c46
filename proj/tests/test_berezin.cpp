#include <doctest.h>

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "bergman/berezin.hpp"
#include "bergman/errors.hpp"
#include "bergman/specialfn.hpp"
#include "oracles.hpp"

using namespace bergman;
using cd = std::complex<double>;

TEST_CASE("normalization and harmonic fixed points") {
  oracle::Gen gen(99);
  for (double al : {-0.5, 0.0, 1.3})
    for (double be : {-0.9, -0.3, 0.0}) {
      const auto ctx = BerezinContext::make(al, be);
      for (double r : {0.0, 0.5, 0.9, 0.95})
        CHECK(std::abs(berezin_apply(ctx, TestFunction::one(), std::polar(r, 0.3)) - 1.0) < 1e-10);
      for (int i = 0; i < 5; ++i) {
        const cd z = gen.point(0.9);
        for (int n = 0; n <= 4; ++n) {
          CHECK(std::abs(berezin_apply(ctx, TestFunction::harmonic_re(n), z) - std::pow(z, n).real()) < 1e-8);
          CHECK(std::abs(berezin_apply(ctx, TestFunction::harmonic_im(n), z) - std::pow(z, n).imag()) < 1e-8);
        }
        CHECK(std::abs(berezin_apply(ctx, TestFunction::monomial(3, 0), z) - std::pow(z, 3)) < 1e-8);
      }
    }
}

TEST_CASE("three evaluation routes agree") {
  const auto ctx = BerezinContext::make(1.3, -0.5);
  const auto f = TestFunction::monomial(2, 1);
  const auto g = TestFunction::monomial(1, 1);
  for (cd z : {cd(0.0), cd(0.3, 0.2), cd(-0.6, 0.1)}) {
    const cd a = berezin_apply(ctx, f, z), b = berezin_apply_grid(ctx, f, z), c = berezin_from_moments(ctx, f, z, 80);
    CHECK(std::abs(a - b) < 1e-11);
    CHECK(std::abs(a - c) < 1e-10);
    CHECK(std::abs(berezin_apply(ctx, g, z) - berezin_apply_grid(ctx, g, z)) < 1e-11);
  }
}

TEST_CASE("transform matches two-dimensional quadrature") {
  const double al = 0.7, be = -0.4;
  const auto ctx = BerezinContext::make(al, be);
  const cd z(0.45, -0.3);
  SUBCASE("smooth modal function") {
    const auto f = TestFunction::monomial(1, 2);
    const cd ref = oracle::berezin([](cd w) { return w * std::conj(w) * std::conj(w); }, al, be, z, 128);
    CHECK(std::abs(berezin_apply(ctx, f, z) - ref) < 1e-10);
  }
  SUBCASE("callable function") {
    auto h = [](cd w) { return std::exp(w.real()) * std::cos(w.imag()); };
    const cd ref = oracle::berezin(h, al, be, z, 128);
    CHECK(std::abs(berezin_apply(ctx, TestFunction::callable(h), z) - ref) < 1e-10);
  }
  SUBCASE("singular radial factor") {
    const auto f = TestFunction::h_family(0.3, 0.6);
    // The singular factor moves into the weight: mu_{al,be} h = B(al-0.6+1, be-0.3+1)/B(al+1, be+1) mu_{al-0.6, be-0.3}.
    const double Kz = oracle::kernel(al, be, std::norm(z)).real();
    const cd ref = beta_fn(al - 0.6 + 1, be - 0.3 + 1) / beta_fn(al + 1, be + 1) *
                   oracle::disk_integral([&](cd w) { return std::norm(oracle::kernel(al, be, z * std::conj(w))) / Kz; }, al - 0.6, be - 0.3, 128);
    CHECK(std::abs(berezin_apply(ctx, f, z) - ref) < 1e-8 * std::abs(ref));
  }
}

TEST_CASE("log |w|^2 is not fixed") {
  for (double be : {-0.9, -0.5, -0.1}) {
    const auto ctx = BerezinContext::make(0.0, be);
    for (cd z : {cd(0.0), cd(0.3), cd(0.0, 0.5), cd(0.7)}) {
      const double t = std::norm(z);
      const cd v = berezin_apply(ctx, TestFunction::log_mod_sq(), z);
      CHECK(std::abs(v - (-(1 - t) / (be + 1 - be * t))) < 1e-8);
    }
    const cd ref = oracle::berezin([](cd w) { return cd(std::log(std::norm(w))); }, 0.0, be, 0.3, 64);
    CHECK(std::abs(berezin_apply(ctx, TestFunction::log_mod_sq(), 0.3) - ref) < 1e-9);
    CHECK(std::abs(berezin_apply(ctx, TestFunction::log_mod_sq(), 0.5).real() - std::log(0.25)) > 0.1);
  }
}

TEST_CASE("the reduced pair defines the transform") {
  const auto a = BerezinContext::make(0.5, 1.6);
  CHECK(a.params().beta == doctest::Approx(-0.4));
  CHECK(a.requested().beta == 1.6);
  const auto b = BerezinContext::make(0.5, -0.4);
  const cd z(0.2, 0.6);
  CHECK(std::abs(berezin_apply(a, TestFunction::monomial(2, 2), z) - berezin_apply(b, TestFunction::monomial(2, 2), z)) < 1e-14);
}

TEST_CASE("domain and accuracy errors") {
  const auto ctx = BerezinContext::make(0.0, -0.5);
  CHECK_THROWS_AS(berezin_apply(ctx, TestFunction::one(), 1.0), DomainError);
  CHECK_THROWS_AS(berezin_apply(ctx, TestFunction::one(), 0.995), QuadratureAccuracyError);
  CHECK_THROWS_AS(berezin_apply(ctx, TestFunction::h_family(0.6, 0.0), 0.3), IntegrabilityError);
  BerezinOptions bad;
  bad.max_radius = 1.0;
  CHECK_THROWS_AS(BerezinContext::make(0.0, 0.0, bad), DomainError);
}

TEST_CASE("adjoint against direct quadrature") {
  SUBCASE("g = 1 on the unweighted disk") {
    const auto ctx = BerezinContext::make(0.0, 0.0);
    CHECK(berezin_adjoint_apply(ctx, TestFunction::one(), 0.0, 0.0, 0.0).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("general weights") {
    const double al = 1.0, be = -0.5, a = 0.5, b = -0.6;
    const auto ctx = BerezinContext::make(al, be);
    const cd w(0.4, 0.2);
    const double tw = std::norm(w);
    const double factor = beta_fn(a + 1, b + 1) / beta_fn(al + 1, be + 1) * std::pow(tw, be - b) * std::pow(1 - tw, al - a);
    auto integrand = [&](cd z) {
      return std::norm(z) * std::norm(oracle::kernel(al, be, z * std::conj(w))) / oracle::kernel(al, be, std::norm(z)).real();
    };
    // 1/K(|z|^2) decays like (1-|z|^2)^{alpha+2}; the tail beyond |z|^2 = 0.999 is below 1e-13.
    const cd ref = factor * oracle::disk_integral(integrand, a, b, 128, 0.999);
    CHECK(std::abs(berezin_adjoint_apply(ctx, TestFunction::monomial(1, 1), w, a, b) - ref) < 1e-10 * std::abs(ref));
    CHECK_THROWS_AS(berezin_adjoint_apply(ctx, TestFunction::one(), 0.0, a, 0.0), SingularArgument);
  }
}

TEST_CASE("mean oscillation") {
  const double al = 1.0, be = -0.5;
  const auto ctx = BerezinContext::make(al, be);
  CHECK(mean_oscillation(ctx, TestFunction::one(), 0.4) == doctest::Approx(0.0).scale(1.0).epsilon(1e-7));
  CHECK(mean_oscillation(ctx, TestFunction::monomial(1, 0), 0.0) == doctest::Approx(std::sqrt((be + 1) / (al + be + 2))).epsilon(1e-12));

  // (1/2K^2) double integral of |f(u)-f(v)|^2 |K(z conj u)|^2 |K(z conj v)|^2, with
  // t = x^2 removing the |u|^{-1} weight and Gauss-Legendre in x.
  auto double_integral = [&](const std::function<cd(cd)>& f, cd z) {
    const int N = 24, M = 48;
    std::vector<cd> pts;
    std::vector<double> wts;
    const auto& nodes = boost::math::quadrature::gauss<double, N>::abscissa();
    const auto& weights = boost::math::quadrature::gauss<double, N>::weights();
    auto push = [&](double x, double w) {
      const double t = x * x;
      // d mu = t^{-1/2}(1-t) dt/B(2, 1/2) dphi/2pi = 2(1-t) dx/B dphi/2pi
      const double mass = w * 0.5 * 2.0 * (1 - t) / beta_fn(al + 1, be + 1);
      for (int j = 0; j < M; ++j) {
        pts.push_back(std::polar(x, 2 * M_PI * (j + 0.5) / M));
        wts.push_back(mass / M);
      }
    };
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double w = weights[i];
      if (nodes[i] == 0.0) {
        push(0.5, w);
      } else {
        push(0.5 + 0.5 * nodes[i], w);
        push(0.5 - 0.5 * nodes[i], w);
      }
    }
    std::vector<double> kk(pts.size());
    std::vector<cd> fv(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      kk[i] = std::norm(oracle::kernel(al, be, z * std::conj(pts[i])));
      fv[i] = f(pts[i]);
    }
    long double acc = 0.0L;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < pts.size(); ++j) acc += wts[i] * wts[j] * std::norm(fv[i] - fv[j]) * kk[i] * kk[j];
    const double K = oracle::kernel(al, be, std::norm(z)).real();
    return static_cast<double>(acc) / (2 * K * K);
  };
  for (cd z : {cd(0.0), cd(0.5, 0.2)}) {
    const double mo = mean_oscillation(ctx, TestFunction::monomial(1, 1), z);
    CHECK(mo * mo == doctest::Approx(double_integral([](cd w) { return cd(std::norm(w)); }, z)).epsilon(1e-8));
    const double mo2 = mean_oscillation(ctx, TestFunction::harmonic_re(2), z);
    CHECK(mo2 * mo2 == doctest::Approx(double_integral([](cd w) { return cd((w * w).real()); }, z)).epsilon(1e-8));
  }
}

TEST_CASE("bmo norm and boundary behaviour") {
  const auto ctx = BerezinContext::make(0.0, -0.5);
  const auto grid = default_bmo_grid(8);
  CHECK(grid.size() == 19u * 8u);
  CHECK(bmo_norm(ctx, TestFunction::one(), grid) < 1e-6);
  const double b = bmo_norm(ctx, TestFunction::monomial(1, 1), grid);
  CHECK(b > 0.0);
  CHECK(b >= mean_oscillation(ctx, TestFunction::monomial(1, 1), 0.5));
  CHECK_THROWS_AS(bmo_norm(ctx, TestFunction::one(), {}), DomainError);

  const auto dev1 = boundary_limit_check(ctx, TestFunction::one(), 1.0, {0.9, 0.95, 0.99});
  for (double d : dev1) CHECK(d < 1e-10);
  const auto dev2 = boundary_limit_check(ctx, TestFunction::monomial(1, 0), 1.0, {0.9, 0.95, 0.99});
  CHECK(dev2[0] > dev2[1]);
  CHECK(dev2[1] > dev2[2]);
  const auto dev3 = boundary_limit_check(ctx, TestFunction::monomial(1, 1), std::polar(1.0, 0.4), {0.5, 0.7, 0.9, 0.95, 0.99});
  for (std::size_t i = 1; i < dev3.size(); ++i) CHECK(dev3[i] < dev3[i - 1]);
  CHECK_THROWS_AS(boundary_limit_check(ctx, TestFunction::one(), 0.5, {0.9}), DomainError);
}
