#include <doctest.h>

#include <cmath>

#include "bergman/errors.hpp"
#include "bergman/kernel.hpp"
#include "bergman/specialfn.hpp"
#include "oracles.hpp"

using namespace bergman;
using cd = std::complex<double>;

TEST_CASE("parameter reduction") {
  CHECK(reduce(-0.5).s == 0);
  CHECK(reduce(-0.5).beta0 == -0.5);
  CHECK(reduce(0.0).s == 0);
  CHECK(reduce(2.0).s == 2);
  CHECK(reduce(2.0).beta0 == 0.0);
  CHECK(reduce(2.3).s == 3);
  CHECK(reduce(2.3).beta0 == doctest::Approx(-0.7));
  CHECK_THROWS_AS(reduce(-1.0), DomainError);
  CHECK_THROWS_AS(Params::make(-1.0, 0.0), DomainError);
  const Params p = Params::make(1.0, 1.4);
  CHECK(p.reduced().s == 0);
  CHECK(p.reduced().beta == doctest::Approx(-0.6));
}

TEST_CASE("G coefficients") {
  const GSeries g(Params::make(1.3, -0.5));
  CHECK(g.coefficient(0) == 1.0);
  CHECK(g.coefficient(1) == doctest::Approx(-0.5 / 0.5 * (-2.3)));
  CHECK_FALSE(g.terminating());
  CHECK(GSeries(Params::make(2.0, -0.5)).terminating());
  CHECK(GSeries(Params::make(2.0, -0.5)).coefficient(4) == 0.0);
  CHECK(GSeries(Params::make(1.3, 0.0)).coefficient(3) == 0.0);
}

TEST_CASE("G against the hypergeometric form") {
  for (double al : {-0.5, 0.0, 1.3, 3.7})
    for (double be : {-0.9, -0.3, 0.0})
      for (double t : {0.0, 0.2, 0.6, 0.9, 0.99}) {
        const Params p = Params::make(al, be);
        CHECK(g_eval(p, t) == doctest::Approx(oracle::g(al, be, t)).epsilon(1e-12));
      }
}

TEST_CASE("G at the endpoint") {
  for (double al : {-0.5, 0.0, 1.3, 3.7})
    for (double be : {-0.9, -0.5, 0.0, 1.5}) {
      const Params p = Params::make(al, be);
      CHECK(g_eval(p, 1.0) == doctest::Approx(oracle::g_at_one(al, be)).epsilon(1e-11));
    }
  // A complex point on the circle when alpha > 0.
  const Params p = Params::make(1.5, -0.5);
  const cd v = g_eval(p, std::polar(1.0, 0.7));
  CHECK(std::abs(v - cd(oracle::pfq({-2.5, -0.5}, {0.5}, std::polar(1.0L, 0.7L)))) < 1e-8);
}

TEST_CASE("G derivative against the contiguous 2F1") {
  for (double al : {-0.5, 0.0, 1.3, 3.7})
    for (double be : {-0.9, -0.5, -0.1})
      for (double t : {0.0, 0.01, 0.3, 0.7, 0.95}) {
        const Params p = Params::make(al, be);
        const double ref = oracle::g_prime(al, be, t);
        CHECK(g_derivative(p, t) == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
        CHECK(g_derivative_series(p, t) == doctest::Approx(ref).epsilon(1e-11).scale(1.0));
      }
}

TEST_CASE("G jet against finite differences of the oracle") {
  const double al = 1.3, be = -0.5, t = 0.4, h = 1e-3;
  const auto j = g_jet(Params::make(al, be), t);
  auto gp = [&](double x) { return oracle::g_prime(al, be, x); };
  CHECK(j[0] == doctest::Approx(oracle::g(al, be, t)).epsilon(1e-13));
  CHECK(j[1] == doctest::Approx(gp(t)).epsilon(1e-12));
  const double d2 = (gp(t - 2 * h) - 8 * gp(t - h) + 8 * gp(t + h) - gp(t + 2 * h)) / (12 * h);
  CHECK(j[2] == doctest::Approx(d2).epsilon(1e-8));
}

TEST_CASE("property: G identities and inequalities at random parameters") {
  oracle::Gen gen(7);
  for (int i = 0; i < 300; ++i) {
    const double al = gen.uniform(-0.95, 5.0), be = gen.uniform(-0.95, 0.0), t = gen.uniform(0.0, 0.99);
    const Params p = Params::make(al, be);
    const double G = g_eval(p, t);
    const double Ga = g_eval(Params::make(al + 1, be), t), Gb = g_eval(Params::make(al, be + 1), t);
    CHECK(t * oracle::g_prime(al, be, t) == doctest::Approx(be * (std::pow(1 - t, al + 1) - G)).epsilon(1e-10).scale(1));
    CHECK((al + be + 2) * Ga == doctest::Approx((al + 2) * G + be * std::pow(1 - t, al + 2)).epsilon(1e-10).scale(1));
    CHECK(t * Gb == doctest::Approx((be + 1) / (al + be + 2) * (G - std::pow(1 - t, al + 2))).epsilon(1e-10).scale(1));
    CHECK(std::pow(1 - t, al + 1) <= Gb + 1e-12);
    CHECK(Gb <= G + 1e-12);
  }
}

TEST_CASE("kernel routes agree") {
  oracle::Gen gen(3);
  for (double al : {-0.5, 0.0, 1.3, 3.7})
    for (double be : {-0.9, -0.5, 0.0, 0.4, 2.0, 2.6}) {
      const Params p = Params::make(al, be);
      for (int i = 0; i < 10; ++i) {
        cd xi = gen.point(0.9);
        if (std::abs(xi) < 1e-3) xi = 0.5;
        const cd a = kernel_eval(p, xi), b = kernel_eval_hypergeometric(p, xi);
        const cd ref = oracle::modified_kernel(al, be, xi);
        // The beta > 0 kernel changes sign, so the scale is floored at 1.
        const double scale = std::max(1.0, std::abs(ref));
        CHECK(std::abs(a - ref) <= 1e-11 * scale);
        CHECK(std::abs(b - ref) <= 1e-11 * scale);
      }
    }
}

TEST_CASE("kernel for beta = 0 is a power of 1 - xi") {
  for (double al : {-0.5, 0.0, 1.3}) {
    const Params p = Params::make(al, 0.0);
    for (cd xi : {cd(0.0), cd(0.5), cd(-0.8, 0.1), cd(0.3, 0.9)})
      CHECK(std::abs(kernel_eval(p, xi) - std::pow(1.0 - xi, -(al + 2))) <= 1e-12 * std::abs(std::pow(1.0 - xi, -(al + 2))));
  }
}

TEST_CASE("kernel domain") {
  CHECK_THROWS_AS(kernel_eval(Params::make(0, 0), 1.0), DomainError);
  CHECK_THROWS_AS(kernel_eval(Params::make(0, 1.5), 0.0), SingularArgument);
  CHECK(kernel_eval(Params::make(0, -0.5), 0.0).real() == 1.0);
}

TEST_CASE("kernel derivatives") {
  const double al = 1.3, be = -0.5;
  const Params p = Params::make(al, be);
  const double A = al + be + 2, B = be + 1;
  for (double t : {0.0, 0.3, 0.8}) {
    const auto d = kernel_derivatives(p, t);
    CHECK(d.K == doctest::Approx(oracle::kernel(al, be, t).real()).epsilon(1e-12));
    // K' = (A/B) 2F1(2, A+1; B+1), K'' = 2 A(A+1)/(B(B+1)) 2F1(3, A+2; B+2).
    CHECK(d.K1 == doctest::Approx(A / B * oracle::pfq({2.0, A + 1}, {B + 1}, t).real()).epsilon(1e-12));
    CHECK(d.K2 == doctest::Approx(2 * A * (A + 1) / (B * (B + 1)) * oracle::pfq({3.0, A + 2}, {B + 2}, t).real()).epsilon(1e-12));
    const cd kd = kernel_derivative(p, t);
    CHECK(kd.real() == doctest::Approx(d.K1).epsilon(1e-11));
  }
  const cd xi(0.3, -0.5);
  const cd kd = kernel_derivative(p, xi);
  const double A1 = A / B;
  CHECK(std::abs(kd - A1 * cd(oracle::pfq({2.0, A + 1}, {B + 1}, xi))) < 1e-11 * std::abs(kd));
}

TEST_CASE("log kernel jet against finite differences") {
  const Params p = Params::make(1.3, -0.5);
  auto logK = [&](double t) { return std::log(oracle::kernel(1.3, -0.5, t).real()); };
  const double t = 0.45, h = 1e-3;
  const auto L = log_kernel_jet(p, t, 4);
  CHECK(L[0] == doctest::Approx(logK(t)).epsilon(1e-13));
  const double d1 = (logK(t - 2 * h) - 8 * logK(t - h) + 8 * logK(t + h) - logK(t + 2 * h)) / (12 * h);
  CHECK(L[1] == doctest::Approx(d1).epsilon(1e-9));
  const double d2 = (-logK(t - 2 * h) + 16 * logK(t - h) - 30 * logK(t) + 16 * logK(t + h) - logK(t + 2 * h)) / (12 * h * h);
  CHECK(L[2] == doctest::Approx(d2).epsilon(1e-6));
  auto L1 = [&](double x) { return log_kernel_jet(p, x, 1)[1]; };
  auto L3 = [&](double x) { return log_kernel_jet(p, x, 3)[3]; };
  const double d3 = (-L1(t - 2 * h) + 16 * L1(t - h) - 30 * L1(t) + 16 * L1(t + h) - L1(t + 2 * h)) / (12 * h * h);
  CHECK(L[3] == doctest::Approx(d3).epsilon(1e-6));
  const double d4 = (L3(t - 2 * h) - 8 * L3(t - h) + 8 * L3(t + h) - L3(t + 2 * h)) / (12 * h);
  CHECK(L[4] == doctest::Approx(d4).epsilon(1e-6));
}

TEST_CASE("angular moments of |K|^2 by trapezoid sums") {
  const double al = 0.7, be = -0.4, r = 0.8;
  const Params p = Params::make(al, be);
  const int M = 512;
  for (int k : {0, 1, 3}) {
    cd acc = 0.0;
    for (int j = 0; j < M; ++j) {
      const double psi = 2 * M_PI * j / M;
      acc += std::norm(oracle::kernel(al, be, std::polar(r, psi))) * std::polar(1.0, -k * psi);
    }
    acc /= M;
    CHECK(std::pow(r, k) * kernel_angular_moment(p, k, r * r) == doctest::Approx(acc.real()).epsilon(1e-12));
  }
}
