#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oracles.hpp"
#include "solhup/constants.hpp"
#include "solhup/kummer.hpp"
#include "solhup/rng.hpp"

using namespace solhup;

TEST_CASE("pochhammer") {
  CHECK(pochhammer(3.0, 0) == 1.0);
  CHECK(pochhammer(2.0, 3) == 24.0);
  CHECK(pochhammer(0.5, 2) == 0.75);
  CHECK(pochhammer(-1.5, 3) == doctest::Approx((-1.5) * (-0.5) * 0.5));
}

TEST_CASE("1F1 series values") {
  CHECK(kummer_1f1(0.7, 2.5, 0.0) == 1.0);
  CHECK(kummer_1f1(1.0, 1.0, 1.0) == doctest::Approx(std::numbers::e).epsilon(1e-14));
  // extended-precision oracle, frozen: 1F1(0.5, 2.5, 2) = 1.6624550119107736
  CHECK(kummer_1f1(0.5, 2.5, 2.0) == doctest::Approx(1.6624550119107736).epsilon(1e-13));
  CHECK(kummer_1f1(0.5, 2.5, 2.0) ==
        doctest::Approx(static_cast<double>(oracles::kummer_1f1_ld(0.5L, 2.5L, 2.0L)))
            .epsilon(1e-13));
}

TEST_CASE("series accuracy against the extended-precision oracle on [0, 50]") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    const double b = rng.uniform(0.05, 4.0);
    const double mu = rng.uniform(0.5, 7.0);
    for (int i = 0; i <= 20; ++i) {
      const double x = 50.0 * i / 20.0;
      const double got = kummer_1f1(b, mu, x);
      const double ref =
          static_cast<double>(oracles::kummer_1f1_ld(static_cast<long double>(b),
                                                     static_cast<long double>(mu),
                                                     static_cast<long double>(x)));
      CHECK(std::abs(got - ref) <= 1e-13 * std::abs(ref));
    }
  }
}

TEST_CASE("1F1 argument validation and overflow guard") {
  CHECK_THROWS_AS(kummer_1f1(0.5, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(kummer_1f1(0.5, 2.5, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(kummer_1f1(0.5, 2.5, 800.0), std::range_error);
}

TEST_CASE("1F1 derivatives") {
  CHECK(kummer_1f1_derivative(0.5, 2.5, 0.0, 1) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(kummer_1f1_derivative(1.0, 1.0, 1.0, 1) ==
        doctest::Approx(std::numbers::e).epsilon(1e-14));
  // frozen second derivative at x = 1.3 from the extended-precision series
  CHECK(kummer_1f1_derivative(0.5, 2.5, 1.3, 2) ==
        doctest::Approx(0.18317482666364001).epsilon(1e-12));
  CHECK_THROWS_AS(kummer_1f1_derivative(0.5, 2.5, 1.0, 3), std::invalid_argument);
}

TEST_CASE("series derivative agrees with finite differences") {
  auto f = [](double x) { return kummer_1f1(0.5, 2.5, x); };
  for (double x : {0.2, 1.3, 4.0, 11.0}) {
    const double h = 1e-5 * std::max(1.0, x);
    CHECK(kummer_1f1_derivative(0.5, 2.5, x, 1) ==
          doctest::Approx(oracles::fd_deriv1(f, x, h)).epsilon(1e-6));
    CHECK(kummer_1f1_derivative(0.5, 2.5, x, 2) ==
          doctest::Approx(oracles::fd_deriv2(f, x, h * 10)).epsilon(1e-6));
  }
}

TEST_CASE("monotone partial sums for positive parameters") {
  const double b = 0.8, mu = 3.1, x = 2.7;
  double term = 1.0, sum = 1.0;
  int strict_steps = 0;
  for (int k = 0; k < 200; ++k) {
    term *= (b + k) * x / ((mu + k) * (k + 1.0));
    if (term <= 1e-15 * sum) break;  // the implementation's stopping rule
    const double next = sum + term;
    CHECK(next > sum);
    sum = next;
    ++strict_steps;
  }
  CHECK(strict_steps > 10);
  CHECK(sum <= kummer_1f1(b, mu, x));
}

TEST_CASE("Kummer ODE residual on a log grid") {
  SplitMix64 rng(41);
  for (int trial = 0; trial < 6; ++trial) {
    const double mu = rng.uniform(2.2, 5.5);
    const double eps = rng.uniform(0.2, 0.8) * 0.25 * mu * mu;
    const GeneralizedParams p(mu, eps);
    for (int i = 0; i <= 24; ++i) {
      const double x = 1e-3 * std::pow(5e4, i / 24.0);  // [1e-3, 50]
      const double w = kummer_1f1(p.b, p.mu, x);
      const double w1 = kummer_1f1_derivative(p.b, p.mu, x, 1);
      const double w2 = kummer_1f1_derivative(p.b, p.mu, x, 2);
      CHECK(std::abs(x * w2 + (p.mu - x) * w1 - p.b * w) <= 1e-9 * (1.0 + std::abs(w)));
    }
  }
}

TEST_CASE("extremal profile ODE residual at lambda = 1") {
  const GeneralizedParams p(2.5, 1.0);
  const ExtremalProfile g(p, 1.0);
  for (int i = 0; i <= 24; ++i) {
    const double x = 1e-3 * std::pow(5e4, i / 24.0);
    const double resid =
        x * g.deriv2(x) + (x + p.mu) * g.deriv1(x) + (p.mu - p.b) * g.value(x);
    CHECK(std::abs(resid) <= 1e-9 * (1.0 + std::abs(g.value(x))));
  }
}

TEST_CASE("extremal profile values and derivatives") {
  const GeneralizedParams p(2.5, 1.0);
  const ExtremalProfile g(p, 1.0);
  CHECK(g.value(0.0) == 1.0);
  CHECK(g.deriv1(0.0) == doctest::Approx(-0.8).epsilon(1e-15));  // b/mu - 1

  const GeneralizedParams p2(3.0, 1.5);
  const ExtremalProfile g2(p2, 2.0);
  // frozen from the extended-precision series: g0(1.7) with mu=3, eps=1.5, lambda=2
  CHECK(g2.value(1.7) == doctest::Approx(0.09276638096575192).epsilon(1e-13));

  CHECK_THROWS_AS(ExtremalProfile(p, 0.0), std::invalid_argument);
}

TEST_CASE("profile derivative identities vs finite differences") {
  const GeneralizedParams p(3.0, 1.5);
  const ExtremalProfile g(p, 0.7);
  auto f = [&g](double x) { return g.value(x); };
  for (double x : {0.4, 1.0, 3.0, 9.0, 40.0}) {
    const double h = 1e-5 * std::max(1.0, x);
    CHECK(g.deriv1(x) == doctest::Approx(oracles::fd_deriv1(f, x, h)).epsilon(1e-6));
    CHECK(g.deriv2(x) == doctest::Approx(oracles::fd_deriv2(f, x, 10 * h)).epsilon(1e-6));
  }
}

TEST_CASE("positivity and decay of the profile") {
  const GeneralizedParams p(2.5, 1.0);
  const ExtremalProfile g(p, 1.0);
  double prev_tail = INFINITY;
  for (double x : {1e2, 1e3, 1e4}) {
    CHECK(g.value(x) > 0.0);
    const double d = g.deriv1(x);
    const double tail = std::pow(x, p.mu + 1.0) * d * d + std::pow(x, p.mu) * g.value(x) * g.value(x);
    CHECK(tail < prev_tail);
    prev_tail = tail;
  }
  CHECK(prev_tail < 1e-4);
  // the tail follows the algebraic order b - mu
  const double a = tail_exponent(p);
  const double ratio = g.value(2e4) / g.value(1e4);
  CHECK(ratio == doctest::Approx(std::pow(2.0, a)).epsilon(1e-3));
}

TEST_CASE("series and large-argument branches agree in the overlap window") {
  for (const GeneralizedParams& p :
       {GeneralizedParams(2.5, 1.0), GeneralizedParams(3.5, 1.5), GeneralizedParams(6.0, 3.5)}) {
    const ExtremalProfile g(p, 1.0);
    for (double z : {405.0, 480.0, 560.0, 640.0}) {
      const double asym = g.value(z);  // z >= 400 takes the expansion branch
      const double series = std::exp(-z) * kummer_1f1(p.b, p.mu, z);
      CHECK(asym == doctest::Approx(series).epsilon(1e-11));
    }
  }
}

TEST_CASE("tail exponent") {
  CHECK(tail_exponent(GeneralizedParams(2.5, 1.0)) == -2.0);
  CHECK(tail_exponent(GeneralizedParams(3.0, 1.5)) ==
        doctest::Approx(-(3.0 + std::sqrt(3.0)) / 2.0).epsilon(1e-15));
  CHECK(tail_exponent(GeneralizedParams(3.5, 1.5)) == -3.0);
}
