#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "solhup/constants.hpp"
#include "solhup/errors.hpp"
#include "solhup/fields.hpp"
#include "solhup/galerkin.hpp"
#include "solhup/rng.hpp"

using namespace solhup;

namespace {

std::array<double, 3> random_annulus_point(SplitMix64& rng, double r_lo, double r_hi) {
  std::array<double, 3> v{};
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (double& vi : v) {
      vi = rng.uniform(-1.0, 1.0);
      n2 += vi * vi;
    }
  } while (n2 > 1.0 || n2 < 1e-4);
  const double scale = rng.uniform(r_lo, r_hi) / std::sqrt(n2);
  for (double& vi : v) vi *= scale;
  return v;
}

Mat3 rotation(double angle, const std::array<double, 3>& axis_raw) {
  double n = std::sqrt(axis_raw[0] * axis_raw[0] + axis_raw[1] * axis_raw[1] +
                       axis_raw[2] * axis_raw[2]);
  const std::array<double, 3> k{axis_raw[0] / n, axis_raw[1] / n, axis_raw[2] / n};
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = (i == j ? c : 0.0) + (1.0 - c) * k[i] * k[j];
  r[0][1] -= s * k[2];
  r[0][2] += s * k[1];
  r[1][0] += s * k[2];
  r[1][2] -= s * k[0];
  r[2][0] -= s * k[1];
  r[2][1] += s * k[0];
  return r;
}

std::array<double, 3> apply(const Mat3& m, const std::array<double, 3>& x) {
  std::array<double, 3> y{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) y[i] += m[i][j] * x[j];
  return y;
}

// the poloidal generator applied to a scalar potential by nested finite
// differences; validates the Cartesian closed form used by PoloidalExtremal
std::vector<double> poloidal_generator_fd(const std::function<double(std::vector<double>)>& f,
                                          const std::vector<double>& x, double h) {
  const int n = static_cast<int>(x.size());
  const double r2 = [&] {
    double s = 0.0;
    for (double xi : x) s += xi * xi;
    return s;
  }();
  const double r = std::sqrt(r2);

  auto grad = [&](const std::vector<double>& p) {
    std::vector<double> g(n);
    std::vector<double> q = p;
    for (int k = 0; k < n; ++k) {
      const double pk = q[k];
      q[k] = pk + h;
      const double fp = f(q);
      q[k] = pk - h;
      const double fm = f(q);
      q[k] = pk;
      g[k] = (fp - fm) / (2.0 * h);
    }
    return g;
  };
  auto laplacian = [&](const std::vector<double>& p) {
    double acc = 0.0;
    std::vector<double> q = p;
    const double f0 = f(p);
    for (int k = 0; k < n; ++k) {
      const double pk = q[k];
      q[k] = pk + h;
      const double fp = f(q);
      q[k] = pk - h;
      const double fm = f(q);
      q[k] = pk;
      acc += (fp - 2.0 * f0 + fm) / (h * h);
    }
    return acc;
  };

  std::vector<double> sigma(n);
  for (int k = 0; k < n; ++k) sigma[k] = x[k] / r;

  // radial derivatives along sigma
  std::vector<double> xp = x, xm = x;
  for (int k = 0; k < n; ++k) {
    xp[k] += h * sigma[k];
    xm[k] -= h * sigma[k];
  }
  const double dr = (f(xp) - f(xm)) / (2.0 * h);
  const double drr = (f(xp) - 2.0 * f(x) + f(xm)) / (h * h);
  // spherical Laplacian: r^2 (lap f - d_rr f) - (N-1) r d_r f
  const double lap_sigma = r2 * (laplacian(x) - drr) - (n - 1.0) * r * dr;

  // spherical gradient field G = r (grad f - sigma d_r f)
  auto spherical_grad = [&](const std::vector<double>& p) {
    double pr2 = 0.0;
    for (double pi : p) pr2 += pi * pi;
    const double pr = std::sqrt(pr2);
    const std::vector<double> g = grad(p);
    double gdot = 0.0;
    for (int k = 0; k < n; ++k) gdot += g[k] * p[k] / pr;
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) out[k] = pr * (g[k] - gdot * p[k] / pr);
    return out;
  };
  const std::vector<double> g0 = spherical_grad(x);
  const std::vector<double> gp = spherical_grad(xp);
  const std::vector<double> gm = spherical_grad(xm);

  // D f = sigma lap_sigma f - (r d_r + (N-1)) grad_sigma f
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) {
    const double r_dr_g = r * (gp[k] - gm[k]) / (2.0 * h);
    out[k] = sigma[k] * lap_sigma - (r_dr_g + (n - 1.0) * g0[k]);
  }
  return out;
}

}  // namespace

TEST_CASE("toroidal field evaluation") {
  const ToroidalExtremal field(1.0, 0.0, 0.0, 1.0);  // rotation generator about e3
  const Point3 zero = field(Point3{0.0, 0.0, 0.0});
  CHECK(zero[0] == 0.0);
  CHECK(zero[1] == 0.0);
  CHECK(zero[2] == 0.0);

  const Point3 u = field(Point3{1.0, 0.0, 0.0});
  const double e = std::exp(-1.0);
  CHECK(u[0] == doctest::Approx(0.0));
  CHECK(u[1] == doctest::Approx(-e).epsilon(1e-15));
  CHECK(u[2] == doctest::Approx(0.0));

  CHECK_THROWS_AS(ToroidalExtremal(1.0, 0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("toroidal fields are tangent to centered spheres") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const ToroidalExtremal field(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                                 0.8);
    const std::array<double, 3> x = random_annulus_point(rng, 0.2, 3.0);
    const Point3 u = field(Point3{x[0], x[1], x[2]});
    const double dot = x[0] * u[0] + x[1] * u[1] + x[2] * u[2];
    const double scale = std::sqrt((x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) *
                                   (u[0] * u[0] + u[1] * u[1] + u[2] * u[2])) +
                         1e-300;
    CHECK(std::abs(dot) <= 1e-14 * scale);
  }
}

TEST_CASE("toroidal analytic gradient matches finite differences") {
  const ToroidalExtremal field(0.7, -0.4, 1.1, 0.6);
  const Point3 x{0.8, -0.5, 1.2};
  const Mat3 g = field.gradient(x);
  const double h = 1e-5;
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      Point3 xp = x, xm = x;
      xp[l] += h;
      xm[l] -= h;
      const double fd = (field(xp)[k] - field(xm)[k]) / (2.0 * h);
      CHECK(g[k][l] == doctest::Approx(fd).epsilon(1e-8));
    }
  }
}

TEST_CASE("poloidal field evaluation on and off the axis") {
  const int N = 3;
  const std::vector<double> axis{0.0, 0.0, 1.0};
  const PoloidalExtremal field(N, axis, 1.0);
  const ExtremalProfile& g0 = field.profile();

  SUBCASE("on the axis the tangential part vanishes") {
    const std::vector<double> x{0.0, 0.0, 1.3};
    const std::vector<double> u = field(x);
    const double h = g0.value(1.3 * 1.3);
    CHECK(u[0] == doctest::Approx(0.0));
    CHECK(u[1] == doctest::Approx(0.0));
    CHECK(u[2] == doctest::Approx(-(N - 1.0) * h).epsilon(1e-13));
  }
  SUBCASE("perpendicular to the axis the radial part vanishes") {
    const double r = 0.9;
    const std::vector<double> x{r, 0.0, 0.0};
    const std::vector<double> u = field(x);
    const double h = g0.value(r * r);
    const double rhp = 2.0 * r * r * g0.deriv1(r * r);
    CHECK(u[0] == doctest::Approx(0.0));
    CHECK(u[1] == doctest::Approx(0.0));
    CHECK(u[2] == doctest::Approx(-(rhp + (N - 1.0) * h)).epsilon(1e-13));
  }
  SUBCASE("the origin is rejected") {
    CHECK_THROWS_AS(field(std::vector<double>{0.0, 0.0, 0.0}), std::invalid_argument);
  }
  SUBCASE("constructor validation") {
    CHECK_THROWS_AS(PoloidalExtremal(2, {1.0, 0.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PoloidalExtremal(3, {0.0, 0.0, 0.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PoloidalExtremal(3, {0.0, 0.0, 1.0}, -1.0), std::invalid_argument);
  }
}

TEST_CASE("closed form agrees with a finite-difference application of the generator") {
  // the independent oracle for the Cartesian formula: apply
  // D = sigma lap_sigma - r d_r' grad_sigma numerically to Y g0(r^2)
  for (int N : {3, 4}) {
    std::vector<double> axis(N, 0.0);
    axis[N - 1] = 1.0;
    axis[0] = 0.4;
    const PoloidalExtremal field(N, axis, 1.0);
    const ExtremalProfile& g0 = field.profile();
    auto potential = [&](std::vector<double> p) {
      double r2 = 0.0, y = 0.0;
      for (int k = 0; k < N; ++k) r2 += p[k] * p[k];
      const double r = std::sqrt(r2);
      for (int k = 0; k < N; ++k) y += axis[k] * p[k] / r;
      return y * g0.value(r2);
    };

    if (N == 3) {
      // pinned point, axis e3
      const PoloidalExtremal pinned(3, {0.0, 0.0, 1.0}, 1.0);
      const ExtremalProfile& gp0 = pinned.profile();
      auto pot = [&gp0](std::vector<double> p) {
        const double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        return p[2] / std::sqrt(r2) * gp0.value(r2);
      };
      const std::vector<double> x{0.7, 0.3, -0.2};
      const std::vector<double> u = pinned(x);
      const std::vector<double> u_fd = poloidal_generator_fd(pot, x, 1e-4);
      for (int k = 0; k < 3; ++k) CHECK(u[k] == doctest::Approx(u_fd[k]).epsilon(2e-5));
    }

    SplitMix64 rng(23 + N);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<double> x(N);
      double n2 = 0.0;
      for (double& xi : x) {
        xi = rng.uniform(-1.0, 1.0);
        n2 += xi * xi;
      }
      const double target = rng.uniform(0.6, 1.8);
      for (double& xi : x) xi *= target / std::sqrt(n2);

      const std::vector<double> u = field(x);
      const std::vector<double> u_fd = poloidal_generator_fd(potential, x, 1e-4);
      double uscale = 0.0;
      for (int k = 0; k < N; ++k) uscale = std::max(uscale, std::abs(u[k]));
      for (int k = 0; k < N; ++k) CHECK(std::abs(u[k] - u_fd[k]) <= 1e-5 * (uscale + 1.0));
    }
  }
}

TEST_CASE("divergence by central differences") {
  SplitMix64 rng(29);
  const ToroidalExtremal tor(0.9, -0.3, 0.5, 0.5);
  const PoloidalExtremal pol(3, {0.3, -0.2, 1.0}, 1.0);
  const FieldFn tor_fn = [&tor](std::span<const double> x) {
    const Point3 u = tor(Point3{x[0], x[1], x[2]});
    return std::vector<double>(u.begin(), u.end());
  };
  const FieldFn pol_fn = [&pol](std::span<const double> x) { return pol(x); };

  SUBCASE("toroidal, tame points, tight tolerance") {
    for (int trial = 0; trial < 20; ++trial) {
      const std::array<double, 3> x = random_annulus_point(rng, 0.3, 1.2);
      const std::vector<double> u = tor_fn(x);
      const double uscale =
          std::max({std::abs(u[0]), std::abs(u[1]), std::abs(u[2]), 1e-12});
      CHECK(std::abs(divergence_fd(tor_fn, x, 1e-4)) <= 1e-8 * uscale);
    }
  }
  SUBCASE("both families over the annulus") {
    for (int trial = 0; trial < 100; ++trial) {
      const std::array<double, 3> x = random_annulus_point(rng, 0.2, 3.0);
      for (const FieldFn* f : {&tor_fn, &pol_fn}) {
        const std::vector<double> u = (*f)(x);
        const double uscale =
            std::max({std::abs(u[0]), std::abs(u[1]), std::abs(u[2]), 1e-12});
        CHECK(std::abs(divergence_fd(*f, x, 1e-4)) <= 1e-6 * uscale);
      }
    }
  }
  SUBCASE("gradient field fails the check") {
    const FieldFn grad_fn = [](std::span<const double> x) {
      const double e = std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
      return std::vector<double>{x[0] * e, x[1] * e, x[2] * e};
    };
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const std::array<double, 3> x = random_annulus_point(rng, 0.2, 3.0);
      const std::vector<double> u = grad_fn(x);
      const double uscale =
          std::max({std::abs(u[0]), std::abs(u[1]), std::abs(u[2]), 1e-12});
      worst = std::max(worst, std::abs(divergence_fd(grad_fn, x, 1e-4)) / uscale);
    }
    CHECK(worst > 1e-3);
  }
}

TEST_CASE("3d toroidal quotient") {
  const ToroidalExtremal field(1.0, 0.0, 0.0, 0.5);
  const QuotientReport rep = quotient_toroidal_3d(field, 32, 7.0);
  CHECK(rep.quotient == doctest::Approx(6.25).epsilon(1.6e-4));  // +- 1e-3 absolute
  // closed form for Sum B_k^2 = 2: int |u|^2 = 2/(4 c) (pi/(2c))^{3/2} = pi^{3/2}
  CHECK(rep.integral_l2 == doctest::Approx(std::pow(M_PI, 1.5)).epsilon(1e-6));
  CHECK(rep.quotient >= best_constant_unconstrained(3));
  CHECK(rep.integral_grad > 0.0);
  CHECK(rep.integral_weighted > 0.0);

  SUBCASE("decay-rate invariance") {
    // narrower gaussian, proportionally smaller box (c L^2 = 25 >= 20)
    const ToroidalExtremal faster(1.0, 0.0, 0.0, 1.0);
    const QuotientReport rep2 = quotient_toroidal_3d(faster, 32, 5.0);
    CHECK(std::abs(rep2.quotient - rep.quotient) <= 2e-3);
  }
  SUBCASE("insufficient box is rejected") {
    const ToroidalExtremal slow(1.0, 0.0, 0.0, 0.1);
    CHECK_THROWS_AS(quotient_toroidal_3d(slow, 32, 7.0), std::invalid_argument);
  }
  SUBCASE("json serialization carries the report") {
    const std::string j = rep.to_json();
    CHECK(j.find("\"integral_grad\"") != std::string::npos);
    CHECK(j.find("\"quotient\"") != std::string::npos);
    CHECK(j.find("\"richardson_disagreement\"") != std::string::npos);
  }
}

TEST_CASE("3d quotient is independent of the antisymmetric matrix") {
  const ToroidalExtremal generic(0.6, -1.1, 0.8, 0.5);
  const QuotientReport rep = quotient_toroidal_3d(generic, 32, 7.0);
  CHECK(rep.quotient == doctest::Approx(6.25).epsilon(1.6e-4));
}

TEST_CASE("poloidal divergence vanishes in four dimensions too") {
  const PoloidalExtremal pol(4, {0.2, -0.5, 0.1, 1.0}, 1.3);
  const FieldFn fn = [&pol](std::span<const double> x) { return pol(x); };
  SplitMix64 rng(37);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> x(4);
    double n2 = 0.0;
    for (double& xi : x) {
      xi = rng.uniform(-1.0, 1.0);
      n2 += xi * xi;
    }
    const double r = rng.uniform(0.3, 2.5) / std::sqrt(n2);
    for (double& xi : x) xi *= r;
    const std::vector<double> u = fn(x);
    double uscale = 1e-12;
    for (double uk : u) uscale = std::max(uscale, std::abs(uk));
    CHECK(std::abs(divergence_fd(fn, x, 1e-4)) <= 1e-6 * uscale);
  }
}

TEST_CASE("poloidal quotient through the 1d reduction") {
  CHECK(quotient_poloidal_1d(ProblemParams(3, 1), 1.0, 1e-9).quotient ==
        doctest::Approx(6.25).epsilon(1.6e-7));
  CHECK(quotient_poloidal_1d(ProblemParams(4, 1), 1.0, 1e-9).quotient ==
        doctest::Approx(7.4641016).epsilon(1e-6));
  const double q_half = quotient_poloidal_1d(ProblemParams(3, 1), 0.5, 1e-9).quotient;
  CHECK(std::abs(q_half - 6.25) <= 1e-6);
  CHECK_THROWS_AS(quotient_poloidal_1d(ProblemParams(3, 2), 1.0, 1e-9),
                  std::invalid_argument);
}

TEST_CASE("sphere reduction ties the field to the 1d functionals") {
  const PoloidalExtremal field(3, {0.0, 0.0, 1.0}, 1.0);
  for (double r : {0.5, 1.0, 2.0}) {
    const SphereReduction sr = sphere_reduction_check(field, r, 24, 48);
    CHECK(std::abs(sr.lhs - sr.rhs) <= 1e-10 * sr.rhs);
  }
  SUBCASE("both sides decay together at large radius") {
    const SphereReduction far = sphere_reduction_check(field, 10.0, 24, 48);
    CHECK(far.lhs < 1e-4);
    CHECK(far.rhs < 1e-4);
    CHECK(std::abs(far.lhs - far.rhs) <= 1e-10 * (1.0 + far.rhs));
  }
  SUBCASE("a constant harmonic is rejected: zero spherical mean required") {
    CHECK_THROWS_AS(sphere_reduction_check(field, 1.0, 24, 48, 0), std::invalid_argument);
    CHECK_THROWS_AS(sphere_reduction_check(field, 1.0, 24, 48, 2), std::invalid_argument);
  }
}

TEST_CASE("rotating axis and point together leaves the speed invariant") {
  SplitMix64 rng(31);
  const std::vector<double> axis{0.2, -0.7, 0.9};
  const PoloidalExtremal field(3, axis, 1.0);
  const Mat3 rot = rotation(1.1, {0.3, 1.0, -0.2});
  const std::array<double, 3> raxis_arr =
      apply(rot, {axis[0], axis[1], axis[2]});
  const PoloidalExtremal rotated(3, {raxis_arr[0], raxis_arr[1], raxis_arr[2]}, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const std::array<double, 3> x = random_annulus_point(rng, 0.3, 2.5);
    const std::vector<double> u = field(std::vector<double>{x[0], x[1], x[2]});
    const std::array<double, 3> rx = apply(rot, x);
    const std::vector<double> ur = rotated(std::vector<double>{rx[0], rx[1], rx[2]});
    const double n1 = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    const double n2 = std::sqrt(ur[0] * ur[0] + ur[1] * ur[1] + ur[2] * ur[2]);
    CHECK(n1 == doctest::Approx(n2).epsilon(1e-12));
  }
}

TEST_CASE("three independent routes reach the same constant at N = 3") {
  // route A: 1d reduction of the poloidal extremal; route B: direct 3d
  // quadrature of the toroidal extremal; route C: Rayleigh certification
  const double route_a = quotient_poloidal_1d(ProblemParams(3, 1), 1.0, 1e-9).quotient;
  const double route_b =
      quotient_toroidal_3d(ToroidalExtremal(1.0, 0.0, 0.0, 0.5), 48, 7.0).quotient;
  GalerkinSystem sys = assemble(25, ProblemParams(3, 1).generalized());
  const double lam = min_eigenpair(sys).first;
  const double route_c = lam * lam;
  const std::vector<double> w{1.0, 0.0, 0.0};
  const double closed = scalar_gaussian_quotient(3, 0.5, w).quotient;

  CHECK(std::abs(route_b - closed) <= 1e-3);
  CHECK(std::abs(route_a - route_c) <= 1e-5);
  CHECK(std::abs(route_a - closed) <= 1e-5);
}

TEST_CASE("scalar gaussian closed forms") {
  const std::vector<double> w{1.0, 0.0, 0.0};
  const GaussianQuotient q = scalar_gaussian_quotient(3, 0.5, w);
  CHECK(q.quotient == 6.25);
  CHECK(q.integral_l2 == doctest::Approx(0.5 * std::pow(M_PI, 1.5)).epsilon(1e-14));
  // the float route through the three integrals reproduces the exact ratio
  CHECK(q.integral_grad * q.integral_weighted / (q.integral_l2 * q.integral_l2) ==
        doctest::Approx(q.quotient).epsilon(1e-14));

  const std::vector<double> w4{0.3, 1.0, -0.2, 0.9};
  CHECK(scalar_gaussian_quotient(4, 2.3, w4).quotient == 9.0);

  std::vector<double> w10 = w;
  for (double& wi : w10) wi *= 10.0;
  CHECK(scalar_gaussian_quotient(3, 0.5, w10).quotient == q.quotient);

  CHECK_THROWS_AS(scalar_gaussian_quotient(3, 0.0, w), std::invalid_argument);
  CHECK_THROWS_AS(scalar_gaussian_quotient(3, 1.0, std::vector<double>{0.0, 0.0, 0.0}),
                  std::invalid_argument);
}
