#include "solhup/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "solhup/constants.hpp"
#include "solhup/errors.hpp"
#include "solhup/fields.hpp"
#include "solhup/functionals.hpp"
#include "solhup/galerkin.hpp"
#include "solhup/kummer.hpp"
#include "solhup/quadrature.hpp"

namespace solhup {

namespace {

double dot3(const Point3& a, const Point3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

struct Check {
  bool ok = true;
  std::string worst;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      worst = what;
    }
  }
};

// ---- shared random family: polynomials of degree <= 6 times e^{-lambda x}

std::vector<RadialProfile> random_profiles(SplitMix64 rng, int count) {
  std::vector<RadialProfile> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const int degree = static_cast<int>(rng.next() % 7);
    std::vector<double> coeffs(degree + 1);
    double biggest = 0.0;
    for (double& ck : coeffs) {
      ck = rng.uniform(-1.0, 1.0);
      biggest = std::max(biggest, std::abs(ck));
    }
    if (biggest < 0.1) coeffs[0] += 0.5;  // keep the profile away from zero
    const double lambda = rng.uniform(0.3, 3.0);
    out.push_back(profile_from_poly_exp(std::move(coeffs), lambda));
  }
  return out;
}

std::vector<GeneralizedParams> random_params(SplitMix64 rng, int count) {
  std::vector<GeneralizedParams> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double mu = rng.uniform(2.2, 5.5);
    const double eps = rng.uniform(0.15, 0.9) * 0.25 * mu * mu;
    out.emplace_back(mu, eps);
  }
  return out;
}

// ---- criteria

CriterionResult c1_constant_tables() {
  Check chk;
  for (int N = 3; N <= 12; ++N) {
    const double closed = 0.25 * std::pow(std::sqrt((N - 2.0) * (N - 2.0) + 8.0) + 2.0, 2.0);
    const double sol = best_constant_solenoidal(N);
    const double cp = best_constant_poloidal(N, 1);
    const double ct = best_constant_toroidal(N);
    chk.require(std::abs(sol - closed) <= 1e-14 * closed, fmt("closed form off at N=%g", N));
    chk.require(std::abs(sol - std::min(cp, ct)) <= 1e-14 * sol,
                fmt("min-branch off at N=%g", N));
    if (N == 3)
      chk.require(std::abs(cp - ct) <= 1e-14 * ct, fmt("branches differ at N=3: %.3e", cp - ct));
    else
      chk.require(cp < ct, fmt("C_P >= C_T at N=%g", N));
    chk.require(best_constant_unconstrained(N) < sol && sol <= best_constant_curlfree(N),
                fmt("ordering chain broken at N=%g", N));
  }
  return {1, "constants-closed-forms", chk.ok,
          chk.ok ? "N = 3..12, 1e-14 relative" : chk.worst, 0.0};
}

CriterionResult c2_galerkin_certification() {
  Check chk;
  double worst_gap = 0.0;
  for (int N = 3; N <= 6; ++N) {
    for (int nu = 1; nu <= 3; ++nu) {
      const ProblemParams pp(N, nu);
      const GeneralizedParams gp = pp.generalized();

      GalerkinSystem sys = assemble(25, gp);
      const double lambda = min_eigenpair(sys).first;
      const double gap = lambda - gp.c;
      worst_gap = std::max(worst_gap, gap);
      chk.require(gap >= -1e-12 && gap <= 1e-6,
                  fmt("gap at K=25 out of [0,1e-6]: %.3e (N=%g, nu=%g)", gap, N, nu));

      const double cpnn = best_constant_poloidal(N, nu);
      chk.require(std::abs(lambda * lambda - cpnn) <= 3e-6 * cpnn,
                  fmt("lambda^2 misses C_P: %.3e (N=%g, nu=%g)",
                      std::abs(lambda * lambda - cpnn), N, nu));

      // full ladder: monotone and never below c - 1e-12 (throws on breach)
      const ConvergenceTable table = converge_constant(gp, 25, 1e-6);
      chk.require(table.converged, fmt("ladder unconverged (N=%g, nu=%g)", N, nu));
    }
  }
  return {2, "galerkin-certification", chk.ok,
          chk.ok ? fmt("12 cases, worst gap %.2e at K=25", worst_gap) : chk.worst, 0.0};
}

CriterionResult c3_extremal_route_1d() {
  Check chk;
  double worst = 0.0;
  for (int N : {3, 4, 5}) {
    const GeneralizedParams gp = ProblemParams(N, 1).generalized();
    const double target = 0.25 * gp.c * gp.c;
    for (double lambda : {0.5, 1.0, 2.0}) {
      const RadialProfile g = profile_from_extremal(ExtremalProfile(gp, lambda));
      const FunctionalReport rep = r_quotients(g, gp, 1e-9);
      const double rel = std::abs(rep.r - target) / target;
      worst = std::max(worst, rel);
      chk.require(rel <= 1e-6, fmt("R misses c^2/4 by %.3e rel (N=%g, lambda=%g)", rel, N, lambda));
      const double scale = 1.0 + rep.q.value + rep.p1.value + gp.c * rep.p0.value;
      if (lambda == 1.0)
        chk.require(rep.i_residual.value <= 1e-10 * scale,
                    fmt("I[g0] = %.3e too large at lambda=1 (N=%g)", rep.i_residual.value, N));
      else
        chk.require(rep.i_residual.value > 0.0, fmt("I[g0] not positive off-scale (N=%g)", N));
    }
  }
  return {3, "extremal-route-1d", chk.ok,
          chk.ok ? fmt("worst |R - c^2/4| = %.2e relative", worst) : chk.worst, 0.0};
}

CriterionResult c4_extremal_route_3d() {
  const ToroidalExtremal field(1.0, 0.0, 0.0, 0.5);  // rotation generator about e3
  const QuotientReport rep = quotient_toroidal_3d(field, 48, 7.0);
  Check chk;
  chk.require(std::abs(rep.quotient - 6.25) <= 1e-3,
              fmt("3d quotient %.6f misses 6.25 +- 1e-3", rep.quotient));
  chk.require(rep.richardson_disagreement < 1e-4,
              fmt("richardson %.2e >= 1e-4", rep.richardson_disagreement));
  return {4, "extremal-route-3d", chk.ok,
          chk.ok ? fmt("quotient %.7f, richardson %.1e", rep.quotient,
                       rep.richardson_disagreement)
                 : chk.worst,
          0.0};
}

CriterionResult c5_identity_suite(SplitMix64 rng) {
  const std::vector<RadialProfile> profiles = random_profiles(rng.split(1), 20);
  const std::vector<GeneralizedParams> params = random_params(rng.split(2), 5);
  Check chk;
  double worst = 0.0;
  for (const GeneralizedParams& gp : params) {
    for (const RadialProfile& g : profiles) {
      const double i = identity_residual(g, gp, 1e-10);  // internal cross-check at 1e-9
      const double q = q_form(g, gp, 1e-10);
      const double p1 = p_beta(g, gp, 1, 1e-10);
      const double p0 = p_beta(g, gp, 0, 1e-10);
      const double mismatch = std::abs(i - (q + p1 - gp.c * p0)) / (1.0 + std::abs(i));
      worst = std::max(worst, mismatch);
      chk.require(mismatch <= 1e-8, fmt("identity mismatch %.3e (mu=%g)", mismatch, gp.mu));
      chk.require(i >= -1e-12 * (1.0 + std::abs(q) + std::abs(p1)),
                  fmt("I[g] negative: %.3e", i));
    }
  }
  return {5, "identity-suite", chk.ok,
          chk.ok ? fmt("100 checks, worst mismatch %.2e", worst) : chk.worst, 0.0};
}

CriterionResult c6_sharp_bound(SplitMix64 rng) {
  const std::vector<RadialProfile> profiles = random_profiles(rng.split(1), 20);
  const std::vector<GeneralizedParams> params = random_params(rng.split(2), 5);
  Check chk;
  double closest = INFINITY;
  for (const GeneralizedParams& gp : params) {
    const double c24 = 0.25 * gp.c * gp.c;
    for (const RadialProfile& g : profiles) {
      const FunctionalReport rep = r_quotients(g, gp, 1e-10);
      const double p0sq = rep.p0.value * rep.p0.value;
      chk.require(rep.q.value * rep.p1.value >= (c24 - 1e-9) * p0sq,
                  fmt("sharp bound violated: QP1/P0^2 = %.12f < c^2/4 = %.12f",
                      rep.q.value * rep.p1.value / p0sq, c24));
      closest = std::min(closest, rep.r - c24);
      chk.require(0.25 * rep.r_tilde * rep.r_tilde >= rep.r * (1.0 - 1e-12) - 1e-15,
                  "AM-GM bridge violated");
      const BalanceResult bal = balance_scaling(g, gp, 1e-10);
      const double two_sqrt_r = 2.0 * std::sqrt(rep.r);
      chk.require(std::abs(bal.r_tilde_balanced - two_sqrt_r) <= 1e-8 * (1.0 + two_sqrt_r),
                  fmt("balanced R~ misses 2 sqrt(R): %.3e",
                      std::abs(bal.r_tilde_balanced - two_sqrt_r)));
    }
  }
  return {6, "sharp-bound-property", chk.ok,
          chk.ok ? fmt("100 profiles, min slack R - c^2/4 = %.2e", closest) : chk.worst, 0.0};
}

CriterionResult c7_divergence_structure(SplitMix64 rng) {
  Check chk;
  SplitMix64 pts = rng.split(3);
  auto random_point = [&pts]() {
    std::array<double, 3> v;
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (double& vi : v) {
        vi = pts.uniform(-1.0, 1.0);
        n2 += vi * vi;
      }
    } while (n2 > 1.0 || n2 < 1e-4);
    const double r = pts.uniform(0.2, 3.0) / std::sqrt(n2);
    for (double& vi : v) vi *= r;
    return v;
  };

  SplitMix64 par = rng.split(4);
  const ToroidalExtremal tor(par.uniform(-1, 1), par.uniform(-1, 1), par.uniform(-1, 1), 0.6);
  const PoloidalExtremal pol(3, {par.uniform(0.2, 1.0), par.uniform(-1, 1), par.uniform(-1, 1)},
                             1.0);
  const FieldFn tor_fn = [&tor](std::span<const double> x) {
    const Point3 u = tor(Point3{x[0], x[1], x[2]});
    return std::vector<double>(u.begin(), u.end());
  };
  const FieldFn pol_fn = [&pol](std::span<const double> x) { return pol(x); };
  const FieldFn grad_fn = [](std::span<const double> x) {  // negative control, u = x e^{-|x|^2}
    const double e = std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
    return std::vector<double>{x[0] * e, x[1] * e, x[2] * e};
  };

  double worst_div = 0.0, worst_tan = 0.0, control = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::array<double, 3> p = random_point();
    for (const FieldFn* f : {&tor_fn, &pol_fn}) {
      const std::vector<double> u = (*f)(p);
      const double uscale =
          std::max({std::abs(u[0]), std::abs(u[1]), std::abs(u[2]), 1e-12});
      const double div = std::abs(divergence_fd(*f, p, 1e-4)) / uscale;
      worst_div = std::max(worst_div, div);
      chk.require(div <= 1e-6, fmt("scaled divergence %.3e > 1e-6", div));
    }
    const Point3 x3{p[0], p[1], p[2]};
    const Point3 u = tor(x3);
    const double tan = std::abs(dot3(x3, u));
    const double scale = std::sqrt(dot3(x3, x3) * dot3(u, u)) + 1e-300;
    worst_tan = std::max(worst_tan, tan / scale);
    chk.require(tan <= 1e-14 * scale, fmt("tangentiality %.3e", tan / scale));

    const std::vector<double> ug = grad_fn(p);
    const double gscale = std::max({std::abs(ug[0]), std::abs(ug[1]), std::abs(ug[2]), 1e-12});
    control = std::max(control, std::abs(divergence_fd(grad_fn, p, 1e-4)) / gscale);
  }
  chk.require(control > 1e-3, fmt("negative control unexpectedly passed: %.3e", control));
  return {7, "divergence-structure", chk.ok,
          chk.ok ? fmt("worst scaled div %.2e, tangentiality %.2e", worst_div, worst_tan)
                 : chk.worst,
          0.0};
}

CriterionResult c8_gaussian_closed_forms() {
  Check chk;
  const std::vector<double> w3{1.0, 0.0, 0.0};
  const GaussianQuotient gq = scalar_gaussian_quotient(3, 0.5, w3);
  chk.require(gq.quotient == 6.25, "quotient not exactly 6.25");
  const std::vector<double> w4{0.3, -1.1, 0.0, 0.7};
  chk.require(scalar_gaussian_quotient(4, 1.7, w4).quotient == 9.0, "N=4 quotient not 9.0");

  // quadrature of the explicit f: angular factors by a sphere grid, radial
  // moments by the adaptive integrator
  const double b0 = 0.5;
  const std::array<double, 3> bv{1.0, 0.0, 0.0};
  const QuadratureRule glu = gauss_legendre_rule(16);
  const int n_phi = 32;
  double ang0 = 0.0, ang2 = 0.0;
  for (int i = 0; i < 16; ++i) {
    const double cu = glu.nodes[i], su = std::sqrt(1.0 - cu * cu);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * M_PI * j / n_phi;
      const std::array<double, 3> sg{su * std::cos(phi), su * std::sin(phi), cu};
      const double y = bv[0] * sg[0] + bv[1] * sg[1] + bv[2] * sg[2];
      const double wq = glu.weights[i] * 2.0 * M_PI / n_phi;
      ang0 += wq;
      ang2 += wq * y * y;
    }
  }
  auto radial = [b0](double power) {
    return integrate_halfline(
               [b0, power](double r) { return std::pow(r, power) * std::exp(-2.0 * b0 * r * r); },
               1e-12, TailHint::exponential())
        .value;
  };
  const double l2 = ang2 * radial(4.0);       // r^{N+1}
  const double weighted = ang2 * radial(6.0);  // r^{N+3}
  const double grad = ang0 * radial(2.0) - 4.0 * b0 * ang2 * radial(4.0) +
                      4.0 * b0 * b0 * ang2 * radial(6.0);
  chk.require(std::abs(l2 - gq.integral_l2) <= 1e-8 * gq.integral_l2,
              fmt("l2 quadrature off by %.3e rel", std::abs(l2 / gq.integral_l2 - 1.0)));
  chk.require(std::abs(weighted - gq.integral_weighted) <= 1e-8 * gq.integral_weighted,
              fmt("weighted quadrature off by %.3e rel",
                  std::abs(weighted / gq.integral_weighted - 1.0)));
  chk.require(std::abs(grad - gq.integral_grad) <= 1e-8 * gq.integral_grad,
              fmt("grad quadrature off by %.3e rel", std::abs(grad / gq.integral_grad - 1.0)));
  return {8, "gaussian-closed-forms", chk.ok,
          chk.ok ? fmt("int f^2 = %.9f matches quadrature", gq.integral_l2) : chk.worst, 0.0};
}

CriterionResult c9_sphere_reduction() {
  const PoloidalExtremal field(3, {0.0, 0.0, 1.0}, 1.0);
  Check chk;
  double worst = 0.0;
  for (double r : {0.5, 1.0, 2.0}) {
    const SphereReduction sr = sphere_reduction_check(field, r, 24, 48);
    const double rel = std::abs(sr.lhs - sr.rhs) / sr.rhs;
    worst = std::max(worst, rel);
    chk.require(rel <= 1e-10, fmt("sphere reduction off by %.3e rel at r=%g", rel, r));
  }
  return {9, "sphere-reduction", chk.ok,
          chk.ok ? fmt("worst relative gap %.2e", worst) : chk.worst, 0.0};
}

CriterionResult c10_minimizer_shape() {
  Check chk;
  double worst = 0.0;
  for (int N : {3, 4}) {
    const GeneralizedParams gp = ProblemParams(N, 1).generalized();
    GalerkinSystem sys = assemble(30, gp);
    min_eigenpair(sys);
    const RadialProfile mini = expand_profile(sys);
    const BalanceResult bal = balance_scaling(mini, gp, 1e-10);
    const RadialProfile balanced = rescale_profile(mini, bal.lambda_star);
    const double pk = p_beta(balanced, gp, 0, 1e-10);

    const RadialProfile g0 = profile_from_extremal(ExtremalProfile(gp, 1.0));
    const double p0 = p_beta(g0, gp, 0, 1e-10);

    const double flip =
        balanced.value(1.0) * g0.value(1.0) < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i <= 48; ++i) {
      const double x = 0.1 * std::pow(100.0, i / 48.0);  // log-spaced on [0.1, 10]
      const double ref = g0.value(x) / std::sqrt(p0);
      const double got = flip * balanced.value(x) / std::sqrt(pk);
      const double rel = std::abs(got - ref) / std::abs(ref);
      worst = std::max(worst, rel);
      chk.require(rel <= 1e-4, fmt("shape off by %.3e rel at x=%.3f (N=%g)", rel, x, N));
    }
  }
  return {10, "minimizer-shape-recovery", chk.ok,
          chk.ok ? fmt("worst pointwise deviation %.2e", worst) : chk.worst, 0.0};
}

CriterionResult timed(double budget_seconds, const std::function<CriterionResult()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult res;
  try {
    res = fn();
  } catch (const std::exception& e) {
    res.passed = false;
    res.details = std::string("exception: ") + e.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (res.passed && res.seconds > budget_seconds) {
    res.passed = false;
    res.details = fmt("runtime %.2f s exceeds budget %.2f s", res.seconds, budget_seconds);
  }
  return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  const SplitMix64 rng(seed);
  std::vector<CriterionResult> out;
  out.push_back(timed(0.001, [] { return c1_constant_tables(); }));
  out.push_back(timed(5.0, [] { return c2_galerkin_certification(); }));
  out.push_back(timed(2.0, [] { return c3_extremal_route_1d(); }));
  out.push_back(timed(30.0, [] { return c4_extremal_route_3d(); }));
  out.push_back(timed(5.0, [&] { return c5_identity_suite(rng.split(5)); }));
  out.push_back(timed(5.0, [&] { return c6_sharp_bound(rng.split(6)); }));
  out.push_back(timed(1.0, [&] { return c7_divergence_structure(rng.split(7)); }));
  out.push_back(timed(2.0, [] { return c8_gaussian_closed_forms(); }));
  out.push_back(timed(2.0, [] { return c9_sphere_reduction(); }));
  out.push_back(timed(5.0, [] { return c10_minimizer_shape(); }));
  // criterion ids must stay 1..10 in order
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i) + 1;
  return out;
}

}  // namespace solhup
