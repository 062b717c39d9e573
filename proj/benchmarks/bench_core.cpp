#include <benchmark/benchmark.h>

#include <cmath>

#include "solhup/constants.hpp"
#include "solhup/fields.hpp"
#include "solhup/functionals.hpp"
#include "solhup/galerkin.hpp"
#include "solhup/kummer.hpp"
#include "solhup/quadrature.hpp"

using namespace solhup;

static void BM_Kummer1F1(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kummer_1f1(0.5, 2.5, x));
}
BENCHMARK(BM_Kummer1F1)->Arg(2)->Arg(20)->Arg(200);

static void BM_ProfileLargeArgument(benchmark::State& state) {
  const ExtremalProfile g(GeneralizedParams(2.5, 1.0), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(g.value(1e4));
}
BENCHMARK(BM_ProfileLargeArgument);

static void BM_GaussLaguerreRule(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_laguerre_rule(2.5, n));
}
BENCHMARK(BM_GaussLaguerreRule)->Arg(16)->Arg(64)->Arg(256);

static void BM_IntegrateHalfline(benchmark::State& state) {
  const ExtremalProfile g(GeneralizedParams(2.5, 1.0), 1.0);
  for (auto _ : state) {
    auto r = integrate_halfline(
        [&g](double x) { return g.deriv1(x) * g.deriv1(x) * std::pow(x, 2.5); }, 1e-10,
        TailHint::algebraic(-3.5));
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_IntegrateHalfline);

static void BM_AssembleAndSolve(benchmark::State& state) {
  const GeneralizedParams p(2.5, 1.0);
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) {
    GalerkinSystem sys = assemble(K, p);
    benchmark::DoNotOptimize(min_eigenpair(sys).first);
  }
}
BENCHMARK(BM_AssembleAndSolve)->Arg(8)->Arg(25)->Arg(40);

static void BM_Toroidal3dQuotient(benchmark::State& state) {
  const ToroidalExtremal field(1.0, 0.0, 0.0, 0.5);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rep = quotient_toroidal_3d(field, n, 7.0);
    benchmark::DoNotOptimize(rep.quotient);
  }
}
BENCHMARK(BM_Toroidal3dQuotient)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
