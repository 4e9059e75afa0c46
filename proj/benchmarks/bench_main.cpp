#include <benchmark/benchmark.h>

#include <complex>

#include "bergman/berezin.hpp"
#include "bergman/diskquad.hpp"
#include "bergman/kernel.hpp"
#include "bergman/metric.hpp"
#include "bergman/specialfn.hpp"

using namespace bergman;
using cd = std::complex<double>;

static void BM_Pfq2F1(benchmark::State& state) {
  const double x = state.range(0) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(pfq({1.0, 3.3}, {0.5}, x));
}
BENCHMARK(BM_Pfq2F1)->Arg(50)->Arg(90)->Arg(99);

static void BM_KernelEval(benchmark::State& state) {
  const Params p = Params::make(1.3, -0.5);
  const cd xi = std::polar(state.range(0) / 100.0, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_eval(p, xi));
}
BENCHMARK(BM_KernelEval)->Arg(50)->Arg(90)->Arg(99);

static void BM_JacobiRuleBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double a = 0.1;
  for (auto _ : state) {
    // A fresh parameter each round defeats the rule cache.
    a += 1e-9;
    benchmark::DoNotOptimize(jacobi_rule(a, -0.5, n));
  }
}
BENCHMARK(BM_JacobiRuleBuild)->Arg(40)->Arg(80)->Arg(160);

static void BM_BerezinModal(benchmark::State& state) {
  const auto ctx = BerezinContext::make(1.3, -0.5);
  const auto f = TestFunction::harmonic_re(3);
  for (auto _ : state) benchmark::DoNotOptimize(berezin_apply(ctx, f, cd(0.6, 0.3)));
}
BENCHMARK(BM_BerezinModal);

static void BM_BerezinGrid(benchmark::State& state) {
  const auto ctx = BerezinContext::make(1.3, -0.5);
  const auto f = TestFunction::harmonic_re(3);
  for (auto _ : state) benchmark::DoNotOptimize(berezin_apply_grid(ctx, f, cd(0.6, 0.3)));
}
BENCHMARK(BM_BerezinGrid);

static void BM_MeanOscillation(benchmark::State& state) {
  const auto ctx = BerezinContext::make(0.0, -0.5);
  const auto f = TestFunction::monomial(1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(mean_oscillation(ctx, f, cd(0.4, -0.2)));
}
BENCHMARK(BM_MeanOscillation);

static void BM_Geodesic(benchmark::State& state) {
  const Params p = Params::make(state.range(0) == 0 ? 1.0 : 1.3, state.range(0) == 0 ? 0.0 : -0.5);
  for (auto _ : state) benchmark::DoNotOptimize(geodesic_distance(p, cd(0.5, 0.3), cd(-0.4, 0.6)).distance);
}
BENCHMARK(BM_Geodesic)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
