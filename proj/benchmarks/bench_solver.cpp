#include <benchmark/benchmark.h>

#include "psg/equilibrium.hpp"
#include "psg/mechanism.hpp"

using namespace psg;

static void BM_solve_pdos(benchmark::State& state) {
  const PdosScenario ps = canonical_pdos();
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_pdos(ps));
  }
}
BENCHMARK(BM_solve_pdos);

static void BM_solve_and_verify(benchmark::State& state) {
  const PdosScenario ps = canonical_pdos();
  for (auto _ : state) {
    const EquilibriumResult res = solve_pdos(ps);
    benchmark::DoNotOptimize(verify_pbne(ps, res));
  }
}
BENCHMARK(BM_solve_and_verify);

static void BM_classify_region(benchmark::State& state) {
  const PdosScenario ps = canonical_pdos();
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_region(ps));
  }
}
BENCHMARK(BM_classify_region);

static void BM_incentive_sweep(benchmark::State& state) {
  SweepSpec spec;
  spec.base = canonical_pdos();
  spec.knob = Knob::incentive;
  spec.grid = linear_grid(0.3, 50.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sweep(spec));
  }
}
BENCHMARK(BM_incentive_sweep)->Arg(10)->Arg(100);

BENCHMARK_MAIN();
