#include <benchmark/benchmark.h>

#include "psg/poisson.hpp"

using namespace psg;
using namespace psg::pdos;

static void BM_sample_population(benchmark::State& state) {
  Scenario s = canonical_pdos().base;
  s.lambda = static_cast<double>(state.range(0));
  const StrategyProfile p = all_trust_profile(s);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_population(s, p, X_D, M_P, seed++));
  }
}
BENCHMARK(BM_sample_population)->Arg(10)->Arg(100)->Arg(1000);

static void BM_action_rates(benchmark::State& state) {
  const Scenario s = canonical_pdos().base;
  const StrategyProfile p = all_trust_profile(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(action_rates(s, p, X_D, M_P));
  }
}
BENCHMARK(BM_action_rates);

static void BM_count_probability(benchmark::State& state) {
  ActionRates rates{{55.0, 45.0, 0.0}};
  ActionCount c{{54, 46, 0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_probability(rates, c));
  }
}
BENCHMARK(BM_count_probability);
