#include <benchmark/benchmark.h>

#include "psg/payoff.hpp"

using namespace psg;
using namespace psg::pdos;

static void BM_sender_expected_utility(benchmark::State& state) {
  const Scenario s = canonical_pdos().base;
  const StrategyProfile p = all_trust_profile(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sender_expected_utility(s, p, X_D));
  }
}
BENCHMARK(BM_sender_expected_utility);

static void BM_bruteforce_lattice(benchmark::State& state) {
  Scenario s = canonical_pdos().base;
  s.lambda = static_cast<double>(state.range(0));
  const StrategyProfile p = all_trust_profile(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sender_expected_utility_bruteforce(s, p, X_D, state.range(0) + 40));
  }
}
BENCHMARK(BM_bruteforce_lattice)->Arg(2)->Arg(5);

static void BM_belief_update(benchmark::State& state) {
  const Scenario s = canonical_pdos().base;
  const StrategyProfile p = all_trust_profile(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(belief_update(s, p, Y_V, M_P, E_B));
  }
}
BENCHMARK(BM_belief_update);
