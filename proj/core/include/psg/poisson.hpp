#pragma once

#include <cstdint>

#include "psg/scenario.hpp"

namespace psg {

/// Per-action Poisson rates of the population response to a fixed sender
/// type and message. Rates always total the population parameter.
struct ActionRates {
  std::vector<double> lambda_a;  // per action

  double total() const;
};

/// Rates of the action counts induced by `profile` when a sender of type
/// `x` plays message `m`:
///   lambda_a = lambda * sum_y sum_e q(y) delta_y(e|x,m) sigma_y(a|m,e).
ActionRates action_rates(const Scenario& s, const StrategyProfile& profile,
                         Index x, Index m);

/// Joint probability of observing exactly the counts in `c`, i.e. the
/// product of independent Poisson pmfs. Uses log-gamma so counts beyond the
/// factorial range stay finite.
double count_probability(const ActionRates& rates, const ActionCount& c);

/// Poisson pmf and lower cdf with the same log-gamma evaluation.
double poisson_pmf(double mean, std::int64_t k);
double poisson_cdf(double mean, std::int64_t k);

/// Draws one population response: N ~ Poisson(lambda) receivers, each with
/// an independent type, evidence, and action. Deterministic given the seed;
/// the stream is stable within a build, not across standard libraries.
ActionCount sample_population(const Scenario& s, const StrategyProfile& profile,
                              Index x, Index m, std::uint64_t seed);

}  // namespace psg
