#pragma once

#include <cstdint>

#include "psg/scenario.hpp"

namespace psg {

/// Expected sender utility of type `x` under `profile`, using the
/// count-linear reduction: for each active message, the expected payoff is
/// the rate-weighted sum of per-action weights,
///   sum_m sigma_x(m) * lambda * sum_{y,e,a} q(y) delta_y(e|x,m)
///                                           sigma_y(a|m,e) omega_x(a).
/// Inactive messages contribute zero.
double sender_expected_utility(const Scenario& s, const StrategyProfile& profile,
                               Index x);

/// Result of the truncated lattice evaluation: the value plus how much
/// probability mass fell outside the enumerated box, so callers can bound
/// the truncation error themselves.
struct BruteForceValue {
  double value = 0.0;
  double truncated_mass = 0.0;
};

/// Unsimplified double sum over messages and the full count lattice,
///   sum_m sum_c sigma_x(m) P{c | profile, x, m} U_x(m, c),
/// truncated at `caps[a]` per action. Independent evaluation path kept as an
/// oracle for sender_expected_utility; it never uses the rate reduction.
BruteForceValue sender_expected_utility_bruteforce(const Scenario& s,
                                                   const StrategyProfile& profile,
                                                   Index x,
                                                   const std::vector<std::int64_t>& caps);

/// Convenience overload with one cap for every action.
BruteForceValue sender_expected_utility_bruteforce(const Scenario& s,
                                                   const StrategyProfile& profile,
                                                   Index x, std::int64_t cap);

/// Posterior over sender types at information set (y, m, e) given the
/// sender rows of `profile`, by Bayes when the set is reachable; otherwise
/// the scenario's configured off-path belief.
std::vector<double> belief_update(const Scenario& s, const StrategyProfile& profile,
                                  Index y, Index m, Index e);

/// Beliefs at every information set under `profile`.
BeliefTable fill_beliefs(const Scenario& s, const StrategyProfile& profile);

/// Belief-weighted value of each action at one information set. Prohibited
/// actions are flagged rather than valued.
struct ReceiverActionValues {
  std::vector<double> value;    // per action; meaningless where prohibited
  std::vector<bool> prohibited; // per action

  double best(Index* argmax = nullptr) const;
};

ReceiverActionValues receiver_action_values(const Scenario& s,
                                            const std::vector<double>& belief,
                                            Index y, Index m, Index e);

}  // namespace psg
