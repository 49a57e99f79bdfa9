#include "psg/payoff.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "psg/poisson.hpp"

namespace psg {

double sender_expected_utility(const Scenario& s, const StrategyProfile& profile,
                               Index x) {
  double total = 0.0;
  for (Index m = 0; m < s.num_m(); ++m) {
    if (!s.message_active[m]) continue;
    const double sm = profile.sender(x, m);
    if (sm == 0.0) continue;
    const ActionRates rates = action_rates(s, profile, x, m);
    double branch = 0.0;
    for (Index a = 0; a < s.num_a(); ++a) {
      branch += rates.lambda_a[a] * s.omega(x, a);
    }
    total += sm * branch;
  }
  return total;
}

namespace {

// Walks the truncated count lattice one action dimension at a time,
// accumulating P{c} * (omega . c) for every cell.
void lattice_sum(const Scenario& s, const ActionRates& rates,
                 const std::vector<std::int64_t>& caps, Index x, Index dim,
                 ActionCount& c, double* acc) {
  if (dim == s.num_a()) {
    const double p = count_probability(rates, c);
    if (p == 0.0) return;
    double payoff = 0.0;
    for (Index a = 0; a < s.num_a(); ++a) {
      payoff += s.omega(x, a) * static_cast<double>(c.c[a]);
    }
    *acc += p * payoff;
    return;
  }
  for (std::int64_t k = 0; k <= caps[dim]; ++k) {
    c.c[dim] = k;
    lattice_sum(s, rates, caps, x, dim + 1, c, acc);
  }
}

}  // namespace

BruteForceValue sender_expected_utility_bruteforce(const Scenario& s,
                                                   const StrategyProfile& profile,
                                                   Index x,
                                                   const std::vector<std::int64_t>& caps) {
  if (caps.size() != s.num_a()) {
    throw std::invalid_argument("bruteforce: need one truncation cap per action");
  }
  for (std::int64_t cap : caps) {
    if (cap < 0) throw std::invalid_argument("bruteforce: negative truncation cap");
  }
  BruteForceValue out;
  for (Index m = 0; m < s.num_m(); ++m) {
    if (!s.message_active[m]) continue;  // payoff identically zero, nothing truncated
    const double sm = profile.sender(x, m);
    if (sm == 0.0) continue;
    const ActionRates rates = action_rates(s, profile, x, m);
    double branch = 0.0;
    ActionCount c;
    c.c.assign(s.num_a(), 0);
    lattice_sum(s, rates, caps, x, 0, c, &branch);
    double covered = 1.0;
    for (Index a = 0; a < s.num_a(); ++a) {
      covered *= poisson_cdf(rates.lambda_a[a], caps[a]);
    }
    out.value += sm * branch;
    out.truncated_mass += sm * (1.0 - covered);
  }
  return out;
}

BruteForceValue sender_expected_utility_bruteforce(const Scenario& s,
                                                   const StrategyProfile& profile,
                                                   Index x, std::int64_t cap) {
  return sender_expected_utility_bruteforce(
      s, profile, x, std::vector<std::int64_t>(s.num_a(), cap));
}

std::vector<double> belief_update(const Scenario& s, const StrategyProfile& profile,
                                  Index y, Index m, Index e) {
  std::vector<double> post(s.num_x(), 0.0);
  double den = 0.0;
  for (Index x = 0; x < s.num_x(); ++x) {
    post[x] = s.delta(y, x, m, e) * profile.sender(x, m) * s.q_sender[x];
    den += post[x];
  }
  if (den > 0.0) {
    for (double& v : post) v /= den;
    return post;
  }
  return s.offpath_belief;
}

BeliefTable fill_beliefs(const Scenario& s, const StrategyProfile& profile) {
  BeliefTable b = BeliefTable::zeros(s);
  for (Index y = 0; y < s.num_y(); ++y) {
    for (Index m = 0; m < s.num_m(); ++m) {
      for (Index e = 0; e < s.num_e(); ++e) {
        const std::vector<double> post = belief_update(s, profile, y, m, e);
        for (Index x = 0; x < s.num_x(); ++x) b.mu(y, m, e, x) = post[x];
      }
    }
  }
  return b;
}

double ReceiverActionValues::best(Index* argmax) const {
  double b = -std::numeric_limits<double>::infinity();
  for (Index a = 0; a < value.size(); ++a) {
    if (prohibited[a]) continue;
    if (value[a] > b) {
      b = value[a];
      if (argmax) *argmax = a;
    }
  }
  return b;
}

ReceiverActionValues receiver_action_values(const Scenario& s,
                                            const std::vector<double>& belief,
                                            Index y, Index m, Index /*e*/) {
  if (belief.size() != s.num_x()) {
    throw std::invalid_argument("receiver_action_values: belief dimension mismatch");
  }
  ReceiverActionValues out;
  out.value.assign(s.num_a(), 0.0);
  out.prohibited.assign(s.num_a(), false);
  for (Index a = 0; a < s.num_a(); ++a) {
    if (s.prohibited(y, m, a)) {
      out.prohibited[a] = true;
      continue;
    }
    double v = 0.0;
    for (Index x = 0; x < s.num_x(); ++x) {
      v += belief[x] * s.utility(y, x, m, a).value;
    }
    out.value[a] = v;
  }
  return out;
}

}  // namespace psg
