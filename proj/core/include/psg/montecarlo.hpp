#pragma once

#include <cstdint>
#include <optional>

#include "psg/scenario.hpp"

namespace psg {

struct RateStat {
  double mean = 0.0;
  double variance = 0.0;  // sample variance
};

/// Aggregated outcome of repeated recruitment-stage simulations for one
/// sender type. Rate statistics are conditional on replications where the
/// population stage actually ran (an active message was drawn).
struct SimulationReport {
  std::uint64_t replications = 0;
  std::uint64_t seed = 0;
  Index sender_type = 0;
  double utility_mean = 0.0;
  double utility_se = 0.0;          // sample standard error over all replications
  std::uint64_t persist_count = 0;  // replications with an active message
  std::vector<RateStat> rates;      // per action
  std::uint64_t lockouts = 0;       // total lockout responses observed
  std::uint64_t defense_events = 0; // total active-defense responses
  std::uint64_t infections = 0;     // devices trusting a deceptive sender
};

/// Per replication: draws the sender's message, samples the population
/// response when the message is active, and scores the count-linear sender
/// payoff (zero otherwise). Replication i consumes an independent stream
/// derived from (seed, i), so partitioning replications across workers by
/// index is safe.
SimulationReport simulate(const PdosScenario& ps, const StrategyProfile& profile,
                          Index x, std::uint64_t replications, std::uint64_t seed);

/// How the trace generator assigns login outcomes.
///   mechanistic — the deceptive sender walks the password dictionary and
///     fails through every attempt; detector-equipped devices then flag the
///     pattern as suspicious. A legitimate sender logs in on the first try
///     and the game never starts.
///   calibrated — success-within-threshold is drawn per the device's
///     detector row, so trace evidence frequencies reproduce the abstract
///     detector exactly.
enum class TraceMode { mechanistic, calibrated };

struct LoginAttempt {
  std::string password;
  bool success = false;
};

/// Per-device login narrative: the attempt sequence, whether the failed
/// streak reached tau_low (starting the game), and the evidence the device
/// ends up holding.
struct LoginTrace {
  Index receiver_type = 0;
  std::vector<LoginAttempt> attempts;
  bool psg_started = false;
  std::optional<Index> evidence;
};

LoginTrace generate_login_trace(const PdosScenario& ps, Index x, std::uint64_t seed,
                                TraceMode mode = TraceMode::calibrated);

/// Poisson agreement test of one action-count coordinate.
struct RateCheck {
  double lambda = 0.0;    // analytic rate
  double mean = 0.0;      // empirical
  double variance = 0.0;  // empirical sample variance
  double mean_band = 0.0; // 3*sqrt(lambda / replications)
  bool mean_ok = false;
  bool variance_checked = false;  // only applied when lambda >= 5
  bool variance_ok = true;

  bool ok() const { return mean_ok && variance_ok; }
};

/// Samples the population `replications` times at fixed (x, m) and compares
/// each action's empirical mean and variance against its analytic rate:
/// |mean - lambda_a| <= 3*sqrt(lambda_a/n), and |variance/mean - 1| <= 0.05
/// where lambda_a >= 5.
std::vector<RateCheck> empirical_rate_check(const PdosScenario& ps,
                                            const StrategyProfile& profile, Index x,
                                            Index m, std::uint64_t replications,
                                            std::uint64_t seed);

/// Independent stream seed for replication `i` of a run keyed by `seed`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t i);

}  // namespace psg
