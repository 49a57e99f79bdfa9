#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace psg {

using Index = std::size_t;

/// One payoff cell of the receiver utility table. Structurally unavailable
/// actions carry the `prohibited` marker instead of a sentinel value, so
/// downstream arithmetic never sees infinities.
struct CellPayoff {
  double value = 0.0;
  bool prohibited = false;
};

/// A single broken invariant, named well enough to locate the offending
/// table entry.
struct Violation {
  std::string where;
  std::string detail;
};

/// Poisson signaling game description: population parameter, finite
/// sender/receiver type sets, message/evidence/action sets, priors, the
/// per-receiver-type detector, decoupled receiver utilities, and linear
/// per-action sender payoff weights.
///
/// All tables are stored flat in row-major order; the accessors below are
/// the only supported way to index them. Instances are treated as immutable
/// after construction, so every operation in this library is a pure
/// function and safe to call concurrently.
struct Scenario {
  double lambda = 0.0;

  std::vector<std::string> sender_types;    // X
  std::vector<std::string> receiver_types;  // Y
  std::vector<std::string> messages;        // M
  std::vector<std::string> evidence;        // E
  std::vector<std::string> actions;         // A

  std::vector<double> q_sender;    // over X, sums to 1
  std::vector<double> q_receiver;  // over Y, strictly positive, sums to 1

  std::vector<double> detector;              // [y][x][m][e], rows over e sum to 1
  std::vector<CellPayoff> receiver_utility;  // [y][x][m][a]
  std::vector<double> sender_weights;        // [x][a]

  // Messages that trigger the population stage. A sender earns count-linear
  // payoff only for active messages; inactive messages pay zero to everyone.
  std::vector<std::uint8_t> message_active;  // per m

  // Posterior over X applied at information sets that are unreachable under
  // the sender strategy. Defaults to point mass on the deceptive type.
  std::vector<double> offpath_belief;

  Index num_x() const { return sender_types.size(); }
  Index num_y() const { return receiver_types.size(); }
  Index num_m() const { return messages.size(); }
  Index num_e() const { return evidence.size(); }
  Index num_a() const { return actions.size(); }

  Index detector_index(Index y, Index x, Index m, Index e) const {
    return ((y * num_x() + x) * num_m() + m) * num_e() + e;
  }
  Index utility_index(Index y, Index x, Index m, Index a) const {
    return ((y * num_x() + x) * num_m() + m) * num_a() + a;
  }

  double delta(Index y, Index x, Index m, Index e) const {
    return detector[detector_index(y, x, m, e)];
  }
  const CellPayoff& utility(Index y, Index x, Index m, Index a) const {
    return receiver_utility[utility_index(y, x, m, a)];
  }
  double omega(Index x, Index a) const { return sender_weights[x * num_a() + a]; }

  bool prohibited(Index y, Index m, Index a) const;

  bool sizes_consistent() const;
};

/// Sender mixed strategies per type and receiver mixed strategies per
/// (type, message, evidence). Rows are probability distributions.
struct StrategyProfile {
  Index nx = 0, ny = 0, nm = 0, ne = 0, na = 0;
  std::vector<double> sender_;    // [x][m]
  std::vector<double> receiver_;  // [y][m][e][a]

  static StrategyProfile zeros(const Scenario& s);

  double sender(Index x, Index m) const { return sender_[x * nm + m]; }
  double& sender(Index x, Index m) { return sender_[x * nm + m]; }
  double receiver(Index y, Index m, Index e, Index a) const {
    return receiver_[((y * nm + m) * ne + e) * na + a];
  }
  double& receiver(Index y, Index m, Index e, Index a) {
    return receiver_[((y * nm + m) * ne + e) * na + a];
  }

  void set_sender_row(Index x, const std::vector<double>& row);
  void set_receiver_row(Index y, Index m, Index e, const std::vector<double>& row);
};

/// Receiver posteriors over sender types per (receiver type, message,
/// evidence).
struct BeliefTable {
  Index nx = 0, ny = 0, nm = 0, ne = 0;
  std::vector<double> mu_;  // [y][m][e][x]

  static BeliefTable zeros(const Scenario& s);

  double mu(Index y, Index m, Index e, Index x) const {
    return mu_[((y * nm + m) * ne + e) * nx + x];
  }
  double& mu(Index y, Index m, Index e, Index x) {
    return mu_[((y * nm + m) * ne + e) * nx + x];
  }
};

/// Realized population response: how many receivers played each action.
struct ActionCount {
  std::vector<std::int64_t> c;  // per action, >= 0

  std::int64_t total() const;
};

// ---------------------------------------------------------------------------
// PDoS specialization
// ---------------------------------------------------------------------------

/// Fixed index layout of the PDoS game. The Scenario label sets must match
/// these names exactly (checked by validate_pdos_scenario).
namespace pdos {
inline constexpr Index X_L = 0;  // legitimate sender
inline constexpr Index X_D = 1;  // deceptive sender
inline constexpr Index Y_K = 0;  // weak device: no detector
inline constexpr Index Y_O = 1;  // strong device: detector, lockout only
inline constexpr Index Y_V = 2;  // active device: detector + active defense
inline constexpr Index M_P = 0;  // persist past the lockout threshold
inline constexpr Index M_W = 1;  // withdraw
inline constexpr Index E_B = 0;  // suspicious login pattern
inline constexpr Index E_N = 1;  // unsuspicious login pattern
inline constexpr Index A_T = 0;  // trust
inline constexpr Index A_G = 1;  // lock out
inline constexpr Index A_F = 2;  // active defense
}  // namespace pdos

/// PDoS recruitment scenario: the base game plus the login-threshold
/// metadata consumed by the trace generator. tau_low/tau_high bracket the
/// suspicious failed-login regime; the dictionary is the attacker's
/// password list. Equilibrium math reads only `base`.
struct PdosScenario {
  Scenario base;
  int tau_low = 5;
  int tau_high = 9;
  std::vector<std::string> password_dictionary;
};

/// Checks every structural invariant of a general scenario: shapes, priors,
/// detector row normalization, finiteness.  Total: malformed tables come
/// back as violations, never exceptions.
std::vector<Violation> validate_scenario(const Scenario& s);

/// Base validation plus the PDoS utility-sign structure, detector ordering,
/// sender weight signs, threshold sanity, and (optionally) the receiver
/// symmetry the closed-form solver relies on.
std::vector<Violation> validate_pdos_scenario(const PdosScenario& s,
                                              bool require_symmetry = true);

/// Reference fixture used throughout the test suite and documentation.
PdosScenario canonical_pdos();

/// Uniform-trust profile: sender persists, every receiver row plays `t`.
StrategyProfile all_trust_profile(const Scenario& s);

/// Validates that profile rows are distributions matching the scenario
/// shape and put no mass on prohibited actions.
std::vector<Violation> validate_profile(const Scenario& s, const StrategyProfile& p);

}  // namespace psg
