#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "psg/scenario.hpp"

namespace psg {

/// Raised when a scenario falls outside the solvable parameter regime
/// (failed assumptions, boundary cases, degenerate denominators).
class SolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter-regime checks gating the closed-form analysis.
///
/// a2: every receiver trusts unsuspicious evidence (q_d below the trust
///     threshold built from the weak type's trust payoffs).
/// a3: a strong receiver locks out rather than trusts a suspicious login
///     when the sender persists outright (q_d above the detector-weighted
///     threshold).
/// a4: grid search over sender persistence sigma in [0,1] (1e4 intervals
///     plus endpoints) for a point where the active type's trust and
///     defense values are both strictly positive, recording a witness.
///
/// `lockdown_belief_exists` records the complementary window: whether some
/// posterior makes lockout strictly optimal for the active type (both trust
/// and defense values strictly negative). That window is what the
/// four-region table's mixed supports actually require; it is empty exactly
/// when an a4 witness exists.
struct AssumptionReport {
  double q_d = 0.0;
  bool a2_holds = false;
  double a2_threshold = 0.0;  // q_d must stay strictly below
  bool a3_holds = false;
  double a3_threshold = 0.0;  // q_d must stay strictly above
  bool a4_holds = false;
  std::optional<double> a4_witness;
  bool lockdown_belief_exists = false;

  bool all_hold() const { return a2_holds && a3_holds && a4_holds; }
};

AssumptionReport check_assumptions(const PdosScenario& ps);

/// The strategy rows pinned by the constant-rows lemma: legitimate senders
/// persist, weak receivers trust suspicious logins, strong receivers lock
/// them out, and every type trusts unsuspicious evidence. Remaining rows
/// (deceptive sender mix, active type at (p,b)) are left at the lemma's
/// pure lockout/defense defaults and are overridden per region by
/// solve_pdos. Throws SolveError unless all assumption checks pass.
StrategyProfile constant_strategies(const PdosScenario& ps);

/// Prior-probability cutoff above which the active type engages active
/// defense against a fully persistent sender:
///   TD = Ut(l) / (Ut(l) - Ut(d)),  Ut(x) = U_v(x,p,f) * delta_v(b|x,p).
/// Throws SolveError on a degenerate (zero) denominator.
double threshold_td(const PdosScenario& ps);

/// Deceptive sender's expected per-capita benefit of persisting under the
/// given receiver rows:
///   BP = sum_y sum_e sum_a q(y) delta_y(e|d,p) sigma_y(a|p,e) omega_d(a).
double benefit_persist(const PdosScenario& ps, const StrategyProfile& receiver_rows);

/// Profile with pure responses (a_k, a_o, a_v) to suspicious evidence and
/// the constant rows everywhere else (trust on n and on the withdraw
/// branch, both sender types persisting).
StrategyProfile pure_response_profile(const PdosScenario& ps, Index a_k, Index a_o,
                                      Index a_v);

using ReceiverTriple = std::array<Index, 3>;  // (a_k, a_o, a_v) at (p,b)

/// TD plus the benefit-of-persisting values of the pure response triples
/// the region classification reads.
struct Thresholds {
  double td = 0.0;
  std::map<ReceiverTriple, double> bp_pure;
};

Thresholds compute_thresholds(const PdosScenario& ps);

enum class Region {
  status_quo,
  active_deterrence,
  resistant_attacker,
  vulnerable_attacker,
};

const char* region_name(Region r);

/// Classification outcome. `region` is empty when a defining quantity sits
/// within `boundary_tol` of its threshold (boundary=true, no label), or
/// when the sign pattern falls outside the four-region table.
struct RegionOutcome {
  std::optional<Region> region;
  bool boundary = false;
  std::string detail;
  double bp_tgg = 0.0;
  double bp_tgf = 0.0;
  double td = 0.0;
  double q_d = 0.0;

  std::string label() const;
};

/// Sign-based region classification: vulnerable_attacker iff both pure BP
/// values are negative; otherwise status_quo / active_deterrence /
/// resistant_attacker by q_d vs TD and the sign of BP(t,g,f). Total on any
/// structurally valid scenario; assumption checks are reported separately.
RegionOutcome classify_region(const PdosScenario& ps, double boundary_tol = 1e-12);

/// Support structure of the emitted equilibrium at the suspicious
/// information set (p,b). The first four are the supports the region table
/// lists; the last two arise when no posterior supports pure lockout for
/// the active type (see AssumptionReport::lockdown_belief_exists).
enum class ProfileShape {
  pure_status_quo,       // sigma_d(p)=1, o:g, v:g
  pure_resistant,        // sigma_d(p)=1, o:g, v:f
  lockdown_mix,          // o and v mix t/g, sender mixes
  defense_mix,           // o:g, v mixes g/f, sender mixes
  trust_defense_mix,     // o:t, v mixes t/f, sender mixes
  lockdown_defense_mix,  // o mixes t/g, v:f, sender mixes
};

const char* shape_name(ProfileShape s);

/// Closed-form shortcut values for the mixed regions, kept for comparison
/// against the emitted equilibrium. The sender-mix shortcut equates the
/// persisting share sigma_d(p)*q_d with the threshold ratio itself, which
/// skips the Bayes renormalization of the legitimate branch; the defense
/// shortcut drops the unsuspicious-evidence terms of BP. Each `_agrees`
/// flag records whether the shortcut matches the emitted value to 1e-12.
struct ReferenceForms {
  std::optional<double> sender_mix;      // sigma_d(p)
  std::optional<double> defense_weight;  // sigma_v(f|p,b)
  std::optional<double> lockdown_weight; // sigma_{o,v}(g|p,b)
  bool sender_mix_agrees = false;
  bool defense_weight_agrees = false;
  bool lockdown_weight_agrees = false;
};

/// One receiver information set's best-response slack.
struct ReceiverGain {
  Index y = 0, m = 0, e = 0;
  double gain = 0.0;
};

/// Numeric check of sequential rationality and belief consistency:
///   (i)  no sender type gains more than `tolerance` from any pure message;
///   (ii) at every information set reachable with positive probability, no
///        non-prohibited pure action beats the emitted row by more than
///        `tolerance`;
///   (iii) emitted beliefs equal the Bayes posterior at on-path sets.
/// Violations are data, never exceptions.
struct DeviationReport {
  std::vector<double> sender_gain;          // per sender type
  std::vector<ReceiverGain> receiver_gains; // reachable sets only
  double max_gain = 0.0;
  double belief_gap = 0.0;
  double tolerance = 1e-9;

  bool pass() const { return max_gain <= tolerance && belief_gap == 0.0; }
};

struct SolveDiagnostics {
  ProfileShape shape = ProfileShape::pure_status_quo;
  bool matches_region_table = false;  // emitted support equals the table's
  bool lockdown_belief_exists = false;
  ReferenceForms reference;
  std::string notes;
  DeviationReport verification;  // self-check at the default tolerance
};

struct EquilibriumResult {
  RegionOutcome region;
  StrategyProfile profile;
  BeliefTable beliefs;
  SolveDiagnostics diagnostics;

  double sigma_d_p() const { return profile.sender(pdos::X_D, pdos::M_P); }
  double sigma_o_g_pb() const {
    return profile.receiver(pdos::Y_O, pdos::M_P, pdos::E_B, pdos::A_G);
  }
  double sigma_v_g_pb() const {
    return profile.receiver(pdos::Y_V, pdos::M_P, pdos::E_B, pdos::A_G);
  }
  double sigma_v_f_pb() const {
    return profile.receiver(pdos::Y_V, pdos::M_P, pdos::E_B, pdos::A_F);
  }
};

/// Exact perfect Bayesian Nash equilibrium of the PDoS game under the
/// constant-rows regime (a2 and a3 must hold). The free rows are the
/// deceptive sender's persistence and the strong/active responses to
/// suspicious evidence; the solver walks the belief cutoffs of the active
/// information set and zeroes the sender's benefit of persisting exactly
/// where a receiver row flips. Mixed strategies therefore satisfy the
/// indifference conditions to machine precision, which verify_pbne checks.
/// Throws SolveError on boundary classifications, failed assumptions, or a
/// mixing weight escaping [0,1].
EquilibriumResult solve_pdos(const PdosScenario& ps);

DeviationReport verify_pbne(const PdosScenario& ps, const EquilibriumResult& result,
                            double tolerance = 1e-9);

}  // namespace psg
