#include "psg/equilibrium.hpp"

#include <cmath>
#include <cstdio>

#include "psg/payoff.hpp"

namespace psg {

using namespace pdos;

namespace {

constexpr double kBoundaryTol = 1e-12;
constexpr double kAgreeTol = 1e-12;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void require_valid(const PdosScenario& ps, bool symmetry) {
  const std::vector<Violation> v = validate_pdos_scenario(ps, symmetry);
  if (!v.empty()) {
    std::string msg = "invalid scenario: " + v.front().where + ": " + v.front().detail;
    if (v.size() > 1) msg += " (+" + std::to_string(v.size() - 1) + " more)";
    throw std::invalid_argument(msg);
  }
}

// Structural check only: spot formulas like TD stay evaluable on scenarios
// that break the sign invariants.
void require_shape(const PdosScenario& ps) {
  if (!ps.base.sizes_consistent() || ps.base.num_x() != 2 || ps.base.num_y() != 3 ||
      ps.base.num_m() != 2 || ps.base.num_e() != 2 || ps.base.num_a() != 3) {
    throw std::invalid_argument("scenario does not have the PDoS table shape");
  }
}

// Scalar slice of a valid symmetric scenario: everything the closed-form
// analysis touches.
struct View {
  double q_d, q_l;
  double q_k, q_o, q_v;
  double db_d, db_l;  // delta_{o,v}(b | x, p)
  double ut_l, ut_d;  // trust payoffs under persist (same for all types)
  double uf_l, uf_d;  // active type's defense payoffs under persist
  double w_t, w_g, w_f;
};

View make_view(const Scenario& s) {
  View v;
  v.q_d = s.q_sender[X_D];
  v.q_l = s.q_sender[X_L];
  v.q_k = s.q_receiver[Y_K];
  v.q_o = s.q_receiver[Y_O];
  v.q_v = s.q_receiver[Y_V];
  v.db_d = s.delta(Y_V, X_D, M_P, E_B);
  v.db_l = s.delta(Y_V, X_L, M_P, E_B);
  v.ut_l = s.utility(Y_V, X_L, M_P, A_T).value;
  v.ut_d = s.utility(Y_V, X_D, M_P, A_T).value;
  v.uf_l = s.utility(Y_V, X_L, M_P, A_F).value;
  v.uf_d = s.utility(Y_V, X_D, M_P, A_F).value;
  v.w_t = s.omega(X_D, A_T);
  v.w_g = s.omega(X_D, A_G);
  v.w_f = s.omega(X_D, A_F);
  return v;
}

// Posterior weight on the deceptive type at the suspicious set of a
// detector-equipped receiver, as a function of sender persistence.
double posterior_d_at_pb(const Scenario& s, const View& v, double sigma_d) {
  const double num = v.db_d * sigma_d * v.q_d;
  const double den = num + v.db_l * v.q_l;
  if (den > 0.0) return num / den;
  return s.offpath_belief[X_D];
}

// Persistence level at which the suspicious-set posterior reaches mu.
double persistence_for_posterior(const View& v, double mu) {
  return (mu / (1.0 - mu)) * (v.db_l * v.q_l) / (v.db_d * v.q_d);
}

struct Cutoffs {
  double mu_tg;  // above: lockout beats trust
  double mu_fg;  // above: defense beats lockout
  double mu_tf;  // above: defense beats trust
};

Cutoffs posterior_cutoffs(const View& v) {
  Cutoffs c;
  c.mu_tg = v.ut_l / (v.ut_l - v.ut_d);
  c.mu_fg = -v.uf_l / (v.uf_d - v.uf_l);
  c.mu_tf = (v.ut_l - v.uf_l) / ((v.ut_l - v.uf_l) + (v.uf_d - v.ut_d));
  return c;
}

}  // namespace

AssumptionReport check_assumptions(const PdosScenario& ps) {
  require_valid(ps, false);
  const Scenario& s = ps.base;
  AssumptionReport rep;
  rep.q_d = s.q_sender[X_D];

  const double uk_l = s.utility(Y_K, X_L, M_P, A_T).value;
  const double uk_d = s.utility(Y_K, X_D, M_P, A_T).value;
  rep.a2_threshold = uk_l / (uk_l - uk_d);
  rep.a2_holds = rep.q_d < rep.a2_threshold;

  const double uo_l = s.utility(Y_O, X_L, M_P, A_T).value * s.delta(Y_O, X_L, M_P, E_B);
  const double uo_d = s.utility(Y_O, X_D, M_P, A_T).value * s.delta(Y_O, X_D, M_P, E_B);
  rep.a3_threshold = uo_l / (uo_l - uo_d);
  rep.a3_holds = rep.q_d > rep.a3_threshold;

  const View v = make_view(s);
  constexpr int kGrid = 10000;
  for (int i = 0; i <= kGrid; ++i) {
    const double phi = static_cast<double>(i) / kGrid;
    const double mu = posterior_d_at_pb(s, v, phi);
    const double value_t = mu * v.ut_d + (1.0 - mu) * v.ut_l;
    const double value_f = mu * v.uf_d + (1.0 - mu) * v.uf_l;
    if (value_t > 0.0 && value_f > 0.0) {
      rep.a4_holds = true;
      rep.a4_witness = phi;
      break;
    }
  }

  const Cutoffs mu = posterior_cutoffs(v);
  rep.lockdown_belief_exists = mu.mu_tg < mu.mu_fg;
  return rep;
}

StrategyProfile constant_strategies(const PdosScenario& ps) {
  const AssumptionReport rep = check_assumptions(ps);
  if (!rep.all_hold()) {
    throw SolveError("constant_strategies: assumption checks failed (a2=" +
                     std::string(rep.a2_holds ? "ok" : "fail") + ", a3=" +
                     (rep.a3_holds ? "ok" : "fail") + ", a4=" +
                     (rep.a4_holds ? "ok" : "fail") + ")");
  }
  // Lemma defaults: deceptive persistence and the (o,v) suspicious rows are
  // the pure lockout/defense entries; solve_pdos overrides them per region.
  return pure_response_profile(ps, A_T, A_G, A_G);
}

double threshold_td(const PdosScenario& ps) {
  require_shape(ps);
  const Scenario& s = ps.base;
  const double ul = s.utility(Y_V, X_L, M_P, A_F).value * s.delta(Y_V, X_L, M_P, E_B);
  const double ud = s.utility(Y_V, X_D, M_P, A_F).value * s.delta(Y_V, X_D, M_P, E_B);
  const double den = ul - ud;
  if (den == 0.0) {
    throw SolveError("threshold_td: degenerate denominator (both detector-weighted "
                     "defense payoffs vanish)");
  }
  return ul / den;
}

double benefit_persist(const PdosScenario& ps, const StrategyProfile& rows) {
  const Scenario& s = ps.base;
  double bp = 0.0;
  for (Index y = 0; y < s.num_y(); ++y) {
    for (Index e = 0; e < s.num_e(); ++e) {
      const double w = s.q_receiver[y] * s.delta(y, X_D, M_P, e);
      if (w == 0.0) continue;
      for (Index a = 0; a < s.num_a(); ++a) {
        bp += w * rows.receiver(y, M_P, e, a) * s.omega(X_D, a);
      }
    }
  }
  return bp;
}

StrategyProfile pure_response_profile(const PdosScenario& ps, Index a_k, Index a_o,
                                      Index a_v) {
  const Scenario& s = ps.base;
  StrategyProfile p = StrategyProfile::zeros(s);
  p.sender(X_L, M_P) = 1.0;
  p.sender(X_D, M_P) = 1.0;
  for (Index y = 0; y < s.num_y(); ++y) {
    for (Index e = 0; e < s.num_e(); ++e) p.receiver(y, M_W, e, A_T) = 1.0;
    p.receiver(y, M_P, E_N, A_T) = 1.0;
  }
  p.receiver(Y_K, M_P, E_B, a_k) = 1.0;
  p.receiver(Y_O, M_P, E_B, a_o) = 1.0;
  p.receiver(Y_V, M_P, E_B, a_v) = 1.0;
  return p;
}

Thresholds compute_thresholds(const PdosScenario& ps) {
  Thresholds t;
  t.td = threshold_td(ps);
  const ReceiverTriple triples[] = {
      {A_T, A_T, A_T}, {A_T, A_T, A_F}, {A_T, A_G, A_G}, {A_T, A_G, A_F}};
  for (const ReceiverTriple& triple : triples) {
    t.bp_pure[triple] =
        benefit_persist(ps, pure_response_profile(ps, triple[0], triple[1], triple[2]));
  }
  return t;
}

const char* region_name(Region r) {
  switch (r) {
    case Region::status_quo: return "status_quo";
    case Region::active_deterrence: return "active_deterrence";
    case Region::resistant_attacker: return "resistant_attacker";
    case Region::vulnerable_attacker: return "vulnerable_attacker";
  }
  return "?";
}

std::string RegionOutcome::label() const {
  if (region) return region_name(*region);
  return boundary ? "boundary" : "unclassified";
}

RegionOutcome classify_region(const PdosScenario& ps, double boundary_tol) {
  require_valid(ps, false);
  RegionOutcome out;
  out.q_d = ps.base.q_sender[X_D];
  out.td = threshold_td(ps);
  out.bp_tgg = benefit_persist(ps, pure_response_profile(ps, A_T, A_G, A_G));
  out.bp_tgf = benefit_persist(ps, pure_response_profile(ps, A_T, A_G, A_F));

  if (std::abs(out.bp_tgg) <= boundary_tol) {
    out.boundary = true;
    out.detail = "BP(t,g,g) = " + fmt(out.bp_tgg) + " is at its sign threshold";
    return out;
  }
  if (std::abs(out.bp_tgf) <= boundary_tol) {
    out.boundary = true;
    out.detail = "BP(t,g,f) = " + fmt(out.bp_tgf) + " is at its sign threshold";
    return out;
  }
  if (std::abs(out.q_d - out.td) <= boundary_tol) {
    out.boundary = true;
    out.detail = "q_d = " + fmt(out.q_d) + " is at the TD threshold " + fmt(out.td);
    return out;
  }

  if (out.bp_tgg < 0.0 && out.bp_tgf < 0.0) {
    out.region = Region::vulnerable_attacker;
  } else if (out.bp_tgg > 0.0) {
    if (out.q_d < out.td) {
      out.region = Region::status_quo;
    } else {
      out.region = out.bp_tgf < 0.0 ? Region::active_deterrence
                                    : Region::resistant_attacker;
    }
  } else {
    out.detail = "sign pattern BP(t,g,g) < 0 < BP(t,g,f) falls outside the region table";
  }
  return out;
}

const char* shape_name(ProfileShape s) {
  switch (s) {
    case ProfileShape::pure_status_quo: return "pure_status_quo";
    case ProfileShape::pure_resistant: return "pure_resistant";
    case ProfileShape::lockdown_mix: return "lockdown_mix";
    case ProfileShape::defense_mix: return "defense_mix";
    case ProfileShape::trust_defense_mix: return "trust_defense_mix";
    case ProfileShape::lockdown_defense_mix: return "lockdown_defense_mix";
  }
  return "?";
}

namespace {

ProfileShape table_shape(Region r) {
  switch (r) {
    case Region::status_quo: return ProfileShape::pure_status_quo;
    case Region::resistant_attacker: return ProfileShape::pure_resistant;
    case Region::active_deterrence: return ProfileShape::defense_mix;
    case Region::vulnerable_attacker: return ProfileShape::lockdown_mix;
  }
  return ProfileShape::pure_status_quo;
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw SolveError(std::string("solve_pdos: ") + what + " = " + fmt(p) +
                     " escapes [0,1]; scenario sits outside the solvable regime");
  }
}

// Fills the reference closed forms for the mixed regions and their
// agreement with the emitted values.
ReferenceForms reference_forms(const View& v, const RegionOutcome& region,
                               const AssumptionReport& rep,
                               const EquilibriumResult& res) {
  ReferenceForms ref;
  if (!region.region) return ref;
  auto agrees = [](double a, double b) {
    return std::abs(a - b) <= kAgreeTol * std::max({1.0, std::abs(a), std::abs(b)});
  };
  if (*region.region == Region::active_deterrence) {
    ref.defense_weight = (v.w_t * v.q_k + v.w_g * (v.q_o + v.q_v)) /
                         ((v.w_g - v.w_f) * v.q_v * v.db_d);
    ref.sender_mix = region.td / v.q_d;
    ref.defense_weight_agrees = agrees(*ref.defense_weight, res.sigma_v_f_pb());
    ref.sender_mix_agrees = agrees(*ref.sender_mix, res.sigma_d_p());
  } else if (*region.region == Region::vulnerable_attacker) {
    ref.lockdown_weight =
        v.w_t / ((v.q_o + v.q_v) * v.db_d * (v.w_t - v.w_g));
    ref.sender_mix = rep.a3_threshold / v.q_d;
    ref.lockdown_weight_agrees = agrees(*ref.lockdown_weight, res.sigma_o_g_pb());
    ref.sender_mix_agrees = agrees(*ref.sender_mix, res.sigma_d_p());
  }
  return ref;
}

}  // namespace

EquilibriumResult solve_pdos(const PdosScenario& ps) {
  require_valid(ps, true);
  const Scenario& s = ps.base;
  const AssumptionReport rep = check_assumptions(ps);
  if (!rep.a2_holds || !rep.a3_holds) {
    throw SolveError("solve_pdos: parameter regime violated (need q_d < " +
                     fmt(rep.a2_threshold) + " and q_d > " + fmt(rep.a3_threshold) +
                     ", got q_d = " + fmt(rep.q_d) + ")");
  }

  EquilibriumResult out;
  out.region = classify_region(ps);
  if (out.region.boundary) {
    throw SolveError("solve_pdos: boundary classification: " + out.region.detail);
  }

  const View v = make_view(s);
  const Cutoffs mu = posterior_cutoffs(v);

  // The suspicious information set shared by o and v orders three belief
  // cutoffs; walking sender persistence upward, the receivers' best
  // responses change at two of them. The equilibrium sits either at the
  // first cutoff where the benefit of persisting changes sign (receivers
  // there mix to zero it, the sender mixes at exactly that persistence), or
  // at full persistence when the benefit stays positive. When the lockout
  // and defense cutoffs coincide the windowless ordering below still emits
  // a valid profile: every tied action at the crossing belief is optimal.
  struct Stop {
    double sigma;          // persistence where the flip happens
    Index flip_type;       // receiver type whose row flips (Y_O or Y_V)
    Index from, to;        // flipped action
    bool joint;            // o and v flip together (shared cutoff)
    ReceiverTriple after;  // pure responses beyond the flip
  };
  const ReceiverTriple kAllTrust{A_T, A_T, A_T};
  std::array<Stop, 2> stops;
  if (rep.lockdown_belief_exists) {
    stops[0] = {persistence_for_posterior(v, mu.mu_tg), Y_O, A_T, A_G, true,
                {A_T, A_G, A_G}};
    stops[1] = {persistence_for_posterior(v, mu.mu_fg), Y_V, A_G, A_F, false,
                {A_T, A_G, A_F}};
  } else {
    stops[0] = {persistence_for_posterior(v, mu.mu_tf), Y_V, A_T, A_F, false,
                {A_T, A_T, A_F}};
    stops[1] = {persistence_for_posterior(v, mu.mu_tg), Y_O, A_T, A_G, false,
                {A_T, A_G, A_F}};
  }

  ReceiverTriple before = kAllTrust;
  double sigma_d = 1.0;
  ProfileShape shape = ProfileShape::pure_status_quo;
  StrategyProfile profile = StrategyProfile::zeros(s);
  bool solved = false;

  for (const Stop& stop : stops) {
    if (stop.sigma >= 1.0) break;  // cutoff beyond full persistence
    const double bp_after = benefit_persist(
        ps, pure_response_profile(ps, stop.after[0], stop.after[1], stop.after[2]));
    if (std::abs(bp_after) <= kBoundaryTol) {
      throw SolveError("solve_pdos: benefit of persisting vanishes on a pure segment "
                       "(boundary)");
    }
    if (bp_after > 0.0) {
      before = stop.after;
      continue;
    }

    // Sign change: mix the flipping row(s) so the benefit is exactly zero.
    const double bp_before = benefit_persist(
        ps, pure_response_profile(ps, before[0], before[1], before[2]));
    profile = pure_response_profile(ps, before[0], before[1], before[2]);
    sigma_d = stop.sigma;
    if (stop.joint) {
      // o and v leave trust together; split the required lockout mass evenly.
      const double gamma = v.w_t / ((v.q_o + v.q_v) * v.db_d * (v.w_t - v.w_g));
      check_probability(gamma, "joint lockout weight");
      for (Index y : {Y_O, Y_V}) {
        profile.receiver(y, M_P, E_B, A_T) = 1.0 - gamma;
        profile.receiver(y, M_P, E_B, A_G) = gamma;
      }
      shape = ProfileShape::lockdown_mix;
    } else {
      const double flip_q = stop.flip_type == Y_O ? v.q_o : v.q_v;
      const double weight =
          bp_before / (flip_q * v.db_d *
                       (s.omega(X_D, stop.from) - s.omega(X_D, stop.to)));
      check_probability(weight, "flip mixing weight");
      profile.receiver(stop.flip_type, M_P, E_B, stop.from) = 1.0 - weight;
      profile.receiver(stop.flip_type, M_P, E_B, stop.to) = weight;
      if (stop.flip_type == Y_V && stop.from == A_G) {
        shape = ProfileShape::defense_mix;
      } else if (stop.flip_type == Y_V) {
        shape = ProfileShape::trust_defense_mix;
      } else {
        shape = ProfileShape::lockdown_defense_mix;
      }
    }
    solved = true;
    break;
  }

  if (!solved) {
    // Benefit stays positive through every cutoff below 1: pure persistence.
    ReceiverTriple at_one = kAllTrust;
    for (const Stop& stop : stops) {
      if (stop.sigma < 1.0) at_one = stop.after;
    }
    profile = pure_response_profile(ps, at_one[0], at_one[1], at_one[2]);
    sigma_d = 1.0;
    shape = at_one[2] == A_F ? ProfileShape::pure_resistant
                             : ProfileShape::pure_status_quo;
  }

  check_probability(sigma_d, "sender persistence");
  profile.sender(X_D, M_P) = sigma_d;
  profile.sender(X_D, M_W) = 1.0 - sigma_d;

  out.profile = profile;
  out.beliefs = fill_beliefs(s, profile);
  out.diagnostics.shape = shape;
  out.diagnostics.lockdown_belief_exists = rep.lockdown_belief_exists;
  out.diagnostics.matches_region_table =
      out.region.region && table_shape(*out.region.region) == shape;
  out.diagnostics.reference = reference_forms(v, out.region, rep, out);
  if (!out.diagnostics.matches_region_table && out.region.region) {
    out.diagnostics.notes =
        rep.lockdown_belief_exists
            ? "emitted support differs from the region table"
            : "no posterior makes pure lockout strictly optimal for the active "
              "type; the region table's support is infeasible here";
  }
  if (!out.region.region && !out.region.boundary) {
    out.diagnostics.notes = out.region.detail +
        "; an alternate full-persistence equilibrium may coexist";
  }
  return out;
}

DeviationReport verify_pbne(const PdosScenario& ps, const EquilibriumResult& result,
                            double tolerance) {
  const Scenario& s = ps.base;
  {
    const std::vector<Violation> v = validate_profile(s, result.profile);
    if (!v.empty()) {
      throw std::invalid_argument("verify_pbne: profile not normalized: " +
                                  v.front().where + ": " + v.front().detail);
    }
  }

  DeviationReport rep;
  rep.tolerance = tolerance;
  rep.sender_gain.assign(s.num_x(), 0.0);

  // Sender optimality: best pure message against the emitted receiver rows.
  for (Index x = 0; x < s.num_x(); ++x) {
    const double mixed = sender_expected_utility(s, result.profile, x);
    double best = mixed;
    for (Index m = 0; m < s.num_m(); ++m) {
      StrategyProfile pure = result.profile;
      for (Index mm = 0; mm < s.num_m(); ++mm) pure.sender(x, mm) = mm == m ? 1.0 : 0.0;
      best = std::max(best, sender_expected_utility(s, pure, x));
    }
    rep.sender_gain[x] = best - mixed;
    rep.max_gain = std::max(rep.max_gain, rep.sender_gain[x]);
  }

  // Receiver optimality and belief consistency at reachable sets.
  for (Index y = 0; y < s.num_y(); ++y) {
    for (Index m = 0; m < s.num_m(); ++m) {
      for (Index e = 0; e < s.num_e(); ++e) {
        double reach = 0.0;
        for (Index x = 0; x < s.num_x(); ++x) {
          reach += s.q_sender[x] * result.profile.sender(x, m) * s.delta(y, x, m, e);
        }
        if (reach <= 0.0) continue;

        std::vector<double> mu(s.num_x());
        for (Index x = 0; x < s.num_x(); ++x) mu[x] = result.beliefs.mu(y, m, e, x);
        const std::vector<double> bayes = belief_update(s, result.profile, y, m, e);
        for (Index x = 0; x < s.num_x(); ++x) {
          rep.belief_gap = std::max(rep.belief_gap, std::abs(mu[x] - bayes[x]));
        }

        const ReceiverActionValues vals = receiver_action_values(s, mu, y, m, e);
        double mixed = 0.0;
        for (Index a = 0; a < s.num_a(); ++a) {
          if (!vals.prohibited[a]) {
            mixed += result.profile.receiver(y, m, e, a) * vals.value[a];
          }
        }
        const double gain = vals.best() - mixed;
        rep.receiver_gains.push_back({y, m, e, gain});
        rep.max_gain = std::max(rep.max_gain, gain);
      }
    }
  }
  return rep;
}

}  // namespace psg
