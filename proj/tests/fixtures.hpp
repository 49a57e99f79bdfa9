#pragma once

// Shared fixtures: four deterministic per-region scenarios plus a rejection
// sampler for randomized region fixtures. Test-only code.

#include <optional>
#include <random>
#include <stdexcept>

#include "psg/equilibrium.hpp"
#include "psg/scenario.hpp"

namespace psg::testing {

using namespace psg::pdos;

inline PdosScenario with_params(double uf_d, double w_g, double w_f, double q_d) {
  PdosScenario ps = canonical_pdos();
  Scenario& s = ps.base;
  s.receiver_utility[s.utility_index(Y_V, X_D, M_P, A_F)] = CellPayoff{uf_d, false};
  s.sender_weights[X_D * s.num_a() + A_G] = w_g;
  s.sender_weights[X_D * s.num_a() + A_F] = w_f;
  s.q_sender = {1.0 - q_d, q_d};
  return ps;
}

// Deterministic fixtures realizing each region with the region table's own
// support structure (the active type's lockout window is nonempty).
inline PdosScenario testbed(Region r) {
  switch (r) {
    case Region::status_quo:         return with_params(0.5, -0.5, -6.0, 0.15);
    case Region::active_deterrence:  return with_params(0.5, -0.5, -6.0, 0.3);
    case Region::resistant_attacker: return with_params(0.5, -0.5, -0.7, 0.3);
    case Region::vulnerable_attacker:return with_params(0.5, -3.0, -6.0, 0.3);
  }
  throw std::logic_error("unreachable");
}

struct SampleOptions {
  // Keep the lockout window nonempty so the mixed regions carry the region
  // table's support structure; false samples the complementary regime.
  bool lockdown_window = true;
  int max_tries = 500000;
  double margin = 1e-4;  // keep defining quantities away from thresholds
};

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Draws a random scenario classified as `target` that passes validation and
// the a2/a3 trust thresholds. Throws if the acceptance loop exhausts.
inline PdosScenario sample_region_scenario(Region target, std::mt19937_64& rng,
                                           const SampleOptions& opt = {}) {
  for (int attempt = 0; attempt < opt.max_tries; ++attempt) {
    const double db_l = uniform(rng, 0.02, 0.35);
    const double db_d = uniform(rng, 0.55, 0.98);
    const double dk = uniform(rng, 0.0, 1.0) < 0.5 ? 0.0 : uniform(rng, 0.0, 0.3);

    const double ut_l = uniform(rng, 0.3, 3.0);
    const double ut_d = -uniform(rng, 0.3, 3.0);
    const double uf_l = -uniform(rng, 0.3, 3.0);
    // Lockout window nonempty iff ut_l * uf_d < |ut_d| * |uf_l|.
    const double pivot = -ut_d * -uf_l / ut_l;
    const double uf_d = opt.lockdown_window ? uniform(rng, 0.05 * pivot, 0.95 * pivot)
                                            : uniform(rng, 1.05 * pivot, 4.0 * pivot);

    double qk = uniform(rng, 0.05, 1.0);
    double qo = uniform(rng, 0.05, 1.0);
    double qv = uniform(rng, 0.05, 1.0);
    const double qsum = qk + qo + qv;
    qk /= qsum;
    qo /= qsum;
    qv /= qsum;
    if (qk < 0.03 || qo < 0.03 || qv < 0.03) continue;

    // Solve the weight bounds that pin the benefit-of-persisting signs the
    // target region needs, then draw inside them.
    const double w_t = uniform(rng, 0.3, 3.0);
    // BP(t,g,g) < 0 iff w_g below this (always negative) bound:
    const double g_bound = w_t * (1.0 - 1.0 / ((qo + qv) * db_d));
    const bool want_tgg_neg = target == Region::vulnerable_attacker;
    const double w_g = want_tgg_neg ? g_bound - uniform(rng, 0.05, 4.0)
                                    : g_bound * uniform(rng, 0.05, 0.95);
    const double bp_tgg_draw = w_t - (qo + qv) * db_d * (w_t - w_g);
    // BP(t,g,f) < 0 iff w_f below this bound:
    const double f_bound = w_g - bp_tgg_draw / (qv * db_d);
    double w_f;
    if (target == Region::resistant_attacker) {
      if (f_bound >= -0.01) continue;
      w_f = f_bound * uniform(rng, 0.05, 0.95);
    } else {
      w_f = std::min(f_bound, 0.0) - uniform(rng, 0.05, 8.0);
    }

    const double a2r = ut_l / (ut_l - ut_d);
    const double a3r = (ut_l * db_l) / (ut_l * db_l - ut_d * db_d);
    const double td_l = uf_l * db_l;
    const double td_d = uf_d * db_d;
    const double td = td_l / (td_l - td_d);

    double lo = a3r, hi = a2r;
    if (target == Region::status_quo) {
      hi = std::min(hi, td);
    } else if (target != Region::vulnerable_attacker) {
      lo = std::max(lo, td);
    }
    const double width = hi - lo;
    if (width < 20.0 * opt.margin) continue;
    const double q_d = uniform(rng, lo + opt.margin, hi - opt.margin);
    if (std::abs(q_d - td) < opt.margin) continue;

    PdosScenario ps = canonical_pdos();
    Scenario& s = ps.base;
    s.lambda = uniform(rng, 5.0, 200.0);
    s.q_sender = {1.0 - q_d, q_d};
    s.q_receiver = {qk, qo, qv};
    auto set_delta = [&](Index y, Index x, double b_prob) {
      s.detector[s.detector_index(y, x, M_P, E_B)] = b_prob;
      s.detector[s.detector_index(y, x, M_P, E_N)] = 1.0 - b_prob;
    };
    set_delta(Y_K, X_L, dk);
    set_delta(Y_K, X_D, dk);
    for (Index y : {Y_O, Y_V}) {
      set_delta(y, X_L, db_l);
      set_delta(y, X_D, db_d);
    }
    for (Index y : {Y_K, Y_O, Y_V}) {
      s.receiver_utility[s.utility_index(y, X_L, M_P, A_T)] = CellPayoff{ut_l, false};
      s.receiver_utility[s.utility_index(y, X_D, M_P, A_T)] = CellPayoff{ut_d, false};
    }
    s.receiver_utility[s.utility_index(Y_V, X_L, M_P, A_F)] = CellPayoff{uf_l, false};
    s.receiver_utility[s.utility_index(Y_V, X_D, M_P, A_F)] = CellPayoff{uf_d, false};
    s.sender_weights[X_D * s.num_a() + A_T] = w_t;
    s.sender_weights[X_D * s.num_a() + A_G] = w_g;
    s.sender_weights[X_D * s.num_a() + A_F] = w_f;

    if (!validate_pdos_scenario(ps).empty()) continue;
    const RegionOutcome region = classify_region(ps);
    if (!region.region || *region.region != target) continue;
    if (std::abs(region.bp_tgg) < opt.margin || std::abs(region.bp_tgf) < opt.margin) {
      continue;
    }
    const AssumptionReport rep = check_assumptions(ps);
    if (!rep.a2_holds || !rep.a3_holds) continue;
    return ps;
  }
  throw std::runtime_error("sample_region_scenario: acceptance loop exhausted");
}

}  // namespace psg::testing
