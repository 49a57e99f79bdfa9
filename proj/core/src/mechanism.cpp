#include "psg/mechanism.hpp"

#include <stdexcept>

namespace psg {

using namespace pdos;

const char* knob_name(Knob k) {
  switch (k) {
    case Knob::legal: return "legal";
    case Knob::incentive: return "incentive";
    case Knob::defense_weight: return "defense_weight";
  }
  return "?";
}

std::vector<double> linear_grid(double from, double to, int steps) {
  if (steps < 1) throw std::invalid_argument("linear_grid: need at least one step");
  std::vector<double> g(steps);
  if (steps == 1) {
    g[0] = from;
    return g;
  }
  for (int i = 0; i < steps; ++i) {
    g[i] = from + (to - from) * static_cast<double>(i) / (steps - 1);
  }
  return g;
}

PdosScenario apply_knob(const PdosScenario& base, Knob knob, double value) {
  PdosScenario ps = base;
  Scenario& s = ps.base;
  switch (knob) {
    case Knob::legal: {
      // Move prior mass between weak and strong devices; active share fixed.
      const double q_v = s.q_receiver[Y_V];
      s.q_receiver[Y_K] = value;
      s.q_receiver[Y_O] = 1.0 - value - q_v;
      break;
    }
    case Knob::incentive:
      s.receiver_utility[s.utility_index(Y_V, X_D, M_P, A_F)] = CellPayoff{value, false};
      break;
    case Knob::defense_weight:
      s.sender_weights[X_D * s.num_a() + A_F] = value;
      break;
  }
  return ps;
}

SweepResult run_sweep(const SweepSpec& spec) {
  SweepResult out;
  out.spec = spec;
  out.rows.reserve(spec.grid.size());
  for (double value : spec.grid) {
    SweepRow row;
    row.knob_value = value;
    const PdosScenario ps = apply_knob(spec.base, spec.knob, value);
    try {
      const std::vector<Violation> violations = validate_pdos_scenario(ps);
      if (!violations.empty()) {
        throw std::invalid_argument(violations.front().where + ": " +
                                    violations.front().detail);
      }
      const RegionOutcome region = classify_region(ps);
      row.region_label = region.label();
      row.bp_tgg = region.bp_tgg;
      row.bp_tgf = region.bp_tgf;
      row.td = region.td;
      row.q_d = region.q_d;
      const EquilibriumResult res = solve_pdos(ps);
      const DeviationReport dev = verify_pbne(ps, res);
      row.sigma_d_p = res.sigma_d_p();
      row.sigma_o_g_pb = res.sigma_o_g_pb();
      row.sigma_v_g_pb = res.sigma_v_g_pb();
      row.sigma_v_f_pb = res.sigma_v_f_pb();
      row.bounded_activity = bounded_activity(res, ps);
      row.max_deviation_gain = dev.max_gain;
      row.solved = true;
    } catch (const std::exception& e) {
      row.error = e.what();
      if (row.region_label.empty()) row.region_label = "error";
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

double bounded_activity(const EquilibriumResult& result, const PdosScenario& ps) {
  return result.sigma_d_p() * ps.base.q_sender[X_D];
}

}  // namespace psg
