#pragma once

#include "psg/equilibrium.hpp"
#include "psg/scenario.hpp"

namespace psg {

/// Intervention knobs for the deterrence sweeps.
///   legal          — set q_R(k), moving the freed mass onto q_R(o), q_R(v)
///                    held fixed (mandated device hardening);
///   incentive      — set U_v(d,p,f) (reward for defending against deception);
///   defense_weight — set omega_d(f) (per-device cost of defense to the
///                    attacker).
enum class Knob { legal, incentive, defense_weight };

const char* knob_name(Knob k);

struct SweepSpec {
  PdosScenario base;
  Knob knob = Knob::incentive;
  std::vector<double> grid;
};

/// Evenly spaced grid over [from, to] with `steps` points.
std::vector<double> linear_grid(double from, double to, int steps);

/// Perturbed copy of the base scenario at one knob value.
PdosScenario apply_knob(const PdosScenario& base, Knob knob, double value);

/// One sweep grid point. Failures never abort a sweep: `error` carries the
/// reason, the computable quantities stay filled.
struct SweepRow {
  double knob_value = 0.0;
  std::string region_label;
  double sigma_d_p = 0.0;
  double sigma_o_g_pb = 0.0;
  double sigma_v_g_pb = 0.0;
  double sigma_v_f_pb = 0.0;
  double bounded_activity = 0.0;
  double bp_tgg = 0.0;
  double bp_tgf = 0.0;
  double td = 0.0;
  double q_d = 0.0;
  double max_deviation_gain = 0.0;
  bool solved = false;
  std::string error;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
};

/// Classifies, solves and verifies the scenario at every grid point,
/// recording a row per point in grid order.
SweepResult run_sweep(const SweepSpec& spec);

/// Total deceptive activity at equilibrium: sigma_d(p) * q_d.
double bounded_activity(const EquilibriumResult& result, const PdosScenario& ps);

}  // namespace psg
