#pragma once

#include <string>

#include "psg/equilibrium.hpp"
#include "psg/mechanism.hpp"
#include "psg/montecarlo.hpp"

namespace psg {

/// Numeric CSV field: 12 significant digits.
std::string csv_number(double v);

/// RFC-4180 quoting when a field contains a comma, quote or newline.
std::string csv_field(const std::string& raw);

/// One header row plus one data row for a solved scenario.
std::string solve_csv(const PdosScenario& ps, const EquilibriumResult& result,
                      const DeviationReport& report);

/// Header plus one row per grid point, in grid order.
std::string sweep_csv(const SweepResult& result);

/// Header plus one row: simulation aggregates against the analytic value,
/// then per-action rate checks.
std::string simulate_csv(const PdosScenario& ps, const SimulationReport& report,
                         const std::vector<RateCheck>& checks, double analytic_utility);

}  // namespace psg
