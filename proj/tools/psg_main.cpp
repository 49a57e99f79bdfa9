// Command-line surface for the PDoS signaling-game lab:
//   psg classify <scenario.json>
//   psg solve    <scenario.json> <out.csv> [--verify-tolerance t]
//   psg sweep    <scenario.json> <out.csv> --knob k --from a --to b --steps n
//   psg simulate <scenario.json> <out.csv> [--replications n] [--seed s]
//
// Exit codes: 0 success, 1 runtime failure (solve/verify), 2 bad input
// (parse or validation), per subcommand contracts below.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "psg/csv.hpp"
#include "psg/equilibrium.hpp"
#include "psg/mechanism.hpp"
#include "psg/montecarlo.hpp"
#include "psg/payoff.hpp"
#include "psg/scenario_io.hpp"

namespace {

using namespace psg;

int report_violations(const std::vector<Violation>& violations) {
  std::cerr << "scenario validation failed:\n";
  for (const Violation& v : violations) {
    std::cerr << "  " << v.where << ": " << v.detail << "\n";
  }
  return 2;
}

PdosScenario load_checked(const std::string& path) {
  PdosScenario ps = load_pdos_scenario(path);
  const std::vector<Violation> violations = validate_pdos_scenario(ps);
  if (!violations.empty()) {
    report_violations(violations);
    throw IoError("invalid scenario: " + path);
  }
  return ps;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write output file: " + path);
  out << content;
}

std::string num(double v) { return csv_number(v); }

int cmd_classify(const std::string& scenario_path) {
  const PdosScenario ps = load_checked(scenario_path);
  const AssumptionReport rep = check_assumptions(ps);
  const RegionOutcome region = classify_region(ps);
  std::cout << "region: " << region.label() << "\n";
  if (!region.detail.empty()) std::cout << "detail: " << region.detail << "\n";
  std::cout << "td: " << num(region.td) << "\n"
            << "bp_tgg: " << num(region.bp_tgg) << "\n"
            << "bp_tgf: " << num(region.bp_tgf) << "\n"
            << "q_d: " << num(region.q_d) << "\n"
            << "a2: " << (rep.a2_holds ? "holds" : "fails") << " (q_d "
            << (rep.a2_holds ? "<" : ">=") << " " << num(rep.a2_threshold) << ")\n"
            << "a3: " << (rep.a3_holds ? "holds" : "fails") << " (q_d "
            << (rep.a3_holds ? ">" : "<=") << " " << num(rep.a3_threshold) << ")\n"
            << "a4: " << (rep.a4_holds ? "holds" : "fails");
  if (rep.a4_witness) std::cout << " (witness sigma = " << num(*rep.a4_witness) << ")";
  std::cout << "\nlockdown_belief_exists: "
            << (rep.lockdown_belief_exists ? "yes" : "no") << "\n";
  return 0;
}

int cmd_solve(const std::string& scenario_path, const std::string& out_path,
              double tolerance) {
  const PdosScenario ps = load_checked(scenario_path);
  const EquilibriumResult result = solve_pdos(ps);
  const DeviationReport report = verify_pbne(ps, result, tolerance);
  write_file(out_path, solve_csv(ps, result, report));

  std::cout << "region: " << result.region.label() << "\n"
            << "shape: " << shape_name(result.diagnostics.shape) << "\n"
            << "sigma_dS_p: " << num(result.sigma_d_p()) << "\n"
            << "max_deviation_gain: " << num(report.max_gain) << "\n";
  if (!result.diagnostics.notes.empty()) {
    std::cout << "note: " << result.diagnostics.notes << "\n";
  }
  const ReferenceForms& ref = result.diagnostics.reference;
  if (ref.sender_mix) {
    std::cout << "reference sender mix: " << num(*ref.sender_mix)
              << (ref.sender_mix_agrees ? " (agrees)" : " (differs)") << "\n";
  }
  if (ref.defense_weight) {
    std::cout << "reference defense weight: " << num(*ref.defense_weight)
              << (ref.defense_weight_agrees ? " (agrees)" : " (differs)") << "\n";
  }
  if (ref.lockdown_weight) {
    std::cout << "reference lockdown weight: " << num(*ref.lockdown_weight)
              << (ref.lockdown_weight_agrees ? " (agrees)" : " (differs)") << "\n";
  }
  if (!report.pass()) {
    std::cerr << "verification failed: max deviation gain " << num(report.max_gain)
              << " exceeds tolerance " << num(tolerance) << "\n";
    return 1;
  }
  return 0;
}

int cmd_sweep(const std::string& scenario_path, const std::string& out_path,
              const std::string& knob_str, double from, double to, int steps) {
  SweepSpec spec;
  spec.base = load_checked(scenario_path);
  if (knob_str == "legal") {
    spec.knob = Knob::legal;
  } else if (knob_str == "incentive") {
    spec.knob = Knob::incentive;
  } else if (knob_str == "defense_weight") {
    spec.knob = Knob::defense_weight;
  } else {
    std::cerr << "unknown knob '" << knob_str
              << "' (expected legal, incentive or defense_weight)\n";
    return 2;
  }
  spec.grid = linear_grid(from, to, steps);
  const SweepResult result = run_sweep(spec);
  write_file(out_path, sweep_csv(result));
  int solved = 0;
  for (const SweepRow& row : result.rows) solved += row.solved ? 1 : 0;
  std::cout << "sweep: " << result.rows.size() << " points, " << solved
            << " solved\n";
  return 0;
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_path,
                 std::uint64_t replications, std::uint64_t seed) {
  const PdosScenario ps = load_checked(scenario_path);
  const EquilibriumResult result = solve_pdos(ps);
  const SimulationReport report =
      simulate(ps, result.profile, pdos::X_D, replications, seed);
  const std::vector<RateCheck> checks = empirical_rate_check(
      ps, result.profile, pdos::X_D, pdos::M_P, replications, seed + 1);
  const double analytic = sender_expected_utility(ps.base, result.profile, pdos::X_D);
  write_file(out_path, simulate_csv(ps, report, checks, analytic));
  std::cout << "empirical mean: " << num(report.utility_mean) << " (se "
            << num(report.utility_se) << "), analytic: " << num(analytic) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson signaling-game solver and simulation lab for "
               "botnet-recruitment deterrence"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, knob = "incentive";
  double tolerance = 1e-9, from = 0.0, to = 1.0;
  int steps = 10;
  std::uint64_t replications = 100000, seed = 1;

  CLI::App* classify = app.add_subcommand("classify", "Print region and thresholds");
  classify->add_option("scenario", scenario_path, "scenario JSON path")->required();

  CLI::App* solve = app.add_subcommand("solve", "Solve and verify the equilibrium");
  solve->add_option("scenario", scenario_path)->required();
  solve->add_option("out", out_path, "output CSV path")->required();
  solve->add_option("--verify-tolerance", tolerance, "max deviation gain accepted");

  CLI::App* sweep = app.add_subcommand("sweep", "Equilibrium trajectory along a knob");
  sweep->add_option("scenario", scenario_path)->required();
  sweep->add_option("out", out_path)->required();
  sweep->add_option("--knob", knob, "legal | incentive | defense_weight")->required();
  sweep->add_option("--from", from)->required();
  sweep->add_option("--to", to)->required();
  sweep->add_option("--steps", steps)->required();

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo oracle run");
  simulate->add_option("scenario", scenario_path)->required();
  simulate->add_option("out", out_path)->required();
  simulate->add_option("--replications", replications);
  simulate->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) return cmd_classify(scenario_path);
    if (solve->parsed()) return cmd_solve(scenario_path, out_path, tolerance);
    if (sweep->parsed()) return cmd_sweep(scenario_path, out_path, knob, from, to, steps);
    if (simulate->parsed()) return cmd_simulate(scenario_path, out_path, replications, seed);
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
