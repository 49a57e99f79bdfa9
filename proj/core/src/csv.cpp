#include "psg/csv.hpp"

#include <cstdio>
#include <sstream>

namespace psg {

using namespace pdos;

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string solve_csv(const PdosScenario& ps, const EquilibriumResult& result,
                      const DeviationReport& report) {
  std::ostringstream out;
  out << "region,sigma_dS_p,sigma_oR_g_pb,sigma_vR_g_pb,sigma_vR_f_pb,"
         "mu_o_d_pb,mu_v_d_pb,bp_tgg,bp_tgf,td,bounded_activity,max_deviation_gain\n";
  out << csv_field(result.region.label()) << ','
      << csv_number(result.sigma_d_p()) << ','
      << csv_number(result.sigma_o_g_pb()) << ','
      << csv_number(result.sigma_v_g_pb()) << ','
      << csv_number(result.sigma_v_f_pb()) << ','
      << csv_number(result.beliefs.mu(Y_O, M_P, E_B, X_D)) << ','
      << csv_number(result.beliefs.mu(Y_V, M_P, E_B, X_D)) << ','
      << csv_number(result.region.bp_tgg) << ','
      << csv_number(result.region.bp_tgf) << ','
      << csv_number(result.region.td) << ','
      << csv_number(result.sigma_d_p() * ps.base.q_sender[X_D]) << ','
      << csv_number(report.max_gain) << '\n';
  return out.str();
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "knob_value,region,sigma_dS_p,sigma_oR_g_pb,sigma_vR_g_pb,sigma_vR_f_pb,"
         "bounded_activity,bp_tgg,bp_tgf,td,q_d,max_deviation_gain,status\n";
  for (const SweepRow& row : result.rows) {
    out << csv_number(row.knob_value) << ','
        << csv_field(row.region_label) << ','
        << csv_number(row.sigma_d_p) << ','
        << csv_number(row.sigma_o_g_pb) << ','
        << csv_number(row.sigma_v_g_pb) << ','
        << csv_number(row.sigma_v_f_pb) << ','
        << csv_number(row.bounded_activity) << ','
        << csv_number(row.bp_tgg) << ','
        << csv_number(row.bp_tgf) << ','
        << csv_number(row.td) << ','
        << csv_number(row.q_d) << ','
        << csv_number(row.max_deviation_gain) << ','
        << csv_field(row.solved ? "ok" : "error: " + row.error) << '\n';
  }
  return out.str();
}

std::string simulate_csv(const PdosScenario& ps, const SimulationReport& report,
                         const std::vector<RateCheck>& checks, double analytic_utility) {
  const Scenario& s = ps.base;
  std::ostringstream out;
  out << "replications,seed,sender_type,utility_mean,utility_se,analytic_utility,"
         "persist_count,lockouts,defense_events,infections";
  for (Index a = 0; a < s.num_a(); ++a) {
    const std::string& n = s.actions[a];
    out << ",lambda_" << n << ",rate_mean_" << n << ",rate_var_" << n
        << ",mean_ok_" << n << ",var_ok_" << n;
  }
  out << '\n';
  out << report.replications << ',' << report.seed << ','
      << s.sender_types[report.sender_type] << ','
      << csv_number(report.utility_mean) << ','
      << csv_number(report.utility_se) << ','
      << csv_number(analytic_utility) << ','
      << report.persist_count << ',' << report.lockouts << ','
      << report.defense_events << ',' << report.infections;
  for (Index a = 0; a < s.num_a(); ++a) {
    const RateCheck& rc = checks[a];
    out << ',' << csv_number(rc.lambda) << ',' << csv_number(rc.mean) << ','
        << csv_number(rc.variance) << ',' << (rc.mean_ok ? 1 : 0) << ','
        << (rc.variance_ok ? 1 : 0);
  }
  out << '\n';
  return out.str();
}

}  // namespace psg
