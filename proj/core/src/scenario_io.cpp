#include "psg/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace psg {

using nlohmann::json;
using namespace pdos;

namespace {

const json& get(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw IoError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw IoError(path + "." + key + ": missing");
  return *it;
}

double get_number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = get(obj, key, path);
  if (!v.is_number()) throw IoError(path + "." + key + ": expected a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& key, const std::string& path) {
  const json& v = get(obj, key, path);
  if (!v.is_number_integer()) throw IoError(path + "." + key + ": expected an integer");
  return v.get<int>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& path) {
  if (!obj.is_object()) throw IoError(path + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!ok.count(it.key())) throw IoError(path + ": unknown key '" + it.key() + "'");
  }
}

}  // namespace

PdosScenario parse_pdos_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("parse error: ") + e.what());
  }

  reject_unknown(doc,
                 {"lambda", "prior", "detector", "utility", "omega", "tau_low",
                  "tau_high", "dictionary", "offpath_belief_d"},
                 "$");

  PdosScenario ps = canonical_pdos();  // correct shapes and label sets
  Scenario& s = ps.base;

  s.lambda = get_number(doc, "lambda", "$");

  const json& prior = get(doc, "prior", "$");
  reject_unknown(prior, {"sender", "receiver"}, "$.prior");
  const json& prior_s = get(prior, "sender", "$.prior");
  reject_unknown(prior_s, {"d"}, "$.prior.sender");
  const double qd = get_number(prior_s, "d", "$.prior.sender");
  s.q_sender = {1.0 - qd, qd};
  const json& prior_r = get(prior, "receiver", "$.prior");
  reject_unknown(prior_r, {"k", "o", "v"}, "$.prior.receiver");
  s.q_receiver = {get_number(prior_r, "k", "$.prior.receiver"),
                  get_number(prior_r, "o", "$.prior.receiver"),
                  get_number(prior_r, "v", "$.prior.receiver")};

  const json& det = get(doc, "detector", "$");
  reject_unknown(det, {"k", "o", "v"}, "$.detector");
  const Index ys[] = {Y_K, Y_O, Y_V};
  const char* ynames[] = {"k", "o", "v"};
  for (int i = 0; i < 3; ++i) {
    const std::string path = std::string("$.detector.") + ynames[i];
    const json& row = get(det, ynames[i], "$.detector");
    reject_unknown(row, {"b_given_l_p", "b_given_d_p"}, path);
    const double bl = get_number(row, "b_given_l_p", path);
    const double bd = get_number(row, "b_given_d_p", path);
    s.detector[s.detector_index(ys[i], X_L, M_P, E_B)] = bl;
    s.detector[s.detector_index(ys[i], X_L, M_P, E_N)] = 1.0 - bl;
    s.detector[s.detector_index(ys[i], X_D, M_P, E_B)] = bd;
    s.detector[s.detector_index(ys[i], X_D, M_P, E_N)] = 1.0 - bd;
  }

  const json& util = get(doc, "utility", "$");
  reject_unknown(util, {"receiver"}, "$.utility");
  const json& recv = get(util, "receiver", "$.utility");
  reject_unknown(recv, {"k", "o", "v"}, "$.utility.receiver");
  const Index xs[] = {X_L, X_D};
  const char* xnames[] = {"l", "d"};
  for (int i = 0; i < 3; ++i) {
    const std::string ypath = std::string("$.utility.receiver.") + ynames[i];
    const json& per_y = get(recv, ynames[i], "$.utility.receiver");
    reject_unknown(per_y, {"l", "d"}, ypath);
    for (int j = 0; j < 2; ++j) {
      const std::string xpath = ypath + "." + xnames[j];
      const json& per_x = get(per_y, xnames[j], ypath);
      reject_unknown(per_x, {"p"}, xpath);
      const json& per_m = get(per_x, "p", xpath);
      reject_unknown(per_m, {"t", "g", "f"}, xpath + ".p");
      s.receiver_utility[s.utility_index(ys[i], xs[j], M_P, A_T)] =
          CellPayoff{get_number(per_m, "t", xpath + ".p"), false};
      s.receiver_utility[s.utility_index(ys[i], xs[j], M_P, A_G)] =
          CellPayoff{get_number(per_m, "g", xpath + ".p"), false};
      auto f_it = per_m.find("f");
      CellPayoff f_cell{0.0, true};  // omitted: prohibited
      if (f_it != per_m.end()) {
        if (f_it->is_string()) {
          if (f_it->get<std::string>() != "prohibited") {
            throw IoError(xpath + ".p.f: expected a number or \"prohibited\"");
          }
        } else if (f_it->is_number()) {
          f_cell = CellPayoff{f_it->get<double>(), false};
        } else {
          throw IoError(xpath + ".p.f: expected a number or \"prohibited\"");
        }
      }
      s.receiver_utility[s.utility_index(ys[i], xs[j], M_P, A_F)] = f_cell;
      // withdraw branch stays at zero payoff, f prohibition carries over
      s.receiver_utility[s.utility_index(ys[i], xs[j], M_W, A_T)] = CellPayoff{};
      s.receiver_utility[s.utility_index(ys[i], xs[j], M_W, A_G)] = CellPayoff{};
      s.receiver_utility[s.utility_index(ys[i], xs[j], M_W, A_F)] =
          CellPayoff{0.0, f_cell.prohibited};
    }
  }

  const json& omega = get(doc, "omega", "$");
  reject_unknown(omega, {"d", "l"}, "$.omega");
  const json& omega_d = get(omega, "d", "$.omega");
  reject_unknown(omega_d, {"t", "g", "f"}, "$.omega.d");
  s.sender_weights[X_D * s.num_a() + A_T] = get_number(omega_d, "t", "$.omega.d");
  s.sender_weights[X_D * s.num_a() + A_G] = get_number(omega_d, "g", "$.omega.d");
  s.sender_weights[X_D * s.num_a() + A_F] = get_number(omega_d, "f", "$.omega.d");
  s.sender_weights[X_L * s.num_a() + A_T] = 0.0;
  s.sender_weights[X_L * s.num_a() + A_G] = 0.0;
  s.sender_weights[X_L * s.num_a() + A_F] = 0.0;
  if (omega.contains("l")) {
    const json& omega_l = omega["l"];
    reject_unknown(omega_l, {"t", "g", "f"}, "$.omega.l");
    s.sender_weights[X_L * s.num_a() + A_T] = get_number(omega_l, "t", "$.omega.l");
    s.sender_weights[X_L * s.num_a() + A_G] = get_number(omega_l, "g", "$.omega.l");
    s.sender_weights[X_L * s.num_a() + A_F] = get_number(omega_l, "f", "$.omega.l");
  }

  ps.tau_low = get_int(doc, "tau_low", "$");
  ps.tau_high = get_int(doc, "tau_high", "$");

  const json& dict = get(doc, "dictionary", "$");
  if (!dict.is_array()) throw IoError("$.dictionary: expected an array of strings");
  ps.password_dictionary.clear();
  for (const json& entry : dict) {
    if (!entry.is_string()) throw IoError("$.dictionary: expected an array of strings");
    ps.password_dictionary.push_back(entry.get<std::string>());
  }

  double offpath_d = 1.0;
  if (doc.contains("offpath_belief_d")) {
    if (!doc["offpath_belief_d"].is_number()) {
      throw IoError("$.offpath_belief_d: expected a number");
    }
    offpath_d = doc["offpath_belief_d"].get<double>();
  }
  s.offpath_belief = {1.0 - offpath_d, offpath_d};

  return ps;
}

PdosScenario load_pdos_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pdos_scenario(buf.str());
}

std::string to_json(const PdosScenario& ps) {
  const Scenario& s = ps.base;
  json doc;
  doc["lambda"] = s.lambda;
  doc["prior"]["sender"]["d"] = s.q_sender[X_D];
  const Index ys[] = {Y_K, Y_O, Y_V};
  const char* ynames[] = {"k", "o", "v"};
  for (int i = 0; i < 3; ++i) {
    doc["prior"]["receiver"][ynames[i]] = s.q_receiver[ys[i]];
    doc["detector"][ynames[i]]["b_given_l_p"] = s.delta(ys[i], X_L, M_P, E_B);
    doc["detector"][ynames[i]]["b_given_d_p"] = s.delta(ys[i], X_D, M_P, E_B);
    const Index xs[] = {X_L, X_D};
    const char* xnames[] = {"l", "d"};
    for (int j = 0; j < 2; ++j) {
      json& cell = doc["utility"]["receiver"][ynames[i]][xnames[j]]["p"];
      cell["t"] = s.utility(ys[i], xs[j], M_P, A_T).value;
      cell["g"] = s.utility(ys[i], xs[j], M_P, A_G).value;
      const CellPayoff& f = s.utility(ys[i], xs[j], M_P, A_F);
      if (f.prohibited) {
        cell["f"] = "prohibited";
      } else {
        cell["f"] = f.value;
      }
    }
  }
  doc["omega"]["d"]["t"] = s.omega(X_D, A_T);
  doc["omega"]["d"]["g"] = s.omega(X_D, A_G);
  doc["omega"]["d"]["f"] = s.omega(X_D, A_F);
  doc["omega"]["l"]["t"] = s.omega(X_L, A_T);
  doc["omega"]["l"]["g"] = s.omega(X_L, A_G);
  doc["omega"]["l"]["f"] = s.omega(X_L, A_F);
  doc["tau_low"] = ps.tau_low;
  doc["tau_high"] = ps.tau_high;
  doc["dictionary"] = ps.password_dictionary;
  doc["offpath_belief_d"] = s.offpath_belief[X_D];
  return doc.dump(2) + "\n";
}

void save_pdos_scenario(const PdosScenario& ps, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write scenario file: " + path);
  out << to_json(ps);
}

}  // namespace psg
