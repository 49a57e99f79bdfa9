#include <doctest.h>

#include <cstdio>
#include <random>
#include <string>

#include "psg/csv.hpp"
#include "psg/equilibrium.hpp"
#include "psg/scenario_io.hpp"

#include <json.hpp>

using namespace psg;
using namespace psg::pdos;

namespace {

bool scenarios_bit_equal(const PdosScenario& a, const PdosScenario& b) {
  const Scenario &sa = a.base, &sb = b.base;
  if (sa.lambda != sb.lambda || sa.q_sender != sb.q_sender ||
      sa.q_receiver != sb.q_receiver || sa.detector != sb.detector ||
      sa.sender_weights != sb.sender_weights ||
      sa.offpath_belief != sb.offpath_belief) {
    return false;
  }
  if (sa.receiver_utility.size() != sb.receiver_utility.size()) return false;
  for (Index i = 0; i < sa.receiver_utility.size(); ++i) {
    if (sa.receiver_utility[i].value != sb.receiver_utility[i].value ||
        sa.receiver_utility[i].prohibited != sb.receiver_utility[i].prohibited) {
      return false;
    }
  }
  return a.tau_low == b.tau_low && a.tau_high == b.tau_high &&
         a.password_dictionary == b.password_dictionary;
}

// A random decimal literal with at most 15 significant digits.
double random_decimal(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::uniform_int_distribution<int> digits(1, 15);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits(rng), dist(rng));
  return std::strtod(buf, nullptr);
}

}  // namespace

TEST_CASE("checked-in canonical scenario file equals the code fixture") {
  const PdosScenario loaded = load_pdos_scenario(std::string(PSG_DATA_DIR) +
                                                 "/canonical.json");
  CHECK(scenarios_bit_equal(loaded, canonical_pdos()));
}

TEST_CASE("round trip preserves numeric fields bit-exactly") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 50; ++trial) {
    PdosScenario ps = canonical_pdos();
    Scenario& s = ps.base;
    s.lambda = random_decimal(rng, 1.0, 500.0);
    const double qd = random_decimal(rng, 0.01, 0.99);
    s.q_sender = {1.0 - qd, qd};
    for (Index y : {Y_O, Y_V}) {
      const double bl = random_decimal(rng, 0.0, 0.5);
      const double bd = random_decimal(rng, 0.5, 1.0);
      s.detector[s.detector_index(y, X_L, M_P, E_B)] = bl;
      s.detector[s.detector_index(y, X_L, M_P, E_N)] = 1.0 - bl;
      s.detector[s.detector_index(y, X_D, M_P, E_B)] = bd;
      s.detector[s.detector_index(y, X_D, M_P, E_N)] = 1.0 - bd;
    }
    for (Index y : {Y_K, Y_O, Y_V}) {
      s.receiver_utility[s.utility_index(y, X_L, M_P, A_T)] =
          CellPayoff{random_decimal(rng, 0.1, 5.0), false};
      s.receiver_utility[s.utility_index(y, X_D, M_P, A_T)] =
          CellPayoff{random_decimal(rng, -5.0, -0.1), false};
    }
    s.sender_weights[X_D * 3 + A_T] = random_decimal(rng, 0.1, 5.0);
    s.sender_weights[X_D * 3 + A_G] = random_decimal(rng, -5.0, -0.1);
    s.sender_weights[X_D * 3 + A_F] = random_decimal(rng, -12.0, -0.1);

    const PdosScenario back = parse_pdos_scenario(to_json(ps));
    CHECK(scenarios_bit_equal(ps, back));
  }
}

TEST_CASE("schema errors name the offending key path") {
  const std::string base = to_json(canonical_pdos());

  SUBCASE("unknown top-level key") {
    std::string doc = base;
    doc.insert(doc.find('{') + 1, "\"surprise\": 1,");
    CHECK_THROWS_WITH_AS(parse_pdos_scenario(doc),
                         doctest::Contains("unknown key 'surprise'"), IoError);
  }
  SUBCASE("unknown nested key") {
    std::string doc = base;
    const auto pos = doc.find("\"b_given_d_p\"");
    std::string mutated = doc;
    mutated.insert(pos, "\"b_given_x_p\": 0.1,");
    CHECK_THROWS_WITH_AS(parse_pdos_scenario(mutated),
                         doctest::Contains("b_given_x_p"), IoError);
  }
  SUBCASE("missing required key") {
    PdosScenario ps = canonical_pdos();
    std::string doc = to_json(ps);
    const auto pos = doc.find("\"tau_low\": 5,");
    doc.erase(pos, std::string("\"tau_low\": 5,").size());
    CHECK_THROWS_WITH_AS(parse_pdos_scenario(doc),
                         doctest::Contains("$.tau_low: missing"), IoError);
  }
  SUBCASE("malformed json reports position") {
    CHECK_THROWS_AS(parse_pdos_scenario("{\"lambda\": }"), IoError);
  }
  SUBCASE("bad prohibited marker") {
    std::string doc = base;
    const auto pos = doc.find("\"prohibited\"");
    doc.replace(pos, std::string("\"prohibited\"").size(), "\"banned\"");
    CHECK_THROWS_WITH_AS(parse_pdos_scenario(doc), doctest::Contains("prohibited"),
                         IoError);
  }
}

TEST_CASE("omitted defense entry parses as prohibited") {
  std::string doc = to_json(canonical_pdos());
  const std::string needle = "\"f\": \"prohibited\",";
  const auto pos = doc.find(needle);
  REQUIRE(pos != std::string::npos);
  doc.erase(pos, needle.size());
  const PdosScenario ps = parse_pdos_scenario(doc);
  CHECK(ps.base.utility(Y_K, X_D, M_P, A_F).prohibited);
  CHECK(validate_pdos_scenario(ps).empty());
}

TEST_CASE("omega.l is optional and defaults to zero") {
  nlohmann::json doc = nlohmann::json::parse(to_json(canonical_pdos()));
  doc["omega"].erase("l");
  const PdosScenario ps = parse_pdos_scenario(doc.dump());
  CHECK(ps.base.omega(X_L, A_T) == 0.0);
  CHECK(ps.base.omega(X_L, A_F) == 0.0);
}

TEST_CASE("csv emitters are deterministic and quote reserved characters") {
  const PdosScenario ps = canonical_pdos();
  const EquilibriumResult result = solve_pdos(ps);
  const DeviationReport report = verify_pbne(ps, result);
  const std::string a = solve_csv(ps, result, report);
  const std::string b = solve_csv(ps, result, report);
  CHECK(a == b);
  CHECK(a.find("region,sigma_dS_p,") == 0);
  CHECK(a.find("active_deterrence") != std::string::npos);

  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_number(1.0 / 3.0) == "0.333333333333");
}
