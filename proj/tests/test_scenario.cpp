#include <doctest.h>

#include <cmath>
#include <limits>

#include "psg/scenario.hpp"

using namespace psg;
using namespace psg::pdos;

namespace {

bool has_violation(const std::vector<Violation>& vs, const std::string& where_part,
                   const std::string& detail_part = "") {
  for (const Violation& v : vs) {
    if (v.where.find(where_part) != std::string::npos &&
        v.detail.find(detail_part) != std::string::npos) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("canonical fixture satisfies every invariant") {
  const PdosScenario ps = canonical_pdos();
  CHECK(validate_pdos_scenario(ps).empty());
  CHECK(ps.tau_low == 5);
  CHECK(ps.tau_high == 9);
  CHECK(ps.password_dictionary ==
        std::vector<std::string>{"admin", "888888", "123456", "default", "support"});
  CHECK(ps.base.lambda == 100.0);
  CHECK(ps.base.q_sender[X_D] == 0.3);
  CHECK(ps.base.delta(Y_O, X_D, M_P, E_B) == 0.9);
  CHECK(ps.base.delta(Y_K, X_D, M_P, E_B) == 0.0);
  CHECK(ps.base.offpath_belief[X_D] == 1.0);
}

TEST_CASE("detector row off normalization is reported with the bad sum") {
  PdosScenario ps = canonical_pdos();
  Scenario& s = ps.base;
  s.detector[s.detector_index(Y_O, X_D, M_P, E_B)] = 0.6;
  s.detector[s.detector_index(Y_O, X_D, M_P, E_N)] = 0.6;
  const auto vs = validate_scenario(s);
  CHECK(has_violation(vs, "detector[o][d][p]", "sums to 1.2"));
}

TEST_CASE("defense payoff with the wrong sign violates C5") {
  PdosScenario ps = canonical_pdos();
  Scenario& s = ps.base;
  s.receiver_utility[s.utility_index(Y_V, X_D, M_P, A_F)] = CellPayoff{-1.0, false};
  CHECK(has_violation(validate_pdos_scenario(ps), "C5"));
}

TEST_CASE("each PDoS structure constraint is enforced") {
  SUBCASE("C1: nonzero withdraw payoff") {
    PdosScenario ps = canonical_pdos();
    ps.base.receiver_utility[ps.base.utility_index(Y_K, X_L, M_W, A_T)] =
        CellPayoff{0.5, false};
    CHECK(has_violation(validate_pdos_scenario(ps), "C1"));
  }
  SUBCASE("C2: nonzero lockout payoff") {
    PdosScenario ps = canonical_pdos();
    ps.base.receiver_utility[ps.base.utility_index(Y_O, X_D, M_P, A_G)] =
        CellPayoff{-0.25, false};
    CHECK(has_violation(validate_pdos_scenario(ps), "C2"));
  }
  SUBCASE("C3: trust payoff signs flipped") {
    PdosScenario ps = canonical_pdos();
    for (Index y : {Y_K, Y_O, Y_V}) {
      ps.base.receiver_utility[ps.base.utility_index(y, X_D, M_P, A_T)] =
          CellPayoff{0.5, false};
    }
    CHECK(has_violation(validate_pdos_scenario(ps), "C3"));
  }
  SUBCASE("C4: defense not prohibited for the weak type") {
    PdosScenario ps = canonical_pdos();
    for (Index x : {X_L, X_D}) {
      ps.base.receiver_utility[ps.base.utility_index(Y_K, x, M_P, A_F)] =
          CellPayoff{0.0, false};
    }
    CHECK(has_violation(validate_pdos_scenario(ps), "C4"));
  }
  SUBCASE("detector ordering") {
    PdosScenario ps = canonical_pdos();
    Scenario& s = ps.base;
    s.detector[s.detector_index(Y_O, X_D, M_P, E_B)] = 0.05;
    s.detector[s.detector_index(Y_O, X_D, M_P, E_N)] = 0.95;
    const auto vs = validate_pdos_scenario(ps);
    CHECK(has_violation(vs, "detector"));
    CHECK(has_violation(vs, "symmetry"));
  }
  SUBCASE("omega signs") {
    PdosScenario ps = canonical_pdos();
    ps.base.sender_weights[X_D * 3 + A_G] = 0.5;
    CHECK(has_violation(validate_pdos_scenario(ps), "omega"));
  }
  SUBCASE("symmetry is optional") {
    PdosScenario ps = canonical_pdos();
    Scenario& s = ps.base;
    s.receiver_utility[s.utility_index(Y_K, X_L, M_P, A_T)] = CellPayoff{1.5, false};
    CHECK(has_violation(validate_pdos_scenario(ps, true), "symmetry"));
    CHECK(validate_pdos_scenario(ps, false).empty());
  }
}

TEST_CASE("validation is total on malformed tables") {
  SUBCASE("NaN entries become violations") {
    PdosScenario ps = canonical_pdos();
    Scenario& s = ps.base;
    s.detector[s.detector_index(Y_V, X_L, M_P, E_B)] =
        std::numeric_limits<double>::quiet_NaN();
    s.receiver_utility[s.utility_index(Y_V, X_L, M_P, A_T)] =
        CellPayoff{std::numeric_limits<double>::quiet_NaN(), false};
    const auto vs = validate_scenario(s);
    CHECK(has_violation(vs, "detector[v][l][p]"));
    CHECK(has_violation(vs, "receiver_utility[v][l][p][t]", "not finite"));
  }
  SUBCASE("ragged tables are a single structural violation") {
    Scenario s = canonical_pdos().base;
    s.detector.pop_back();
    const auto vs = validate_scenario(s);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].detail.find("ragged") != std::string::npos);
  }
  SUBCASE("bad priors and lambda") {
    Scenario s = canonical_pdos().base;
    s.lambda = 0.0;
    s.q_receiver = {0.5, 0.5, 0.0};
    s.q_sender = {0.6, 0.3};
    const auto vs = validate_scenario(s);
    CHECK(has_violation(vs, "lambda"));
    CHECK(has_violation(vs, "q_receiver"));
    CHECK(has_violation(vs, "q_sender", "sums to"));
  }
}

TEST_CASE("prohibited markers are per information set") {
  const Scenario s = canonical_pdos().base;
  CHECK(s.prohibited(Y_K, M_P, A_F));
  CHECK(s.prohibited(Y_O, M_P, A_F));
  CHECK_FALSE(s.prohibited(Y_V, M_P, A_F));
  CHECK_FALSE(s.prohibited(Y_K, M_P, A_T));
}

TEST_CASE("profile validation flags bad rows") {
  const Scenario s = canonical_pdos().base;
  StrategyProfile p = all_trust_profile(s);
  CHECK(validate_profile(s, p).empty());

  SUBCASE("unnormalized sender row") {
    p.sender(X_D, M_P) = 0.7;
    p.sender(X_D, M_W) = 0.7;
    CHECK_FALSE(validate_profile(s, p).empty());
  }
  SUBCASE("mass on a prohibited action") {
    p.receiver(Y_K, M_P, E_B, A_T) = 0.0;
    p.receiver(Y_K, M_P, E_B, A_F) = 1.0;
    const auto vs = validate_profile(s, p);
    CHECK(has_violation(vs, "receiver[k][p][b]", "prohibited"));
  }
  SUBCASE("shape mismatch") {
    p.receiver_.pop_back();
    CHECK_FALSE(validate_profile(s, p).empty());
  }
}
