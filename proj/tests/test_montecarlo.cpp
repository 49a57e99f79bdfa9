#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "psg/equilibrium.hpp"
#include "psg/montecarlo.hpp"
#include "psg/payoff.hpp"

using namespace psg;
using namespace psg::pdos;
using psg::testing::testbed;

TEST_CASE("a sender that never persists earns exactly zero") {
  const PdosScenario ps = canonical_pdos();
  StrategyProfile p = all_trust_profile(ps.base);
  p.sender(X_D, M_P) = 0.0;
  p.sender(X_D, M_W) = 1.0;
  const SimulationReport rep = simulate(ps, p, X_D, 500, 11);
  CHECK(rep.utility_mean == 0.0);
  CHECK(rep.utility_se == 0.0);
  CHECK(rep.persist_count == 0);
  CHECK(rep.infections == 0);
}

TEST_CASE("all-trust empirical mean matches the analytic value") {
  const PdosScenario ps = canonical_pdos();
  const StrategyProfile p = all_trust_profile(ps.base);
  const SimulationReport rep = simulate(ps, p, X_D, 20000, 17);
  CHECK(rep.utility_se > 0.0);
  CHECK(std::abs(rep.utility_mean - 100.0) <= 3.0 * rep.utility_se);
  CHECK(rep.lockouts == 0);
  CHECK(rep.defense_events == 0);
  CHECK(rep.infections > 0);
}

TEST_CASE("oracle agrees with the analytic utility at the solved profile") {
  const PdosScenario ps = canonical_pdos();
  const EquilibriumResult res = solve_pdos(ps);
  const SimulationReport rep = simulate(ps, res.profile, X_D, 20000, 23);
  const double analytic = sender_expected_utility(ps.base, res.profile, X_D);
  CHECK(std::abs(analytic) < 1e-10);  // mixed sender, zero benefit
  CHECK(std::abs(rep.utility_mean - analytic) <= 3.0 * rep.utility_se);
  CHECK(rep.persist_count < rep.replications);  // the sender really mixes
}

TEST_CASE("simulation is reproducible per seed") {
  const PdosScenario ps = canonical_pdos();
  const EquilibriumResult res = solve_pdos(ps);
  const SimulationReport a = simulate(ps, res.profile, X_D, 2000, 99);
  const SimulationReport b = simulate(ps, res.profile, X_D, 2000, 99);
  CHECK(a.utility_mean == b.utility_mean);
  CHECK(a.utility_se == b.utility_se);
  CHECK(a.lockouts == b.lockouts);
  CHECK(a.infections == b.infections);
  const SimulationReport c = simulate(ps, res.profile, X_D, 2000, 100);
  CHECK(a.utility_mean != c.utility_mean);
}

TEST_CASE("deviating from the solved persistence does not pay") {
  const PdosScenario ps = canonical_pdos();
  const EquilibriumResult res = solve_pdos(ps);
  const SimulationReport base = simulate(ps, res.profile, X_D, 30000, 5);
  for (double shift : {0.1, -0.1}) {
    StrategyProfile dev = res.profile;
    const double s = std::min(1.0, std::max(0.0, res.sigma_d_p() + shift));
    dev.sender(X_D, M_P) = s;
    dev.sender(X_D, M_W) = 1.0 - s;
    const SimulationReport moved = simulate(ps, dev, X_D, 30000, 6);
    const double band =
        3.0 * std::sqrt(base.utility_se * base.utility_se +
                        moved.utility_se * moved.utility_se);
    CHECK(moved.utility_mean - base.utility_mean <= band);
  }
}

TEST_CASE("a strictly-preferring sender loses by withdrawing") {
  const PdosScenario ps = testbed(Region::status_quo);
  const EquilibriumResult res = solve_pdos(ps);
  const SimulationReport base = simulate(ps, res.profile, X_D, 20000, 7);
  StrategyProfile dev = res.profile;
  dev.sender(X_D, M_P) = 0.9;
  dev.sender(X_D, M_W) = 0.1;
  const SimulationReport moved = simulate(ps, dev, X_D, 20000, 8);
  const double band = 3.0 * std::sqrt(base.utility_se * base.utility_se +
                                      moved.utility_se * moved.utility_se);
  CHECK(moved.utility_mean - base.utility_mean <= band);
  CHECK(moved.utility_mean < base.utility_mean);
}

TEST_CASE("empirical rates agree with the analytic rates") {
  const PdosScenario ps = canonical_pdos();
  StrategyProfile p = all_trust_profile(ps.base);
  for (Index y : {Y_O, Y_V}) {
    p.receiver(y, M_P, E_B, A_T) = 0.0;
    p.receiver(y, M_P, E_B, A_G) = 1.0;
  }
  const std::vector<RateCheck> checks = empirical_rate_check(ps, p, X_D, M_P, 10000, 77);
  REQUIRE(checks.size() == 3);
  CHECK(checks[A_T].lambda == doctest::Approx(55.0));
  CHECK(checks[A_G].lambda == doctest::Approx(45.0));
  CHECK(checks[A_F].lambda == 0.0);
  for (const RateCheck& rc : checks) {
    CHECK(rc.mean_ok);
    CHECK(rc.variance_ok);
  }
  CHECK(checks[A_T].variance_checked);
  CHECK_FALSE(checks[A_F].variance_checked);
}

TEST_CASE("mechanistic login traces") {
  const PdosScenario ps = canonical_pdos();
  SUBCASE("legitimate senders log in before the game can start") {
    const LoginTrace t = generate_login_trace(ps, X_L, 3, TraceMode::mechanistic);
    REQUIRE(t.attempts.size() == 1);
    CHECK(t.attempts[0].success);
    CHECK_FALSE(t.psg_started);
    CHECK_FALSE(t.evidence.has_value());
  }
  SUBCASE("a full-dictionary failure reaches the threshold and flags") {
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
      const LoginTrace t = generate_login_trace(ps, X_D, seed, TraceMode::mechanistic);
      REQUIRE(t.attempts.size() == 5);  // dictionary length == tau_low
      for (const LoginAttempt& a : t.attempts) CHECK_FALSE(a.success);
      CHECK(t.attempts[0].password == "admin");
      CHECK(t.psg_started);
      REQUIRE(t.evidence.has_value());
      if (t.receiver_type == Y_K) {
        CHECK(*t.evidence == E_N);  // no detector, nothing looks suspicious
      } else {
        CHECK(*t.evidence == E_B);
      }
    }
  }
  SUBCASE("a short dictionary is rejected") {
    PdosScenario short_dict = ps;
    short_dict.password_dictionary = {"admin", "888888", "123456", "default"};
    CHECK_THROWS_AS(generate_login_trace(short_dict, X_D, 1, TraceMode::mechanistic),
                    std::invalid_argument);
  }
}

TEST_CASE("calibrated traces reproduce the detector frequencies") {
  const PdosScenario ps = canonical_pdos();
  int n_o = 0, b_o = 0;
  for (std::uint64_t seed = 0; seed < 20000; ++seed) {
    const LoginTrace t = generate_login_trace(ps, X_D, stream_seed(4242, seed));
    CHECK(t.psg_started);
    REQUIRE(t.evidence.has_value());
    if (t.receiver_type == Y_O) {
      ++n_o;
      if (*t.evidence == E_B) ++b_o;
    }
  }
  REQUIRE(n_o > 1000);
  const double freq = static_cast<double>(b_o) / n_o;
  const double se = std::sqrt(0.9 * 0.1 / n_o);
  CHECK(std::abs(freq - 0.9) <= 3.0 * se);
}
