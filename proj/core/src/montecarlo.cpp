#include "psg/montecarlo.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "psg/poisson.hpp"

namespace psg {

using namespace pdos;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

Index pick(const std::vector<double>& w, double u) {
  double acc = 0.0;
  for (Index i = 0; i < w.size(); ++i) {
    acc += w[i];
    if (u < acc) return i;
  }
  return w.size() - 1;
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t i) {
  return splitmix64(seed ^ splitmix64(i));
}

SimulationReport simulate(const PdosScenario& ps, const StrategyProfile& profile,
                          Index x, std::uint64_t replications, std::uint64_t seed) {
  if (replications < 1) throw std::invalid_argument("simulate: need replications >= 1");
  const Scenario& s = ps.base;

  SimulationReport rep;
  rep.replications = replications;
  rep.seed = seed;
  rep.sender_type = x;
  rep.rates.assign(s.num_a(), RateStat{});

  std::vector<double> sender_row(s.num_m());
  for (Index m = 0; m < s.num_m(); ++m) sender_row[m] = profile.sender(x, m);

  double sum = 0.0, sumsq = 0.0;
  std::vector<double> count_sum(s.num_a(), 0.0), count_sumsq(s.num_a(), 0.0);

  for (std::uint64_t i = 0; i < replications; ++i) {
    std::mt19937_64 rng(stream_seed(seed, 2 * i));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Index m = pick(sender_row, unit(rng));

    double utility = 0.0;
    if (s.message_active[m]) {
      const ActionCount c =
          sample_population(s, profile, x, m, stream_seed(seed, 2 * i + 1));
      for (Index a = 0; a < s.num_a(); ++a) {
        const double ca = static_cast<double>(c.c[a]);
        utility += s.omega(x, a) * ca;
        count_sum[a] += ca;
        count_sumsq[a] += ca * ca;
      }
      rep.lockouts += static_cast<std::uint64_t>(c.c[A_G]);
      rep.defense_events += static_cast<std::uint64_t>(c.c[A_F]);
      if (x == X_D) rep.infections += static_cast<std::uint64_t>(c.c[A_T]);
      ++rep.persist_count;
    }
    sum += utility;
    sumsq += utility * utility;
  }

  const double n = static_cast<double>(replications);
  rep.utility_mean = sum / n;
  if (replications > 1) {
    const double var = std::max(0.0, (sumsq - n * rep.utility_mean * rep.utility_mean) /
                                         (n - 1.0));
    rep.utility_se = std::sqrt(var / n);
  }
  if (rep.persist_count > 0) {
    const double np = static_cast<double>(rep.persist_count);
    for (Index a = 0; a < s.num_a(); ++a) {
      rep.rates[a].mean = count_sum[a] / np;
      if (rep.persist_count > 1) {
        rep.rates[a].variance = std::max(
            0.0, (count_sumsq[a] - np * rep.rates[a].mean * rep.rates[a].mean) /
                     (np - 1.0));
      }
    }
  }
  return rep;
}

LoginTrace generate_login_trace(const PdosScenario& ps, Index x, std::uint64_t seed,
                                TraceMode mode) {
  const Scenario& s = ps.base;
  if (ps.password_dictionary.empty()) {
    throw std::invalid_argument("generate_login_trace: empty password dictionary");
  }
  if (x == X_D &&
      ps.password_dictionary.size() < static_cast<std::size_t>(ps.tau_low)) {
    throw std::invalid_argument(
        "generate_login_trace: password dictionary shorter than tau_low");
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> qr = s.q_receiver;

  LoginTrace trace;
  trace.receiver_type = pick(qr, unit(rng));
  const Index y = trace.receiver_type;

  const int max_attempts =
      std::min<int>(ps.tau_high, static_cast<int>(ps.password_dictionary.size()));

  auto attacker_password = [&](int i) { return ps.password_dictionary[i]; };

  if (mode == TraceMode::mechanistic) {
    if (x == X_L) {
      trace.attempts.push_back({"user-password", true});
      trace.psg_started = false;  // success before tau_low: no game
      return trace;
    }
    for (int i = 0; i < max_attempts; ++i) {
      trace.attempts.push_back({attacker_password(i), false});
    }
    trace.psg_started = true;
    const bool has_detector =
        s.delta(y, X_D, M_P, E_B) != s.delta(y, X_L, M_P, E_B);
    trace.evidence = has_detector ? E_B : E_N;
    return trace;
  }

  // Calibrated: the device's evidence distribution is the detector row
  // itself; the attempt narrative is fitted to the drawn outcome.
  trace.psg_started = true;
  const double p_clean = s.delta(y, x, M_P, E_N);
  const bool success_within = unit(rng) < p_clean;
  if (success_within) {
    const int lo = ps.tau_low;
    const int hi = std::max(lo, max_attempts);
    const int n_attempts =
        lo + static_cast<int>(unit(rng) * static_cast<double>(hi - lo + 1));
    for (int i = 0; i < n_attempts; ++i) {
      const bool last = i + 1 == n_attempts;
      if (x == X_D) {
        trace.attempts.push_back({attacker_password(std::min(i, max_attempts - 1)), last});
      } else {
        trace.attempts.push_back({last ? "user-password" : "user-typo", last});
      }
    }
    trace.evidence = E_N;
  } else {
    const int n_attempts = x == X_D ? max_attempts : ps.tau_high;
    for (int i = 0; i < n_attempts; ++i) {
      if (x == X_D) {
        trace.attempts.push_back({attacker_password(std::min(i, max_attempts - 1)), false});
      } else {
        trace.attempts.push_back({"user-typo", false});
      }
    }
    trace.evidence = E_B;
  }
  return trace;
}

std::vector<RateCheck> empirical_rate_check(const PdosScenario& ps,
                                            const StrategyProfile& profile, Index x,
                                            Index m, std::uint64_t replications,
                                            std::uint64_t seed) {
  if (replications < 2) {
    throw std::invalid_argument("empirical_rate_check: need replications >= 2");
  }
  const Scenario& s = ps.base;
  const ActionRates rates = action_rates(s, profile, x, m);

  std::vector<double> sum(s.num_a(), 0.0), sumsq(s.num_a(), 0.0);
  for (std::uint64_t i = 0; i < replications; ++i) {
    const ActionCount c = sample_population(s, profile, x, m, stream_seed(seed, i));
    for (Index a = 0; a < s.num_a(); ++a) {
      const double ca = static_cast<double>(c.c[a]);
      sum[a] += ca;
      sumsq[a] += ca * ca;
    }
  }

  const double n = static_cast<double>(replications);
  std::vector<RateCheck> out(s.num_a());
  for (Index a = 0; a < s.num_a(); ++a) {
    RateCheck& rc = out[a];
    rc.lambda = rates.lambda_a[a];
    rc.mean = sum[a] / n;
    rc.variance = std::max(0.0, (sumsq[a] - n * rc.mean * rc.mean) / (n - 1.0));
    rc.mean_band = 3.0 * std::sqrt(rc.lambda / n);
    rc.mean_ok = std::abs(rc.mean - rc.lambda) <= rc.mean_band;
    if (rc.lambda >= 5.0) {
      rc.variance_checked = true;
      rc.variance_ok = rc.mean > 0.0 && std::abs(rc.variance / rc.mean - 1.0) <= 0.05;
    }
  }
  return out;
}

}  // namespace psg
