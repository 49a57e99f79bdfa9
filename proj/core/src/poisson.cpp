#include "psg/poisson.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace psg {

double ActionRates::total() const {
  double t = 0.0;
  for (double v : lambda_a) t += v;
  return t;
}

ActionRates action_rates(const Scenario& s, const StrategyProfile& profile,
                         Index x, Index m) {
  if (profile.nx != s.num_x() || profile.ny != s.num_y() || profile.nm != s.num_m() ||
      profile.ne != s.num_e() || profile.na != s.num_a()) {
    throw std::invalid_argument("action_rates: profile shape mismatch");
  }
  ActionRates r;
  r.lambda_a.assign(s.num_a(), 0.0);
  for (Index y = 0; y < s.num_y(); ++y) {
    for (Index e = 0; e < s.num_e(); ++e) {
      const double w = s.q_receiver[y] * s.delta(y, x, m, e);
      if (w == 0.0) continue;
      for (Index a = 0; a < s.num_a(); ++a) {
        r.lambda_a[a] += w * profile.receiver(y, m, e, a);
      }
    }
  }
  for (double& v : r.lambda_a) v *= s.lambda;
  return r;
}

double poisson_pmf(double mean, std::int64_t k) {
  if (k < 0) return 0.0;
  if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
  const double kk = static_cast<double>(k);
  return std::exp(-mean + kk * std::log(mean) - std::lgamma(kk + 1.0));
}

double poisson_cdf(double mean, std::int64_t k) {
  if (k < 0) return 0.0;
  double sum = 0.0;
  for (std::int64_t i = 0; i <= k; ++i) sum += poisson_pmf(mean, i);
  return sum < 1.0 ? sum : 1.0;
}

double count_probability(const ActionRates& rates, const ActionCount& c) {
  if (rates.lambda_a.size() != c.c.size()) {
    throw std::invalid_argument("count_probability: action dimension mismatch");
  }
  double log_p = 0.0;
  for (Index a = 0; a < c.c.size(); ++a) {
    const double mean = rates.lambda_a[a];
    const std::int64_t k = c.c[a];
    if (k < 0) throw std::invalid_argument("count_probability: negative count");
    if (mean == 0.0) {
      if (k != 0) return 0.0;
      continue;
    }
    log_p += -mean + static_cast<double>(k) * std::log(mean) -
             std::lgamma(static_cast<double>(k) + 1.0);
  }
  const double p = std::exp(log_p);
  return p < 1.0 ? p : 1.0;
}

namespace {

// Inverts one uniform draw against a short cumulative row.
Index pick(const double* weights, Index n, double u) {
  double acc = 0.0;
  for (Index i = 0; i < n; ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  return n - 1;
}

}  // namespace

ActionCount sample_population(const Scenario& s, const StrategyProfile& profile,
                              Index x, Index m, std::uint64_t seed) {
  ActionCount out;
  out.c.assign(s.num_a(), 0);

  std::mt19937_64 rng(seed);
  std::int64_t n = 0;
  if (s.lambda > 0.0) {
    std::poisson_distribution<std::int64_t> pop(s.lambda);
    n = pop(rng);
  }
  if (n == 0) return out;

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Index ne = s.num_e(), na = s.num_a();
  for (std::int64_t i = 0; i < n; ++i) {
    const Index y = pick(s.q_receiver.data(), s.num_y(), unit(rng));
    const Index e = pick(&s.detector[s.detector_index(y, x, m, 0)], ne, unit(rng));
    const Index a = pick(&profile.receiver_[((y * profile.nm + m) * ne + e) * na],
                         na, unit(rng));
    ++out.c[a];
  }
  return out;
}

}  // namespace psg
