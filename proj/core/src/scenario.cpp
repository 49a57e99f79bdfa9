#include "psg/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace psg {

namespace {

constexpr double kSumTol = 1e-9;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

bool is_distribution(const std::vector<double>& row, bool strictly_positive,
                     std::string* why) {
  double sum = 0.0;
  for (Index i = 0; i < row.size(); ++i) {
    const double v = row[i];
    if (!std::isfinite(v)) {
      *why = "entry " + std::to_string(i) + " is not finite";
      return false;
    }
    if (v < 0.0 || (strictly_positive && v <= 0.0)) {
      *why = "entry " + std::to_string(i) + " = " + fmt(v) +
             (strictly_positive ? " is not strictly positive" : " is negative");
      return false;
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTol) {
    *why = "sums to " + fmt(sum);
    return false;
  }
  return true;
}

}  // namespace

bool Scenario::sizes_consistent() const {
  const Index x = num_x(), y = num_y(), m = num_m(), e = num_e(), a = num_a();
  return x > 0 && y > 0 && m > 0 && e > 0 && a > 0 &&
         q_sender.size() == x && q_receiver.size() == y &&
         detector.size() == y * x * m * e &&
         receiver_utility.size() == y * x * m * a &&
         sender_weights.size() == x * a && message_active.size() == m &&
         offpath_belief.size() == x;
}

bool Scenario::prohibited(Index y, Index m, Index a) const {
  for (Index x = 0; x < num_x(); ++x) {
    if (utility(y, x, m, a).prohibited) return true;
  }
  return false;
}

StrategyProfile StrategyProfile::zeros(const Scenario& s) {
  StrategyProfile p;
  p.nx = s.num_x();
  p.ny = s.num_y();
  p.nm = s.num_m();
  p.ne = s.num_e();
  p.na = s.num_a();
  p.sender_.assign(p.nx * p.nm, 0.0);
  p.receiver_.assign(p.ny * p.nm * p.ne * p.na, 0.0);
  return p;
}

void StrategyProfile::set_sender_row(Index x, const std::vector<double>& row) {
  if (row.size() != nm) throw std::invalid_argument("sender row size mismatch");
  for (Index m = 0; m < nm; ++m) sender(x, m) = row[m];
}

void StrategyProfile::set_receiver_row(Index y, Index m, Index e,
                                       const std::vector<double>& row) {
  if (row.size() != na) throw std::invalid_argument("receiver row size mismatch");
  for (Index a = 0; a < na; ++a) receiver(y, m, e, a) = row[a];
}

BeliefTable BeliefTable::zeros(const Scenario& s) {
  BeliefTable b;
  b.nx = s.num_x();
  b.ny = s.num_y();
  b.nm = s.num_m();
  b.ne = s.num_e();
  b.mu_.assign(b.ny * b.nm * b.ne * b.nx, 0.0);
  return b;
}

std::int64_t ActionCount::total() const {
  std::int64_t t = 0;
  for (auto v : c) t += v;
  return t;
}

std::vector<Violation> validate_scenario(const Scenario& s) {
  std::vector<Violation> out;
  if (!s.sizes_consistent()) {
    out.push_back({"scenario", "table dimensions are ragged or a set is empty"});
    return out;  // unsafe to index further
  }

  if (!(s.lambda > 0.0) || !std::isfinite(s.lambda)) {
    out.push_back({"lambda", "must be a positive finite real, got " + fmt(s.lambda)});
  }

  std::string why;
  if (!is_distribution(s.q_sender, false, &why)) {
    out.push_back({"q_sender", why});
  }
  if (!is_distribution(s.q_receiver, true, &why)) {
    out.push_back({"q_receiver", why});
  }
  if (!is_distribution(s.offpath_belief, false, &why)) {
    out.push_back({"offpath_belief", why});
  }

  for (Index y = 0; y < s.num_y(); ++y) {
    for (Index x = 0; x < s.num_x(); ++x) {
      for (Index m = 0; m < s.num_m(); ++m) {
        double sum = 0.0;
        bool bad_entry = false;
        for (Index e = 0; e < s.num_e(); ++e) {
          const double v = s.delta(y, x, m, e);
          if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
            out.push_back({"detector[" + s.receiver_types[y] + "][" + s.sender_types[x] +
                               "][" + s.messages[m] + "][" + s.evidence[e] + "]",
                           "entry " + fmt(v) + " outside [0,1]"});
            bad_entry = true;
          }
          sum += v;
        }
        if (!bad_entry && std::abs(sum - 1.0) > kSumTol) {
          out.push_back({"detector[" + s.receiver_types[y] + "][" + s.sender_types[x] +
                             "][" + s.messages[m] + "]",
                         "detector row sums to " + fmt(sum)});
        }
      }
    }
  }

  for (Index y = 0; y < s.num_y(); ++y) {
    for (Index x = 0; x < s.num_x(); ++x) {
      for (Index m = 0; m < s.num_m(); ++m) {
        for (Index a = 0; a < s.num_a(); ++a) {
          const CellPayoff& cell = s.utility(y, x, m, a);
          if (!cell.prohibited && !std::isfinite(cell.value)) {
            out.push_back({"receiver_utility[" + s.receiver_types[y] + "][" +
                               s.sender_types[x] + "][" + s.messages[m] + "][" +
                               s.actions[a] + "]",
                           "entry is not finite"});
          }
        }
      }
    }
  }

  for (Index x = 0; x < s.num_x(); ++x) {
    for (Index a = 0; a < s.num_a(); ++a) {
      if (!std::isfinite(s.omega(x, a))) {
        out.push_back({"sender_weights[" + s.sender_types[x] + "][" + s.actions[a] + "]",
                       "entry is not finite"});
      }
    }
  }
  return out;
}

namespace {

bool labels_match(const std::vector<std::string>& got,
                  std::initializer_list<const char*> want) {
  if (got.size() != want.size()) return false;
  Index i = 0;
  for (const char* w : want) {
    if (got[i++] != w) return false;
  }
  return true;
}

}  // namespace

std::vector<Violation> validate_pdos_scenario(const PdosScenario& ps,
                                              bool require_symmetry) {
  using namespace pdos;
  const Scenario& s = ps.base;
  std::vector<Violation> out = validate_scenario(s);

  if (!labels_match(s.sender_types, {"l", "d"}) ||
      !labels_match(s.receiver_types, {"k", "o", "v"}) ||
      !labels_match(s.messages, {"p", "w"}) ||
      !labels_match(s.evidence, {"b", "n"}) ||
      !labels_match(s.actions, {"t", "g", "f"})) {
    out.push_back({"sets", "label sets must be X={l,d}, Y={k,o,v}, M={p,w}, E={b,n}, A={t,g,f}"});
    return out;
  }

  if (ps.tau_low < 1) {
    out.push_back({"tau_low", "must be a positive integer, got " + std::to_string(ps.tau_low)});
  }
  if (ps.tau_high < ps.tau_low) {
    out.push_back({"tau_high", "must be >= tau_low"});
  }

  // C1: the withdraw branch pays nothing to anyone.
  if (s.message_active[M_W]) {
    out.push_back({"C1", "message w must be inactive (zero sender payoff)"});
  }
  if (!s.message_active[M_P]) {
    out.push_back({"C1", "message p must be active"});
  }
  for (Index y = 0; y < s.num_y(); ++y) {
    for (Index x = 0; x < s.num_x(); ++x) {
      for (Index a = 0; a < s.num_a(); ++a) {
        const CellPayoff& cell = s.utility(y, x, M_W, a);
        if (!cell.prohibited && cell.value != 0.0) {
          out.push_back({"C1", "receiver payoff at (y=" + s.receiver_types[y] +
                                   ", x=" + s.sender_types[x] + ", m=w, a=" + s.actions[a] +
                                   ") must be 0, got " + fmt(cell.value)});
        }
      }
    }
  }

  // C2: lockout pays zero under persist.
  for (Index y = 0; y < s.num_y(); ++y) {
    for (Index x = 0; x < s.num_x(); ++x) {
      const CellPayoff& cell = s.utility(y, x, M_P, A_G);
      if (cell.prohibited || cell.value != 0.0) {
        out.push_back({"C2", "lockout payoff at (y=" + s.receiver_types[y] +
                                 ", x=" + s.sender_types[x] + ", m=p) must be 0"});
      }
    }
  }

  // C3: trusting a legitimate persist is good, trusting a deceptive one bad.
  for (Index y = 0; y < s.num_y(); ++y) {
    const CellPayoff& ul = s.utility(y, X_L, M_P, A_T);
    const CellPayoff& ud = s.utility(y, X_D, M_P, A_T);
    if (ul.prohibited || ud.prohibited || !(ud.value < 0.0 && 0.0 < ul.value)) {
      out.push_back({"C3", "need U_" + s.receiver_types[y] + "(d,p,t) < 0 < U_" +
                               s.receiver_types[y] + "(l,p,t), got " + fmt(ud.value) +
                               " and " + fmt(ul.value)});
    }
  }

  // C4: only active devices may use active defense.
  for (Index y : {Y_K, Y_O}) {
    for (Index x = 0; x < s.num_x(); ++x) {
      if (!s.utility(y, x, M_P, A_F).prohibited) {
        out.push_back({"C4", "action f must be prohibited for y=" + s.receiver_types[y]});
      }
    }
  }

  // C5: active defense profitable against deception only.
  {
    const CellPayoff& fl = s.utility(Y_V, X_L, M_P, A_F);
    const CellPayoff& fd = s.utility(Y_V, X_D, M_P, A_F);
    if (fl.prohibited || fd.prohibited || !(fl.value < 0.0 && 0.0 < fd.value)) {
      out.push_back({"C5", "need U_v(l,p,f) < 0 < U_v(d,p,f), got " + fmt(fl.value) +
                               " and " + fmt(fd.value)});
    }
  }

  // Detector ordering: suspicion must incriminate for detector-equipped
  // devices, and the weak type carries no detector at all.
  for (Index y : {Y_O, Y_V}) {
    if (!(s.delta(y, X_D, M_P, E_B) > s.delta(y, X_L, M_P, E_B))) {
      out.push_back({"detector", "need delta_" + s.receiver_types[y] +
                                     "(b|d,p) > delta_" + s.receiver_types[y] + "(b|l,p)"});
    }
  }
  if (s.delta(Y_K, X_D, M_P, E_B) != s.delta(Y_K, X_L, M_P, E_B)) {
    out.push_back({"detector", "need delta_k(b|d,p) == delta_k(b|l,p)"});
  }

  if (require_symmetry) {
    for (Index x = 0; x < s.num_x(); ++x) {
      const double uk = s.utility(Y_K, x, M_P, A_T).value;
      const double uo = s.utility(Y_O, x, M_P, A_T).value;
      const double uv = s.utility(Y_V, x, M_P, A_T).value;
      if (uk != uo || uo != uv) {
        out.push_back({"symmetry", "trust payoffs must agree across receiver types at x=" +
                                       s.sender_types[x]});
      }
      for (Index e = 0; e < s.num_e(); ++e) {
        if (s.delta(Y_O, x, M_P, e) != s.delta(Y_V, x, M_P, e)) {
          out.push_back({"symmetry", "detectors of o and v must agree at (x=" +
                                         s.sender_types[x] + ", e=" + s.evidence[e] + ")"});
        }
      }
    }
  }

  // Sender weight signs.
  if (!(s.omega(X_D, A_T) > 0.0)) {
    out.push_back({"omega", "need omega_d(t) > 0, got " + fmt(s.omega(X_D, A_T))});
  }
  if (!(s.omega(X_D, A_G) < 0.0)) {
    out.push_back({"omega", "need omega_d(g) < 0, got " + fmt(s.omega(X_D, A_G))});
  }
  if (!(s.omega(X_D, A_F) < 0.0)) {
    out.push_back({"omega", "need omega_d(f) < 0, got " + fmt(s.omega(X_D, A_F))});
  }

  return out;
}

PdosScenario canonical_pdos() {
  using namespace pdos;
  PdosScenario ps;
  Scenario& s = ps.base;

  s.lambda = 100.0;
  s.sender_types = {"l", "d"};
  s.receiver_types = {"k", "o", "v"};
  s.messages = {"p", "w"};
  s.evidence = {"b", "n"};
  s.actions = {"t", "g", "f"};

  s.q_sender = {0.7, 0.3};
  s.q_receiver = {0.5, 0.3, 0.2};

  s.detector.assign(s.num_y() * s.num_x() * s.num_m() * s.num_e(), 0.0);
  auto set_delta = [&](Index y, Index x, Index m, double b_prob) {
    s.detector[s.detector_index(y, x, m, E_B)] = b_prob;
    s.detector[s.detector_index(y, x, m, E_N)] = 1.0 - b_prob;
  };
  for (Index x : {X_L, X_D}) {
    set_delta(Y_K, x, M_P, 0.0);  // weak devices never flag anything
    set_delta(Y_K, x, M_W, 0.0);
    set_delta(Y_O, x, M_W, 0.0);
    set_delta(Y_V, x, M_W, 0.0);
  }
  set_delta(Y_O, X_L, M_P, 0.1);
  set_delta(Y_O, X_D, M_P, 0.9);
  set_delta(Y_V, X_L, M_P, 0.1);
  set_delta(Y_V, X_D, M_P, 0.9);

  s.receiver_utility.assign(s.num_y() * s.num_x() * s.num_m() * s.num_a(), CellPayoff{});
  auto set_u = [&](Index y, Index x, Index m, Index a, double v) {
    s.receiver_utility[s.utility_index(y, x, m, a)] = CellPayoff{v, false};
  };
  auto set_prohibited = [&](Index y, Index a) {
    for (Index x : {X_L, X_D}) {
      for (Index m : {M_P, M_W}) {
        s.receiver_utility[s.utility_index(y, x, m, a)] = CellPayoff{0.0, true};
      }
    }
  };
  set_prohibited(Y_K, A_F);
  set_prohibited(Y_O, A_F);
  for (Index y : {Y_K, Y_O, Y_V}) {
    set_u(y, X_L, M_P, A_T, 1.0);
    set_u(y, X_D, M_P, A_T, -1.0);
  }
  set_u(Y_V, X_L, M_P, A_F, -1.0);
  set_u(Y_V, X_D, M_P, A_F, 2.0);
  // everything else (lockout, withdraw branch) stays at 0

  s.sender_weights.assign(s.num_x() * s.num_a(), 0.0);
  s.sender_weights[X_D * s.num_a() + A_T] = 1.0;
  s.sender_weights[X_D * s.num_a() + A_G] = -0.5;
  s.sender_weights[X_D * s.num_a() + A_F] = -6.0;

  s.message_active = {1, 0};
  s.offpath_belief = {0.0, 1.0};

  ps.tau_low = 5;
  ps.tau_high = 9;
  ps.password_dictionary = {"admin", "888888", "123456", "default", "support"};
  return ps;
}

StrategyProfile all_trust_profile(const Scenario& s) {
  StrategyProfile p = StrategyProfile::zeros(s);
  for (Index x = 0; x < s.num_x(); ++x) p.sender(x, 0) = 1.0;
  for (Index y = 0; y < s.num_y(); ++y) {
    for (Index m = 0; m < s.num_m(); ++m) {
      for (Index e = 0; e < s.num_e(); ++e) {
        p.receiver(y, m, e, 0) = 1.0;
      }
    }
  }
  return p;
}

std::vector<Violation> validate_profile(const Scenario& s, const StrategyProfile& p) {
  std::vector<Violation> out;
  if (p.nx != s.num_x() || p.ny != s.num_y() || p.nm != s.num_m() ||
      p.ne != s.num_e() || p.na != s.num_a() ||
      p.sender_.size() != p.nx * p.nm ||
      p.receiver_.size() != p.ny * p.nm * p.ne * p.na) {
    out.push_back({"profile", "shape does not match scenario"});
    return out;
  }
  std::string why;
  for (Index x = 0; x < p.nx; ++x) {
    std::vector<double> row(p.nm);
    for (Index m = 0; m < p.nm; ++m) row[m] = p.sender(x, m);
    if (!is_distribution(row, false, &why)) {
      out.push_back({"sender[" + s.sender_types[x] + "]", why});
    }
  }
  for (Index y = 0; y < p.ny; ++y) {
    for (Index m = 0; m < p.nm; ++m) {
      for (Index e = 0; e < p.ne; ++e) {
        std::vector<double> row(p.na);
        for (Index a = 0; a < p.na; ++a) row[a] = p.receiver(y, m, e, a);
        const std::string where = "receiver[" + s.receiver_types[y] + "][" +
                                  s.messages[m] + "][" + s.evidence[e] + "]";
        if (!is_distribution(row, false, &why)) {
          out.push_back({where, why});
        }
        for (Index a = 0; a < p.na; ++a) {
          if (row[a] > 0.0 && s.prohibited(y, m, a)) {
            out.push_back({where, "positive mass on prohibited action " + s.actions[a]});
          }
        }
      }
    }
  }
  return out;
}

}  // namespace psg
