// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//
// Constant-factor approximation for XOS value functions.
//
//   scaling set      peel agents off an f-minimal set and stop at a prefix
//                    whose value is close to a target Psi
//   attempt(y)       demand set under costs 2 sqrt(c_i A y), trimmed to be
//                    welfare-minimal, then a scaling set for
//                    Psi = (A/m) y - x
//   collection       singletons plus attempt(y) for y growing by 2^gamma
//
// Postconditions of the first two steps are checked on every call and
// tallied in postcondition_audit().
//

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "teamshare/agent_set.hpp"
#include "teamshare/contract.hpp"
#include "teamshare/errors.hpp"
#include "teamshare/instance.hpp"
#include "teamshare/value_fn.hpp"

namespace teamshare {

enum class DemandMode { kExact, kGreedy };

// Which scaled-cost formula the attempt step uses.
enum class ScaledCost {
  kAnalysis,    // 2 sqrt(c_i A y)
  kPseudocode,  // sqrt(c_i m A y)
};

struct ApproxConfig {
  double a = 1.0;
  double gamma = 0.05;
  double m = 1.707;
  double M = 3.414;
  DemandMode demand = DemandMode::kExact;
  std::uint64_t max_doubling_iters = 1'000'000;
  ScaledCost scaled_cost = ScaledCost::kAnalysis;

  double A() const { return (a / 4.0) * (a / 4.0); }

  void validate() const {
    if (!(a > 0.0 && a <= 1.0)) throw InputError("a must lie in (0, 1]", "/a");
    if (!(gamma > 0.0 && gamma < 1.0)) throw InputError("gamma must lie in (0, 1)", "/gamma");
    if (!(m >= 1.0) || !std::isfinite(m)) throw InputError("m must be finite and >= 1", "/m");
    if (!(M > 1.0) || !std::isfinite(M)) throw InputError("M must be finite and > 1", "/M");
    if (max_doubling_iters == 0) throw InputError("iteration cap must be positive");
  }

  static ApproxConfig xos188() { return ApproxConfig{}; }
  static ApproxConfig submod468() {
    ApproxConfig c;
    c.a = 1.0 - 1.0 / std::exp(1.0);
    c.m = 1.713;
    c.M = 3.399;
    c.demand = DemandMode::kGreedy;
    return c;
  }
  static std::optional<ApproxConfig> preset(std::string_view name) {
    if (name == "xos188") return xos188();
    if (name == "submod468") return submod468();
    return std::nullopt;
  }
};

// The quantities tying the target value y to the scaling-set call.
struct ScalingQuantities {
  double A = 0.0;
  double x = 0.0;      // largest single-agent value on the domain
  double M_val = 0.0;  // (A/m) y / x
  double psi = 0.0;    // (A/m) y - x

  static ScalingQuantities compute(const ApproxConfig& cfg, double x, double y) {
    ScalingQuantities q;
    q.A = cfg.A();
    q.x = x;
    const double target = q.A / cfg.m * y;
    q.M_val = x > 0.0 ? target / x : kInf;
    q.psi = target - x;
    return q;
  }
};

struct PostconditionAudit {
  std::atomic<std::uint64_t> scaling_calls{0};
  std::atomic<std::uint64_t> scaling_violations{0};
  std::atomic<std::uint64_t> attempt_outputs{0};
  std::atomic<std::uint64_t> attempt_violations{0};

  void reset() {
    scaling_calls = 0;
    scaling_violations = 0;
    attempt_outputs = 0;
    attempt_violations = 0;
  }
};

inline PostconditionAudit& postcondition_audit() {
  static PostconditionAudit audit;
  return audit;
}

namespace detail {

inline double max_singleton(Oracle& oracle, const AgentSet& dom) {
  double x = 0.0;
  dom.for_each([&](Agent i) { x = std::max(x, oracle.eval(AgentSet{i})); });
  return x;
}

}  // namespace detail

// Drops zero-marginal agents (lowest index first) until every member
// contributes. The value is unchanged.
inline AgentSet value_minimal_subset(Oracle& oracle, const AgentSet& z) {
  AgentSet t = z;
  for (;;) {
    const double ft = oracle.eval(t);
    std::optional<Agent> drop;
    t.for_each([&](Agent i) {
      if (!drop && oracle.marginal(t, i) <= scaled_tol(ft, 0.0)) drop = i;
    });
    if (!drop) return t;
    t.erase(*drop);
  }
}

struct ScalingTrace {
  AgentSet minimal;                    // T_0
  std::vector<Agent> removed;          // i_1, i_2, ...
  std::vector<double> values;          // f(T_0), f(T_1), ...
  std::vector<double> ratios;          // delta_1, delta_2, ...
  std::size_t lower = 0, upper = 0, chosen = 0;
  AgentSet result;
  bool postcondition_ok = true;
};

// Scaling set for f restricted to `z`. Requires 0 <= psi <= f(z).
inline ScalingTrace alg1_trace(Oracle& oracle, const AgentSet& z, double psi) {
  const double fz = oracle.eval(z);
  if (!(psi >= -scaled_tol(psi, 0.0)) || !approx_leq(psi, fz))
    throw InputError("scaling target must lie in [0, f(Z)]");
  ScalingTrace tr;
  auto& audit = postcondition_audit();
  ++audit.scaling_calls;
  const double x = detail::max_singleton(oracle, z);

  auto check = [&](const AgentSet& u) {
    const double fu = oracle.eval(u);
    bool ok = approx_leq(0.5 * psi, fu) && approx_leq(fu, psi + x);
    u.for_each([&](Agent i) {
      if (!ok) return;
      const double mu = oracle.marginal(u, i);
      const double m0 = oracle.marginal(tr.minimal, i);
      ok = mu >= 0.5 * m0 - scaled_tol(mu, m0);
    });
    tr.postcondition_ok = ok;
    if (!ok) ++audit.scaling_violations;
  };

  if (std::abs(psi - fz) <= scaled_tol(psi, fz)) {
    tr.minimal = z;
    tr.result = z;
    tr.values.push_back(fz);
    // With T_0 = Z the marginal clause holds trivially.
    const double fu = fz;
    tr.postcondition_ok = approx_leq(0.5 * psi, fu) && approx_leq(fu, psi + x);
    if (!tr.postcondition_ok) ++audit.scaling_violations;
    return tr;
  }

  tr.minimal = value_minimal_subset(oracle, z);
  std::vector<double> base(tr.minimal.bound(), 0.0);
  tr.minimal.for_each([&](Agent i) { base[i] = oracle.marginal(tr.minimal, i); });

  AgentSet t = tr.minimal;
  tr.values.push_back(oracle.eval(t));
  while (!t.empty()) {
    double best = kInf;
    Agent pick = 0;
    t.for_each([&](Agent i) {
      const double r = oracle.marginal(t, i) / base[i];
      if (r < best) {
        best = r;
        pick = i;
      }
    });
    t.erase(pick);
    tr.removed.push_back(pick);
    const double ft = oracle.eval(t);
    tr.ratios.push_back((tr.values.back() - ft) / base[pick]);
    tr.values.push_back(ft);
  }

  // Indices t run from 1; values[t] = f(T_t), ratios[t - 1] = delta_t.
  const std::size_t steps = tr.removed.size();
  std::size_t lo = 1;
  while (lo < steps && tr.values[lo] > psi) ++lo;
  const double half = 0.5 * tr.values[lo - 1];
  std::size_t hi = lo;
  while (hi < steps && tr.values[hi] > half) ++hi;
  std::size_t chosen = lo;
  for (std::size_t s = lo + 1; s <= hi; ++s)
    if (tr.ratios[s - 1] > tr.ratios[chosen - 1]) chosen = s;
  tr.lower = lo;
  tr.upper = hi;
  tr.chosen = chosen;

  AgentSet u = tr.minimal;
  for (std::size_t s = 0; s + 1 < chosen; ++s) u.erase(tr.removed[s]);
  tr.result = u;
  check(u);
  return tr;
}

inline AgentSet alg1_scaling_set(Oracle& oracle, const AgentSet& z, double psi) {
  return alg1_trace(oracle, z, psi).result;
}

inline std::vector<double> scaled_costs(std::span<const double> costs, double y, const ApproxConfig& cfg) {
  std::vector<double> out(costs.size());
  const double A = cfg.A();
  for (std::size_t i = 0; i < costs.size(); ++i)
    out[i] = cfg.scaled_cost == ScaledCost::kAnalysis ? 2.0 * std::sqrt(costs[i] * A * y)
                                                      : std::sqrt(costs[i] * cfg.m * A * y);
  return out;
}

inline AgentSet demand_set(Oracle& oracle, std::span<const double> costs, const ApproxConfig& cfg,
                           const std::optional<AgentSet>& domain) {
  return cfg.demand == DemandMode::kExact ? oracle.exact_demand(costs, domain) : oracle.greedy_demand(costs, domain);
}

// One attempt at a valid scaling-set call for target y on `domain`.
// Returns the empty set whenever the target does not fit.
inline AgentSet alg2_attempt(Oracle& oracle, std::span<const double> costs, double y, const ApproxConfig& cfg,
                             const std::optional<AgentSet>& domain = std::nullopt) {
  if (!(y > 0.0)) throw InputError("target y must be positive");
  const AgentSet dom = domain ? *domain : AgentSet::prefix(oracle.n());
  if (dom.empty()) return {};
  const auto tilde = scaled_costs(costs, y, cfg);
  const AgentSet d = demand_set(oracle, tilde, cfg, dom);
  const AgentSet z = welfare_minimal_subset(oracle, tilde, d);
  const auto q = ScalingQuantities::compute(cfg, detail::max_singleton(oracle, dom), y);
  const double fz = oracle.eval(z);
  if (!(q.psi >= 0.0 && q.psi < fz)) return {};

  AgentSet u = alg1_scaling_set(oracle, z, q.psi);
  if (u.empty()) return u;
  auto& audit = postcondition_audit();
  ++audit.attempt_outputs;
  const double fu = oracle.eval(u);
  const double rho = shares(oracle, costs, u).total;
  const bool ok = rho <= 1.0 / cfg.m + kTol && approx_leq(fu, q.A / cfg.m * y) && approx_leq(0.5 * q.psi, fu);
  if (!ok) ++audit.attempt_violations;
  return u;
}

struct Candidate {
  AgentSet team;
  bool from_singleton = true;
  double y = 0.0;  // target of the attempt that produced it
};

struct CandidateCollection {
  std::vector<Candidate> members;
  std::uint64_t iterations = 0;
  double y_start = 0.0;

  bool contains(const AgentSet& s) const {
    return std::any_of(members.begin(), members.end(), [&](const Candidate& c) { return c.team == s; });
  }
};

inline CandidateCollection alg3_collection(Oracle& oracle, std::span<const double> costs, const ApproxConfig& cfg) {
  cfg.validate();
  const std::uint64_t n = oracle.n();
  if (costs.size() != n) throw InputError("cost vector length must equal n", "/costs");
  CandidateCollection col;
  std::vector<double> single(n);
  double y = -kInf;
  double fmax = 0.0;
  for (Agent i = 0; i < n; ++i) {
    single[i] = oracle.eval(AgentSet{i});
    col.members.push_back({AgentSet{i}, true, 0.0});
    y = std::max(y, single[i] - costs[i]);
    fmax = std::max(fmax, single[i]);
  }
  if (!(y > 0.0)) y = fmax / 2.0;
  col.y_start = y;

  const double full = oracle.eval(AgentSet::prefix(n));
  const double step = std::exp2(cfg.gamma);
  const double scale = cfg.A() / cfg.m / cfg.M;
  while (y <= full) {
    if (col.iterations >= cfg.max_doubling_iters)
      throw AlgorithmError("doubling loop exceeded its iteration cap; f([n]) / y0 is too large for gamma");
    AgentSet dom;
    for (Agent i = 0; i < n; ++i)
      if (single[i] <= scale * y) dom.insert(i);
    if (!dom.empty()) {
      AgentSet u = alg2_attempt(oracle, costs, y, cfg, dom);
      if (!u.empty() && !col.contains(u)) col.members.push_back({std::move(u), false, y});
    }
    y *= step;
    ++col.iterations;
  }
  return col;
}

// argmax over kept candidates of `score`, ties to the lexicographically
// smallest team; the empty team when nothing qualifies.
template <class Score, class Keep>
Outcome best_candidate(Oracle& oracle, std::span<const double> costs, const CandidateCollection& col, Score score,
                       Keep keep) {
  Outcome best;
  double best_score = 0.0;
  bool have = false;
  for (const auto& c : col.members) {
    Outcome o = outcome(oracle, costs, c.team);
    if (!keep(o)) continue;
    const double s = score(o);
    const double tol = scaled_tol(s, best_score);
    if (!have || s > best_score + tol || (s >= best_score - tol && lex_less(o.team, best.team))) {
      best = o;
      best_score = s;
      have = true;
    }
  }
  return best;
}

inline Outcome approx_welfare_xos(Oracle& oracle, std::span<const double> costs, const ApproxConfig& cfg) {
  const auto col = alg3_collection(oracle, costs, cfg);
  return best_candidate(
      oracle, costs, col, [](const Outcome& o) { return o.utility; },
      [](const Outcome& o) { return o.feasible(1.0); });
}

inline Outcome approx_welfare_xos(const Instance& inst, const ApproxConfig& cfg) {
  Oracle oracle(inst.fn);
  const auto costs = inst.cost_vector();
  return approx_welfare_xos(oracle, costs, cfg);
}

}  // namespace teamshare
