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
// Algorithms for symmetric value functions f(S) = v(|S|). Teams are prefixes
// [k] of the cost-sorted order, so every routine works on team sizes and
// touches v only at O(log n) points.
//

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "teamshare/agent_set.hpp"
#include "teamshare/contract.hpp"
#include "teamshare/errors.hpp"
#include "teamshare/instance.hpp"
#include "teamshare/value_fn.hpp"

namespace teamshare {

class SymInstance {
 public:
  using Accessor = std::function<double(std::uint64_t)>;

  SymInstance(std::uint64_t n, Accessor v, double uniform_cost) : n_(n), v_(std::move(v)), uniform_(uniform_cost) {
    if (!(uniform_cost > 0.0) || !std::isfinite(uniform_cost)) throw InputError("cost must be finite and positive", "/costs");
  }

  // Heterogeneous costs; sorted ascending here.
  SymInstance(std::uint64_t n, Accessor v, std::vector<double> costs) : n_(n), v_(std::move(v)) {
    if (costs.size() != n) throw InputError("costs must have one entry per agent", "/costs");
    std::sort(costs.begin(), costs.end());
    prefix_.resize(n + 1, 0.0);
    for (std::uint64_t i = 0; i < n; ++i) prefix_[i + 1] = prefix_[i] + costs[i];
    sorted_ = std::move(costs);
  }

  static SymInstance from(const Instance& inst) {
    if (!inst.fn.is_symmetric()) throw InputError("symmetric algorithms need a symmetric value function", "/valuefn/kind");
    const ValueFn* fn = &inst.fn;
    Accessor v = [fn](std::uint64_t k) { return fn->value_of_size(k); };
    if (auto c = inst.costs.uniform_value()) return SymInstance(inst.n(), std::move(v), *c);
    return SymInstance(inst.n(), std::move(v), inst.cost_vector());
  }

  std::uint64_t n() const { return n_; }
  bool uniform() const { return uniform_.has_value(); }
  std::optional<double> uniform_cost() const { return uniform_; }

  // Counted, memoized v(k). v(0) = 0 is free.
  double f(std::uint64_t k) {
    if (k > n_) throw InputError("team size exceeds n");
    if (k == 0) return 0.0;
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
    ++queries_;
    const double val = v_(k);
    memo_.emplace(k, val);
    return val;
  }

  double raw(std::uint64_t k) const { return k == 0 ? 0.0 : v_(k); }
  double m(std::uint64_t k) { return f(k) - f(k - 1); }

  // Cost of the k-th cheapest agent (1-based) and of the k cheapest.
  double cost_at(std::uint64_t k) const { return uniform_ ? *uniform_ : sorted_.at(k - 1); }
  double prefix_cost(std::uint64_t k) const { return uniform_ ? *uniform_ * static_cast<double>(k) : prefix_.at(k); }

  double rho(std::uint64_t k) {
    if (k == 0) return 0.0;
    const double mk = m(k);
    return mk > 0.0 ? prefix_cost(k) / mk : kInf;
  }
  bool feasible(std::uint64_t k, double b = 1.0) { return rho(k) <= b + kTol; }

  std::uint64_t queries() const { return queries_; }
  const std::map<std::uint64_t, double>& queried() const { return memo_; }

 private:
  std::uint64_t n_;
  Accessor v_;
  std::optional<double> uniform_;
  std::vector<double> sorted_;
  std::vector<double> prefix_;
  std::map<std::uint64_t, double> memo_;
  std::uint64_t queries_ = 0;
};

struct SymResult {
  std::uint64_t k = 0;
  double f = 0.0;
  double w = 0.0;
  double g = 0.0;
  double rho = 0.0;
  std::uint64_t value_queries = 0;
};

// Largest x in [lo, hi] with pred(x) true, given pred(lo) true and pred
// monotone (true then false).
template <class Pred>
std::uint64_t largest_true(std::uint64_t lo, std::uint64_t hi, Pred pred) {
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (pred(mid)) lo = mid; else hi = mid - 1;
  }
  return lo;
}

// Some x in (lo, hi] with pred(x - 1) false and pred(x) true, given
// pred(lo) false and pred(hi) true.
template <class Pred>
std::uint64_t first_crossing(std::uint64_t lo, std::uint64_t hi, Pred pred) {
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (pred(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

namespace detail {

// Values are recomputed uncounted so reporting does not inflate the tally.
inline SymResult sym_report(SymInstance& s, std::uint64_t k) {
  SymResult r;
  r.k = k;
  r.value_queries = s.queries();
  if (k == 0) return r;
  r.f = s.raw(k);
  const double c = s.prefix_cost(k);
  r.w = r.f - c;
  const double mk = r.f - s.raw(k - 1);
  r.rho = mk > 0.0 ? c / mk : kInf;
  r.g = std::isfinite(r.rho) ? (1.0 - r.rho) * r.f : -kInf;
  return r;
}

inline void check_sxos_points(const SymInstance& s) {
  std::uint64_t pk = 0;
  double pv = 0.0;
  for (const auto& [k, v] : s.queried()) {
    if (!approx_leq(pv, v))
      throw InputError("value decreases between sizes " + std::to_string(pk) + " and " + std::to_string(k));
    if (pk > 0 && !approx_leq(v * static_cast<double>(pk), pv * static_cast<double>(k)))
      throw InputError("average value increases between sizes " + std::to_string(pk) + " and " + std::to_string(k));
    pk = k;
    pv = v;
  }
}

inline void check_concave_points(SymInstance& s) {
  std::optional<double> prev;
  std::uint64_t prev_k = 0;
  for (const auto& [k, v] : s.queried()) {
    if (s.queried().count(k - 1) == 0 && k != 1) continue;
    const double mk = v - (k == 1 ? 0.0 : s.queried().at(k - 1));
    if (prev && !approx_leq(mk, *prev))
      throw InputError("marginal increases between sizes " + std::to_string(prev_k) + " and " + std::to_string(k));
    prev = mk;
    prev_k = k;
  }
}

}  // namespace detail

// Welfare within a factor 2 / (1 - 3/n') for symmetric XOS with uniform cost.
inline SymResult sxos_welfare_approx(SymInstance& s) {
  const auto c = s.uniform_cost();
  if (!c) throw InputError("sxos_welfare_approx needs a uniform cost", "/costs");
  const double cost = *c;
  if (s.f(1) < cost) return detail::sym_report(s, 0);

  // Eligible sizes f(k) >= c k^2 form a prefix of [1, n].
  const std::uint64_t top = largest_true(1, s.n(), [&](std::uint64_t k) {
    const double kd = static_cast<double>(k);
    return s.f(k) >= cost * kd * kd;
  });
  if (top == 1) {
    detail::check_sxos_points(s);
    return detail::sym_report(s, 1);
  }

  const double ftop = s.f(top);
  const double td = static_cast<double>(top);
  auto bar = [&](std::uint64_t k) {
    const double kd = static_cast<double>(k);
    return ftop - cost / 2.0 * (td - kd) * (td + kd + 1.0);
  };
  const std::uint64_t k = first_crossing(0, top, [&](std::uint64_t j) { return s.f(j) >= bar(j); });
  detail::check_sxos_points(s);
  return detail::sym_report(s, k);
}

// Exact welfare optimum for symmetric submodular f with sorted costs.
inline SymResult sym_submodular_opt(SymInstance& s) {
  if (!s.feasible(1) || !(s.m(1) - s.cost_at(1) > 0.0)) return detail::sym_report(s, 0);
  const std::uint64_t feasible_top = largest_true(1, s.n(), [&](std::uint64_t k) { return s.feasible(k); });
  const std::uint64_t peak = largest_true(1, s.n(), [&](std::uint64_t k) { return s.m(k) - s.cost_at(k) > 0.0; });
  detail::check_concave_points(s);
  return detail::sym_report(s, std::min(feasible_top, peak));
}

struct GapCertificate {
  SymResult result;
  double a = 0.0;
  double b = 0.0;
  double value_bound = 0.0;    // (1/a - 1/b) f(n)
  double utility_bound = 0.0;  // (1/a - 1/b)(1 - b/a^2) f(n)
  bool value_ok = false;
  bool utility_ok = false;
};

// Walks k down from n/a while m(k) <= (a/b) m(n).
inline GapCertificate sxos_gap_certificate(SymInstance& s, double a, double b) {
  if (!(a >= 1.0)) throw InputError("a must be >= 1");
  if (!(b > a)) throw InputError("b must exceed a");
  const double n = static_cast<double>(s.n());
  const double start_d = n / a;
  const double start_r = std::round(start_d);
  if (start_r < 1.0 || std::abs(start_d - start_r) > 1e-9 * std::max(1.0, start_d))
    throw InputError("a must divide n");
  if (!s.feasible(s.n())) throw InputError("the full team must be feasible");

  const double mn = s.m(s.n());
  const double thresh = a / b * mn;
  auto k = static_cast<std::uint64_t>(start_r);
  while (k > 0 && s.m(k) <= thresh) --k;
  if (k == 0) throw AlgorithmError("certificate search reached k = 0");

  GapCertificate cert;
  cert.a = a;
  cert.b = b;
  cert.result = detail::sym_report(s, k);
  const double fn = s.raw(s.n());
  cert.value_bound = (1.0 / a - 1.0 / b) * fn;
  cert.utility_bound = cert.value_bound * (1.0 - b / (a * a));
  cert.value_ok = cert.result.f > cert.value_bound;
  cert.utility_ok = cert.result.g > cert.utility_bound;
  return cert;
}

// a = n / floor(n/4) and b = a^1.5, so (4, 8) whenever 4 divides n.
inline GapCertificate sxos_gap_certificate_auto(SymInstance& s) {
  if (s.n() < 4) throw InputError("automatic certificate needs n >= 4");
  const double a = static_cast<double>(s.n()) / static_cast<double>(s.n() / 4);
  return sxos_gap_certificate(s, a, std::pow(a, 1.5));
}

struct SplitResult {
  AgentSet A;
  AgentSet B;
  AgentSet C;
  double rho_A = 0.0;
  double rho_B = 0.0;
  double rho_C = 0.0;
};

// Partition of a feasible team whose members each carry share <= 1/2 into
// three parts that are each 1/2-feasible on their own (for submodular f).
inline SplitResult submodular_split(Oracle& oracle, std::span<const double> costs, const AgentSet& team) {
  const Shares sh = shares(oracle, costs, team);
  if (!(sh.total <= 1.0 + kTol)) throw InputError("team must be feasible");
  for (const auto& [agent, share] : sh.per_agent)
    if (!(share <= 0.5 + kTol))
      throw InputError("agent " + std::to_string(agent) + " has share above 1/2 in the team");

  SplitResult r;
  double acc = 0.0;
  std::size_t idx = 0;
  for (; idx < sh.per_agent.size(); ++idx) {
    if (acc + sh.per_agent[idx].share > 0.5 + kTol) break;
    acc += sh.per_agent[idx].share;
    r.A.insert(sh.per_agent[idx].agent);
  }
  if (idx < sh.per_agent.size()) r.B.insert(sh.per_agent[idx++].agent);
  for (; idx < sh.per_agent.size(); ++idx) r.C.insert(sh.per_agent[idx].agent);
  r.rho_A = shares(oracle, costs, r.A).total;
  r.rho_B = shares(oracle, costs, r.B).total;
  r.rho_C = shares(oracle, costs, r.C).total;
  return r;
}

// argmax_i g({i}) = f(i) - c_i, ties to the lowest index. One value query
// on symmetric instances.
inline Outcome best_singleton(Oracle& oracle, std::span<const double> costs) {
  const std::uint64_t n = oracle.n();
  if (costs.size() != n) throw InputError("cost vector length must equal n", "/costs");
  Agent pick = 0;
  if (oracle.fn().is_symmetric()) {
    for (Agent i = 1; i < n; ++i)
      if (costs[i] < costs[pick]) pick = i;
  } else {
    double best = -kInf;
    for (Agent i = 0; i < n; ++i) {
      const double g = oracle.eval(AgentSet{i}) - costs[i];
      if (g > best) {
        best = g;
        pick = i;
      }
    }
  }
  Oracle scratch(oracle.fn());
  Outcome o = outcome(scratch, costs, AgentSet{pick});
  if (oracle.fn().is_symmetric()) oracle.eval_size(1);
  return o;
}

// Symmetric variant that never materializes a cost vector.
inline Outcome best_singleton(const Instance& inst) {
  Oracle oracle(inst.fn);
  if (inst.fn.is_symmetric()) {
    Outcome o;
    o.team = AgentSet{0};
    double c = 0.0;
    if (auto u = inst.costs.uniform_value()) {
      c = *u;
    } else {
      const auto v = inst.cost_vector();
      const auto it = std::min_element(v.begin(), v.end());
      c = *it;
      o.team = AgentSet{static_cast<Agent>(it - v.begin())};
    }
    o.value = oracle.eval_size(1);
    o.cost = c;
    o.welfare = o.value - c;
    o.share_total = c / o.value;
    o.utility = (1.0 - o.share_total) * o.value;
    return o;
  }
  const auto costs = inst.cost_vector();
  return best_singleton(oracle, costs);
}

}  // namespace teamshare
