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
// Brute-force optima over all 2^n teams (n <= 20), the prefix-team scan for
// symmetric instances, and the welfare-utility gap built on top of both.
//

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string_view>
#include <thread>
#include <vector>

#include "teamshare/agent_set.hpp"
#include "teamshare/contract.hpp"
#include "teamshare/errors.hpp"
#include "teamshare/instance.hpp"
#include "teamshare/value_fn.hpp"

namespace teamshare {

enum class Objective { kWelfare, kUtility, kValue };

inline std::string_view objective_name(Objective o) {
  switch (o) {
    case Objective::kWelfare: return "welfare";
    case Objective::kUtility: return "utility";
    case Objective::kValue: return "value";
  }
  return "?";
}

inline std::optional<Objective> parse_objective(std::string_view s) {
  for (Objective o : {Objective::kWelfare, Objective::kUtility, Objective::kValue})
    if (objective_name(o) == s) return o;
  return std::nullopt;
}

inline double objective_of(const Outcome& o, Objective obj) {
  switch (obj) {
    case Objective::kWelfare: return o.welfare;
    case Objective::kUtility: return o.utility;
    case Objective::kValue: return o.value;
  }
  return 0.0;
}

struct OptResult {
  Objective objective = Objective::kWelfare;
  double b = 1.0;
  std::optional<double> B;
  // For symmetric instances too large to list, `best.team` stays empty and
  // only `best_size` identifies the prefix team.
  Outcome best;
  std::uint64_t best_size = 0;
  bool team_listed = true;
  double best_value = 0.0;
  QueryStats stats;
};

struct GapReport {
  double opt_w = 0.0;
  double opt_g = 0.0;
  double opt_f = 0.0;
  double gap_wg = 1.0;
  std::string_view method;
  OptResult welfare;
  OptResult utility;
  OptResult value;
};

inline constexpr std::size_t kEnumerationCap = 20;
inline constexpr std::uint64_t kSymmetricScanCap = 100'000'000;

inline double welfare_utility_ratio(double opt_w, double opt_g) {
  if (opt_g > 0.0) return opt_w / opt_g;
  if (opt_w > 0.0) return kInf;
  return std::numeric_limits<double>::quiet_NaN();
}

namespace detail {

inline void check_bounds(double b, const std::optional<double>& B) {
  if (!(b > 0.0)) throw InputError("feasibility bound b must be positive", "/b");
  if (B && !(*B >= 0.0)) throw InputError("transfer bound B must be nonnegative", "/B");
}

inline bool admissible(double rho, double f, double b, const std::optional<double>& B) {
  if (!(rho <= b + kTol)) return false;
  if (B) {
    const double t = std::isfinite(rho) ? rho * f : kInf;
    if (!(t <= *B + scaled_tol(t, *B))) return false;
  }
  return true;
}

inline double score(double f, double cost, double rho, Objective obj) {
  switch (obj) {
    case Objective::kWelfare: return f - cost;
    case Objective::kUtility: return std::isfinite(rho) ? (1.0 - rho) * f : -kInf;
    case Objective::kValue: return f;
  }
  return 0.0;
}

struct Best {
  double score = 0.0;
  std::uint64_t mask = 0;
};

// True when (s, mask) should replace `cur`; near-ties go to the
// lexicographically smaller team.
inline bool improves(double s, std::uint64_t mask, const Best& cur) {
  if (!std::isfinite(s) && s < 0.0) return false;
  const double tol = scaled_tol(s, cur.score);
  if (s > cur.score + tol) return true;
  return s >= cur.score - tol && mask_lex_less(mask, cur.mask);
}

}  // namespace detail

// Exhaustive argmax over all teams. The value table is filled through the
// oracle (2^n counted queries); marginals and shares are table lookups.
inline OptResult opt_enumerate(Oracle& oracle, std::span<const double> costs, Objective obj, double b = 1.0,
                               std::optional<double> B = std::nullopt, unsigned threads = 1) {
  detail::check_bounds(b, B);
  const std::size_t n = static_cast<std::size_t>(oracle.n());
  if (n > kEnumerationCap)
    throw CapabilityError("brute force is capped at n = 20 (got n = " + std::to_string(n) + ")");
  if (costs.size() != n) throw InputError("cost vector length must equal n", "/costs");

  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<double> f(count);
  for (std::uint64_t s = 0; s < count; ++s) f[s] = oracle.eval_mask(s);

  auto scan = [&](std::uint64_t lo, std::uint64_t hi) {
    detail::Best best;  // the empty team, objective 0
    for (std::uint64_t s = std::max<std::uint64_t>(lo, 1); s < hi; ++s) {
      double rho = 0.0;
      double cost = 0.0;
      for (std::uint64_t m = s; m != 0; m &= m - 1) {
        const auto i = static_cast<std::size_t>(std::countr_zero(m));
        const double marg = f[s] - f[s & ~(std::uint64_t{1} << i)];
        rho += marg > 0.0 ? costs[i] / marg : kInf;
        cost += costs[i];
      }
      if (!detail::admissible(rho, f[s], b, B)) continue;
      const double sc = detail::score(f[s], cost, rho, obj);
      if (detail::improves(sc, s, best)) best = {sc, s};
    }
    return best;
  };

  detail::Best best;
  const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(count / 1024 + 1)));
  if (workers == 1) {
    best = scan(0, count);
  } else {
    std::vector<detail::Best> part(workers);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] { part[w] = scan(w * chunk, std::min(count, (w + 1) * chunk)); });
    for (auto& t : pool) t.join();
    // Merge in chunk order so the result does not depend on scheduling.
    for (const auto& p : part)
      if (detail::improves(p.score, p.mask, best)) best = p;
  }

  OptResult r;
  r.objective = obj;
  r.b = b;
  r.B = B;
  const AgentSet team = AgentSet::from_mask(best.mask);
  Oracle scratch(oracle.fn());
  r.best = outcome(scratch, costs, team);
  r.best_size = team.size();
  r.best_value = objective_of(r.best, obj);
  r.stats = oracle.stats();
  return r;
}

inline OptResult opt_enumerate(const Instance& inst, Objective obj, double b = 1.0,
                               std::optional<double> B = std::nullopt, unsigned threads = 1) {
  Oracle oracle(inst.fn);
  const auto costs = inst.cost_vector();
  return opt_enumerate(oracle, costs, obj, b, B, threads);
}

// Scan over prefix teams [k] of the cost-sorted agent order. Exact for
// symmetric value functions: among teams of size k the k cheapest agents
// have the smallest cost and the smallest total share.
inline OptResult opt_symmetric(const Instance& inst, Objective obj, double b = 1.0,
                               std::optional<double> B = std::nullopt) {
  detail::check_bounds(b, B);
  if (!inst.fn.is_symmetric()) throw InputError("opt_symmetric needs a symmetric value function", "/valuefn/kind");
  const std::uint64_t n = inst.n();
  if (n > kSymmetricScanCap) throw CapabilityError("prefix scan is capped at 1e8 agents");

  std::vector<double> sorted;
  std::vector<Agent> order;
  const auto uniform = inst.costs.uniform_value();
  if (!uniform) {
    sorted = inst.cost_vector();
    order.resize(n);
    std::iota(order.begin(), order.end(), Agent{0});
    std::stable_sort(order.begin(), order.end(), [&](Agent x, Agent y) { return sorted[x] < sorted[y]; });
    std::sort(sorted.begin(), sorted.end());
  }

  Oracle oracle(inst.fn);
  double prev = 0.0;
  double prefix = 0.0;
  double best_score = 0.0;
  std::uint64_t best_k = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const double fk = oracle.eval_size(k);
    const double ck = uniform ? *uniform : sorted[k - 1];
    prefix = uniform ? *uniform * static_cast<double>(k) : prefix + ck;
    const double m = fk - prev;
    prev = fk;
    // Every member of [k] has marginal m(k); the total share is C(k)/m(k).
    const double rho = m > 0.0 ? prefix / m : kInf;
    if (!detail::admissible(rho, fk, b, B)) continue;
    const double sc = detail::score(fk, prefix, rho, obj);
    if (!std::isfinite(sc) && sc < 0.0) continue;
    if (sc > best_score + scaled_tol(sc, best_score)) {
      best_score = sc;
      best_k = k;
    }
  }

  OptResult r;
  r.objective = obj;
  r.b = b;
  r.B = B;
  r.best_size = best_k;
  r.stats = oracle.stats();
  const double fk = best_k == 0 ? 0.0 : inst.fn.value_of_size(best_k);
  const double fk1 = best_k <= 1 ? 0.0 : inst.fn.value_of_size(best_k - 1);
  double cost = 0.0;
  if (uniform) {
    cost = *uniform * static_cast<double>(best_k);
  } else {
    for (std::uint64_t j = 0; j < best_k; ++j) cost += sorted[j];
  }
  Outcome& o = r.best;
  if (best_k > 0) {
    o.value = fk;
    o.cost = cost;
    o.welfare = fk - cost;
    const double m = fk - fk1;
    o.share_total = m > 0.0 ? cost / m : kInf;
    o.utility = std::isfinite(o.share_total) ? (1.0 - o.share_total) * fk : -kInf;
  }
  r.team_listed = best_k <= kMaxTableAgents;
  if (r.team_listed) {
    if (uniform) {
      o.team = AgentSet::prefix(best_k);
    } else {
      for (std::uint64_t j = 0; j < best_k; ++j) o.team.insert(order[j]);
    }
  }
  r.best_value = objective_of(o, obj);
  return r;
}

// Welfare, utility and value optima under b-feasibility, plus their ratio.
inline GapReport gap(const Instance& inst, double b = 1.0, unsigned threads = 1) {
  GapReport g;
  if (inst.n() <= kEnumerationCap) {
    g.method = "enumerate";
    g.welfare = opt_enumerate(inst, Objective::kWelfare, b, std::nullopt, threads);
    g.utility = opt_enumerate(inst, Objective::kUtility, b, std::nullopt, threads);
    g.value = opt_enumerate(inst, Objective::kValue, b, std::nullopt, threads);
  } else if (inst.fn.is_symmetric()) {
    g.method = "symmetric";
    g.welfare = opt_symmetric(inst, Objective::kWelfare, b);
    g.utility = opt_symmetric(inst, Objective::kUtility, b);
    g.value = opt_symmetric(inst, Objective::kValue, b);
  } else {
    throw CapabilityError("gap needs n <= 20 or a symmetric value function");
  }
  g.opt_w = g.welfare.best_value;
  g.opt_g = g.utility.best_value;
  g.opt_f = g.value.best_value;
  g.gap_wg = welfare_utility_ratio(g.opt_w, g.opt_g);
  return g;
}

}  // namespace teamshare
