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
// Linear-contract calculus for a team S:
//   share of agent i   rho_S(i) = c_i / f(i : S)    (+inf when f(i : S) = 0)
//   total share        rho(S)   = sum_i rho_S(i)
//   welfare            w(S)     = f(S) - c(S)
//   principal utility  g(S)     = (1 - rho(S)) f(S)
//   transfer           rho(S) f(S)
//

#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "teamshare/agent_set.hpp"
#include "teamshare/errors.hpp"
#include "teamshare/value_fn.hpp"

namespace teamshare {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct AgentShare {
  Agent agent;
  double share;
};

struct Shares {
  std::vector<AgentShare> per_agent;
  double total = 0.0;

  bool finite() const { return std::isfinite(total); }
};

struct Outcome {
  AgentSet team;
  double value = 0.0;
  double cost = 0.0;
  double welfare = 0.0;
  double utility = 0.0;  // -inf when some member cannot be incentivized
  double share_total = 0.0;

  bool feasible(double b = 1.0) const { return share_total <= b + kTol; }
  double transfer() const { return team.empty() ? 0.0 : share_total * value; }
};

inline Shares shares(Oracle& oracle, std::span<const double> costs, const AgentSet& team) {
  Shares out;
  team.for_each([&](Agent i) {
    const double m = oracle.marginal(team, i);
    const double share = m > 0.0 ? costs[i] / m : kInf;
    out.per_agent.push_back({i, share});
    out.total += share;
  });
  return out;
}

inline bool is_feasible(Oracle& oracle, std::span<const double> costs, const AgentSet& team, double b = 1.0) {
  if (!(b > 0.0)) throw InputError("feasibility bound b must be positive");
  if (team.empty()) return true;
  return shares(oracle, costs, team).total <= b + kTol;
}

inline double transfer(Oracle& oracle, std::span<const double> costs, const AgentSet& team) {
  if (team.empty()) return 0.0;
  const double rho = shares(oracle, costs, team).total;
  return std::isfinite(rho) ? rho * oracle.eval(team) : kInf;
}

inline double team_cost(std::span<const double> costs, const AgentSet& team) {
  double c = 0.0;
  team.for_each([&](Agent i) { c += costs[i]; });
  return c;
}

inline Outcome outcome(Oracle& oracle, std::span<const double> costs, const AgentSet& team) {
  Outcome o;
  o.team = team;
  if (team.empty()) return o;
  o.value = oracle.eval(team);
  o.cost = team_cost(costs, team);
  o.welfare = o.value - o.cost;
  o.share_total = shares(oracle, costs, team).total;
  o.utility = std::isfinite(o.share_total) ? (1.0 - o.share_total) * o.value : -kInf;
  return o;
}

// Drops the lowest-index member whose welfare marginal f(i : Z) - c_i is not
// positive, until every member contributes. Welfare never decreases.
inline AgentSet welfare_minimal_subset(Oracle& oracle, std::span<const double> costs, const AgentSet& team) {
  AgentSet z = team;
  for (;;) {
    std::optional<Agent> drop;
    z.for_each([&](Agent i) {
      if (drop) return;
      if (oracle.marginal(z, i) - costs[i] <= 0.0) drop = i;
    });
    if (!drop) return z;
    z.erase(*drop);
  }
}

}  // namespace teamshare
