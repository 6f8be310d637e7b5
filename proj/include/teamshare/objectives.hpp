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
// Value and welfare under generalized constraints. All three routines reuse
// the candidate collection; b-feasibility under c is 1-feasibility under
// c / b, so costs are rescaled rather than the algorithm changed.
//
// Welfare under joint b / B constraints is not provided. It composes
// welfare_approx_bfeasible with the same b-hat grid used by
// value_approx_btransfer.
//

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "teamshare/contract.hpp"
#include "teamshare/errors.hpp"
#include "teamshare/instance.hpp"
#include "teamshare/xos_approx.hpp"

namespace teamshare {

struct ConstraintSpec {
  double b = 1.0;
  double B = kInf;

  void validate() const {
    if (!(b > 0.0)) throw InputError("b must be positive", "/b");
    if (!(B >= 0.0)) throw InputError("B must be nonnegative", "/B");
    if (std::isinf(b) && std::isinf(B)) throw InputError("at least one of b, B must be finite");
  }
};

inline constexpr double kTransferStep = 0.5;        // mu in b-hat = b 2^(-j mu)
inline constexpr std::size_t kTransferGridCap = 4096;
inline constexpr double kWelfareRegimeSplit = 0.9;
inline constexpr double kWelfareBoundCap = 1.9;

namespace detail {

inline std::vector<double> divided(std::span<const double> costs, double by) {
  std::vector<double> out(costs.begin(), costs.end());
  for (double& c : out) c /= by;
  return out;
}

inline ApproxConfig value_config(ApproxConfig cfg) {
  cfg.m = 1.0;
  cfg.M = 3.0;
  return cfg;
}

}  // namespace detail

inline Outcome value_approx_bfeasible(Oracle& oracle, std::span<const double> costs, double b,
                                      const ApproxConfig& cfg) {
  if (!(b > 0.0) || !std::isfinite(b)) throw InputError("b must be positive and finite", "/b");
  const auto scaled = detail::divided(costs, b);
  const auto col = alg3_collection(oracle, scaled, detail::value_config(cfg));
  return best_candidate(
      oracle, costs, col, [](const Outcome& o) { return o.value; },
      [b](const Outcome& o) { return o.feasible(b); });
}

inline Outcome value_approx_btransfer(Oracle& oracle, std::span<const double> costs, double b, double B,
                                      const ApproxConfig& cfg) {
  ConstraintSpec{b, B}.validate();
  if (B == 0.0) return Outcome{};  // every nonempty team needs a positive transfer
  const std::uint64_t n = oracle.n();
  double fmin = kInf;
  for (Agent i = 0; i < n; ++i) fmin = std::min(fmin, oracle.eval(AgentSet{i}));
  const double full = oracle.eval(AgentSet::prefix(n));

  // Any nonempty S has b(S) = min(b, B / f(S)) in [floor, start]; the grid
  // stops at the first point at or below the floor.
  const double start = std::min(b, B / fmin);
  const double floor = std::min(b, B / full);
  CandidateCollection all;
  for (std::size_t j = 0;; ++j) {
    if (j >= kTransferGridCap) throw CapabilityError("b-hat grid is too long for this instance");
    const double bhat = start * std::exp2(-static_cast<double>(j) * kTransferStep);
    const auto scaled = detail::divided(costs, bhat);
    for (auto& c : alg3_collection(oracle, scaled, detail::value_config(cfg)).members)
      if (!all.contains(c.team)) all.members.push_back(std::move(c));
    if (bhat <= floor * (1.0 + 1e-12)) break;
  }
  return best_candidate(
      oracle, costs, all, [](const Outcome& o) { return o.value; },
      [b, B](const Outcome& o) {
        const double t = o.transfer();
        return o.feasible(b) && t <= B + scaled_tol(t, B);
      });
}

inline Outcome welfare_approx_bfeasible(Oracle& oracle, std::span<const double> costs, double b,
                                        const ApproxConfig& cfg) {
  if (!(b > 0.0)) throw InputError("b must be positive", "/b");
  if (b > kWelfareBoundCap) throw InputError("b above 1.9 is outside the supported range", "/b");
  if (b <= kWelfareRegimeSplit) return value_approx_bfeasible(oracle, costs, b, cfg);
  ApproxConfig c = cfg;
  c.m = std::max(cfg.m, 1.0 / b);
  const auto col = alg3_collection(oracle, costs, c);
  return best_candidate(
      oracle, costs, col, [](const Outcome& o) { return o.utility; },
      [b](const Outcome& o) { return o.feasible(b); });
}

inline Outcome value_approx_bfeasible(const Instance& inst, double b, const ApproxConfig& cfg) {
  Oracle oracle(inst.fn);
  const auto costs = inst.cost_vector();
  return value_approx_bfeasible(oracle, costs, b, cfg);
}

inline Outcome value_approx_btransfer(const Instance& inst, double b, double B, const ApproxConfig& cfg) {
  Oracle oracle(inst.fn);
  const auto costs = inst.cost_vector();
  return value_approx_btransfer(oracle, costs, b, B, cfg);
}

inline Outcome welfare_approx_bfeasible(const Instance& inst, double b, const ApproxConfig& cfg) {
  Oracle oracle(inst.fn);
  const auto costs = inst.cost_vector();
  return welfare_approx_bfeasible(oracle, costs, b, cfg);
}

}  // namespace teamshare
