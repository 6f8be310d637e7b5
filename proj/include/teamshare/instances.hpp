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
// Instance families: the closed-form gap constructions and three seeded
// random corpora. Random draws use mt19937_64 with a hand-rolled uniform
// so that a seed produces the same instance on every standard library.
//

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "teamshare/contract.hpp"
#include "teamshare/errors.hpp"
#include "teamshare/instance.hpp"
#include "teamshare/value_fn.hpp"

namespace teamshare {

enum class SymShape { kSxos, kSubmodular };
enum class CostMode { kUniform, kFullFeasible, kSorted };

struct FamilySpec {
  std::string family = "additive_gap";
  std::uint64_t n = 4;
  double epsilon = 0.1;
  // sxos_tight: absent means n - 1, 0 means no bump.
  std::optional<std::uint64_t> bump;
  std::uint64_t seed = 1;
  std::size_t clauses = 0;   // random_xos; 0 picks max(2, n / 2)
  std::size_t elements = 0;  // random_coverage; 0 picks 2n
  std::size_t heavy = 0;     // random_xos / random_coverage
  SymShape shape = SymShape::kSxos;
  CostMode cost_mode = CostMode::kUniform;
  double value = 1.0;  // single_agent
  double cost = 1.0;   // single_agent
};

inline constexpr std::size_t kRejectionCap = 64;

inline bool is_closed_form_family(std::string_view f) {
  return parse_family(f).has_value() || f == "single_agent";
}

inline bool is_random_family(std::string_view f) {
  return f == "random_xos" || f == "random_coverage" || f == "random_sym_table";
}

inline Instance gen_family_instance(const FamilySpec& spec) {
  if (spec.family == "single_agent") {
    if (spec.n != 1) throw InputError("single_agent has exactly one agent", "/n");
    if (!(spec.value > 0.0)) throw InputError("single_agent value must be positive", "/value");
    return Instance(ValueFn::additive({spec.value}), Costs::explicit_list({spec.cost}));
  }
  const auto fam = parse_family(spec.family);
  if (!fam) throw InputError("unknown family '" + spec.family + "'", "/family");
  const std::uint64_t n = spec.n;
  SymmetricFormula f;
  f.family = *fam;
  double c = 1.0;
  switch (*fam) {
    case SymFamily::kAdditiveGap:
      if (n < 1) throw InputError("additive_gap requires n >= 1", "/n");
      c = 1.0;
      break;
    case SymFamily::kSubadditiveGap:
      if (n < 5) throw InputError("subadditive_gap requires n >= 5", "/n");
      c = 1.0 / std::sqrt(static_cast<double>(n));
      break;
    case SymFamily::kSupermodularGap:
      if (n < 2) throw InputError("supermodular_gap requires n >= 2", "/n");
      c = 2.0;
      break;
    case SymFamily::kSxosTight:
      if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0))
        throw InputError("sxos_tight requires 0 < epsilon < 1", "/epsilon");
      if (n < 2) throw InputError("sxos_tight requires n >= 2", "/n");
      f.epsilon = spec.epsilon;
      if (!spec.bump) f.bump = n - 1;
      else if (*spec.bump != 0) f.bump = *spec.bump;
      c = 2.0;
      break;
    case SymFamily::kUnconstrainedGap:
      if (n < 2) throw InputError("unconstrained_gap requires n >= 2", "/n");
      c = static_cast<double>(n) - 1.0;
      break;
  }
  return Instance(ValueFn::formula(n, f), Costs::uniform(c));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // Uniform on [0, 1) with 53 random bits.
  double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }
  // Uniform on (lo, hi].
  double uniform_oc(double lo, double hi) { return hi - (hi - lo) * u01(); }
  std::uint64_t below(std::uint64_t k) { return static_cast<std::uint64_t>(u01() * static_cast<double>(k)); }

 private:
  std::mt19937_64 eng_;
};

namespace detail {

inline std::vector<bool> pick_heavy(Rng& rng, std::size_t n, std::size_t heavy) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[rng.below(i)]);
  std::vector<bool> out(n, false);
  for (std::size_t j = 0; j < std::min(heavy, n); ++j) out[idx[j]] = true;
  return out;
}

// c_i = f(i) t noise; heavy-mode light agents get a much smaller t.
inline std::vector<double> draw_costs(Rng& rng, const ValueFn& fn, const std::vector<bool>& heavy, bool heavy_mode) {
  const std::size_t n = static_cast<std::size_t>(fn.n());
  const double t = rng.uniform(0.05, 0.6);
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double scale = heavy_mode && !heavy[i] ? rng.uniform(0.0005, 0.01) : t;
    c[i] = fn.singleton(i) * scale * rng.uniform(0.5, 1.5);
    c[i] = std::min(c[i], fn.singleton(i));
  }
  return c;
}

inline bool has_feasible_pair(const ValueFn& fn, const std::vector<double>& c) {
  const std::size_t n = static_cast<std::size_t>(fn.n());
  if (n < 2) return true;
  Oracle o(fn);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (is_feasible(o, c, AgentSet{i, j})) return true;
  return false;
}

inline ValueFn random_xos_fn(Rng& rng, const FamilySpec& spec, const std::vector<bool>& heavy) {
  const std::size_t n = static_cast<std::size_t>(spec.n);
  const std::size_t k = spec.clauses ? spec.clauses : std::max<std::size_t>(2, n / 2);
  std::vector<std::vector<double>> clauses(k, std::vector<double>(n, 0.0));
  for (auto& cl : clauses)
    for (std::size_t i = 0; i < n; ++i)
      if (rng.u01() < 0.6) cl[i] = rng.uniform_oc(0.0, 1.0) * (heavy[i] ? rng.uniform(100.0, 300.0) : 1.0);
  // Every agent needs a positive single-agent value.
  for (std::size_t i = 0; i < n; ++i) {
    bool any = false;
    for (const auto& cl : clauses) any = any || cl[i] > 0.0;
    if (!any) clauses[rng.below(k)][i] = rng.uniform_oc(0.0, 1.0) * (heavy[i] ? rng.uniform(100.0, 300.0) : 1.0);
  }
  return ValueFn::xos(n, std::move(clauses));
}

inline ValueFn random_coverage_fn(Rng& rng, const FamilySpec& spec, const std::vector<bool>& heavy) {
  const std::size_t n = static_cast<std::size_t>(spec.n);
  const std::size_t shared = spec.elements ? spec.elements : 2 * n;
  std::vector<double> w(shared);
  for (double& x : w) x = rng.uniform_oc(0.1, 1.0);
  std::vector<std::vector<std::size_t>> covers(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e = 0; e < shared; ++e)
      if (rng.u01() < 0.25) covers[i].push_back(e);
    if (covers[i].empty()) covers[i].push_back(static_cast<std::size_t>(rng.below(shared)));
    if (heavy[i]) {
      // A private element of large weight.
      covers[i].push_back(w.size());
      w.push_back(rng.uniform(100.0, 300.0));
    }
  }
  return ValueFn::coverage(std::move(w), std::move(covers));
}

// Redraws function and costs together: some functions (an agent covered by
// another) admit no feasible pair at any cost.
template <class Draw>
inline Instance rejection_sample(Rng& rng, const FamilySpec& spec, Draw draw) {
  const std::size_t n = static_cast<std::size_t>(spec.n);
  for (std::size_t attempt = 0; attempt < kRejectionCap; ++attempt) {
    const auto heavy = pick_heavy(rng, n, spec.heavy);
    ValueFn fn = draw(rng, spec, heavy);
    auto c = draw_costs(rng, fn, heavy, spec.heavy > 0);
    if (has_feasible_pair(fn, c)) return Instance(std::move(fn), Costs::explicit_list(std::move(c)));
  }
  throw AlgorithmError(spec.family + ": no feasible pair after 64 draws");
}

inline Instance random_sym_table(Rng& rng, const FamilySpec& spec) {
  const std::uint64_t n = spec.n;
  if (n < 1) throw InputError("random_sym_table requires n >= 1", "/n");
  if (n > kMaxTableAgents) throw CapabilityError("symmetric tables are capped at 2^20 agents");
  std::vector<double> v(n + 1, 0.0);
  if (spec.shape == SymShape::kSxos) {
    // Average a_k = v(k)/k shrinks by (k - 1 + u) / k, so v grows and v/k
    // does not.
    double avg = rng.uniform_oc(0.5, 2.0);
    v[1] = avg;
    for (std::uint64_t k = 2; k <= n; ++k) {
      const double kd = static_cast<double>(k);
      const double u = rng.u01() < 0.3 ? 1.0 : rng.uniform_oc(0.02, 1.0);
      avg *= (kd - 1.0 + u) / kd;
      v[k] = kd * avg;
    }
  } else {
    std::vector<double> marg(n);
    for (double& x : marg) x = rng.uniform_oc(0.0, 1.0);
    std::sort(marg.begin(), marg.end(), std::greater<>());
    for (std::uint64_t k = 1; k <= n; ++k) v[k] = v[k - 1] + marg[k - 1];
  }
  auto m = [&](std::uint64_t k) { return v[k] - v[k - 1]; };
  ValueFn fn = ValueFn::table(v);
  switch (spec.cost_mode) {
    case CostMode::kUniform: {
      const std::uint64_t k0 = 1 + rng.below(n);
      return Instance(fn, Costs::uniform(rng.uniform_oc(0.3, 1.0) * m(k0) / static_cast<double>(k0)));
    }
    case CostMode::kFullFeasible:
      return Instance(fn, Costs::uniform(rng.uniform_oc(0.2, 1.0) * m(n) / static_cast<double>(n)));
    case CostMode::kSorted: {
      const std::uint64_t k0 = 1 + rng.below(n);
      const double c = rng.uniform_oc(0.3, 1.0) * m(k0) / static_cast<double>(k0);
      std::vector<double> cs(n);
      for (double& x : cs) x = c * (0.5 + rng.u01());
      std::sort(cs.begin(), cs.end());
      return Instance(fn, Costs::explicit_list(std::move(cs)));
    }
  }
  throw InputError("unknown cost mode");
}

}  // namespace detail

inline Instance gen_random(const FamilySpec& spec) {
  Rng rng(spec.seed);
  if (spec.family == "random_xos") {
    if (spec.n < 1 || spec.n > 63) throw InputError("random_xos requires 1 <= n <= 63", "/n");
    return detail::rejection_sample(rng, spec, detail::random_xos_fn);
  }
  if (spec.family == "random_coverage") {
    if (spec.n < 1 || spec.n > 63) throw InputError("random_coverage requires 1 <= n <= 63", "/n");
    return detail::rejection_sample(rng, spec, detail::random_coverage_fn);
  }
  if (spec.family == "random_sym_table") return detail::random_sym_table(rng, spec);
  throw InputError("unknown random family '" + spec.family + "'", "/family");
}

inline Instance generate(const FamilySpec& spec) {
  if (is_closed_form_family(spec.family)) return gen_family_instance(spec);
  if (is_random_family(spec.family)) return gen_random(spec);
  throw InputError("unknown family '" + spec.family + "'", "/family");
}

}  // namespace teamshare
