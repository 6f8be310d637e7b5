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
// Value functions f : 2^[n] -> R+ and the oracles that query them.
//
// A ValueFn is an immutable description of f. All counted access goes
// through an Oracle handle, which keeps the value/demand query tallies
// for one run. Several handles may share one ValueFn across threads.
//

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "teamshare/agent_set.hpp"
#include "teamshare/errors.hpp"

namespace teamshare {

struct Additive {
  std::vector<double> weights;
};

// Pointwise maximum of nonnegative additive clauses.
struct XosClauses {
  std::vector<std::vector<double>> clauses;
};

struct Coverage {
  std::vector<double> element_weights;
  std::vector<std::vector<std::size_t>> covers;  // per agent
};

// f(S) = values[|S|].
struct SymmetricTable {
  std::vector<double> values;
};

enum class SymFamily {
  kAdditiveGap,
  kSubadditiveGap,
  kSupermodularGap,
  kSxosTight,
  kUnconstrainedGap,
};

inline std::string_view family_name(SymFamily f) {
  switch (f) {
    case SymFamily::kAdditiveGap: return "additive_gap";
    case SymFamily::kSubadditiveGap: return "subadditive_gap";
    case SymFamily::kSupermodularGap: return "supermodular_gap";
    case SymFamily::kSxosTight: return "sxos_tight";
    case SymFamily::kUnconstrainedGap: return "unconstrained_gap";
  }
  return "?";
}

inline std::optional<SymFamily> parse_family(std::string_view s) {
  for (SymFamily f : {SymFamily::kAdditiveGap, SymFamily::kSubadditiveGap,
                      SymFamily::kSupermodularGap, SymFamily::kSxosTight,
                      SymFamily::kUnconstrainedGap}) {
    if (family_name(f) == s) return f;
  }
  return std::nullopt;
}

// Closed-form symmetric families, evaluated at any k in [0, n] without
// materializing a table.
struct SymmetricFormula {
  SymFamily family = SymFamily::kAdditiveGap;
  double epsilon = 0.0;               // sxos_tight only
  std::optional<std::uint64_t> bump;  // sxos_tight only: f(bump) += epsilon

  double operator()(std::uint64_t n, std::uint64_t k) const {
    if (k == 0) return 0.0;
    const double kd = static_cast<double>(k);
    const double nd = static_cast<double>(n);
    switch (family) {
      case SymFamily::kAdditiveGap:
      case SymFamily::kUnconstrainedGap:
        return kd * nd;
      case SymFamily::kSubadditiveGap: {
        if (k == n) return nd;
        // Linear from sqrt(n) at k = 1 to n - sqrt(n) at k = n - 1, so
        // m(1) = m(n) = sqrt(n) and f(k) + f(n - k) = n.
        const double r = std::sqrt(nd);
        return r + (kd - 1.0) * (nd - 2.0 * r) / (nd - 2.0);
      }
      case SymFamily::kSupermodularGap:
        if (k == n) return nd * nd + nd;
        return kd * kd + kd - kd / nd;
      case SymFamily::kSxosTight: {
        double v = kd * kd + (1.0 - epsilon) * kd + (nd * nd + nd);
        if (bump && *bump == k) v += epsilon;
        return v;
      }
    }
    return 0.0;
  }
};

inline constexpr std::uint64_t kMaxTableAgents = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kMaxFormulaAgents = 1'000'000'000;

class ValueFn {
 public:
  using Kind = std::variant<Additive, XosClauses, Coverage, SymmetricTable, SymmetricFormula>;

  static ValueFn additive(std::vector<double> weights) {
    const std::size_t n = weights.size();
    return ValueFn(n, Additive{std::move(weights)});
  }
  static ValueFn xos(std::size_t n, std::vector<std::vector<double>> clauses) {
    return ValueFn(n, XosClauses{std::move(clauses)});
  }
  static ValueFn coverage(std::vector<double> element_weights,
                          std::vector<std::vector<std::size_t>> covers) {
    const std::size_t n = covers.size();
    return ValueFn(n, Coverage{std::move(element_weights), std::move(covers)});
  }
  static ValueFn table(std::vector<double> values) {
    if (values.empty()) throw InputError("symmetric table needs at least v(0)", "/valuefn/values");
    const std::uint64_t n = values.size() - 1;
    return ValueFn(n, SymmetricTable{std::move(values)});
  }
  static ValueFn formula(std::uint64_t n, SymmetricFormula f) { return ValueFn(n, f); }

  ValueFn(std::uint64_t n, Kind kind) : n_(n), kind_(std::move(kind)) {
    check_structure();
    build_cache();
    check_singletons();
  }

  std::uint64_t n() const { return n_; }
  const Kind& kind() const { return kind_; }

  bool is_symmetric() const {
    return std::holds_alternative<SymmetricTable>(kind_) ||
           std::holds_alternative<SymmetricFormula>(kind_);
  }

  std::string_view kind_name() const {
    switch (kind_.index()) {
      case 0: return "additive";
      case 1: return "xos";
      case 2: return "coverage";
      case 3: return "sym_table";
      default: return "sym_formula";
    }
  }

  // Uncounted evaluation; callers that need accounting go through Oracle.
  double value(const AgentSet& s) const {
    if (s.bound() > n_) throw InputError("agent index out of range in " + s.to_string());
    if (s.bound() <= 64) return value_mask(s.mask());
    return std::visit([&](const auto& k) { return eval_set(k, s); }, kind_);
  }

  // Fast path for teams drawn from the first 64 agents.
  double value_mask(std::uint64_t mask) const {
    if (n_ < 64 && (mask >> n_) != 0) throw InputError("agent index out of range");
    return std::visit([&](const auto& k) { return eval_mask(k, mask); }, kind_);
  }

  // f(k) for symmetric kinds.
  double value_of_size(std::uint64_t k) const {
    if (k > n_) throw InputError("team size " + std::to_string(k) + " exceeds n");
    if (const auto* t = std::get_if<SymmetricTable>(&kind_)) return t->values[k];
    if (const auto* f = std::get_if<SymmetricFormula>(&kind_)) return (*f)(n_, k);
    throw InputError("value_of_size requires a symmetric value function");
  }

  double singleton(Agent i) const {
    if (i >= n_) throw InputError("agent index out of range");
    if (is_symmetric()) return value_of_size(1);
    return value(AgentSet{i});
  }

 private:
  void check_structure() const {
    auto finite_nonneg = [](double x) { return std::isfinite(x) && x >= 0.0; };
    std::visit(
        [&](const auto& k) {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Additive>) {
            for (double w : k.weights)
              if (!finite_nonneg(w)) throw InputError("additive weights must be finite and >= 0", "/valuefn/weights");
          } else if constexpr (std::is_same_v<T, XosClauses>) {
            if (k.clauses.empty()) throw InputError("xos needs at least one clause", "/valuefn/clauses");
            for (const auto& c : k.clauses) {
              if (c.size() != n_) throw InputError("xos clause length must equal n", "/valuefn/clauses");
              for (double w : c)
                if (!finite_nonneg(w)) throw InputError("xos clause entries must be finite and >= 0", "/valuefn/clauses");
            }
          } else if constexpr (std::is_same_v<T, Coverage>) {
            for (double w : k.element_weights)
              if (!finite_nonneg(w)) throw InputError("element weights must be finite and >= 0", "/valuefn/element_weights");
            for (const auto& c : k.covers)
              for (std::size_t e : c)
                if (e >= k.element_weights.size()) throw InputError("covered element out of range", "/valuefn/covers");
          } else if constexpr (std::is_same_v<T, SymmetricTable>) {
            if (n_ > kMaxTableAgents) throw CapabilityError("symmetric tables are capped at 2^20 agents");
            if (k.values.size() != n_ + 1) throw InputError("table must have n+1 entries", "/valuefn/values");
            if (k.values[0] != 0.0) throw InputError("table must satisfy v(0) = 0", "/valuefn/values/0");
            for (double v : k.values)
              if (!finite_nonneg(v)) throw InputError("table entries must be finite and >= 0", "/valuefn/values");
          } else {
            if (n_ > kMaxFormulaAgents) throw CapabilityError("closed-form families are capped at 1e9 agents");
            if (k.family == SymFamily::kSubadditiveGap && n_ < 5)
              throw InputError("subadditive_gap requires n >= 5", "/n");
            if (k.family == SymFamily::kSupermodularGap && n_ < 2)
              throw InputError("supermodular_gap requires n >= 2", "/n");
            if (k.family == SymFamily::kSxosTight) {
              if (!(k.epsilon > 0.0 && k.epsilon < 1.0))
                throw InputError("sxos_tight requires 0 < epsilon < 1", "/valuefn/params/epsilon");
              if (k.bump && (*k.bump < 1 || *k.bump > n_))
                throw InputError("sxos_tight bump must lie in [1, n]", "/valuefn/params/bump");
            }
          }
        },
        kind_);
    if (n_ == 0) throw InputError("instance needs at least one agent", "/n");
  }

  void build_cache() {
    if (const auto* c = std::get_if<Coverage>(&kind_)) {
      if (c->covers.size() != n_) throw InputError("coverage needs one cover list per agent", "/valuefn/covers");
      words_per_agent_ = (c->element_weights.size() + 63) / 64;
      cover_bits_.assign(n_ * words_per_agent_, 0);
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t e : c->covers[i])
          cover_bits_[i * words_per_agent_ + e / 64] |= std::uint64_t{1} << (e % 64);
    }
    if (const auto* a = std::get_if<Additive>(&kind_)) {
      if (a->weights.size() != n_) throw InputError("additive needs one weight per agent", "/valuefn/weights");
    }
  }

  void check_singletons() const {
    if (is_symmetric()) {
      if (!(value_of_size(1) > 0.0)) throw InputError("single-agent value must be positive");
      return;
    }
    for (Agent i = 0; i < n_; ++i) {
      if (!(value(AgentSet{i}) > 0.0))
        throw InputError("single-agent value of agent " + std::to_string(i) + " must be positive");
    }
  }

  double eval_mask(const Additive& k, std::uint64_t mask) const {
    double s = 0.0;
    for (; mask != 0; mask &= mask - 1) s += k.weights[static_cast<std::size_t>(std::countr_zero(mask))];
    return s;
  }
  double eval_mask(const XosClauses& k, std::uint64_t mask) const {
    double best = 0.0;
    for (const auto& c : k.clauses) {
      double s = 0.0;
      for (std::uint64_t m = mask; m != 0; m &= m - 1) s += c[static_cast<std::size_t>(std::countr_zero(m))];
      best = std::max(best, s);
    }
    return best;
  }
  double eval_mask(const Coverage& k, std::uint64_t mask) const {
    AgentSet s = AgentSet::from_mask(mask);
    return eval_set(k, s);
  }
  double eval_mask(const SymmetricTable& k, std::uint64_t mask) const {
    return k.values[static_cast<std::size_t>(std::popcount(mask))];
  }
  double eval_mask(const SymmetricFormula& k, std::uint64_t mask) const {
    return k(n_, static_cast<std::uint64_t>(std::popcount(mask)));
  }

  double eval_set(const Additive& k, const AgentSet& s) const {
    double total = 0.0;
    s.for_each([&](Agent i) { total += k.weights[i]; });
    return total;
  }
  double eval_set(const XosClauses& k, const AgentSet& s) const {
    double best = 0.0;
    for (const auto& c : k.clauses) {
      double total = 0.0;
      s.for_each([&](Agent i) { total += c[i]; });
      best = std::max(best, total);
    }
    return best;
  }
  double eval_set(const Coverage& k, const AgentSet& s) const {
    std::vector<std::uint64_t> covered(words_per_agent_, 0);
    s.for_each([&](Agent i) {
      for (std::size_t w = 0; w < words_per_agent_; ++w) covered[w] |= cover_bits_[i * words_per_agent_ + w];
    });
    double total = 0.0;
    for (std::size_t w = 0; w < words_per_agent_; ++w)
      for (std::uint64_t bits = covered[w]; bits != 0; bits &= bits - 1)
        total += k.element_weights[w * 64 + static_cast<std::size_t>(std::countr_zero(bits))];
    return total;
  }
  double eval_set(const SymmetricTable& k, const AgentSet& s) const { return k.values[s.size()]; }
  double eval_set(const SymmetricFormula& k, const AgentSet& s) const { return k(n_, s.size()); }

  std::uint64_t n_ = 0;
  Kind kind_;
  std::size_t words_per_agent_ = 0;
  std::vector<std::uint64_t> cover_bits_;
};

struct QueryStats {
  std::uint64_t value_queries = 0;
  std::uint64_t demand_queries = 0;

  QueryStats& operator+=(const QueryStats& o) {
    value_queries += o.value_queries;
    demand_queries += o.demand_queries;
    return *this;
  }
};

inline constexpr std::size_t kDemandEnumerationCap = 20;

// Counted access to a ValueFn. Not thread-safe; use one handle per thread.
class Oracle {
 public:
  explicit Oracle(const ValueFn& fn) : fn_(&fn) {}

  const ValueFn& fn() const { return *fn_; }
  std::uint64_t n() const { return fn_->n(); }
  const QueryStats& stats() const { return stats_; }
  void reset_stats() { stats_ = {}; }

  double eval(const AgentSet& s) {
    ++stats_.value_queries;
    return fn_->value(s);
  }

  double eval_mask(std::uint64_t mask) {
    ++stats_.value_queries;
    return fn_->value_mask(mask);
  }

  double eval_size(std::uint64_t k) {
    ++stats_.value_queries;
    return fn_->value_of_size(k);
  }

  // f(i : S) = f(S + i) - f(S - i); membership of i in S is irrelevant.
  double marginal(const AgentSet& s, Agent i) {
    if (i >= n()) throw InputError("agent index out of range");
    return eval(s.with(i)) - eval(s.without(i));
  }

  // argmax_S f(S) - c(S) over subsets of `domain` (all agents when absent),
  // ties broken towards the lexicographically smallest set.
  AgentSet exact_demand(std::span<const double> costs, const std::optional<AgentSet>& domain = std::nullopt,
                        std::size_t cap = kDemandEnumerationCap) {
    check_costs(costs);
    const AgentSet dom = domain ? *domain : AgentSet::prefix(n());
    const std::size_t d = dom.size();
    if (d > cap || d > 63)
      throw CapabilityError("exact demand enumerates 2^" + std::to_string(d) +
                            " sets, above the cap of 2^" + std::to_string(cap) + "; use greedy_demand");
    ++stats_.demand_queries;
    const std::vector<Agent> members = dom.members();
    const bool fits = dom.bound() <= 64;
    const std::uint64_t full = dom.mask();

    double best_w = 0.0;  // the empty set
    AgentSet best;
    std::uint64_t best_mask = 0;
    const std::uint64_t count = std::uint64_t{1} << d;
    for (std::uint64_t idx = 1; idx < count; ++idx) {
      double value;
      double cost = 0.0;
      AgentSet s;
      std::uint64_t mask = 0;
      if (fits) {
        mask = pdep(idx, full);
        value = fn_->value_mask(mask);
        for (std::uint64_t m = mask; m != 0; m &= m - 1) cost += costs[static_cast<std::size_t>(std::countr_zero(m))];
      } else {
        for (std::size_t b = 0; b < d; ++b)
          if ((idx >> b) & 1U) {
            s.insert(members[b]);
            cost += costs[members[b]];
          }
        value = fn_->value(s);
      }
      const double w = value - cost;
      const double tol = scaled_tol(w, best_w);
      bool take = w > best_w + tol;
      if (!take && w >= best_w - tol) {
        take = fits ? mask_lex_less(mask, best_mask) : lex_less(s, best);
      }
      if (take) {
        best_w = w;
        if (fits) best_mask = mask; else best = std::move(s);
      }
    }
    return fits ? AgentSet::from_mask(best_mask) : best;
  }

  // Repeatedly adds the agent with the largest f(i : S) - c_i while that gain
  // is strictly positive; ties go to the lowest index. Uses value queries only.
  AgentSet greedy_demand(std::span<const double> costs, const std::optional<AgentSet>& domain = std::nullopt) {
    check_costs(costs);
    ++stats_.demand_queries;
    const std::vector<Agent> candidates = domain ? domain->members() : AgentSet::prefix(n()).members();
    AgentSet chosen;
    double current = 0.0;
    for (;;) {
      double best_gain = 0.0;
      std::optional<Agent> best_agent;
      for (Agent i : candidates) {
        if (chosen.contains(i)) continue;
        const double gain = eval(chosen.with(i)) - current - costs[i];
        if (gain > best_gain) {
          best_gain = gain;
          best_agent = i;
        }
      }
      if (!best_agent) break;
      chosen.insert(*best_agent);
      current = eval(chosen);
    }
    return chosen;
  }

 private:
  void check_costs(std::span<const double> costs) const {
    if (costs.size() != n()) throw InputError("cost vector length must equal n", "/costs");
  }

  // Scatter the low bits of `src` onto the set bits of `mask`.
  static std::uint64_t pdep(std::uint64_t src, std::uint64_t mask) {
    std::uint64_t out = 0;
    for (std::uint64_t m = mask; m != 0 && src != 0; m &= m - 1, src >>= 1)
      if (src & 1U) out |= m & (~m + 1);
    return out;
  }

  const ValueFn* fn_;
  QueryStats stats_;
};

}  // namespace teamshare
