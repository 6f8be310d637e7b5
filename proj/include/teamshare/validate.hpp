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
// Function-class checkers. General value functions are checked by full
// enumeration (n <= 12); symmetric ones along the size axis k = 0..n.
// A failing report always carries a witness that witness_confirms() can
// re-evaluate.
//

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "teamshare/agent_set.hpp"
#include "teamshare/errors.hpp"
#include "teamshare/value_fn.hpp"

namespace teamshare {

enum class ClassTag { kAdditive, kSubmodular, kXos, kSubadditive, kSupermodular, kSxos, kMonotone };

inline std::string_view class_name(ClassTag t) {
  switch (t) {
    case ClassTag::kAdditive: return "additive";
    case ClassTag::kSubmodular: return "submodular";
    case ClassTag::kXos: return "XOS";
    case ClassTag::kSubadditive: return "subadditive";
    case ClassTag::kSupermodular: return "supermodular";
    case ClassTag::kSxos: return "sXOS";
    case ClassTag::kMonotone: return "monotone";
  }
  return "?";
}

inline std::optional<ClassTag> parse_class(std::string_view s) {
  for (ClassTag t : {ClassTag::kAdditive, ClassTag::kSubmodular, ClassTag::kXos, ClassTag::kSubadditive,
                     ClassTag::kSupermodular, ClassTag::kSxos, ClassTag::kMonotone}) {
    if (class_name(t) == s) return t;
  }
  return std::nullopt;
}

// Which inequality failed and where. Sets are filled whenever they can be
// materialized; `k` is the team size for size-axis checks.
struct Witness {
  AgentSet s;
  AgentSet t;
  std::optional<Agent> i;
  std::optional<Agent> j;
  std::optional<std::uint64_t> k;
  std::string relation;
};

struct ClassReport {
  ClassTag tag = ClassTag::kXos;
  bool pass = true;
  std::optional<Witness> witness;
  std::string detail;
};

inline constexpr std::size_t kClassEnumerationCap = 12;
inline constexpr std::uint64_t kSizeAxisCap = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kSubadditiveSizeCap = 4096;
inline constexpr std::uint64_t kWitnessMaterializeCap = 4096;

namespace detail {

inline ClassReport fail(ClassTag tag, Witness w, std::string detail) {
  return ClassReport{tag, false, std::move(w), std::move(detail)};
}

inline ClassReport pass(ClassTag tag, std::string detail = {}) { return ClassReport{tag, true, std::nullopt, std::move(detail)}; }

inline std::vector<double> size_values(const ValueFn& vf) {
  if (vf.n() > kSizeAxisCap) throw CapabilityError("size-axis checks are capped at 2^24 agents");
  std::vector<double> v(vf.n() + 1);
  for (std::uint64_t k = 0; k <= vf.n(); ++k) v[k] = vf.value_of_size(k);
  return v;
}

inline AgentSet range_set(std::uint64_t lo, std::uint64_t hi) {
  AgentSet s;
  for (std::uint64_t a = lo; a < hi; ++a) s.insert(a);
  return s;
}

// S = [k-2], i = k-2, j = k-1 realizes f(i:S) = m(k-1), f(i:S+j) = m(k).
inline Witness marginal_pair_witness(std::uint64_t k, std::string relation) {
  Witness w;
  w.k = k;
  w.relation = std::move(relation);
  if (k <= kWitnessMaterializeCap) {
    w.s = AgentSet::prefix(k - 2);
    w.i = k - 2;
    w.j = k - 1;
  }
  return w;
}

inline ClassReport sxos_check(std::span<const double> v, ClassTag tag) {
  const std::size_t n = v.size() == 0 ? 0 : v.size() - 1;
  if (v.empty() || v[0] != 0.0) {
    Witness w;
    w.k = 0;
    w.relation = "v(0) = 0";
    return fail(tag, w, "v(0) must be 0");
  }
  if (n >= 1 && !(v[1] > 0.0)) {
    Witness w;
    w.k = 1;
    w.relation = "v(1) > 0";
    return fail(tag, w, "single-agent value must be positive");
  }
  for (std::size_t k = 1; k <= n; ++k) {
    if (!approx_leq(v[k - 1], v[k])) {
      Witness w;
      w.k = k;
      w.relation = "v(k-1) <= v(k)";
      return fail(tag, w, "v decreases at k = " + std::to_string(k));
    }
    if (k >= 2) {
      const double lhs = static_cast<double>(k - 1) * v[k];
      const double rhs = static_cast<double>(k) * v[k - 1];
      if (!approx_leq(lhs, rhs)) {
        Witness w;
        w.k = k;
        w.relation = "v(k)/k <= v(k-1)/(k-1)";
        return fail(tag, w, "average value increases at k = " + std::to_string(k));
      }
    }
  }
  return pass(tag);
}

inline ClassReport symmetric_report(const ValueFn& vf, ClassTag tag) {
  const std::uint64_t n = vf.n();
  if (tag == ClassTag::kSubadditive) {
    if (n > kSubadditiveSizeCap) throw CapabilityError("symmetric subadditivity check is capped at 4096 agents");
    const auto v = size_values(vf);
    for (std::uint64_t a = 1; a <= n; ++a)
      for (std::uint64_t b = a; b <= n; ++b) {
        const std::uint64_t u = std::min(a + b, n);
        if (!approx_leq(v[u], v[a] + v[b])) {
          Witness w;
          w.k = u;
          w.relation = "f(S u T) <= f(S) + f(T)";
          w.s = AgentSet::prefix(a);
          w.t = a + b <= n ? range_set(a, a + b) : range_set(n - b, n);
          return fail(tag, w, "subadditivity fails for sizes " + std::to_string(a) + ", " + std::to_string(b));
        }
      }
    return pass(tag);
  }
  const auto v = size_values(vf);
  switch (tag) {
    case ClassTag::kAdditive:
      for (std::uint64_t k = 2; k <= n; ++k) {
        const double m = v[k] - v[k - 1];
        if (std::abs(m - v[1]) > scaled_tol(m, v[1])) {
          Witness w;
          w.k = k;
          w.relation = "f(S + i) = f(S) + f(i)";
          if (k <= kWitnessMaterializeCap) {
            w.s = AgentSet::prefix(k - 1);
            w.i = k - 1;
          }
          return fail(tag, w, "marginal at k = " + std::to_string(k) + " differs from f(1)");
        }
      }
      return pass(tag);
    case ClassTag::kSubmodular:
      for (std::uint64_t k = 2; k <= n; ++k)
        if (!approx_leq(v[k] - v[k - 1], v[k - 1] - v[k - 2]))
          return fail(tag, marginal_pair_witness(k, "f(i:S) >= f(i:S+j)"),
                      "marginal increases at k = " + std::to_string(k));
      return pass(tag);
    case ClassTag::kSupermodular:
      for (std::uint64_t k = 2; k <= n; ++k)
        if (!approx_leq(v[k - 1] - v[k - 2], v[k] - v[k - 1]))
          return fail(tag, marginal_pair_witness(k, "f(i:S) <= f(i:S+j)"),
                      "marginal decreases at k = " + std::to_string(k));
      return pass(tag);
    case ClassTag::kXos:
    case ClassTag::kSxos:
      return sxos_check(v, tag);
    case ClassTag::kMonotone:
      for (std::uint64_t k = 1; k <= n; ++k)
        if (!approx_leq(v[k - 1], v[k])) {
          Witness w;
          w.k = k;
          w.relation = "f(S) <= f(T) for S subset of T";
          if (k <= kWitnessMaterializeCap) {
            w.s = AgentSet::prefix(k - 1);
            w.t = AgentSet::prefix(k);
          }
          return fail(tag, w, "value decreases at k = " + std::to_string(k));
        }
      return pass(tag);
    default:
      break;
  }
  return pass(tag);
}

inline ClassReport enumerated_report(const ValueFn& vf, ClassTag tag) {
  const std::size_t n = static_cast<std::size_t>(vf.n());
  if (n > kClassEnumerationCap)
    throw CapabilityError("exhaustive class checks are capped at n = 12 for non-symmetric value functions");
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<double> f(full + 1);
  for (std::uint64_t s = 0; s <= full; ++s) f[s] = vf.value_mask(s);
  auto bit = [](std::size_t i) { return std::uint64_t{1} << i; };

  switch (tag) {
    case ClassTag::kMonotone:
    case ClassTag::kAdditive:
      for (std::uint64_t s = 0; s <= full; ++s)
        for (std::size_t i = 0; i < n; ++i) {
          if (s & bit(i)) continue;
          const double with = f[s | bit(i)];
          const bool bad = tag == ClassTag::kMonotone ? !approx_leq(f[s], with)
                                                      : std::abs(with - f[s] - f[bit(i)]) > scaled_tol(with, f[s]);
          if (bad) {
            Witness w;
            w.s = AgentSet::from_mask(s);
            w.i = i;
            if (tag == ClassTag::kMonotone) w.t = AgentSet::from_mask(s | bit(i));
            w.relation = tag == ClassTag::kMonotone ? "f(S) <= f(T) for S subset of T" : "f(S + i) = f(S) + f(i)";
            return fail(tag, w, std::string(class_name(tag)) + " condition fails");
          }
        }
      return pass(tag);
    case ClassTag::kSubmodular:
    case ClassTag::kSupermodular:
      for (std::uint64_t s = 0; s <= full; ++s)
        for (std::size_t i = 0; i < n; ++i) {
          if (s & bit(i)) continue;
          const double mi = f[s | bit(i)] - f[s];
          for (std::size_t j = 0; j < n; ++j) {
            if (j == i || (s & bit(j))) continue;
            const std::uint64_t sj = s | bit(j);
            const double mij = f[sj | bit(i)] - f[sj];
            const bool bad = tag == ClassTag::kSubmodular ? !approx_leq(mij, mi) : !approx_leq(mi, mij);
            if (bad) {
              Witness w;
              w.s = AgentSet::from_mask(s);
              w.i = i;
              w.j = j;
              w.relation = tag == ClassTag::kSubmodular ? "f(i:S) >= f(i:S+j)" : "f(i:S) <= f(i:S+j)";
              return fail(tag, w, std::string(class_name(tag)) + " condition fails");
            }
          }
        }
      return pass(tag);
    case ClassTag::kSubadditive:
      // Disjoint pairs suffice for monotone functions.
      for (std::uint64_t u = 0; u <= full; ++u)
        for (std::uint64_t s = u;; s = (s - 1) & u) {
          const std::uint64_t t = u & ~s;
          if (!approx_leq(f[u], f[s] + f[t])) {
            Witness w;
            w.s = AgentSet::from_mask(s);
            w.t = AgentSet::from_mask(t);
            w.relation = "f(S u T) <= f(S) + f(T)";
            return fail(tag, w, "subadditivity fails");
          }
          if (s == 0) break;
        }
      return pass(tag);
    case ClassTag::kXos:
      // Additive, coverage and clause lists are XOS by construction.
      return pass(tag, "XOS by construction (" + std::string(vf.kind_name()) + ")");
    case ClassTag::kSxos: {
      std::vector<double> v(n + 1, -1.0);
      std::vector<std::uint64_t> rep(n + 1, 0);
      for (std::uint64_t s = 0; s <= full; ++s) {
        const auto k = static_cast<std::size_t>(std::popcount(s));
        if (v[k] < 0.0) {
          v[k] = f[s];
          rep[k] = s;
        } else if (std::abs(v[k] - f[s]) > scaled_tol(v[k], f[s])) {
          Witness w;
          w.s = AgentSet::from_mask(rep[k]);
          w.t = AgentSet::from_mask(s);
          w.k = k;
          w.relation = "f(S) = f(T) when |S| = |T|";
          return fail(tag, w, "value function is not symmetric");
        }
      }
      return sxos_check(v, tag);
    }
  }
  return pass(tag);
}

}  // namespace detail

inline ClassReport validate_class(const ValueFn& vf, ClassTag tag) {
  return vf.is_symmetric() ? detail::symmetric_report(vf, tag) : detail::enumerated_report(vf, tag);
}

// Canonical function representation check: v(0) = 0, v nondecreasing,
// v(k)/k nonincreasing, and v(1) > 0.
inline ClassReport sxos_validate(std::span<const double> v) { return detail::sxos_check(v, ClassTag::kSxos); }

// The uniform clause a_T(S) = |T n S| / |T| * v(|T|).
inline double sxos_clause(std::span<const double> v, std::uint64_t t_size, const AgentSet& s, const AgentSet& t) {
  if (t_size == 0) throw InputError("sxos_clause needs |T| >= 1");
  if (t.size() != t_size) throw InputError("|T| does not match the stated clause size");
  if (t_size >= v.size()) throw InputError("clause size exceeds the table");
  const double overlap = static_cast<double>((s & t).size());
  return overlap / static_cast<double>(t_size) * v[t_size];
}

// Re-evaluates a witness and returns true when the violation it names is
// real.
inline bool witness_confirms(const ValueFn& vf, ClassTag tag, const Witness& w) {
  auto f = [&](const AgentSet& s) { return vf.value(s); };
  auto fk = [&](std::uint64_t k) { return vf.is_symmetric() ? vf.value_of_size(k) : 0.0; };
  const bool has_sets = w.i.has_value() || !w.s.empty() || !w.t.empty();
  switch (tag) {
    case ClassTag::kAdditive:
      if (w.i) {
        const double with = f(w.s.with(*w.i));
        return std::abs(with - f(w.s) - f(AgentSet{*w.i})) > scaled_tol(with, f(w.s));
      }
      return w.k && std::abs(fk(*w.k) - fk(*w.k - 1) - fk(1)) > scaled_tol(fk(*w.k), fk(1));
    case ClassTag::kSubmodular:
    case ClassTag::kSupermodular: {
      double mi, mij;
      if (w.i && w.j) {
        mi = f(w.s.with(*w.i)) - f(w.s);
        const AgentSet sj = w.s.with(*w.j);
        mij = f(sj.with(*w.i)) - f(sj);
      } else if (w.k) {
        mi = fk(*w.k - 1) - fk(*w.k - 2);
        mij = fk(*w.k) - fk(*w.k - 1);
      } else {
        return false;
      }
      return tag == ClassTag::kSubmodular ? !approx_leq(mij, mi) : !approx_leq(mi, mij);
    }
    case ClassTag::kSubadditive:
      if (has_sets) return !approx_leq(f(w.s | w.t), f(w.s) + f(w.t));
      return false;
    case ClassTag::kMonotone:
      if (has_sets) return w.s.is_subset_of(w.t) && !approx_leq(f(w.s), f(w.t));
      return w.k && !approx_leq(fk(*w.k - 1), fk(*w.k));
    case ClassTag::kXos:
    case ClassTag::kSxos: {
      if (!vf.is_symmetric()) {
        if (w.s.size() == w.t.size() && !w.s.empty()) return std::abs(f(w.s) - f(w.t)) > scaled_tol(f(w.s), f(w.t));
      }
      if (!w.k) return false;
      const std::uint64_t k = *w.k;
      auto val = [&](std::uint64_t j) {
        if (vf.is_symmetric()) return fk(j);
        return f(AgentSet::prefix(j));
      };
      if (k == 0) return val(0) != 0.0;
      if (k == 1 && !(val(1) > 0.0)) return true;
      if (!approx_leq(val(k - 1), val(k))) return true;
      return k >= 2 && !approx_leq(static_cast<double>(k - 1) * val(k), static_cast<double>(k) * val(k - 1));
    }
  }
  return false;
}

}  // namespace teamshare
