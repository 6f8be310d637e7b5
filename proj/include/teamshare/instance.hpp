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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "teamshare/errors.hpp"
#include "teamshare/value_fn.hpp"

namespace teamshare {

// Per-agent effort costs: either one uniform value or an explicit vector.
class Costs {
 public:
  Costs() = default;
  static Costs uniform(double c) {
    Costs out;
    out.rep_ = c;
    return out;
  }
  static Costs explicit_list(std::vector<double> c) {
    Costs out;
    out.rep_ = std::move(c);
    return out;
  }

  bool is_uniform_rep() const { return std::holds_alternative<double>(rep_); }

  // The common value when every agent has the same cost.
  std::optional<double> uniform_value() const {
    if (const double* c = std::get_if<double>(&rep_)) return *c;
    const auto& v = std::get<std::vector<double>>(rep_);
    if (v.empty()) return std::nullopt;
    for (double x : v)
      if (x != v.front()) return std::nullopt;
    return v.front();
  }

  double operator[](Agent i) const {
    if (const double* c = std::get_if<double>(&rep_)) return *c;
    return std::get<std::vector<double>>(rep_).at(i);
  }

  std::vector<double> materialize(std::uint64_t n) const {
    if (const double* c = std::get_if<double>(&rep_)) {
      if (n > kMaxTableAgents) throw CapabilityError("refusing to materialize more than 2^20 costs");
      return std::vector<double>(n, *c);
    }
    return std::get<std::vector<double>>(rep_);
  }

  const std::variant<double, std::vector<double>>& rep() const { return rep_; }

  friend bool operator==(const Costs&, const Costs&) = default;

 private:
  std::variant<double, std::vector<double>> rep_ = 0.0;
};

// A multi-agent contract setting: value function plus additive costs.
struct Instance {
  ValueFn fn;
  Costs costs;

  Instance(ValueFn f, Costs c) : fn(std::move(f)), costs(std::move(c)) { validate(); }

  std::uint64_t n() const { return fn.n(); }
  std::vector<double> cost_vector() const { return costs.materialize(n()); }

  // Structural checks; returns non-fatal warnings.
  std::vector<std::string> validate() const {
    if (const auto* v = std::get_if<std::vector<double>>(&costs.rep())) {
      if (v->size() != n()) throw InputError("costs must have one entry per agent", "/costs");
      for (std::size_t i = 0; i < v->size(); ++i)
        if (!std::isfinite((*v)[i]) || (*v)[i] <= 0.0)
          throw InputError("costs must be finite and strictly positive", "/costs/" + std::to_string(i));
    } else {
      const double c = std::get<double>(costs.rep());
      if (!std::isfinite(c) || c <= 0.0) throw InputError("costs must be finite and strictly positive", "/costs");
    }
    std::vector<std::string> warnings;
    if (fn.is_symmetric()) {
      const double f1 = fn.value_of_size(1);
      if (const auto* v = std::get_if<std::vector<double>>(&costs.rep())) {
        if (!v->empty() && *std::max_element(v->begin(), v->end()) > f1)
          warnings.push_back("some agent has cost above the single-agent value");
      } else if (std::get<double>(costs.rep()) > f1) {
        warnings.push_back("single-agent value is below its cost");
      }
    } else {
      for (Agent i = 0; i < n(); ++i)
        if (costs[i] > fn.singleton(i))
          warnings.push_back("agent " + std::to_string(i) + " has cost above its single-agent value");
    }
    return warnings;
  }
};

}  // namespace teamshare
