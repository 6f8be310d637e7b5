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

// Independent reference computations for the tests. Everything here works on
// plain index vectors and recomputes from definitions, without AgentSet
// masks, Oracle, or the library's contract helpers.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace naive {

using Team = std::vector<std::size_t>;
using SetFn = std::function<double(const Team&)>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline std::vector<Team> all_teams(std::size_t n) {
  std::vector<Team> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    Team t;
    for (std::size_t i = 0; i < n; ++i)
      if ((m >> i) & 1U) t.push_back(i);
    out.push_back(t);
  }
  return out;
}

inline Team without(Team t, std::size_t i) {
  t.erase(std::remove(t.begin(), t.end(), i), t.end());
  return t;
}

inline Team with(Team t, std::size_t i) {
  if (std::find(t.begin(), t.end(), i) == t.end()) t.push_back(i);
  std::sort(t.begin(), t.end());
  return t;
}

inline double marginal(const SetFn& f, const Team& s, std::size_t i) { return f(with(s, i)) - f(without(s, i)); }

inline double rho(const SetFn& f, const std::vector<double>& c, const Team& s) {
  double r = 0.0;
  for (std::size_t i : s) {
    const double m = marginal(f, s, i);
    r += m > 0.0 ? c[i] / m : kInf;
  }
  return r;
}

inline double cost(const std::vector<double>& c, const Team& s) {
  double t = 0.0;
  for (std::size_t i : s) t += c[i];
  return t;
}

inline double welfare(const SetFn& f, const std::vector<double>& c, const Team& s) { return f(s) - cost(c, s); }

inline double utility(const SetFn& f, const std::vector<double>& c, const Team& s) {
  const double r = rho(f, c, s);
  return std::isfinite(r) ? (1.0 - r) * f(s) : -kInf;
}

enum class Obj { kW, kG, kF };

// max over b-feasible teams (and transfer <= B) of the objective; the empty
// team counts with value 0.
inline double opt(const SetFn& f, const std::vector<double>& c, std::size_t n, Obj o, double b = 1.0,
                  double B = kInf) {
  double best = 0.0;
  for (const Team& t : all_teams(n)) {
    if (t.empty()) continue;
    const double r = rho(f, c, t);
    if (r > b + 1e-9) continue;
    if (std::isfinite(B) && (!std::isfinite(r) || r * f(t) > B + 1e-9)) continue;
    const double v = o == Obj::kW ? welfare(f, c, t) : o == Obj::kG ? utility(f, c, t) : f(t);
    best = std::max(best, v);
  }
  return best;
}

inline SetFn additive(std::vector<double> w) {
  return [w](const Team& t) {
    double s = 0.0;
    for (std::size_t i : t) s += w[i];
    return s;
  };
}

inline SetFn xos(std::vector<std::vector<double>> clauses) {
  return [clauses](const Team& t) {
    double best = 0.0;
    for (const auto& cl : clauses) {
      double s = 0.0;
      for (std::size_t i : t) s += cl[i];
      best = std::max(best, s);
    }
    return best;
  };
}

inline SetFn coverage(std::vector<double> w, std::vector<std::vector<std::size_t>> covers) {
  return [w, covers](const Team& t) {
    std::vector<bool> hit(w.size(), false);
    for (std::size_t i : t)
      for (std::size_t e : covers[i]) hit[e] = true;
    double s = 0.0;
    for (std::size_t e = 0; e < w.size(); ++e)
      if (hit[e]) s += w[e];
    return s;
  };
}

inline SetFn symmetric(std::function<double(std::size_t)> v) {
  return [v](const Team& t) { return t.empty() ? 0.0 : v(t.size()); };
}

}  // namespace naive
