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
// Instance and config JSON. Schema:
//
//   {"n": int, "costs": [real...] | real,
//    "valuefn": {"kind": "additive",    "weights": [...]}
//             | {"kind": "xos",         "clauses": [[...], ...]}
//             | {"kind": "coverage",    "element_weights": [...], "covers": [[...], ...]}
//             | {"kind": "sym_table",   "values": [...]}
//             | {"kind": "sym_formula", "family": str, "params": {"epsilon": r, "bump": k}}}
//
// Parse errors carry a JSON pointer to the offending field.
//

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "teamshare/errors.hpp"
#include "teamshare/instance.hpp"
#include "teamshare/value_fn.hpp"
#include "teamshare/xos_approx.hpp"

namespace teamshare {

using Json = nlohmann::json;

// Non-finite reals become the strings "inf", "-inf", "nan".
inline Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& at) {
  if (!j.is_object()) throw InputError("expected an object", at);
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'", at + "/" + key);
  return *it;
}

inline double real(const Json& j, const std::string& at) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw InputError("expected a number", at);
}

inline std::uint64_t count(const Json& j, const std::string& at) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw InputError("expected a nonnegative integer", at);
  return j.get<std::uint64_t>();
}

inline std::vector<double> reals(const Json& j, const std::string& at) {
  if (!j.is_array()) throw InputError("expected an array of numbers", at);
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(real(j[i], at + "/" + std::to_string(i)));
  return out;
}

inline ValueFn parse_valuefn(const Json& v, std::uint64_t n) {
  const std::string at = "/valuefn";
  const Json& kind = field(v, "kind", at);
  if (!kind.is_string()) throw InputError("kind must be a string", at + "/kind");
  const auto k = kind.get<std::string>();
  if (k == "additive") {
    auto w = reals(field(v, "weights", at), at + "/weights");
    if (w.size() != n) throw InputError("weights must have n entries", at + "/weights");
    return ValueFn::additive(std::move(w));
  }
  if (k == "xos") {
    const Json& cl = field(v, "clauses", at);
    if (!cl.is_array()) throw InputError("clauses must be an array", at + "/clauses");
    std::vector<std::vector<double>> clauses;
    for (std::size_t i = 0; i < cl.size(); ++i) {
      const std::string p = at + "/clauses/" + std::to_string(i);
      clauses.push_back(reals(cl[i], p));
      if (clauses.back().size() != n) throw InputError("clause must have n entries", p);
    }
    return ValueFn::xos(n, std::move(clauses));
  }
  if (k == "coverage") {
    auto w = reals(field(v, "element_weights", at), at + "/element_weights");
    const Json& cv = field(v, "covers", at);
    if (!cv.is_array() || cv.size() != n) throw InputError("covers must hold one list per agent", at + "/covers");
    std::vector<std::vector<std::size_t>> covers(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string p = at + "/covers/" + std::to_string(i);
      if (!cv[i].is_array()) throw InputError("expected an array of element indices", p);
      for (std::size_t e = 0; e < cv[i].size(); ++e) {
        const auto idx = count(cv[i][e], p + "/" + std::to_string(e));
        if (idx >= w.size()) throw InputError("element index out of range", p + "/" + std::to_string(e));
        covers[i].push_back(static_cast<std::size_t>(idx));
      }
    }
    return ValueFn::coverage(std::move(w), std::move(covers));
  }
  if (k == "sym_table") {
    auto vals = reals(field(v, "values", at), at + "/values");
    if (vals.size() != n + 1) throw InputError("values must have n+1 entries", at + "/values");
    return ValueFn::table(std::move(vals));
  }
  if (k == "sym_formula") {
    const Json& fam = field(v, "family", at);
    if (!fam.is_string()) throw InputError("family must be a string", at + "/family");
    const auto f = parse_family(fam.get<std::string>());
    if (!f) throw InputError("unknown family '" + fam.get<std::string>() + "'", at + "/family");
    SymmetricFormula sf;
    sf.family = *f;
    if (auto it = v.find("params"); it != v.end()) {
      const std::string p = at + "/params";
      if (!it->is_object()) throw InputError("params must be an object", p);
      if (auto e = it->find("epsilon"); e != it->end()) sf.epsilon = real(*e, p + "/epsilon");
      if (auto b = it->find("bump"); b != it->end() && !b->is_null()) sf.bump = count(*b, p + "/bump");
    }
    return ValueFn::formula(n, sf);
  }
  throw InputError("unknown kind '" + k + "'", at + "/kind");
}

}  // namespace detail

inline Json valuefn_to_json(const ValueFn& fn) {
  Json v;
  v["kind"] = std::string(fn.kind_name());
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Additive>) {
          v["weights"] = k.weights;
        } else if constexpr (std::is_same_v<T, XosClauses>) {
          v["clauses"] = k.clauses;
        } else if constexpr (std::is_same_v<T, Coverage>) {
          v["element_weights"] = k.element_weights;
          v["covers"] = k.covers;
        } else if constexpr (std::is_same_v<T, SymmetricTable>) {
          v["values"] = k.values;
        } else {
          v["family"] = std::string(family_name(k.family));
          Json p = Json::object();
          if (k.family == SymFamily::kSxosTight) {
            p["epsilon"] = k.epsilon;
            if (k.bump) p["bump"] = *k.bump;
          }
          v["params"] = p;
        }
      },
      fn.kind());
  return v;
}

inline Json instance_to_json(const Instance& inst) {
  Json j;
  j["n"] = inst.n();
  if (inst.costs.is_uniform_rep()) j["costs"] = std::get<double>(inst.costs.rep());
  else j["costs"] = std::get<std::vector<double>>(inst.costs.rep());
  j["valuefn"] = valuefn_to_json(inst.fn);
  return j;
}

inline Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("instance must be a JSON object", "");
  const std::uint64_t n = detail::count(detail::field(j, "n", ""), "/n");
  const Json& cj = detail::field(j, "costs", "");
  Costs costs = cj.is_array() ? Costs::explicit_list(detail::reals(cj, "/costs"))
                              : Costs::uniform(detail::real(cj, "/costs"));
  ValueFn fn = detail::parse_valuefn(detail::field(j, "valuefn", ""), n);
  if (fn.n() != n) throw InputError("valuefn size does not match n", "/n");
  return Instance(std::move(fn), std::move(costs));
}

inline Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what(), "");
  }
  return instance_from_json(j);
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

inline void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << instance_to_json(inst).dump() << "\n";
  if (!out) throw InputError("write failed for " + path);
}

// FNV-1a over the canonical JSON text.
inline std::string instance_digest(const Instance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : instance_to_json(inst).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// {"preset": name?, "a", "gamma", "m", "M", "demand": "exact"|"greedy"}
inline ApproxConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("config must be a JSON object", "");
  ApproxConfig cfg;
  if (auto p = j.find("preset"); p != j.end()) {
    if (!p->is_string()) throw InputError("preset must be a string", "/preset");
    auto c = ApproxConfig::preset(p->get<std::string>());
    if (!c) throw InputError("unknown preset '" + p->get<std::string>() + "'", "/preset");
    cfg = *c;
  }
  for (const char* k : {"a", "gamma", "m", "M"}) {
    if (auto it = j.find(k); it != j.end()) {
      const double x = detail::real(*it, std::string("/") + k);
      if (std::string(k) == "a") cfg.a = x;
      else if (std::string(k) == "gamma") cfg.gamma = x;
      else if (std::string(k) == "m") cfg.m = x;
      else cfg.M = x;
    }
  }
  if (auto d = j.find("demand"); d != j.end()) {
    const std::string s = d->is_string() ? d->get<std::string>() : "";
    if (s == "exact") cfg.demand = DemandMode::kExact;
    else if (s == "greedy") cfg.demand = DemandMode::kGreedy;
    else throw InputError("demand must be \"exact\" or \"greedy\"", "/demand");
  }
  cfg.validate();
  return cfg;
}

inline Json config_to_json(const ApproxConfig& cfg) {
  return Json{{"a", cfg.a},
              {"gamma", cfg.gamma},
              {"m", cfg.m},
              {"M", cfg.M},
              {"demand", cfg.demand == DemandMode::kExact ? "exact" : "greedy"}};
}

}  // namespace teamshare
