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
// Command-line front end: gen, solve, gap, verify.
//
// Exit codes: 0 success, 1 algorithm or verification failure, 2 bad input,
// 3 capability limit. Reports are single-line JSON with sorted keys.
//

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "teamshare/contract.hpp"
#include "teamshare/errors.hpp"
#include "teamshare/exact.hpp"
#include "teamshare/instance.hpp"
#include "teamshare/instances.hpp"
#include "teamshare/io.hpp"
#include "teamshare/objectives.hpp"
#include "teamshare/symmetric.hpp"
#include "teamshare/validate.hpp"
#include "teamshare/value_fn.hpp"
#include "teamshare/xos_approx.hpp"

namespace teamshare::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitCapability = 3;

inline constexpr std::uint64_t kListedTeamCap = 4096;
inline constexpr double kVerifyRelTol = 1e-6;

struct Options {
  // gen
  std::string family;
  std::uint64_t n = 4;
  double epsilon = 0.1;
  std::optional<std::uint64_t> bump;
  std::uint64_t seed = 1;
  std::size_t clauses = 0;
  std::size_t elements = 0;
  std::size_t heavy = 0;
  std::string shape = "sxos";
  std::string cost_mode = "uniform";
  double value = 1.0;
  double cost = 1.0;
  std::string out_path;
  // solve / gap / verify
  std::string in_path;
  std::string objective = "welfare";
  std::string method = "alg3";
  std::string preset;
  std::string config_path;
  std::optional<double> a, gamma, m, M;
  std::string demand;
  std::string b = "1";
  std::string B = "inf";
  unsigned threads = 1;
  bool verify = false;
  bool pretty = false;
  std::string team;
};

inline double parse_real(const std::string& s, const char* flag) {
  if (s == "inf" || s == "+inf") return kInf;
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used == s.size()) return x;
  } catch (const std::exception&) {
  }
  throw InputError(std::string("flag ") + flag + " expects a real number or 'inf'");
}

inline std::string dump(const Json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

inline bool close(double x, double y) {
  if (std::isinf(x) || std::isinf(y) || std::isnan(x) || std::isnan(y)) return x == y || (std::isnan(x) && std::isnan(y));
  return std::abs(x - y) <= kVerifyRelTol * std::max(1.0, std::max(std::abs(x), std::abs(y)));
}

// Either a listed team or a prefix size of the cost-sorted order.
struct Solution {
  Outcome outcome;
  std::uint64_t size = 0;
  bool listed = true;
  QueryStats stats;
  std::optional<ApproxConfig> config;
  Json extra = Json::object();
};

inline Json outcome_json(const Solution& s, double b, double B) {
  const Outcome& o = s.outcome;
  Json j;
  if (s.listed) {
    j["team"] = o.team.members();
  }
  j["team_size"] = s.size;
  j["f"] = number(o.value);
  j["c"] = number(o.cost);
  j["w"] = number(o.welfare);
  j["g"] = number(o.utility);
  j["rho"] = number(o.share_total);
  const double t = s.size == 0 ? 0.0 : (std::isfinite(o.share_total) ? o.share_total * o.value : kInf);
  j["transfer"] = number(t);
  Json cons;
  cons["b"] = number(b);
  cons["B"] = number(B);
  cons["b_feasible"] = o.share_total <= b + kTol;
  cons["transfer_ok"] = t <= B + scaled_tol(t, B);
  j["constraints"] = cons;
  return j;
}

inline std::vector<Agent> cost_order(const Instance& inst) {
  const auto c = inst.cost_vector();
  std::vector<Agent> order(c.size());
  std::iota(order.begin(), order.end(), Agent{0});
  std::stable_sort(order.begin(), order.end(), [&](Agent x, Agent y) { return c[x] < c[y]; });
  return order;
}

inline Solution from_sym(const Instance& inst, const SymResult& r) {
  Solution s;
  s.size = r.k;
  s.stats.value_queries = r.value_queries;
  s.outcome.value = r.f;
  s.outcome.welfare = r.w;
  s.outcome.cost = r.f - r.w;
  s.outcome.utility = r.g;
  s.outcome.share_total = r.rho;
  s.listed = r.k <= kListedTeamCap;
  if (s.listed) {
    if (inst.costs.uniform_value()) {
      s.outcome.team = AgentSet::prefix(r.k);
    } else {
      const auto order = cost_order(inst);
      for (std::uint64_t j = 0; j < r.k; ++j) s.outcome.team.insert(order[j]);
    }
  }
  return s;
}

inline ApproxConfig resolve_config(const Options& o) {
  ApproxConfig cfg;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw InputError("cannot read " + o.config_path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw InputError(std::string("malformed config JSON: ") + e.what());
    }
    cfg = config_from_json(j);
  }
  if (!o.preset.empty()) {
    auto p = ApproxConfig::preset(o.preset);
    if (!p) throw InputError("unknown preset '" + o.preset + "'");
    cfg = *p;
  }
  if (o.a) cfg.a = *o.a;
  if (o.gamma) cfg.gamma = *o.gamma;
  if (o.m) cfg.m = *o.m;
  if (o.M) cfg.M = *o.M;
  if (o.demand == "exact") cfg.demand = DemandMode::kExact;
  else if (o.demand == "greedy") cfg.demand = DemandMode::kGreedy;
  else if (!o.demand.empty()) throw InputError("--demand must be exact or greedy");
  cfg.validate();
  return cfg;
}

// Proven worst-case factor for the alg3 configuration, if it matches a preset.
inline std::optional<double> alg3_factor(const ApproxConfig& c) {
  auto same = [](const ApproxConfig& x, const ApproxConfig& y) {
    return std::abs(x.a - y.a) < 1e-12 && std::abs(x.m - y.m) < 1e-12 && std::abs(x.M - y.M) < 1e-12 &&
           x.demand == y.demand && x.gamma <= 0.05 + 1e-12;
  };
  if (same(c, ApproxConfig::xos188())) return 188.0;
  if (same(c, ApproxConfig::submod468())) return 468.0;
  return std::nullopt;
}

inline void require_objective(const std::string& method, Objective got, std::initializer_list<Objective> ok) {
  for (Objective o : ok)
    if (o == got) return;
  throw InputError("method " + method + " does not optimize objective " + std::string(objective_name(got)));
}

inline Solution solve(const Instance& inst, const Options& o, Objective obj, double b, double B) {
  const std::string& method = o.method;
  const auto listed = [&](Oracle& oracle, const Outcome& out) {
    Solution s;
    s.outcome = out;
    s.size = out.team.size();
    s.stats = oracle.stats();
    return s;
  };
  const bool unconstrained_b = b == 1.0 && std::isinf(B);

  if (method == "alg3") {
    require_objective(method, obj, {Objective::kWelfare, Objective::kUtility});
    if (!unconstrained_b) throw InputError("alg3 runs with b = 1 and no transfer bound; use welfare_b or value_B");
    const auto cfg = resolve_config(o);
    Oracle oracle(inst.fn);
    const auto costs = inst.cost_vector();
    auto s = listed(oracle, approx_welfare_xos(oracle, costs, cfg));
    s.config = cfg;
    return s;
  }
  if (method == "welfare_b") {
    require_objective(method, obj, {Objective::kWelfare, Objective::kUtility});
    if (!std::isinf(B)) throw InputError("welfare_b does not take a transfer bound");
    const auto cfg = resolve_config(o);
    Oracle oracle(inst.fn);
    const auto costs = inst.cost_vector();
    auto s = listed(oracle, welfare_approx_bfeasible(oracle, costs, b, cfg));
    s.config = cfg;
    return s;
  }
  if (method == "value_b") {
    require_objective(method, obj, {Objective::kValue});
    if (!std::isinf(B)) throw InputError("value_b does not take a transfer bound; use value_B");
    const auto cfg = resolve_config(o);
    Oracle oracle(inst.fn);
    const auto costs = inst.cost_vector();
    auto s = listed(oracle, value_approx_bfeasible(oracle, costs, b, cfg));
    s.config = cfg;
    return s;
  }
  if (method == "value_B") {
    require_objective(method, obj, {Objective::kValue});
    const auto cfg = resolve_config(o);
    Oracle oracle(inst.fn);
    const auto costs = inst.cost_vector();
    auto s = listed(oracle, value_approx_btransfer(oracle, costs, b, B, cfg));
    s.config = cfg;
    return s;
  }
  if (method == "sxos" || method == "sym_submod") {
    require_objective(method, obj, {Objective::kWelfare});
    if (!unconstrained_b) throw InputError("method " + method + " runs with b = 1 and no transfer bound");
    SymInstance sym = SymInstance::from(inst);
    const SymResult r = method == "sxos" ? sxos_welfare_approx(sym) : sym_submodular_opt(sym);
    return from_sym(inst, r);
  }
  if (method == "bruteforce") {
    const std::optional<double> Bopt = std::isinf(B) ? std::nullopt : std::optional<double>(B);
    OptResult r = inst.n() <= kEnumerationCap ? opt_enumerate(inst, obj, b, Bopt, o.threads)
                  : inst.fn.is_symmetric()     ? opt_symmetric(inst, obj, b, Bopt)
                                               : throw CapabilityError("bruteforce needs n <= 20 or a symmetric value function");
    Solution s;
    s.outcome = r.best;
    s.size = r.best_size;
    s.listed = r.team_listed;
    s.stats = r.stats;
    return s;
  }
  if (method == "singleton") {
    if (!unconstrained_b) throw InputError("singleton runs with b = 1 and no transfer bound");
    Outcome out = best_singleton(inst);
    Solution s;
    s.outcome = out;
    s.size = 1;
    s.stats.value_queries = inst.fn.is_symmetric() ? 1 : inst.n();
    return s;
  }
  throw InputError("unknown method '" + method + "'");
}

// Recomputes the reported numbers and checks the method's guarantee.
inline Json verify_solution(const Instance& inst, const Options& o, Objective obj, double b, double B,
                            const Solution& s, bool& ok) {
  Json v;
  Json checks = Json::array();
  auto check = [&](const std::string& name, bool pass) {
    checks.push_back(Json{{"name", name}, {"pass", pass}});
    ok = ok && pass;
  };

  // 1. Recompute the outcome through the contract calculus.
  Outcome fresh;
  if (s.listed) {
    Oracle oracle(inst.fn);
    if (inst.fn.is_symmetric() && inst.n() > kMaxTableAgents) {
      fresh = s.outcome;  // cannot materialize costs; fall through to size-based recompute
    } else {
      const auto costs = inst.cost_vector();
      fresh = outcome(oracle, costs, s.outcome.team);
    }
  }
  if (!s.listed || (inst.fn.is_symmetric() && inst.n() > kMaxTableAgents)) {
    const std::uint64_t k = s.size;
    if (k > 0) {
      const double fk = inst.fn.value_of_size(k);
      const double mk = fk - inst.fn.value_of_size(k - 1);
      double c = 0.0;
      if (auto u = inst.costs.uniform_value()) {
        c = *u * static_cast<double>(k);
      } else {
        auto cs = inst.cost_vector();
        std::sort(cs.begin(), cs.end());
        for (std::uint64_t j = 0; j < k; ++j) c += cs[j];
      }
      fresh.value = fk;
      fresh.cost = c;
      fresh.welfare = fk - c;
      fresh.share_total = mk > 0.0 ? c / mk : kInf;
      fresh.utility = std::isfinite(fresh.share_total) ? (1.0 - fresh.share_total) * fk : -kInf;
    }
  }
  check("recompute", close(fresh.value, s.outcome.value) && close(fresh.cost, s.outcome.cost) &&
                         close(fresh.welfare, s.outcome.welfare) && close(fresh.utility, s.outcome.utility) &&
                         close(fresh.share_total, s.outcome.share_total));

  // 2. Declared constraints.
  const double t = s.size == 0 ? 0.0 : (std::isfinite(fresh.share_total) ? fresh.share_total * fresh.value : kInf);
  check("b_feasible", s.size == 0 || fresh.share_total <= b + kTol);
  if (!std::isinf(B)) check("transfer", t <= B + scaled_tol(t, B));

  // 3. Guarantee against ground truth, where ground truth is affordable.
  const bool small = inst.n() <= kEnumerationCap;
  if (!small && !inst.fn.is_symmetric()) {
    v["ground_truth"] = "skipped";
    v["checks"] = checks;
    return v;
  }
  const std::optional<double> Bopt = std::isinf(B) ? std::nullopt : std::optional<double>(B);
  auto opt = [&](Objective ob, double bb, std::optional<double> BB) {
    return small ? opt_enumerate(inst, ob, bb, BB, o.threads).best_value : opt_symmetric(inst, ob, bb, BB).best_value;
  };
  const std::string& method = o.method;
  if (method == "alg3") {
    const double w = opt(Objective::kWelfare, 1.0, std::nullopt);
    v["opt_w"] = number(w);
    if (auto f = alg3_factor(*s.config)) {
      v["bound_factor"] = *f;
      check("utility_vs_opt_welfare", s.outcome.utility >= w / *f - kTol);
    }
  } else if (method == "value_b") {
    const double best = opt(Objective::kValue, b, std::nullopt);
    const double factor = 3.0 / s.config->A() * std::exp2(s.config->gamma);
    v["opt_f"] = number(best);
    v["bound_factor"] = factor;
    check("value_vs_opt_value", s.outcome.value >= best / factor - kTol);
  } else if (method == "value_B") {
    v["opt_f"] = number(opt(Objective::kValue, b, Bopt));
  } else if (method == "welfare_b") {
    const double w = opt(Objective::kWelfare, b, std::nullopt);
    v["opt_w"] = number(w);
    if (b <= kWelfareRegimeSplit) {
      const double factor = 1.0 / (1.0 - b) * 3.0 / s.config->A() * std::exp2(s.config->gamma);
      v["bound_factor"] = factor;
      check("utility_vs_opt_welfare", s.outcome.utility >= w / factor - kTol);
    }
  } else if (method == "sym_submod") {
    const double w = opt(Objective::kWelfare, 1.0, std::nullopt);
    v["opt_w"] = number(w);
    check("exact_welfare", close(s.outcome.welfare, w));
  } else if (method == "sxos") {
    const double w = opt(Objective::kWelfare, 1.0, std::nullopt);
    v["opt_w"] = number(w);
    v["ratio"] = number(s.outcome.welfare > 0.0 ? w / s.outcome.welfare : (w > 0.0 ? kInf : 1.0));
  } else if (method == "bruteforce") {
    const double best = opt(obj, b, Bopt);
    check("optimal", close(objective_of(s.outcome, obj), best));
  } else if (method == "singleton") {
    const double w = opt(Objective::kWelfare, kInf, std::nullopt);
    v["unconstrained_opt_w"] = number(w);
    v["ratio"] = number(s.outcome.utility > 0.0 ? w / s.outcome.utility : kInf);
  }
  v["checks"] = checks;
  return v;
}

inline int cmd_gen(const Options& o, std::ostream& out) {
  FamilySpec spec;
  spec.family = o.family;
  spec.n = o.n;
  spec.epsilon = o.epsilon;
  spec.bump = o.bump;
  spec.seed = o.seed;
  spec.clauses = o.clauses;
  spec.elements = o.elements;
  spec.heavy = o.heavy;
  if (o.shape == "sxos") spec.shape = SymShape::kSxos;
  else if (o.shape == "submodular") spec.shape = SymShape::kSubmodular;
  else throw InputError("--shape must be sxos or submodular");
  if (o.cost_mode == "uniform") spec.cost_mode = CostMode::kUniform;
  else if (o.cost_mode == "full_feasible") spec.cost_mode = CostMode::kFullFeasible;
  else if (o.cost_mode == "sorted") spec.cost_mode = CostMode::kSorted;
  else throw InputError("--cost-mode must be uniform, full_feasible or sorted");
  spec.value = o.value;
  spec.cost = o.cost;
  const Instance inst = generate(spec);
  if (o.out_path.empty()) {
    out << dump(instance_to_json(inst), o.pretty) << "\n";
    return kExitOk;
  }
  save_instance(inst, o.out_path);
  Json r{{"command", "gen"}, {"family", o.family}, {"n", inst.n()}, {"digest", instance_digest(inst)}, {"out", o.out_path}};
  out << dump(r, o.pretty) << "\n";
  return kExitOk;
}

inline int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const Instance inst = load_instance(o.in_path);
  const auto obj = parse_objective(o.objective);
  if (!obj) throw InputError("--objective must be welfare, utility or value");
  const double b = parse_real(o.b, "--b");
  const double B = parse_real(o.B, "--B");
  if (!(b > 0.0)) throw InputError("--b must be positive");
  if (!(B >= 0.0)) throw InputError("--B must be nonnegative");

  const Solution s = solve(inst, o, *obj, b, B);
  Json r = outcome_json(s, b, B);
  r["command"] = "solve";
  r["method"] = o.method;
  r["objective"] = o.objective;
  r["digest"] = instance_digest(inst);
  r["n"] = inst.n();
  r["queries"] = Json{{"value", s.stats.value_queries}, {"demand", s.stats.demand_queries}};
  if (s.config) r["config"] = config_to_json(*s.config);
  bool ok = true;
  if (o.verify) r["verify"] = verify_solution(inst, o, *obj, b, B, s, ok);
  r["wall_time_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  out << dump(r, o.pretty) << "\n";
  if (!ok) {
    err << "verification failed\n";
    return kExitFailure;
  }
  return kExitOk;
}

inline int cmd_gap(const Options& o, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const Instance inst = load_instance(o.in_path);
  const double b = parse_real(o.b, "--b");
  const GapReport g = gap(inst, b, o.threads);
  auto team = [](const OptResult& r) {
    Json j;
    j["team_size"] = r.best_size;
    if (r.team_listed && r.best_size <= kListedTeamCap) j["team"] = r.best.team.members();
    return j;
  };
  Json r{{"command", "gap"},
         {"digest", instance_digest(inst)},
         {"n", inst.n()},
         {"b", number(b)},
         {"method", std::string(g.method)},
         {"opt_w", number(g.opt_w)},
         {"opt_g", number(g.opt_g)},
         {"opt_f", number(g.opt_f)},
         {"gap_wg", number(g.gap_wg)},
         {"welfare_team", team(g.welfare)},
         {"utility_team", team(g.utility)},
         {"value_team", team(g.value)}};
  r["wall_time_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  out << dump(r, o.pretty) << "\n";
  return kExitOk;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  const Instance inst = load_instance(o.in_path);
  Json r{{"command", "verify"}, {"digest", instance_digest(inst)}, {"n", inst.n()}, {"kind", std::string(inst.fn.kind_name())}};
  r["warnings"] = inst.validate();
  Json classes = Json::object();
  for (ClassTag t : {ClassTag::kMonotone, ClassTag::kAdditive, ClassTag::kSubmodular, ClassTag::kSupermodular,
                     ClassTag::kSubadditive, ClassTag::kXos, ClassTag::kSxos}) {
    Json c;
    try {
      const ClassReport rep = validate_class(inst.fn, t);
      c["pass"] = rep.pass;
      if (!rep.detail.empty()) c["detail"] = rep.detail;
      if (rep.witness) {
        Json w;
        w["relation"] = rep.witness->relation;
        w["S"] = rep.witness->s.members();
        w["T"] = rep.witness->t.members();
        if (rep.witness->i) w["i"] = *rep.witness->i;
        if (rep.witness->j) w["j"] = *rep.witness->j;
        if (rep.witness->k) w["k"] = *rep.witness->k;
        w["confirmed"] = witness_confirms(inst.fn, t, *rep.witness);
        c["witness"] = w;
      }
    } catch (const CapabilityError& e) {
      c["skipped"] = e.what();
    }
    classes[std::string(class_name(t))] = c;
  }
  r["classes"] = classes;
  if (!o.team.empty()) {
    AgentSet team;
    std::stringstream ss(o.team);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      try {
        team.insert(static_cast<Agent>(std::stoull(tok)));
      } catch (const std::exception&) {
        throw InputError("--team expects comma-separated agent indices");
      }
    }
    if (team.bound() > inst.n()) throw InputError("--team lists an agent outside [0, n)");
    Oracle oracle(inst.fn);
    const auto costs = inst.cost_vector();
    Solution s;
    s.outcome = outcome(oracle, costs, team);
    s.size = team.size();
    r["outcome"] = outcome_json(s, parse_real(o.b, "--b"), parse_real(o.B, "--B"));
  }
  out << dump(r, o.pretty) << "\n";
  return kExitOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear contracts for teams: solvers, gap reports and instance generators", "teamshare"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("--family", o.family, "Instance family")->required();
  gen->add_option("--n", o.n, "Number of agents");
  gen->add_option("--epsilon", o.epsilon, "sxos_tight epsilon");
  gen->add_option("--bump", o.bump, "sxos_tight bump size (0 = none, default n-1)");
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("--clauses", o.clauses, "random_xos clause count");
  gen->add_option("--elements", o.elements, "random_coverage element count");
  gen->add_option("--heavy", o.heavy, "Number of high-value agents in random families");
  gen->add_option("--shape", o.shape, "random_sym_table shape: sxos | submodular");
  gen->add_option("--cost-mode", o.cost_mode, "random_sym_table costs: uniform | full_feasible | sorted");
  gen->add_option("--value", o.value, "single_agent value");
  gen->add_option("--cost", o.cost, "single_agent cost");
  gen->add_option("--out", o.out_path, "Output file (stdout when absent)");
  gen->add_flag("--pretty", o.pretty, "Indented JSON");

  auto* solve_cmd = app.add_subcommand("solve", "Run a solver on an instance");
  solve_cmd->add_option("--in", o.in_path, "Instance file")->required();
  solve_cmd->add_option("--objective", o.objective, "welfare | utility | value");
  solve_cmd->add_option("--method", o.method, "alg3 | sxos | sym_submod | bruteforce | singleton | value_b | value_B | welfare_b");
  solve_cmd->add_option("--preset", o.preset, "xos188 | submod468");
  solve_cmd->add_option("--config", o.config_path, "Config JSON file");
  solve_cmd->add_option("--a", o.a, "Demand oracle quality");
  solve_cmd->add_option("--gamma", o.gamma, "Doubling exponent");
  solve_cmd->add_option("--m", o.m, "Share slack m");
  solve_cmd->add_option("--M", o.M, "Domain ratio M");
  solve_cmd->add_option("--demand", o.demand, "exact | greedy");
  solve_cmd->add_option("--b", o.b, "Share bound b (real or inf)");
  solve_cmd->add_option("--B", o.B, "Transfer bound B (real or inf)");
  solve_cmd->add_option("--seed", o.seed, "Accepted for symmetry with gen; solvers are deterministic");
  solve_cmd->add_option("--threads", o.threads, "Worker threads for enumeration");
  solve_cmd->add_flag("--verify", o.verify, "Cross-check against ground truth");
  solve_cmd->add_flag("--pretty", o.pretty, "Indented JSON");

  auto* gap_cmd = app.add_subcommand("gap", "Welfare-utility gap of an instance");
  gap_cmd->add_option("--in", o.in_path, "Instance file")->required();
  gap_cmd->add_option("--b", o.b, "Share bound b (real or inf)");
  gap_cmd->add_option("--threads", o.threads, "Worker threads for enumeration");
  gap_cmd->add_flag("--pretty", o.pretty, "Indented JSON");

  auto* verify_cmd = app.add_subcommand("verify", "Validate an instance and optionally a team");
  verify_cmd->add_option("--in", o.in_path, "Instance file")->required();
  verify_cmd->add_option("--team", o.team, "Comma-separated agent indices");
  verify_cmd->add_option("--b", o.b, "Share bound b (real or inf)");
  verify_cmd->add_option("--B", o.B, "Transfer bound B (real or inf)");
  verify_cmd->add_flag("--pretty", o.pretty, "Indented JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  try {
    if (*gen) return cmd_gen(o, out);
    if (*solve_cmd) return cmd_solve(o, out, err);
    if (*gap_cmd) return cmd_gap(o, out);
    if (*verify_cmd) return cmd_verify(o, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what();
    if (!e.pointer().empty()) err << " (at " << e.pointer() << ")";
    err << "\n";
    return kExitInput;
  } catch (const CapabilityError& e) {
    err << "capability error: " << e.what() << "\n";
    return kExitCapability;
  } catch (const AlgorithmError& e) {
    err << "algorithm error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitInput;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("teamshare");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace teamshare::cli
