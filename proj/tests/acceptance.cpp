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

// One line per acceptance criterion; exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "bridge.hpp"
#include "teamshare/teamshare.hpp"

using namespace teamshare;

namespace {

// Counts checks and keeps the first failing message.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  bool pass() const { return failures == 0 && checks > 0; }
};

struct Criterion {
  std::string title;
  Tally tally;
  std::string note;
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

Instance named(const std::string& fam, std::uint64_t n, std::optional<std::uint64_t> bump = std::nullopt,
               double eps = 0.1) {
  FamilySpec s;
  s.family = fam;
  s.n = n;
  s.bump = bump;
  s.epsilon = eps;
  return gen_family_instance(s);
}

Instance random_of(const std::string& fam, std::uint64_t seed, std::uint64_t n, std::size_t heavy = 0) {
  FamilySpec s;
  s.family = fam;
  s.n = n;
  s.seed = seed;
  s.heavy = heavy;
  return gen_random(s);
}

Instance sym_table(std::uint64_t seed, std::uint64_t n, SymShape shape, CostMode mode = CostMode::kUniform) {
  FamilySpec s;
  s.family = "random_sym_table";
  s.seed = seed;
  s.n = n;
  s.shape = shape;
  s.cost_mode = mode;
  return gen_random(s);
}

std::uint64_t query_budget(std::uint64_t n) {
  return 4 * static_cast<std::uint64_t>(std::ceil(std::log2(static_cast<double>(std::max<std::uint64_t>(n, 2))))) + 8;
}

double gap_enumerated(const Instance& inst) {
  return welfare_utility_ratio(opt_enumerate(inst, Objective::kWelfare).best_value,
                               opt_enumerate(inst, Objective::kUtility).best_value);
}

double gap_scanned(const Instance& inst) {
  return welfare_utility_ratio(opt_symmetric(inst, Objective::kWelfare).best_value,
                               opt_symmetric(inst, Objective::kUtility).best_value);
}

void additive_gap(Criterion& c) {
  for (std::uint64_t n : {4ULL, 8ULL, 16ULL}) {
    const double g = gap_enumerated(named("additive_gap", n));
    c.tally.expect(std::abs(g - (4.0 - 4.0 / static_cast<double>(n))) <= 1e-9, "n=" + std::to_string(n) + " gap " + fmt(g));
  }
  const double g64 = gap_scanned(named("additive_gap", 64));
  c.tally.expect(std::abs(g64 - (4.0 - 4.0 / 64.0)) <= 1e-9, "n=64 gap " + fmt(g64));
  c.note = "n=64 gap " + fmt(g64);
}

void subadditive_gap(Criterion& c) {
  for (std::uint64_t n : {9ULL, 16ULL, 25ULL}) {
    const Instance inst = named("subadditive_gap", n);
    const double g = n <= kEnumerationCap ? gap_enumerated(inst) : gap_scanned(inst);
    c.tally.expect(g >= std::sqrt(static_cast<double>(n)) - 1.0, "n=" + std::to_string(n) + " gap " + fmt(g));
    if (n == 9) {
      c.tally.expect(std::abs(g - 2.25) <= 1e-9, "n=9 gap " + fmt(g));
      c.note = "n=9 gap " + fmt(g);
    }
  }
  // Exhaustive subadditivity at n = 9, library validator and reference.
  const Instance nine = named("subadditive_gap", 9);
  c.tally.expect(validate_class(nine.fn, ClassTag::kSubadditive).pass, "validator rejects n=9");
  const auto ref = naive::of(nine.fn);
  const auto teams = naive::all_teams(9);
  for (const auto& s : teams)
    for (const auto& t : teams) {
      naive::Team u = s;
      for (std::size_t i : t) u = naive::with(u, i);
      c.tally.expect(ref(u) <= ref(s) + ref(t) + 1e-9, "subadditivity fails on a pair");
    }
}

void supermodular_gap(Criterion& c) {
  double prev = 0.0;
  for (std::uint64_t n : {2ULL, 4ULL, 8ULL, 16ULL}) {
    const Instance inst = named("supermodular_gap", n);
    Oracle o(inst.fn);
    const auto cost = inst.cost_vector();
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
      const bool feas = is_feasible(o, cost, AgentSet::from_mask(m));
      const bool full = m == (std::uint64_t{1} << n) - 1;
      c.tally.expect(feas == full, "feasibility pattern wrong at n=" + std::to_string(n));
    }
    const double g = gap_enumerated(inst);
    c.tally.expect(std::abs(g - (2.0 * static_cast<double>(n) - 1.0)) <= 1e-9,
                   "n=" + std::to_string(n) + " gap " + fmt(g));
    c.tally.expect(g > prev, "gap not increasing");
    prev = g;
  }
  c.note = "n=16 gap " + fmt(prev);
}

void submodular_gap(Criterion& c) {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Instance inst = random_of("random_coverage", seed, 2 + seed % 9, seed % 4 == 0 ? 1 : 0);
    const double g = gap(inst).gap_wg;
    c.tally.expect(std::isfinite(g) && g <= 5.0 + 1e-6, "seed " + std::to_string(seed) + " gap " + fmt(g));
    if (std::isfinite(g)) worst = std::max(worst, g);
  }
  c.note = "worst gap " + fmt(worst);
}

void xos_bounds(Criterion& c) {
  double worst188 = kInf, worst468 = kInf;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const std::uint64_t n = 2 + seed % 9;
    const Instance x = random_of("random_xos", seed, n, seed % 3);
    const double wx = opt_enumerate(x, Objective::kWelfare).best_value;
    const Outcome ox = approx_welfare_xos(x, ApproxConfig::xos188());
    c.tally.expect(ox.feasible(1.0) && ox.utility >= wx / 188.0 - 1e-12, "xos seed " + std::to_string(seed));
    if (wx > 0.0) worst188 = std::min(worst188, ox.utility / wx);

    const Instance v = random_of("random_coverage", seed, n, seed % 3);
    const double wv = opt_enumerate(v, Objective::kWelfare).best_value;
    const Outcome ov = approx_welfare_xos(v, ApproxConfig::submod468());
    c.tally.expect(ov.feasible(1.0) && ov.utility >= wv / 468.0 - 1e-12, "coverage seed " + std::to_string(seed));
    if (wv > 0.0) worst468 = std::min(worst468, ov.utility / wv);
  }
  c.note = "worst g/OPT(w): exact " + fmt(worst188) + ", greedy " + fmt(worst468);
}

void sxos_ratio(Criterion& c) {
  double worst = 1.0;
  std::uint64_t max_q = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const std::uint64_t n = 8 + (seed * 2654435761ULL) % 1017;
    const Instance inst = sym_table(seed, n, SymShape::kSxos);
    c.tally.expect(validate_class(inst.fn, ClassTag::kSxos).pass, "table not sXOS");
    SymInstance s = SymInstance::from(inst);
    const SymResult r = sxos_welfare_approx(s);
    c.tally.expect(r.value_queries <= query_budget(n), "queries " + std::to_string(r.value_queries));
    max_q = std::max(max_q, r.value_queries);
    const double cu = *inst.costs.uniform_value();
    std::uint64_t top = 0;
    for (std::uint64_t k = 1; k <= n; ++k) {
      const double kd = static_cast<double>(k);
      if (inst.fn.value_of_size(k) >= cu * kd * kd) top = k;
    }
    const double opt = opt_symmetric(inst, Objective::kWelfare).best_value;
    if (top > 3 && opt > 0.0) {
      const double bound = 2.0 / (1.0 - 3.0 / static_cast<double>(top));
      c.tally.expect(opt <= bound * r.w + 1e-9, "seed " + std::to_string(seed) + " ratio " + fmt(opt / r.w));
      worst = std::max(worst, opt / r.w);
    }
  }
  SymInstance tight = SymInstance::from(named("sxos_tight", 1'000'000, 0));
  const SymResult t = sxos_welfare_approx(tight);
  c.tally.expect(t.k == 1, "tight family returned k=" + std::to_string(t.k));
  c.tally.expect(t.value_queries <= 4 * 20 + 8, "tight family used " + std::to_string(t.value_queries) + " queries");
  c.note = "worst ratio " + fmt(worst) + ", max queries " + std::to_string(max_q) + ", n=1e6 queries " +
           std::to_string(t.value_queries);
}

void tightness(Criterion& c) {
  const Instance inst = named("sxos_tight", 10'000, 9'999, 0.01);
  const double opt = opt_symmetric(inst, Objective::kWelfare).best_value;
  const double w1 = inst.fn.value_of_size(1) - *inst.costs.uniform_value();
  c.tally.expect(opt / w1 >= 1.9, "ratio " + fmt(opt / w1));
  c.note = "ratio " + fmt(opt / w1);
}

void sym_submodular(Criterion& c) {
  std::uint64_t max_q = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const std::uint64_t n = 1 + (seed * 40503ULL) % 4096;
    const Instance inst = sym_table(seed, n, SymShape::kSubmodular, seed % 3 == 0 ? CostMode::kSorted : CostMode::kUniform);
    SymInstance s = SymInstance::from(inst);
    const SymResult r = sym_submodular_opt(s);
    const double opt = opt_symmetric(inst, Objective::kWelfare).best_value;
    c.tally.expect(r.w == opt, "seed " + std::to_string(seed) + ": " + fmt(r.w) + " vs " + fmt(opt));
    c.tally.expect(r.value_queries <= query_budget(n), "queries " + std::to_string(r.value_queries));
    max_q = std::max(max_q, r.value_queries);
  }
  c.note = "max queries " + std::to_string(max_q);
}

void gap_certificate(Criterion& c) {
  double worst = kInf;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const std::uint64_t n = 4 * (2 + seed % 60);
    const Instance inst = sym_table(seed, n, SymShape::kSxos, CostMode::kFullFeasible);
    SymInstance s = SymInstance::from(inst);
    const GapCertificate cert = sxos_gap_certificate(s, 4.0, 8.0);
    c.tally.expect(cert.value_ok && cert.utility_ok, "seed " + std::to_string(seed) + " bounds");
    const double opt = opt_symmetric(inst, Objective::kWelfare).best_value;
    c.tally.expect(cert.result.g > opt / 16.0, "seed " + std::to_string(seed) + " g " + fmt(cert.result.g));
    worst = std::min(worst, cert.result.g / opt);
  }
  c.note = "worst g/OPT(w) " + fmt(worst);
}

void splitting(Criterion& c) {
  std::size_t runs = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Instance inst = random_of("random_coverage", seed, 8);
    Oracle o(inst.fn);
    const auto cost = inst.cost_vector();
    const auto ref = naive::of(inst.fn);
    std::optional<AgentSet> pick;
    for (std::uint64_t m = 1; m < 256; ++m) {
      const AgentSet s = AgentSet::from_mask(m);
      const Shares sh = shares(o, cost, s);
      if (!(sh.total <= 1.0)) continue;
      bool ok = true;
      for (const auto& a : sh.per_agent) ok = ok && a.share <= 0.5;
      if (ok && (!pick || s.size() > pick->size())) pick = s;
    }
    if (!pick) continue;
    ++runs;
    const SplitResult r = submodular_split(o, cost, *pick);
    c.tally.expect(r.B.size() <= 1, "|B| > 1");
    c.tally.expect((r.A | r.B | r.C) == *pick && r.A.size() + r.B.size() + r.C.size() == pick->size(), "not a partition");
    for (const AgentSet* part : {&r.A, &r.B, &r.C})
      c.tally.expect(naive::rho(ref, cost, naive::team(*part)) <= 0.5 + 1e-9, "part share above 1/2");
  }
  c.tally.expect(runs >= 150, "only " + std::to_string(runs) + " qualifying teams");
  c.note = std::to_string(runs) + " teams split";
}

void value_approx(Criterion& c) {
  const ApproxConfig cfg;
  const double factor = 3.0 / cfg.A() * std::exp2(cfg.gamma);
  double worst = kInf;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Instance inst = random_of("random_xos", seed, 2 + seed % 9, seed % 3);
    const Outcome o = value_approx_bfeasible(inst, 1.0, cfg);
    const double opt = opt_enumerate(inst, Objective::kValue, 1.0).best_value;
    c.tally.expect(o.feasible(1.0) && o.value >= opt / factor - 1e-12, "seed " + std::to_string(seed));
    worst = std::min(worst, o.value / opt);
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = random_of(seed % 2 ? "random_xos" : "random_coverage", seed, 2 + seed % 9);
    const auto ref = naive::of(inst.fn);
    const auto cost = inst.cost_vector();
    for (double b : {0.25, 0.5, 2.0}) {
      std::vector<double> scaled = cost;
      for (double& x : scaled) x /= b;
      for (const auto& t : naive::all_teams(inst.n()))
        c.tally.expect((naive::rho(ref, cost, t) <= b + 1e-9) == (naive::rho(ref, scaled, t) <= 1.0 + 1e-9),
                       "b-invariance fails");
    }
  }
  c.note = "worst f/OPT(f) " + fmt(worst);
}

void single_agent(Criterion& c) {
  const GapReport g = gap(named("single_agent", 1));
  c.tally.expect(g.opt_f == 1.0, "OPT(f) " + fmt(g.opt_f));
  c.tally.expect(g.opt_w == 0.0, "OPT(w) " + fmt(g.opt_w));
  c.tally.expect(g.opt_g == 0.0, "OPT(g) " + fmt(g.opt_g));
  c.note = "OPT(f)=" + fmt(g.opt_f) + " OPT(w)=" + fmt(g.opt_w) + " OPT(g)=" + fmt(g.opt_g);
}

void unconstrained_gap(Criterion& c) {
  for (std::uint64_t n : {4ULL, 8ULL}) {
    const Instance inst = named("unconstrained_gap", n);
    const double g = best_singleton(inst).utility;
    const double w = opt_enumerate(inst, Objective::kWelfare, kInf).best_value;
    c.tally.expect(g * static_cast<double>(n) == w, "n=" + std::to_string(n) + ": " + fmt(g) + " x n vs " + fmt(w));
    c.note += "n=" + std::to_string(n) + " ratio " + fmt(w / g) + " ";
  }
}

void properties(Criterion& c) {
  // Class validators on every generated corpus.
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::uint64_t n = 2 + seed % 11;
    const Instance x = random_of("random_xos", seed, n, seed % 3);
    c.tally.expect(validate_class(x.fn, ClassTag::kMonotone).pass, "random_xos not monotone");
    c.tally.expect(validate_class(x.fn, ClassTag::kSubadditive).pass, "random_xos not subadditive");
    const Instance v = random_of("random_coverage", seed, n, seed % 3);
    c.tally.expect(validate_class(v.fn, ClassTag::kSubmodular).pass, "random_coverage not submodular");
    c.tally.expect(validate_class(sym_table(seed, 8 + seed * 25, SymShape::kSxos).fn, ClassTag::kSxos).pass,
                   "sXOS table fails");
    c.tally.expect(validate_class(sym_table(seed, 8 + seed * 25, SymShape::kSubmodular).fn, ClassTag::kSubmodular).pass,
                   "submodular table fails");
  }
  c.tally.expect(validate_class(named("additive_gap", 12).fn, ClassTag::kAdditive).pass, "additive_gap");
  c.tally.expect(validate_class(named("supermodular_gap", 12).fn, ClassTag::kSupermodular).pass, "supermodular_gap");
  c.tally.expect(validate_class(named("sxos_tight", 200).fn, ClassTag::kSxos).pass, "sxos_tight");

  // Sum of marginals over S subset of T, by reference evaluation.
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Instance inst = random_of(seed % 2 ? "random_xos" : "random_coverage", seed, 7);
    const auto ref = naive::of(inst.fn);
    for (std::uint64_t tm = 0; tm < 128; ++tm)
      for (std::uint64_t sm = tm;; sm = (sm - 1) & tm) {
        const auto s = naive::team(AgentSet::from_mask(sm));
        const auto t = naive::team(AgentSet::from_mask(tm));
        double sum = 0.0;
        for (std::size_t i : s) sum += naive::marginal(ref, t, i);
        c.tally.expect(sum <= ref(s) + 1e-9, "sum of marginals exceeds value");
        if (sm == 0) break;
      }
  }

  // sXOS marginals and concavity on validated tables.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto v = std::get<SymmetricTable>(sym_table(seed, 10 + seed * 9, SymShape::kSxos).fn.kind()).values;
    const std::size_t n = v.size() - 1;
    for (std::size_t k = 1; k <= n; ++k) {
      c.tally.expect(v[k] - v[k - 1] <= v[k] / static_cast<double>(k) + 1e-9, "sXOS marginal above average");
      for (std::size_t j = 1; j <= k; ++j)
        c.tally.expect(static_cast<double>(j) / static_cast<double>(k) * v[k] <= v[j] + 1e-9, "sXOS concavity");
    }
  }

  // Sandwich on b-feasible teams, b <= 0.9.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = random_of(seed % 2 ? "random_xos" : "random_coverage", seed, 7);
    Oracle o(inst.fn);
    const auto cost = inst.cost_vector();
    for (std::uint64_t m = 1; m < 128; ++m) {
      const Outcome out = outcome(o, cost, AgentSet::from_mask(m));
      for (double b : {0.3, 0.6, 0.9}) {
        if (!out.feasible(b)) continue;
        c.tally.expect((1.0 - b) * out.value <= out.utility + 1e-9 && out.utility <= out.welfare + 1e-9 &&
                           out.welfare <= out.value + 1e-9,
                       "sandwich fails");
      }
    }
  }

  // Symmetric XOS: cost bound and value-welfare closeness on b-feasible prefixes.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = sym_table(seed, 20 + seed * 7, SymShape::kSxos, seed % 2 ? CostMode::kUniform : CostMode::kSorted);
    SymInstance s = SymInstance::from(inst);
    for (double b : {0.5, 1.0, 1.5})
      for (std::uint64_t k = 1; k <= s.n(); ++k) {
        if (!s.feasible(k, b)) continue;
        const double kd = static_cast<double>(k);
        c.tally.expect(s.prefix_cost(k) <= b / kd * s.f(k) + 1e-9, "cost bound");
        c.tally.expect(s.f(k) - s.prefix_cost(k) >= (1.0 - b / kd) * s.f(k) - 1e-9, "value-welfare closeness");
      }
  }
  c.note = std::to_string(c.tally.checks) + " checks";
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  postcondition_audit().reset();
  std::array<Criterion, 15> cs;
  const std::array<std::string, 15> titles = {
      "additive gap equals 4 - 4/n",
      "subadditive gap at least sqrt(n) - 1, exactly 2.25 at n = 9, subadditive",
      "supermodular gap equals 2n - 1, only the full team feasible",
      "submodular gap at most 5 on 200 coverage instances",
      "XOS utility within 188 (exact demand) and coverage within 468 (greedy demand) of optimal welfare",
      "scaling-set postconditions hold on every invocation",
      "symmetric XOS welfare ratio and logarithmic query budget",
      "tight symmetric XOS family ratio at least 1.9",
      "symmetric submodular search is exact with logarithmic queries",
      "symmetric XOS gap certificate with (a, b) = (4, 8)",
      "submodular splitting into three half-feasible parts",
      "value approximation under b-feasibility and b-invariance",
      "single-agent boundary: OPT(f) = 1, OPT(w) = OPT(g) = 0",
      "best singleton times n equals unconstrained welfare",
      "property suites: validators, marginals, concavity, sandwich, closeness",
  };
  for (std::size_t i = 0; i < cs.size(); ++i) cs[i].title = titles[i];

  const std::array<std::function<void(Criterion&)>, 15> runs = {
      additive_gap, subadditive_gap, supermodular_gap, submodular_gap, xos_bounds, nullptr, sxos_ratio,
      tightness, sym_submodular, gap_certificate, splitting, value_approx, single_agent, unconstrained_gap,
      properties};
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (!runs[i]) continue;
    try {
      runs[i](cs[i]);
    } catch (const std::exception& e) {
      cs[i].tally.expect(false, std::string("exception: ") + e.what());
    }
  }

  // The audit covers every scaling-set call made above.
  {
    Criterion& c = cs[5];
    const auto& a = postcondition_audit();
    c.tally.expect(a.scaling_calls.load() > 0, "no scaling-set calls were made");
    c.tally.expect(a.scaling_violations.load() == 0, std::to_string(a.scaling_violations.load()) + " violations");
    c.tally.expect(a.attempt_violations.load() == 0,
                   std::to_string(a.attempt_violations.load()) + " attempt-output violations");
    c.note = std::to_string(a.scaling_calls.load()) + " calls, " + std::to_string(a.scaling_violations.load()) +
             " violations; " + std::to_string(a.attempt_outputs.load()) + " attempt outputs";
  }

  int failed = 0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto& c = cs[i];
    const bool ok = c.tally.pass();
    failed += ok ? 0 : 1;
    std::printf("[%s] criterion %zu: %s (%s)\n", ok ? "PASS" : "FAIL", i + 1, c.title.c_str(),
                ok ? c.note.c_str() : (std::to_string(c.tally.failures) + " failures; first: " + c.tally.first).c_str());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d of 15 criteria failed (%.1f s)\n", failed, secs);
  return failed == 0 ? 0 : 1;
}
