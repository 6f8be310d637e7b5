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

#include <gtest/gtest.h>

#include <cmath>

#include "bridge.hpp"
#include "teamshare/teamshare.hpp"

using namespace teamshare;

namespace {

Instance named(const std::string& fam, std::uint64_t n) {
  FamilySpec s;
  s.family = fam;
  s.n = n;
  return gen_family_instance(s);
}

Instance random_of(const std::string& fam, std::uint64_t seed, std::uint64_t n) {
  FamilySpec s;
  s.family = fam;
  s.n = n;
  s.seed = seed;
  return gen_random(s);
}

}  // namespace

TEST(Shares, AdditiveGapFullTeam) {
  const Instance inst = named("additive_gap", 4);
  Oracle o(inst.fn);
  const auto c = inst.cost_vector();
  const Shares sh = shares(o, c, AgentSet::prefix(4));
  ASSERT_EQ(sh.per_agent.size(), 4U);
  for (const auto& a : sh.per_agent) EXPECT_DOUBLE_EQ(a.share, 0.25);
  EXPECT_DOUBLE_EQ(sh.total, 1.0);
}

TEST(Shares, EmptyAndSupermodular) {
  const Instance inst = named("supermodular_gap", 4);
  Oracle o(inst.fn);
  const auto c = inst.cost_vector();
  const Shares e = shares(o, c, AgentSet{});
  EXPECT_TRUE(e.per_agent.empty());
  EXPECT_EQ(e.total, 0.0);
  EXPECT_NEAR(shares(o, c, AgentSet::prefix(4)).total, 8.0 / 8.75, 1e-12);
}

TEST(Shares, ZeroMarginalIsInfinite) {
  ValueFn f = ValueFn::coverage({1.0}, {{0}, {0}});
  Oracle o(f);
  const std::vector<double> c{0.1, 0.1};
  const Shares sh = shares(o, c, AgentSet{0, 1});
  EXPECT_TRUE(std::isinf(sh.total));
  EXPECT_FALSE(sh.finite());
  EXPECT_FALSE(is_feasible(o, c, AgentSet{0, 1}));
  EXPECT_TRUE(is_feasible(o, c, AgentSet{0, 1}, kInf));
  const Outcome out = outcome(o, c, AgentSet{0, 1});
  EXPECT_EQ(out.utility, -kInf);
  EXPECT_TRUE(std::isinf(transfer(o, c, AgentSet{0, 1})));
}

TEST(Feasible, Examples) {
  const Instance add = named("additive_gap", 4);
  Oracle oa(add.fn);
  const auto ca = add.cost_vector();
  EXPECT_TRUE(is_feasible(oa, ca, AgentSet::prefix(4), 1.0));
  EXPECT_TRUE(is_feasible(oa, ca, AgentSet{}, 1e-6));

  const Instance sm = named("supermodular_gap", 4);
  Oracle os(sm.fn);
  const auto cs = sm.cost_vector();
  EXPECT_FALSE(is_feasible(os, cs, AgentSet::prefix(2), 1.0));  // 4 / 3.75
  EXPECT_TRUE(is_feasible(os, cs, AgentSet::prefix(2), kInf));
  EXPECT_THROW(is_feasible(os, cs, AgentSet{0}, 0.0), InputError);
}

TEST(Transfer, Examples) {
  const Instance add = named("additive_gap", 4);
  Oracle o(add.fn);
  const auto c = add.cost_vector();
  EXPECT_DOUBLE_EQ(transfer(o, c, AgentSet::prefix(4)), 16.0);
  EXPECT_EQ(transfer(o, c, AgentSet{}), 0.0);
  FamilySpec s;
  s.family = "single_agent";
  s.n = 1;
  const Instance one = gen_family_instance(s);
  Oracle o1(one.fn);
  EXPECT_DOUBLE_EQ(transfer(o1, one.cost_vector(), AgentSet{0}), 1.0);
}

TEST(OutcomeTest, Examples) {
  const Instance add = named("additive_gap", 4);
  Oracle o(add.fn);
  const auto c = add.cost_vector();
  const Outcome full = outcome(o, c, AgentSet::prefix(4));
  EXPECT_DOUBLE_EQ(full.value, 16.0);
  EXPECT_DOUBLE_EQ(full.welfare, 12.0);
  EXPECT_DOUBLE_EQ(full.utility, 0.0);
  EXPECT_DOUBLE_EQ(full.transfer(), 16.0);
  const Outcome two = outcome(o, c, AgentSet{1, 3});
  EXPECT_DOUBLE_EQ(two.value, 8.0);
  EXPECT_DOUBLE_EQ(two.share_total, 0.5);
  EXPECT_DOUBLE_EQ(two.utility, 4.0);
  EXPECT_DOUBLE_EQ(two.welfare, 6.0);
  const Outcome none = outcome(o, c, AgentSet{});
  EXPECT_EQ(none.value, 0.0);
  EXPECT_EQ(none.cost, 0.0);
  EXPECT_EQ(none.welfare, 0.0);
  EXPECT_EQ(none.utility, 0.0);
  EXPECT_EQ(none.share_total, 0.0);
}

TEST(OutcomeTest, AgreesWithReference) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = random_of("random_xos", seed, 6);
    const auto ref = naive::of(inst.fn);
    const auto c = inst.cost_vector();
    Oracle o(inst.fn);
    for (const auto& t : naive::all_teams(6)) {
      const Outcome out = outcome(o, c, naive::set(t));
      EXPECT_NEAR(out.value, ref(t), 1e-12);
      EXPECT_NEAR(out.welfare, naive::welfare(ref, c, t), 1e-12);
      const double g = naive::utility(ref, c, t);
      if (std::isfinite(g)) {
        EXPECT_NEAR(out.utility, g, 1e-9);
      } else {
        EXPECT_EQ(out.utility, g);
      }
      EXPECT_EQ(out.welfare, out.value - out.cost);
    }
  }
}

TEST(WelfareMinimal, Examples) {
  ValueFn f = ValueFn::additive({1, 1, 1, 1});
  Oracle o(f);
  EXPECT_EQ(welfare_minimal_subset(o, std::vector<double>(4, 0.5), AgentSet::prefix(4)), AgentSet::prefix(4));
  EXPECT_EQ(welfare_minimal_subset(o, std::vector<double>(4, 2.0), AgentSet::prefix(4)), AgentSet{});
  EXPECT_EQ(welfare_minimal_subset(o, std::vector<double>(4, 2.0), AgentSet{}), AgentSet{});
}

TEST(WelfareMinimal, OutputProperties) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance inst = random_of(seed % 2 ? "random_xos" : "random_coverage", seed, 8);
    const auto ref = naive::of(inst.fn);
    auto c = inst.cost_vector();
    for (double& x : c) x *= 3.0;  // make removals happen
    Oracle o(inst.fn);
    for (std::uint64_t m : {255ULL, 0x5AULL, 0x0FULL}) {
      const AgentSet s = AgentSet::from_mask(m);
      const AgentSet z = welfare_minimal_subset(o, c, s);
      EXPECT_TRUE(z.is_subset_of(s));
      EXPECT_GE(naive::welfare(ref, c, naive::team(z)), naive::welfare(ref, c, naive::team(s)) - 1e-9);
      for (Agent i : z.members()) EXPECT_GT(naive::marginal(ref, naive::team(z), i) - c[i], 0.0);
    }
  }
}

TEST(Properties, AccountingIdentity) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = random_of("random_coverage", seed, 7);
    const auto c = inst.cost_vector();
    Oracle o(inst.fn);
    for (std::uint64_t m = 1; m < 128; ++m) {
      const AgentSet s = AgentSet::from_mask(m);
      const Outcome out = outcome(o, c, s);
      if (!std::isfinite(out.share_total)) continue;
      double agents = 0.0;
      for (const auto& a : shares(o, c, s).per_agent) agents += a.share * out.value - c[a.agent];
      EXPECT_NEAR(out.welfare, out.utility + agents, 1e-6 * std::max(1.0, std::abs(out.welfare)));
    }
  }
}

TEST(Properties, Sandwich) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = random_of("random_xos", seed, 7);
    const auto c = inst.cost_vector();
    Oracle o(inst.fn);
    for (double b : {0.25, 0.5, 0.9}) {
      for (std::uint64_t m = 1; m < 128; ++m) {
        const Outcome out = outcome(o, c, AgentSet::from_mask(m));
        if (!out.feasible(b)) continue;
        EXPECT_LE((1.0 - b) * out.value, out.utility + 1e-9);
        EXPECT_LE(out.utility, out.welfare + 1e-9);
        EXPECT_LE(out.welfare, out.value + 1e-9);
      }
    }
  }
}

TEST(Properties, SubmodularDownwardShareMonotonicity) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = random_of("random_coverage", seed, 7);
    ASSERT_TRUE(validate_class(inst.fn, ClassTag::kSubmodular).pass);
    const auto c = inst.cost_vector();
    Oracle o(inst.fn);
    for (std::uint64_t sm : {127ULL, 0x3EULL, 0x55ULL}) {
      const AgentSet s = AgentSet::from_mask(sm);
      const Shares ss = shares(o, c, s);
      for (std::uint64_t tm = sm;; tm = (tm - 1) & sm) {
        const AgentSet t = AgentSet::from_mask(tm);
        double in_s = 0.0;
        for (const auto& a : ss.per_agent)
          if (t.contains(a.agent)) in_s += a.share;
        EXPECT_LE(shares(o, c, t).total, in_s + 1e-9);
        if (tm == 0) break;
      }
    }
  }
}
