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

// Builds the additive gap instance for four agents, prints its exact gap,
// then runs the XOS approximation and the symmetric solver on it.

#include <iostream>

#include "teamshare/teamshare.hpp"

int main() {
  using namespace teamshare;
  FamilySpec spec;
  spec.family = "additive_gap";
  spec.n = 4;
  const Instance inst = gen_family_instance(spec);

  const GapReport g = gap(inst);
  std::cout << "OPT(w) = " << g.opt_w << "  OPT(g) = " << g.opt_g << "  gap = " << g.gap_wg << "\n";

  const Outcome approx = approx_welfare_xos(inst, ApproxConfig::xos188());
  std::cout << "alg3 team " << approx.team.to_string() << "  g = " << approx.utility << "\n";

  SymInstance sym = SymInstance::from(inst);
  const SymResult r = sxos_welfare_approx(sym);
  std::cout << "symmetric XOS: k = " << r.k << "  w = " << r.w << "  queries = " << r.value_queries << "\n";
  return 0;
}
