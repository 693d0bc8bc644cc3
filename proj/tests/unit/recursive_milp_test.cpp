// Copyright 2026 The qsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "qsched/bounds/support_bounds.hpp"
#include "qsched/sched/configurations.hpp"
#include "qsched/sched/generator.hpp"
#include "qsched/sched/oracle.hpp"
#include "qsched/sched/recursive_milp.hpp"

namespace qsched {
namespace {

Grid grid(const Rational& delta) { return make_grid(delta, 4, Rational(1)); }

TEST(Configurations, ExactPairsArePresent) {
  for (const Rational& d : {Rational(1, 2), Rational(1, 4)}) {
    Grid g = grid(d);
    for (std::size_t i = 0; i < g.tau; ++i) {
      auto cs = build_configurations(g, i);
      for (const auto& c : cs) EXPECT_LE(config_size(c, g), g.b[i]);
      const std::size_t k = g.k_of(i) + 1, l = g.l_of(i);
      for (std::size_t a = 0; a <= 2 * l && a <= g.lambda; ++a) {
        const std::size_t b = 2 * l - a;
        if (b > g.lambda || a > b) continue;
        auto ja = g.index(k, a), jb = g.index(k, b);
        if (!ja || !jb || !g.long_for(i, *ja) || !g.long_for(i, *jb)) continue;
        Config pair = *ja == *jb ? Config{{*ja, 2}} : Config{{*ja, 1}, {*jb, 1}};
        EXPECT_EQ(config_size(pair, g), g.b[i]);
        EXPECT_NE(std::find(cs.begin(), cs.end(), pair), cs.end()) << i << " " << a << " " << b;
      }
    }
  }
}

TEST(Configurations, CountWithinStatedBound) {
  for (const Rational& d : {Rational(1, 2), Rational(1, 4)}) {
    Grid g = grid(d);
    const double l2 = static_cast<double>(g.lambda * g.lambda);
    const double cap = l2 + std::pow(l2, 2 * std::log2(Rational(2 / d).get_d()));
    for (std::size_t i = 0; i < g.tau; ++i) {
      EXPECT_LE(static_cast<double>(build_configurations(g, i).size()), cap);
    }
  }
}

TEST(Configurations, SingletonOfSlowestIndex) {
  Grid g = grid(Rational(1, 2));
  const std::size_t last = g.tau - 1;
  auto cs = build_configurations(g, last);
  EXPECT_NE(std::find(cs.begin(), cs.end(), Config{{last, 1}}), cs.end());
  EXPECT_THROW(build_configurations(g, g.tau), std::out_of_range);
}

TEST(Configurations, SortedAndUnique) {
  Grid g = grid(Rational(1, 4));
  for (std::size_t i = 0; i < g.tau; ++i) {
    auto cs = build_configurations(g, i);
    for (std::size_t k = 1; k < cs.size(); ++k) EXPECT_TRUE(config_less(cs[k - 1], cs[k]));
  }
}

TEST(Configurations, MaximalFilterKeepsUndominated) {
  std::vector<Config> cs{{}, {{0, 1}}, {{0, 1}, {2, 1}}, {{1, 2}}, {{1, 1}}};
  auto m = maximal_configurations(cs);
  EXPECT_EQ(m, (std::vector<Config>{{{0, 1}, {2, 1}}, {{1, 2}}}));
}

TEST(RecursiveMilp, OneMachineOneJobIsFeasible) {
  Instance inst = Instance::make({3}, {3});
  RoundedInstance ri = round_to_grid(inst, Rational(1, 2), Rational(1));
  RecursiveMilp rm = build_recursive_milp(ri);
  auto sol = solve_recursive_milp(rm);
  ASSERT_TRUE(sol);
  EXPECT_TRUE(satisfies(rm, *sol));
  Rational used = 0;
  for (std::size_t v = 0; v < rm.vars.size(); ++v) {
    if (sol->x[v] != 0) {
      EXPECT_EQ(rm.vars[v].gamma, (Config{{0, 1}}));
      used += sol->x[v];
    }
  }
  EXPECT_EQ(used, 1);
}

TEST(RecursiveMilp, TwoFullJobsOnOneMachineIsInfeasible) {
  Instance inst = Instance::make({2, 2}, {1});
  RoundedInstance ri = round_to_grid(inst, Rational(1, 2), Rational(2));
  EXPECT_FALSE(solve_recursive_milp(build_recursive_milp(ri)));
}

TEST(RecursiveMilp, ColumnNormIsLogarithmic) {
  for (const Rational& d : {Rational(1, 2), Rational(1, 4)}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Instance inst = generate_sized(seed, 6, 3, 4, 2);
      const Rational T = opt_makespan_bruteforce(inst).opt;
      RoundedInstance ri = round_to_grid(inst, d, T);
      RecursiveMilp rm = build_recursive_milp(ri, {false, false});
      if (rm.milp.num_int == 0) continue;
      const double cap = 1 + 2 * std::log2(Rational(2 / d).get_d());
      EXPECT_LE(integer_block_profile(rm.milp).a_max().get_d(), cap + 1e-12);
    }
  }
}

TEST(RecursiveMilp, WitnessForSingleJob) {
  Instance inst = Instance::make({5}, {5});
  const Rational delta(1, 2);
  RoundedInstance ri = round_to_grid(inst, delta, (1 + 17 * delta) * Rational(1));
  RecursiveMilp rm = build_recursive_milp(ri);
  auto w = schedule_to_solution(inst, Schedule{{0}}, ri, rm);
  ASSERT_TRUE(w);
  EXPECT_TRUE(satisfies(rm, *w));
  Rational total = 0;
  for (std::size_t v = 0; v < rm.vars.size(); ++v) {
    if (w->x[v] == 0) continue;
    EXPECT_EQ(rm.vars[v].i, ri.machine_class_index[0]);
    total += w->x[v];
  }
  EXPECT_EQ(total, 1);
}

TEST(RecursiveMilp, WitnessForTwoHalfJobs) {
  Instance inst = Instance::make({1, 1}, {2});
  const Rational delta(1, 4);
  RoundedInstance ri = round_to_grid(inst, delta, Rational(1));
  RecursiveMilp rm = build_recursive_milp(ri);
  auto w = schedule_to_solution(inst, Schedule{{0, 0}}, ri, rm);
  ASSERT_TRUE(w);
  EXPECT_TRUE(satisfies(rm, *w));
  const std::size_t half = ri.job_class_index[0];
  EXPECT_EQ(ri.grid.b[half] * 2, ri.grid.b[0]);
  for (std::size_t v = 0; v < rm.vars.size(); ++v) {
    if (w->x[v] == 0) continue;
    EXPECT_EQ(rm.vars[v].i, 0u);
    EXPECT_EQ(rm.vars[v].gamma, (Config{{half, 2}}));
    EXPECT_EQ(w->x[v], 1);
  }
  EXPECT_THROW(schedule_to_solution(inst, Schedule{{0}}, ri, rm), std::invalid_argument);
}

TEST(RecursiveMilp, WitnessesOnRandomInstances) {
  const Rational delta(1, 4);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Instance inst = generate_sized(100 + seed, 5, 3, 4, 2);
    OptResult opt = opt_makespan_bruteforce(inst);
    RoundedInstance ri = round_to_grid(inst, delta, (1 + 17 * delta) * opt.opt);
    RecursiveMilp rm = build_recursive_milp(ri);
    auto w = schedule_to_solution(inst, opt.schedule, ri, rm);
    ASSERT_TRUE(w) << seed;
    EXPECT_TRUE(satisfies(rm, *w)) << seed;
  }
}

std::vector<Rational> as_rationals(const std::vector<std::int64_t>& v) {
  return {v.begin(), v.end()};
}

TEST(AssignConfs, IntegralSolutionNeedsNoExtraCopies) {
  Instance inst = Instance::make({4, 4}, {4, 4});
  RoundedInstance ri = round_to_grid(inst, Rational(1, 2), Rational(1));
  RecursiveMilp rm = build_recursive_milp(ri);
  auto sol = solve_recursive_milp(rm);
  ASSERT_TRUE(sol);
  AssignStats st;
  Schedule s = assign_confs_to_machines(rm, *sol, ri, as_rationals(inst.jobs),
                                        as_rationals(inst.machines), &st);
  EXPECT_EQ(st.extra_copies, 0u);
  EXPECT_TRUE(validate_schedule(inst, s, Rational(1)).ok);
}

TEST(AssignConfs, FractionalVariableAddsOneCopyOnFastest) {
  Instance inst = Instance::make({2}, {1, 2});
  RoundedInstance ri = round_to_grid(inst, Rational(1, 2), Rational(1));
  RecursiveMilp rm = build_recursive_milp(ri);
  auto sol = solve_recursive_milp(rm);
  ASSERT_TRUE(sol);
  // Split the unit of the hosting variable into two halves.
  ConfigMilpSolution half = *sol;
  std::size_t host = rm.vars.size();
  for (std::size_t v = 0; v < rm.vars.size(); ++v) {
    if (half.x[v] == 1 && !rm.vars[v].gamma.empty()) host = v;
  }
  ASSERT_LT(host, rm.vars.size());
  half.x[host] = Rational(1, 2);
  AssignStats st;
  Schedule s = assign_confs_to_machines(rm, half, ri, as_rationals(inst.jobs),
                                        as_rationals(inst.machines), &st);
  EXPECT_EQ(st.extra_copies, 1u);
  EXPECT_EQ(s.assignment, (std::vector<std::size_t>{1}));
}

TEST(AssignConfs, EndToEndSchedulesAreValid) {
  const Rational delta(1, 4);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Instance inst = generate_sized(300 + seed, 6, 3, 4, 2);
    const Rational opt = opt_makespan_bruteforce(inst).opt;
    const Rational guess = (1 + 17 * delta) * opt;
    RoundedInstance ri = round_to_grid(inst, delta, guess);
    RecursiveMilp rm = build_recursive_milp(ri);
    auto sol = solve_recursive_milp(rm);
    ASSERT_TRUE(sol) << seed;
    Schedule s = assign_confs_to_machines(rm, *sol, ri, as_rationals(inst.jobs),
                                          as_rationals(inst.machines));
    Validation v = validate_schedule(inst, s, (1 + 5 * delta) * guess);
    EXPECT_TRUE(v.ok) << seed << ": " << v.message;
  }
}

}  // namespace
}  // namespace qsched
