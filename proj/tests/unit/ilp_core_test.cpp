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

#include <cstdint>
#include <vector>

#include "qsched/bounds/support_bounds.hpp"
#include "qsched/ilp/branch_and_bound.hpp"
#include "qsched/ilp/milp.hpp"
#include "qsched/ilp/simplex.hpp"
#include "qsched/ilp/support.hpp"
#include "qsched/sched/generator.hpp"

namespace qsched {
namespace {

Milp parse(const char* text) { return milp_from_text(text); }

TEST(LpVertex, SingleTightRowWithObjective) {
  Milp m = parse("int 0 cont 2\n1 1 = 1\nmin 1 0\n");
  auto r = solve_lp_vertex(m);
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.solution.y, (std::vector<Rational>{0, 1}));
}

TEST(LpVertex, NegativeRightHandSideIsInfeasible) {
  Milp m = parse("int 0 cont 1\n1 = -1\n");
  EXPECT_EQ(solve_lp_vertex(m).status, Status::kInfeasible);
}

TEST(LpVertex, TwoByTwoSystem) {
  Milp m = parse("int 0 cont 2\n2 1 = 4\n1 1 = 3\n");
  auto r = solve_lp_vertex(m);
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.solution.y, (std::vector<Rational>{1, 2}));
}

TEST(LpVertex, UnboundedObjective) {
  Milp m = parse("int 0 cont 2\n1 -1 = 1\nmin 0 -1\n");
  EXPECT_EQ(solve_lp_vertex(m).status, Status::kUnbounded);
}

TEST(LpVertex, RejectsIntegerColumns) {
  Milp m = parse("int 1 cont 0\n1 = 1\n");
  EXPECT_THROW(solve_lp_vertex(m), std::invalid_argument);
}

TEST(LpVertex, GreaterEqualRows) {
  Milp m = parse("int 0 cont 2\n1 1 >= 3\n1 0 >= 1\nmin 1 1\n");
  auto r = solve_lp_vertex(m);
  ASSERT_TRUE(r.feasible());
  EXPECT_TRUE(satisfies(m, r.solution));
  EXPECT_EQ(r.solution.y[0] + r.solution.y[1], 3);
}

TEST(MilpFeasibility, HalfIntegralFixUp) {
  Milp m = parse("int 1 cont 1\n2 2 = 3\n");
  auto r = solve_milp_feasibility(m);
  ASSERT_TRUE(r.feasible());
  EXPECT_TRUE(satisfies(m, r.solution));
  EXPECT_TRUE(r.solution.x[0] == 0 || r.solution.x[0] == 1);
}

TEST(MilpFeasibility, ParityConflict) {
  Milp m = parse("int 1 cont 0\n2 = 3\n");
  EXPECT_FALSE(solve_milp_feasibility(m).feasible());
}

TEST(MilpFeasibility, TwoColumnKnapsack) {
  Milp m = parse("int 2 cont 0\n1 2 = 7\n");
  auto r = solve_milp_feasibility(m);
  ASSERT_TRUE(r.feasible());
  const std::vector<std::vector<Integer>> allowed{{7, 0}, {5, 1}, {3, 2}, {1, 3}};
  EXPECT_NE(std::find(allowed.begin(), allowed.end(), r.solution.x), allowed.end());
}

TEST(MilpFeasibility, UnboundedColumnNeedsBox) {
  Milp m = parse("int 2 cont 0\n1 -1 = 0\n");
  EXPECT_THROW(solve_milp_feasibility(m), BoundUnderivable);
  auto r = solve_milp_feasibility(m, std::vector<Integer>{3, 3});
  ASSERT_TRUE(r.feasible());
  EXPECT_TRUE(satisfies(m, r.solution));
}

TEST(MilpFeasibility, Deterministic) {
  Milp m = parse("int 3 cont 1\n3 5 7 1 = 23\n1 1 1 0 >= 2\n");
  auto a = solve_milp_feasibility(m), b = solve_milp_feasibility(m);
  ASSERT_TRUE(a.feasible());
  EXPECT_EQ(a.solution.x, b.solution.x);
  EXPECT_EQ(a.solution.y, b.solution.y);
}

TEST(SupportBounded, EmptySupportFirst) {
  Milp m = parse("int 2 cont 1\n1 1 1 = 2\n");
  auto r = solve_support_bounded(m, 2);
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.solution.support(), 0u);
}

TEST(SupportBounded, ExactlyOneUnit) {
  Milp m = parse("int 2 cont 0\n1 1 = 1\n");
  auto r = solve_support_bounded(m, 1);
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.solution.support(), 1u);
  EXPECT_TRUE(satisfies(m, r.solution));
}

TEST(SupportBounded, PowersOfTwoRow) {
  Milp m = lower_bound_instance(1, 4);
  m.objective.clear();
  for (std::size_t s : {1u, 2u, 3u}) {
    auto r = solve_support_bounded(m, s);
    ASSERT_TRUE(r.feasible());
    EXPECT_EQ(r.solution.x, (std::vector<Integer>{7, 0, 0}));
  }
  auto brute = brute_force_min_support(m, {7, 3, 1});
  EXPECT_EQ(brute.solution.support(), 1u);
}

TEST(SupportBounded, InfeasibleWithinSupport) {
  Milp m = parse("int 3 cont 0\n1 0 0 = 1\n0 1 0 = 1\n0 0 1 = 1\n");
  EXPECT_EQ(solve_support_bounded(m, 2).status, Status::kInfeasibleWithinSupport);
  EXPECT_TRUE(solve_support_bounded(m, 3).feasible());
  EXPECT_THROW(solve_support_bounded(m, 4), std::invalid_argument);
}

TEST(BruteForceSupport, SingleColumn) {
  Milp m = parse("int 1 cont 0\n1 = 5\n");
  auto r = brute_force_min_support(m, {5});
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.solution.x, (std::vector<Integer>{5}));
}

TEST(BruteForceSupport, Parity) {
  Milp m = parse("int 1 cont 0\n2 = 3\n");
  EXPECT_FALSE(brute_force_min_support(m, {3}).feasible());
}

TEST(BruteForceSupport, LowerBoundInstanceHasUniqueOnesOptimum) {
  Milp m = lower_bound_instance(2, 4);
  auto r = brute_force_min_support(m, {7, 3, 1, 7, 3, 1});
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.solution.x, std::vector<Integer>(6, 1));
  EXPECT_EQ(r.optimal_count, 1u);
  EXPECT_EQ(r.solution.support(), 6u);
}

TEST(BruteForceSupport, NodeGuard) {
  Milp m = parse("int 3 cont 0\n1 1 1 >= 0\n");
  EXPECT_THROW(brute_force_min_support(m, {100, 100, 100}, 1000), SearchSpaceTooLarge);
}

TEST(MilpText, RoundTrip) {
  Milp m = parse("int 2 cont 1\n1 -2 3 = 4\n0 1 1 >= 2\nmin 1/2 0 -1\n");
  EXPECT_EQ(to_text(milp_from_text(to_text(m))), to_text(m));
  EXPECT_THROW(milp_from_text("int 1 cont 0\n1 2 = 3\n"), std::invalid_argument);
}

// Random bounded systems: first row has positive entries.
Milp random_system(std::uint64_t seed, bool with_cont) {
  SplitMix64 rng(seed);
  Milp m;
  m.num_int = static_cast<std::size_t>(rng.uniform(1, 4));
  m.num_cont = with_cont ? static_cast<std::size_t>(rng.uniform(0, 2)) : 0;
  const auto rows = static_cast<std::size_t>(rng.uniform(1, 3));
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<Integer> row;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row.emplace_back(static_cast<long>(i == 0 ? rng.uniform(1, 3) : rng.uniform(-3, 3)));
    }
    const long b = i == 0 ? static_cast<long>(rng.uniform(0, 8)) : static_cast<long>(rng.uniform(-3, 3));
    m.add_row(std::move(row), rng.uniform(0, 3) == 0 && i > 0 ? Sense::kGe : Sense::kEq, b);
  }
  return m;
}

TEST(IlpProperty, ReturnedSolutionsSatisfyEveryRow) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Milp m = random_system(seed, true);
    auto r = solve_milp_feasibility(m);
    if (r.feasible()) {
      EXPECT_TRUE(satisfies(m, r.solution)) << to_text(m);
    }
  }
}

TEST(IlpProperty, VertexSupportAtMostRowCount) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Milp m = random_system(seed, false);
    std::swap(m.num_int, m.num_cont);
    auto r = solve_lp_vertex(m);
    if (!r.feasible()) continue;
    std::size_t supp = 0;
    for (const auto& v : r.solution.y) supp += (v != 0);
    EXPECT_LE(supp, m.rows());
    EXPECT_TRUE(satisfies(m, r.solution));
  }
}

TEST(IlpProperty, SupportBoundedMatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Milp m = random_system(seed, false);
    std::vector<Integer> box;
    for (const auto& b : implied_box(m)) box.push_back(*b);
    auto brute = brute_force_min_support(m, box);
    auto fast = solve_support_bounded(m, m.num_int, box);
    ASSERT_EQ(brute.feasible(), fast.feasible()) << to_text(m);
    if (!brute.feasible()) continue;
    EXPECT_EQ(fast.solution.support(), brute.solution.support()) << to_text(m);
    EXPECT_TRUE(satisfies(m, fast.solution));
  }
}

// Two independent random systems side by side, with objectives.
Milp block_pair(std::uint64_t seed) {
  Milp a = random_system(seed, false), b = random_system(seed + 7919, false);
  SplitMix64 rng(seed ^ 0x5bd1e995u);
  Milp m;
  m.num_int = a.num_int + b.num_int;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto row = a.a[i];
    row.resize(m.num_int, 0);
    m.add_row(std::move(row), a.sense[i], a.rhs[i]);
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    std::vector<Integer> row(a.num_int, 0);
    row.insert(row.end(), b.a[i].begin(), b.a[i].end());
    m.add_row(std::move(row), b.sense[i], b.rhs[i]);
  }
  for (std::size_t j = 0; j < m.num_int; ++j) {
    m.objective.emplace_back(static_cast<long>(rng.uniform(-2, 2)));
  }
  return m;
}

TEST(IlpProperty, BlockSplitMatchesJointEnumeration) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Milp m = block_pair(seed);
    std::vector<Integer> box;
    for (const auto& b : implied_box(m)) box.push_back(*b);
    auto split = brute_force_min_support(m, box);
    auto joint = detail::enumerate_box(m, box, 100000000);
    ASSERT_EQ(split.feasible(), joint.feasible()) << to_text(m);
    if (!joint.feasible()) continue;
    EXPECT_EQ(split.solution.x, joint.solution.x) << to_text(m);
    EXPECT_EQ(split.optimal_count, joint.optimal_count) << to_text(m);
  }
}

}  // namespace
}  // namespace qsched
