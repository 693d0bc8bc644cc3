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
#include <optional>
#include <vector>

#include "qsched/sched/generator.hpp"
#include "qsched/sched/oracle.hpp"
#include "qsched/sched/preprocess.hpp"

namespace qsched {
namespace {

TEST(Trim, DropsShortJob) {
  auto [out, rec] = trim_negligible(Instance::make({1, 100}, {1}), Rational(1, 2));
  EXPECT_EQ(out.jobs, (std::vector<std::int64_t>{100}));
  EXPECT_EQ(rec.removed_jobs, (std::vector<std::size_t>{0}));
  EXPECT_EQ(rec.kept_jobs, (std::vector<std::size_t>{1}));
  EXPECT_TRUE(rec.removed_machines.empty());
}

TEST(Trim, EqualValuesStay) {
  auto [out, rec] = trim_negligible(Instance::make({3, 3, 3}, {2, 2}), Rational(1, 2));
  EXPECT_EQ(out.jobs.size(), 3u);
  EXPECT_EQ(out.machines.size(), 2u);
  EXPECT_TRUE(rec.removed_jobs.empty());
  EXPECT_TRUE(rec.removed_machines.empty());
}

TEST(Trim, SurplusMachinesGoFirst) {
  auto [out, rec] = trim_negligible(Instance::make({1, 1}, {1, 2, 3, 4, 5}), Rational(1, 4));
  EXPECT_EQ(rec.removed_machines, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(out.machines, (std::vector<std::int64_t>{4, 5}));
}

TEST(Trim, HighMultiplicityMatchesExpanded) {
  HMInstance hm = HMInstance::make({{1, 1}, {100, 1}}, {{1, 3}, {8, 1}});
  auto [out, rec] = trim_negligible(hm, Rational(1, 2));
  EXPECT_EQ(out.jobs, (std::vector<std::pair<std::int64_t, std::int64_t>>{{100, 1}}));
  EXPECT_EQ(rec.removed_jobs, (std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 1}}));
  EXPECT_EQ(rec.removed_machines, (std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 2}, {1, 1}}));
}

TEST(Trim, PostStateRatios) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Instance inst = generate_sized(seed, 12, 6, 8, 6);
    const Rational delta(1, 4);
    auto [out, rec] = trim_negligible(inst, delta);
    ASSERT_FALSE(out.jobs.empty());
    ASSERT_FALSE(out.machines.empty());
    const Rational n(static_cast<long>(inst.n()));
    EXPECT_LT(Rational(out.jobs.back(), out.jobs.front()), n / delta);
    EXPECT_LT(Rational(out.machines.back(), out.machines.front()), n / delta);
    EXPECT_LE(out.machines.size(), inst.n());
    EXPECT_EQ(rec.removed_jobs.size() + rec.kept_jobs.size(), inst.n());
  }
}

TEST(Preround, PowersOfTwo) {
  auto r = preround(Instance::make({3, 5, 8}, {1}), Rational(1));
  EXPECT_EQ(r.jobs, (ValueCounts{{2, 1}, {4, 1}, {8, 1}}));
  auto same = preround(Instance::make({4}, {1}), Rational(1));
  EXPECT_EQ(same.jobs, (ValueCounts{{4, 1}}));
  auto grouped = preround(Instance::make({3, 3, 3}, {1}), Rational(1));
  EXPECT_EQ(grouped.jobs, (ValueCounts{{2, 3}}));
}

TEST(Preround, FloorProperty) {
  const Rational delta(1, 3);
  for (long v = 1; v <= 500; ++v) {
    Rational x = power_floor(Rational(v), delta);
    EXPECT_LE(x, v);
    EXPECT_GT(x * (1 + delta), v);
  }
  EXPECT_THROW(power_floor(Rational(1, 2), delta), std::domain_error);
}

TEST(Grid, HalfDeltaPrefix) {
  Grid g = make_grid(Rational(1, 2), 2, Rational(8));
  EXPECT_EQ(g.lambda, 2u);
  ASSERT_GE(g.b.size(), 5u);
  EXPECT_EQ(g.b[0], 8);
  EXPECT_EQ(g.b[1], 6);
  EXPECT_EQ(g.b[2], 4);
  EXPECT_EQ(g.b[3], 3);
  EXPECT_EQ(g.b[4], 2);
}

TEST(Grid, PairIdentityAtHalf) {
  Grid g = make_grid(Rational(1, 2), 3, Rational(1));
  for (std::size_t k = 1; k + 1 < g.kappa; ++k) {
    auto a = g.index(k, 0), b = g.index(k, 2), c = g.index(k - 1, 1);
    ASSERT_TRUE(a && b && c);
    EXPECT_EQ(g.b[*a] + g.b[*b], Rational(3, 2) / pow_of(Rational(2), k));
    EXPECT_EQ(g.b[*a] + g.b[*b], g.b[*c]);
  }
}

TEST(Grid, ConsecutiveRatios) {
  for (const Rational& d : {Rational(1), Rational(1, 2), Rational(1, 3), Rational(1, 8)}) {
    Grid g = make_grid(d, 4, Rational(5));
    for (std::size_t r = 1; r < g.tau; ++r) {
      const std::size_t l = g.l_of(r);
      const Rational ratio = g.b[r - 1] / g.b[r];
      if (l > 0) {
        EXPECT_EQ(ratio, 1 + Rational(1, static_cast<long>(2 * g.lambda - l)));
      }
      EXPECT_LE(ratio, 1 + d);
    }
  }
  EXPECT_THROW(make_grid(Rational(0), 2, Rational(1)), std::domain_error);
  EXPECT_THROW(make_grid(Rational(2), 2, Rational(1)), std::domain_error);
}

TEST(Grid, RoundUpIsSmallestCoveringValue) {
  Grid g = make_grid(Rational(1, 4), 3, Rational(4));
  for (long num = 1; num <= 64; ++num) {
    const Rational v(num, 16);
    if (v < g.b.back()) continue;
    const std::size_t r = g.round_up(v);
    EXPECT_GE(g.b[r], v);
    if (r + 1 < g.tau) {
      EXPECT_LT(g.b[r + 1], v);
    }
  }
  EXPECT_THROW(g.round_up(Rational(5)), std::domain_error);
}

TEST(RoundToGrid, ConservativeAndCounted) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Instance inst = generate_sized(seed, 8, 4, 4, 2);
    const Rational T = opt_makespan_bruteforce(inst).opt;
    RoundedInstance ri = round_to_grid(inst, Rational(1, 4), T);
    Integer jobs = 0, machines = 0;
    for (const auto& v : ri.eta) jobs += v;
    for (const auto& v : ri.mu) machines += v;
    EXPECT_EQ(jobs, static_cast<long>(inst.n()));
    EXPECT_EQ(machines, static_cast<long>(inst.m()));
    for (std::size_t j = 0; j < inst.n(); ++j) {
      const Rational scaled = Rational(inst.jobs[j]) / T;
      const Rational up = ri.grid.b[ri.job_class_index[j]];
      EXPECT_GE(up, scaled);
      EXPECT_LE(up, (1 + Rational(1, 4)) * scaled);
    }
  }
}

std::optional<int> exact_probe(const Instance& inst, const Rational& T, const Rational& opt) {
  (void)inst;
  if (opt <= T) return 1;
  return std::nullopt;
}

TEST(MakespanSearch, SingleJobSingleMachine) {
  auto r = makespan_search(Rational(7, 2), Rational(1, 2), 1,
                           [](const Rational& T) -> std::optional<int> {
                             if (T >= Rational(7, 2)) return 1;
                             return std::nullopt;
                           });
  EXPECT_EQ(r.T, Rational(7, 2));
  EXPECT_EQ(r.k, 0u);
}

TEST(MakespanSearch, ExactProbeWithinOneStep) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Instance inst = generate_sized(seed, 8, 3, 4, 2);
    const Rational opt = opt_makespan_bruteforce(inst).opt;
    const Rational delta(1, 4);
    const Rational t0 = Rational(inst.jobs.back(), inst.machines.back());
    auto r = makespan_search(t0, delta, static_cast<std::int64_t>(inst.n()),
                             [&](const Rational& T) { return exact_probe(inst, T, opt); });
    EXPECT_GE(r.T, opt);
    EXPECT_LE(r.T, (1 + delta) * opt);
    EXPECT_LE(r.probes, 12u);
  }
}

TEST(MakespanSearch, ExtendsPastTopGuess) {
  std::size_t calls = 0;
  auto r = makespan_search(Rational(1), Rational(1), 2, [&](const Rational& T) -> std::optional<int> {
    ++calls;
    if (T >= 8) return 1;
    return std::nullopt;
  });
  EXPECT_EQ(r.T, 8);
  EXPECT_EQ(r.probes, calls);
  EXPECT_THROW(makespan_search(Rational(1), Rational(1), 2,
                               [](const Rational&) -> std::optional<int> { return std::nullopt; }, 3),
               std::runtime_error);
}

}  // namespace
}  // namespace qsched
