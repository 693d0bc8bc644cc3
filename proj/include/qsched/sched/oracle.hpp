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

#ifndef QSCHED_SCHED_ORACLE_HPP_
#define QSCHED_SCHED_ORACLE_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "qsched/ilp/milp.hpp"
#include "qsched/rational.hpp"
#include "qsched/sched/instance.hpp"

namespace qsched {

struct OptResult {
  Rational opt;
  Schedule schedule;
};

// Exact optimum by depth-first assignment of jobs in descending order.
// Machines with equal speed and equal current load are tried once.
inline OptResult opt_makespan_bruteforce(const Instance& inst,
                                         std::uint64_t node_limit = 100000000) {
  inst.validate();
  const std::size_t n = inst.n(), m = inst.m();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return inst.jobs[a] > inst.jobs[b];
  });
  std::int64_t total = 0, speed_sum = 0;
  for (auto p : inst.jobs) total += p;
  for (auto s : inst.machines) speed_sum += s;

  // Incumbent from earliest-completion greedy.
  std::vector<std::int64_t> load(m, 0);
  std::vector<std::size_t> assign(n), best_assign(n);
  for (std::size_t j : order) {
    std::size_t pick = 0;
    for (std::size_t i = 1; i < m; ++i) {
      // (load_i + p)/s_i < (load_pick + p)/s_pick
      if ((load[i] + inst.jobs[j]) * inst.machines[pick] <
          (load[pick] + inst.jobs[j]) * inst.machines[i]) {
        pick = i;
      }
    }
    load[pick] += inst.jobs[j];
    best_assign[j] = pick;
  }
  std::int64_t bnum = 0, bden = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (load[i] * bden > bnum * inst.machines[i]) {
      bnum = load[i];
      bden = inst.machines[i];
    }
  }
  std::fill(load.begin(), load.end(), 0);
  std::uint64_t nodes = 0;
  // Partial makespan as a fraction cnum/cden.
  auto rec = [&](auto&& self, std::size_t t, std::int64_t cnum, std::int64_t cden) -> void {
    if (++nodes > node_limit) {
      throw SearchSpaceTooLarge("opt_makespan_bruteforce: node limit");
    }
    if (t == n) {
      if (cnum * bden < bnum * cden) {
        bnum = cnum;
        bden = cden;
        best_assign = assign;
      }
      return;
    }
    if (total * bden >= bnum * speed_sum) return;
    const std::size_t j = order[t];
    const std::int64_t p = inst.jobs[j];
    for (std::size_t i = 0; i < m; ++i) {
      bool seen = false;
      for (std::size_t k = 0; k < i && !seen; ++k) {
        seen = inst.machines[k] == inst.machines[i] && load[k] == load[i];
      }
      if (seen) continue;
      std::int64_t nl = load[i] + p;
      if (nl * bden >= bnum * inst.machines[i]) continue;
      std::int64_t nnum = cnum, nden = cden;
      if (nl * cden > cnum * inst.machines[i]) {
        nnum = nl;
        nden = inst.machines[i];
      }
      load[i] = nl;
      assign[j] = i;
      self(self, t + 1, nnum, nden);
      load[i] -= p;
    }
  };
  rec(rec, 0, 0, 1);
  OptResult out;
  out.schedule.assignment = best_assign;
  out.opt = makespan(inst, out.schedule);
  return out;
}

struct Validation {
  bool ok = true;
  std::string message;
};

// Coverage, machine indices and makespan <= bound, all exact.
inline Validation validate_schedule(const Instance& inst, const Schedule& s,
                                    const Rational& bound) {
  if (s.assignment.size() != inst.n()) {
    return {false, "uncovered job " + std::to_string(std::min(
                       s.assignment.size(), inst.n()))};
  }
  for (std::size_t j = 0; j < inst.n(); ++j) {
    if (s.assignment[j] >= inst.m()) {
      return {false, "job " + std::to_string(j) + " on unknown machine " +
                         std::to_string(s.assignment[j])};
    }
  }
  auto c = completion_times(inst, s);
  for (std::size_t i = 0; i < inst.m(); ++i) {
    if (c[i] > bound) {
      return {false, "machine " + std::to_string(i) + " overloaded: " +
                         to_exact_string(c[i]) + " > " + to_exact_string(bound)};
    }
  }
  return {};
}

}  // namespace qsched

#endif  // QSCHED_SCHED_ORACLE_HPP_
