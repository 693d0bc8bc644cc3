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

#ifndef QSCHED_SCHED_INSTANCE_HPP_
#define QSCHED_SCHED_INSTANCE_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qsched/rational.hpp"

namespace qsched {

// Processing times and speeds, both sorted ascending.
struct Instance {
  std::vector<std::int64_t> jobs;
  std::vector<std::int64_t> machines;

  static Instance make(std::vector<std::int64_t> jobs,
                       std::vector<std::int64_t> machines) {
    std::sort(jobs.begin(), jobs.end());
    std::sort(machines.begin(), machines.end());
    Instance inst{std::move(jobs), std::move(machines)};
    inst.validate();
    return inst;
  }

  void validate() const {
    if (jobs.empty() || machines.empty()) {
      throw std::invalid_argument("instance: empty job or machine list");
    }
    for (auto v : jobs) {
      if (v < 1) throw std::invalid_argument("instance: processing time < 1");
    }
    for (auto v : machines) {
      if (v < 1) throw std::invalid_argument("instance: speed < 1");
    }
    if (!std::is_sorted(jobs.begin(), jobs.end()) ||
        !std::is_sorted(machines.begin(), machines.end())) {
      throw std::invalid_argument("instance: lists must be sorted");
    }
  }

  std::size_t n() const { return jobs.size(); }
  std::size_t m() const { return machines.size(); }
};

// assignment[j] is the machine of job j.
struct Schedule {
  std::vector<std::size_t> assignment;
};

inline std::vector<Rational> completion_times(const Instance& inst,
                                              const Schedule& s) {
  std::vector<Integer> load(inst.m(), 0);
  for (std::size_t j = 0; j < s.assignment.size(); ++j) {
    load.at(s.assignment[j]) += inst.jobs.at(j);
  }
  std::vector<Rational> c(inst.m());
  for (std::size_t i = 0; i < inst.m(); ++i) {
    c[i] = Rational(load[i], inst.machines[i]);
    c[i].canonicalize();
  }
  return c;
}

inline Rational makespan(const Instance& inst, const Schedule& s) {
  Rational best = 0;
  for (const auto& c : completion_times(inst, s)) best = std::max(best, c);
  return best;
}

}  // namespace qsched

#endif  // QSCHED_SCHED_INSTANCE_HPP_
