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

#ifndef QSCHED_SCHED_RECURSIVE_MILP_HPP_
#define QSCHED_SCHED_RECURSIVE_MILP_HPP_

#include <algorithm>
#include <cstddef>
#include <deque>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qsched/ilp/branch_and_bound.hpp"
#include "qsched/ilp/milp.hpp"
#include "qsched/rational.hpp"
#include "qsched/sched/configurations.hpp"
#include "qsched/sched/instance.hpp"
#include "qsched/sched/preprocess.hpp"

namespace qsched {

struct RecursiveOptions {
  // Keep only componentwise-maximal configurations plus the empty one.
  bool maximal_only = true;
  // Drop grid indices below the smallest job that carry no machine.
  bool prune_inactive = true;
};

struct ConfigVar {
  std::size_t i;
  Config gamma;
};

struct RecursiveMilp {
  Milp milp;
  std::vector<ConfigVar> vars;
  std::vector<std::size_t> active;
  std::vector<bool> usable;
  std::vector<long> row_of;
  std::vector<Integer> box;
};

// Values aligned with RecursiveMilp::vars.
struct ConfigMilpSolution {
  std::vector<Rational> x;
};

inline std::vector<bool> usable_indices(const RoundedInstance& ri, bool prune) {
  const Grid& g = ri.grid;
  std::vector<bool> use(g.tau, !prune);
  if (!prune) return use;
  std::size_t smallest = 0;
  for (std::size_t r = 0; r < g.tau; ++r) {
    if (ri.eta[r] > 0) smallest = r;
  }
  for (std::size_t r = 0; r < g.tau; ++r) {
    use[r] = r <= smallest || ri.mu[r] > 0;
  }
  return use;
}

inline RecursiveMilp build_recursive_milp(const RoundedInstance& ri,
                                          const RecursiveOptions& opt = {}) {
  const Grid& g = ri.grid;
  RecursiveMilp rm;
  rm.usable = usable_indices(ri, opt.prune_inactive);
  rm.row_of.assign(g.tau, -1);
  for (std::size_t i = 0; i < g.tau; ++i) {
    if (!rm.usable[i]) continue;
    rm.row_of[i] = static_cast<long>(rm.active.size());
    rm.active.push_back(i);
    auto cs = build_configurations(g, i, &rm.usable);
    if (opt.maximal_only) cs = maximal_configurations(cs);
    if (std::find(cs.begin(), cs.end(), Config{}) == cs.end()) {
      cs.insert(cs.begin(), Config{});
    }
    for (auto& c : cs) rm.vars.push_back({i, std::move(c)});
  }
  const std::size_t nv = rm.vars.size();
  std::size_t n_int = 0;
  while (n_int < nv && rm.vars[n_int].i < g.L) ++n_int;
  rm.milp.num_int = n_int;
  rm.milp.num_cont = nv - n_int;
  const std::size_t rows = rm.active.size();
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t i = rm.active[r];
    rm.milp.add_row(std::vector<Integer>(nv, 0), Sense::kEq, ri.mu[i] - ri.eta[i]);
  }
  for (std::size_t v = 0; v < nv; ++v) {
    rm.milp.a[rm.row_of[rm.vars[v].i]][v] += 1;
    for (auto [j, k] : rm.vars[v].gamma) rm.milp.a[rm.row_of[j]][v] -= k;
  }
  for (std::size_t i : rm.active) {
    if (ri.mu[i] == 0) continue;
    std::vector<Integer> row(nv, 0);
    for (std::size_t v = 0; v < nv; ++v) {
      if (rm.vars[v].i == i) row[v] = 1;
    }
    rm.milp.add_row(std::move(row), Sense::kGe, ri.mu[i]);
  }
  Integer machines = 0, jobs = 0;
  for (std::size_t r = 0; r < g.tau; ++r) {
    machines += ri.mu[r];
    jobs += ri.eta[r];
  }
  long width = 1;
  for (const auto& v : rm.vars) width = std::max(width, 1 + config_norm(v.gamma));
  rm.box.assign(n_int, (machines + jobs * static_cast<long>(g.tau)) * width);
  return rm;
}

inline ConfigMilpSolution from_milp_solution(const RecursiveMilp& /*rm*/,
                                             const MilpSolution& s) {
  ConfigMilpSolution out;
  for (const auto& v : s.x) out.x.emplace_back(v);
  for (const auto& v : s.y) out.x.push_back(v);
  return out;
}

// Branch and bound on the recursive MILP, then the continuous part is
// replaced by a vertex of the restricted LP.
inline std::optional<ConfigMilpSolution> solve_recursive_milp(const RecursiveMilp& rm) {
  auto r = solve_milp_feasibility(rm.milp, rm.box);
  if (!r.feasible()) return std::nullopt;
  return from_milp_solution(rm, project_to_vertex(rm.milp, r.solution));
}

inline bool satisfies(const RecursiveMilp& rm, const ConfigMilpSolution& s) {
  MilpSolution ms;
  for (std::size_t v = 0; v < s.x.size(); ++v) {
    if (v < rm.milp.num_int) {
      if (!is_integral(s.x[v])) return false;
      ms.x.push_back(s.x[v].get_num());
    } else {
      ms.y.push_back(s.x[v]);
    }
  }
  return satisfies(rm.milp, ms);
}

// Witness for a schedule: every machine's job set is solved as its own
// one-machine system on the same columns and the solutions are summed.
inline std::optional<ConfigMilpSolution> schedule_to_solution(
    const Instance& inst, const Schedule& sched, const RoundedInstance& ri,
    const RecursiveMilp& rm) {
  if (sched.assignment.size() != inst.n()) {
    throw std::invalid_argument("schedule_to_solution: schedule invalid");
  }
  ConfigMilpSolution total;
  total.x.assign(rm.vars.size(), 0);
  const std::size_t base_rows = rm.active.size();
  for (std::size_t m = 0; m < inst.m(); ++m) {
    std::vector<Integer> mu(ri.grid.tau, 0), eta(ri.grid.tau, 0);
    mu[ri.machine_class_index.at(m)] += 1;
    for (std::size_t j = 0; j < inst.n(); ++j) {
      if (sched.assignment[j] == m) eta[ri.job_class_index.at(j)] += 1;
    }
    Milp sub = rm.milp;
    sub.a.resize(base_rows);
    sub.sense.resize(base_rows);
    sub.rhs.resize(base_rows);
    for (std::size_t r = 0; r < base_rows; ++r) {
      std::size_t i = rm.active[r];
      sub.rhs[r] = mu[i] - eta[i];
      if (mu[i] > 0) {
        std::vector<Integer> row(rm.vars.size(), 0);
        for (std::size_t v = 0; v < rm.vars.size(); ++v) {
          if (rm.vars[v].i == i) row[v] = 1;
        }
        sub.add_row(std::move(row), Sense::kGe, mu[i]);
      }
    }
    auto r = solve_milp_feasibility(sub, rm.box);
    if (!r.feasible()) return std::nullopt;
    for (std::size_t v = 0; v < r.solution.x.size(); ++v) total.x[v] += r.solution.x[v];
    for (std::size_t v = 0; v < r.solution.y.size(); ++v) {
      total.x[rm.milp.num_int + v] += r.solution.y[v];
    }
  }
  return total;
}

struct AssignStats {
  std::size_t extra_copies = 0;
  std::size_t dropped_copies = 0;
};

// Configurations are handed to machines by decreasing speed; unfilled
// slots become virtual machines hosted on the real machine. Jobs of one
// grid size are used in descending `job_key` order.
inline Schedule assign_confs_to_machines(const RecursiveMilp& rm,
                                         const ConfigMilpSolution& sol,
                                         const RoundedInstance& ri,
                                         const std::vector<Rational>& job_key,
                                         const std::vector<Rational>& machine_speed,
                                         AssignStats* stats = nullptr) {
  const Grid& g = ri.grid;
  const std::size_t n = ri.job_class_index.size(), m = ri.machine_class_index.size();
  std::vector<std::deque<std::size_t>> jobs(g.tau);
  {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return job_key[a] > job_key[b];
    });
    for (std::size_t j : order) jobs[ri.job_class_index[j]].push_back(j);
  }
  std::vector<std::vector<std::size_t>> hosts(g.tau);
  std::size_t fastest = 0;
  for (std::size_t i = 0; i < m; ++i) {
    hosts[ri.machine_class_index[i]].push_back(i);
    if (machine_speed[i] > machine_speed[fastest]) fastest = i;
  }
  Schedule out;
  out.assignment.assign(n, m);
  AssignStats st;
  auto place = [&](const Config& gamma, std::size_t host) {
    for (auto [j, c] : gamma) {
      for (long t = 0; t < c; ++t) {
        if (!jobs[j].empty()) {
          out.assignment[jobs[j].front()] = host;
          jobs[j].pop_front();
        } else {
          hosts[j].push_back(host);
        }
      }
    }
  };
  std::vector<std::vector<std::size_t>> by_index(g.tau);
  for (std::size_t v = 0; v < rm.vars.size(); ++v) by_index[rm.vars[v].i].push_back(v);
  for (std::size_t i = 0; i < g.tau; ++i) {
    // Self configurations {e_i} go last.
    auto& vs = by_index[i];
    std::stable_partition(vs.begin(), vs.end(), [&](std::size_t v) {
      const Config& c = rm.vars[v].gamma;
      return !(c.size() == 1 && c[0].first == i);
    });
    std::size_t next = 0;
    for (std::size_t v : vs) {
      const Rational& x = sol.x[v];
      Integer copies = floor_of(x);
      for (Integer t = 0; t < copies; ++t) {
        if (next >= hosts[i].size()) {
          ++st.dropped_copies;
          continue;
        }
        place(rm.vars[v].gamma, hosts[i][next++]);
      }
      if (!is_integral(x)) {
        ++st.extra_copies;
        place(rm.vars[v].gamma, fastest);
      }
    }
  }
  if (stats) *stats = st;
  for (std::size_t j = 0; j < n; ++j) {
    if (out.assignment[j] == m) {
      throw std::logic_error("assign_confs_to_machines: job left unassigned");
    }
  }
  return out;
}

}  // namespace qsched

#endif  // QSCHED_SCHED_RECURSIVE_MILP_HPP_
