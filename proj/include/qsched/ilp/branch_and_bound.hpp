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

#ifndef QSCHED_ILP_BRANCH_AND_BOUND_HPP_
#define QSCHED_ILP_BRANCH_AND_BOUND_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "qsched/ilp/milp.hpp"
#include "qsched/ilp/simplex.hpp"
#include "qsched/rational.hpp"

namespace qsched {

// Upper bounds on integer columns implied by equality rows whose
// coefficients are all non-negative.
inline std::vector<std::optional<Integer>> implied_box(const Milp& m) {
  std::vector<std::optional<Integer>> box(m.num_int);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.sense[i] != Sense::kEq || m.rhs[i] < 0) continue;
    bool nonneg = true;
    for (const auto& v : m.a[i]) nonneg = nonneg && v >= 0;
    if (!nonneg) continue;
    for (std::size_t j = 0; j < m.num_int; ++j) {
      if (m.a[i][j] <= 0) continue;
      Integer q = m.rhs[i] / m.a[i][j];
      if (!box[j] || q < *box[j]) box[j] = q;
    }
  }
  return box;
}

namespace detail {

// Depth-first branch and bound on the lowest-index fractional column,
// ceiling branch first. `upper` holds the search box; a column whose
// upper entry is set is never pushed above it.
inline MilpResult branch_and_bound(const Milp& m, std::vector<Integer> lower,
                                   std::vector<std::optional<Integer>> upper,
                                   const std::vector<Integer>& box) {
  struct Node {
    std::vector<Integer> lower;
    std::vector<std::optional<Integer>> upper;
  };
  std::vector<Node> stack;
  stack.push_back({std::move(lower), std::move(upper)});
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    auto lp = solve_lp(m, node.lower, node.upper, false);
    if (lp.status != Status::kFeasible) continue;
    std::size_t frac = m.num_int;
    for (std::size_t j = 0; j < m.num_int; ++j) {
      if (!is_integral(lp.x[j])) {
        frac = j;
        break;
      }
    }
    if (frac == m.num_int) {
      MilpResult out;
      out.status = Status::kFeasible;
      for (std::size_t j = 0; j < m.num_int; ++j) {
        out.solution.x.push_back(lp.x[j].get_num());
      }
      out.solution.y.assign(lp.x.begin() + m.num_int, lp.x.end());
      return out;
    }
    Integer fl = floor_of(lp.x[frac]);
    Node down = node;
    down.upper[frac] = down.upper[frac] ? std::min(*down.upper[frac], fl) : fl;
    stack.push_back(std::move(down));
    if (fl + 1 <= box[frac]) {
      node.lower[frac] = fl + 1;
      stack.push_back(std::move(node));
    }
  }
  return MilpResult{};
}

inline std::vector<Integer> resolve_box(
    const Milp& m, const std::optional<std::vector<Integer>>& box) {
  auto implied = implied_box(m);
  std::vector<Integer> out(m.num_int);
  for (std::size_t j = 0; j < m.num_int; ++j) {
    if (box) {
      out[j] = (*box)[j];
      if (implied[j] && *implied[j] < out[j]) out[j] = *implied[j];
    } else if (implied[j]) {
      out[j] = *implied[j];
    } else {
      throw BoundUnderivable("integer column " + std::to_string(j) +
                             " has no derivable bound; supply a box");
    }
  }
  return out;
}

}  // namespace detail

// Exact mixed-integer feasibility. The optional box caps every integer
// column; without it every integer column must be bounded by an
// all-non-negative equality row.
inline MilpResult solve_milp_feasibility(
    const Milp& m, const std::optional<std::vector<Integer>>& box = std::nullopt) {
  m.validate();
  auto cap = detail::resolve_box(m, box);
  std::vector<Integer> lower(m.cols(), 0);
  std::vector<std::optional<Integer>> upper(m.cols());
  return detail::branch_and_bound(m, std::move(lower), std::move(upper), cap);
}

// Re-solves the continuous part with the integer part fixed, returning a
// vertex of the restricted LP.
inline MilpSolution project_to_vertex(const Milp& m, const MilpSolution& s) {
  Milp r;
  r.num_cont = m.num_cont;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer b = m.rhs[i];
    for (std::size_t j = 0; j < m.num_int; ++j) b -= m.a[i][j] * s.x[j];
    r.add_row(std::vector<Integer>(m.a[i].begin() + m.num_int, m.a[i].end()),
              m.sense[i], b);
  }
  auto lp = solve_lp_vertex(r);
  MilpSolution out;
  out.x = s.x;
  out.y = lp.feasible() ? lp.solution.y : s.y;
  return out;
}

}  // namespace qsched

#endif  // QSCHED_ILP_BRANCH_AND_BOUND_HPP_
