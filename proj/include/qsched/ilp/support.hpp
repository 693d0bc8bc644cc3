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

#ifndef QSCHED_ILP_SUPPORT_HPP_
#define QSCHED_ILP_SUPPORT_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qsched/ilp/branch_and_bound.hpp"
#include "qsched/ilp/milp.hpp"
#include "qsched/ilp/simplex.hpp"
#include "qsched/rational.hpp"

namespace qsched {

// Tries supports of size 0, 1, ..., s_max in lexicographic order and
// returns the first feasible restriction, so the support is minimum.
inline MilpResult solve_support_bounded(
    const Milp& m, std::size_t s_max,
    const std::optional<std::vector<Integer>>& box = std::nullopt) {
  m.validate();
  if (s_max > m.num_int) {
    throw std::invalid_argument("solve_support_bounded: s_max exceeds n");
  }
  auto implied = implied_box(m);
  std::vector<std::optional<Integer>> cap(m.num_int);
  for (std::size_t j = 0; j < m.num_int; ++j) {
    cap[j] = box ? std::optional<Integer>((*box)[j]) : implied[j];
    if (box && implied[j] && *implied[j] < *cap[j]) cap[j] = implied[j];
  }
  std::vector<std::size_t> pick;
  for (std::size_t k = 0; k <= s_max; ++k) {
    pick.resize(k);
    for (std::size_t t = 0; t < k; ++t) pick[t] = t;
    for (;;) {
      std::vector<Integer> lower(m.cols(), 0);
      std::vector<std::optional<Integer>> upper(m.cols());
      std::vector<Integer> sub_box(m.num_int, 0);
      for (std::size_t j = 0; j < m.num_int; ++j) upper[j] = Integer(0);
      for (std::size_t j : pick) {
        if (!cap[j]) {
          throw BoundUnderivable("integer column " + std::to_string(j) +
                                 " has no derivable bound; supply a box");
        }
        upper[j].reset();
        sub_box[j] = *cap[j];
      }
      auto r = detail::branch_and_bound(m, lower, upper, sub_box);
      if (r.feasible()) return r;
      // Next k-combination in lexicographic order.
      std::size_t t = k;
      while (t > 0 && pick[t - 1] == m.num_int - k + t - 1) --t;
      if (t == 0) break;
      ++pick[t - 1];
      for (std::size_t u = t; u < k; ++u) pick[u] = pick[u - 1] + 1;
    }
  }
  MilpResult out;
  out.status = Status::kInfeasibleWithinSupport;
  return out;
}

struct MinSupportResult {
  Status status = Status::kInfeasible;
  MilpSolution solution;
  // Number of box points attaining the optimal objective (feasible
  // points when no objective is set).
  std::uint64_t optimal_count = 0;

  bool feasible() const { return status == Status::kFeasible; }
};

namespace detail {

inline MinSupportResult enumerate_box(const Milp& m, const std::vector<Integer>& box,
                                      std::uint64_t node_limit) {
  const std::size_t n = m.num_int;
  std::vector<bool> int_only(m.rows(), true);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = n; j < m.cols(); ++j) {
      if (m.a[i][j] != 0) int_only[i] = false;
    }
  }
  // lo[i][j], hi[i][j]: range of row i over columns j..n-1 inside the box.
  std::vector<std::vector<Integer>> lo(m.rows(), std::vector<Integer>(n + 1)),
      hi(m.rows(), std::vector<Integer>(n + 1));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = n; j-- > 0;) {
      Integer v = m.a[i][j] * box[j];
      lo[i][j] = lo[i][j + 1] + (v < 0 ? v : Integer(0));
      hi[i][j] = hi[i][j + 1] + (v > 0 ? v : Integer(0));
    }
  }
  MinSupportResult best;
  Rational best_obj;
  std::vector<Integer> x(n, 0), partial(m.rows(), 0);
  std::uint64_t nodes = 0;
  // Smallest objective contribution of columns j..n-1 inside the box. Only
  // used for pruning when there are no continuous columns.
  const bool has_obj = !m.objective.empty();
  std::vector<Rational> min_rest(n + 1, Rational(0));
  for (std::size_t j = n; j-- > 0;) {
    Rational c = has_obj ? m.objective[j] * box[j] : Rational(0);
    min_rest[j] = min_rest[j + 1] + (c < 0 ? c : Rational(0));
  }
  Rational partial_obj = 0;
  auto consider = [&](const std::vector<Rational>& y, const Rational& obj) {
    std::size_t supp = 0;
    for (const auto& v : x) supp += (v != 0);
    if (!best.feasible() || obj < best_obj) {
      best.status = Status::kFeasible;
      best.solution.x = x;
      best.solution.y = y;
      best.optimal_count = 1;
      best_obj = obj;
      return;
    }
    if (obj == best_obj) {
      ++best.optimal_count;
      if (supp < best.solution.support()) {
        best.solution.x = x;
        best.solution.y = y;
      }
    }
  };
  auto leaf = [&]() {
    Rational obj = partial_obj;
    if (m.num_cont == 0) {
      consider({}, obj);
      return;
    }
    Milp r;
    r.num_cont = m.num_cont;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      r.add_row(std::vector<Integer>(m.a[i].begin() + n, m.a[i].end()),
                m.sense[i], m.rhs[i] - partial[i]);
    }
    if (!m.objective.empty()) {
      r.objective.assign(m.objective.begin() + n, m.objective.end());
    }
    auto lp = solve_lp_vertex(r);
    if (lp.status == Status::kUnbounded) {
      throw std::domain_error("brute_force_min_support: unbounded objective");
    }
    if (!lp.feasible()) return;
    for (std::size_t j = 0; j < m.num_cont; ++j) {
      if (!r.objective.empty()) obj += r.objective[j] * lp.solution.y[j];
    }
    consider(lp.solution.y, obj);
  };
  auto fits = [&](std::size_t next) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (!int_only[i]) continue;
      Integer need = m.rhs[i] - partial[i];
      if (need > hi[i][next]) return false;
      if (m.sense[i] == Sense::kEq && need < lo[i][next]) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (++nodes > node_limit) {
      throw SearchSpaceTooLarge("brute_force_min_support: node limit");
    }
    if (j == n) {
      leaf();
      return;
    }
    const Rational step = has_obj ? m.objective[j] : Rational(0);
    const Rational saved = partial_obj;
    for (Integer v = 0; v <= box[j]; ++v) {
      x[j] = v;
      if (v != 0) {
        for (std::size_t i = 0; i < m.rows(); ++i) partial[i] += m.a[i][j];
        partial_obj += step;
      }
      // Strictly worse branches cannot tie the optimum, so counts stay exact.
      if (m.num_cont == 0 && best.feasible() && partial_obj + min_rest[j + 1] > best_obj) {
        continue;
      }
      if (fits(j + 1)) self(self, j + 1);
    }
    for (std::size_t i = 0; i < m.rows(); ++i) partial[i] -= m.a[i][j] * box[j];
    partial_obj = saved;
    x[j] = 0;
  };
  if (fits(0)) rec(rec, 0);
  return best;
}

// Groups integer columns that share a row.
inline std::vector<std::vector<std::size_t>> column_components(const Milp& m) {
  std::vector<std::size_t> parent(m.num_int);
  for (std::size_t j = 0; j < m.num_int; ++j) parent[j] = j;
  auto find = [&](std::size_t j) {
    while (parent[j] != j) j = parent[j] = parent[parent[j]];
    return j;
  };
  for (const auto& row : m.a) {
    std::optional<std::size_t> first;
    for (std::size_t j = 0; j < m.num_int; ++j) {
      if (row[j] == 0) continue;
      if (first) {
        parent[find(j)] = find(*first);
      } else {
        first = j;
      }
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t j = 0; j < m.num_int; ++j) groups[find(j)].push_back(j);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, cols] : groups) out.push_back(std::move(cols));
  return out;
}

}  // namespace detail

// Exhaustive enumeration of the integer box in lexicographic order with
// interval pruning on integer-only rows. Among feasible points it keeps
// the best objective, then the smallest support, then the first seen.
// Pure integer problems are split into independent column blocks first;
// objectives add, optimal counts multiply and the per-block choices
// combine to the same point as the joint enumeration.
inline MinSupportResult brute_force_min_support(
    const Milp& m, const std::vector<Integer>& box,
    std::uint64_t node_limit = 100000000) {
  m.validate();
  if (box.size() != m.num_int) {
    throw std::invalid_argument("brute_force_min_support: box length");
  }
  if (m.num_cont != 0) return detail::enumerate_box(m, box, node_limit);
  auto comps = detail::column_components(m);
  if (comps.size() <= 1) return detail::enumerate_box(m, box, node_limit);
  MinSupportResult out;
  out.status = Status::kFeasible;
  out.optimal_count = 1;
  out.solution.x.assign(m.num_int, 0);
  for (const auto& cols : comps) {
    Milp sub;
    sub.num_int = cols.size();
    std::vector<Integer> sub_box;
    for (std::size_t j : cols) sub_box.push_back(box[j]);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      bool touches = false;
      std::vector<Integer> row;
      for (std::size_t j : cols) {
        row.push_back(m.a[i][j]);
        touches = touches || m.a[i][j] != 0;
      }
      if (touches) sub.add_row(std::move(row), m.sense[i], m.rhs[i]);
    }
    if (!m.objective.empty()) {
      for (std::size_t j : cols) sub.objective.push_back(m.objective[j]);
    }
    auto r = detail::enumerate_box(sub, sub_box, node_limit);
    if (!r.feasible()) return MinSupportResult{};
    out.optimal_count *= r.optimal_count;
    for (std::size_t t = 0; t < cols.size(); ++t) out.solution.x[cols[t]] = r.solution.x[t];
  }
  // Rows touching no column constrain only the right-hand side.
  for (std::size_t i = 0; i < m.rows(); ++i) {
    bool empty = true;
    for (const auto& v : m.a[i]) empty = empty && v == 0;
    if (!empty) continue;
    const bool ok = m.sense[i] == Sense::kEq ? m.rhs[i] == 0 : m.rhs[i] <= 0;
    if (!ok) return MinSupportResult{};
  }
  return out;
}

}  // namespace qsched

#endif  // QSCHED_ILP_SUPPORT_HPP_
