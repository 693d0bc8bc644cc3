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

#ifndef QSCHED_ILP_SIMPLEX_HPP_
#define QSCHED_ILP_SIMPLEX_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qsched/ilp/milp.hpp"
#include "qsched/rational.hpp"

namespace qsched {
namespace detail {

struct LpResult {
  Status status = Status::kInfeasible;
  std::vector<Rational> x;
};

using SparseColumn = std::vector<std::pair<std::size_t, Integer>>;

// Revised simplex over sparse integer columns with an exact basis
// inverse kept fraction-free: B^-1 = inv_ / det_ and x_B = xb_ / det_ with
// integer inv_, xb_ and det_ > 0. Entering column: lowest index with
// negative reduced cost; leaving row: minimum ratio, ties to the lowest
// basic column (Bland). The starting basis must be the identity.
class RevisedSimplex {
 public:
  RevisedSimplex(std::vector<SparseColumn> cols, std::vector<Integer> b,
                 std::vector<std::size_t> basis)
      : cols_(std::move(cols)),
        xb_(std::move(b)),
        basis_(std::move(basis)),
        cost_(cols_.size()),
        allowed_(cols_.size(), true),
        inv_(xb_.size(), std::vector<Integer>(xb_.size())),
        det_(1) {
    for (std::size_t i = 0; i < xb_.size(); ++i) inv_[i][i] = 1;
    start_.push_back(0);
    for (const auto& col : cols_) {
      for (const auto& [r, a] : col) {
        small_cols_ = small_cols_ && a.fits_slong_p();
        flat_row_.push_back(r);
        flat_coef_.push_back(small_cols_ ? a.get_si() : 0);
      }
      start_.push_back(flat_row_.size());
    }
  }

  std::size_t rows() const { return xb_.size(); }
  std::size_t basis(std::size_t i) const { return basis_[i]; }
  Rational value(std::size_t i) const { return quotient(xb_[i]); }
  void forbid(std::size_t j) { allowed_[j] = false; }

  // Costs are scaled to integers by their common denominator.
  void set_costs(const std::vector<Rational>& c) {
    Integer den = 1;
    for (const auto& v : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    cost_.resize(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) cost_[j] = c[j].get_num() * (den / c[j].get_den());
    cost_den_ = den;
  }

  // Entry (i, j) of the current tableau.
  Rational entry(std::size_t i, std::size_t j) const { return quotient(column_entry(i, j)); }

  Rational objective() const {
    Integer v = 0;
    for (std::size_t i = 0; i < rows(); ++i) v += cost_[basis_[i]] * xb_[i];
    Rational out(v, det_ * cost_den_);
    out.canonicalize();
    return out;
  }

  void pivot(std::size_t r, std::size_t q) {
    std::vector<Integer> alpha(rows());
    for (std::size_t i = 0; i < rows(); ++i) alpha[i] = column_entry(i, q);
    pivot(r, q, alpha);
  }

  // Returns kFeasible at optimum, kUnbounded otherwise.
  Status run() {
    const std::size_t m = rows();
    std::vector<Integer> pi(m), alpha(m);
    Integer acc, lhs, rhs;
    for (;;) {
      // pi = c_B^T inv_, the duals scaled by det_ and the cost denominator.
      for (auto& v : pi) v = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const Integer& c = cost_[basis_[i]];
        if (sgn(c) == 0) continue;
        for (std::size_t r = 0; r < m; ++r) {
          if (sgn(inv_[i][r]) != 0) mpz_addmul(pi[r].get_mpz_t(), c.get_mpz_t(), inv_[i][r].get_mpz_t());
        }
      }
      std::size_t enter = small_price(pi);
      if (enter == kNoFastPath) {
        enter = cols_.size();
        for (std::size_t j = 0; j < cols_.size(); ++j) {
          if (!allowed_[j]) continue;
          if (sgn(cost_[j]) == 0) {
            acc = 0;
          } else {
            acc = cost_[j] * det_;
          }
          for (const auto& [r, a] : cols_[j]) {
            if (sgn(pi[r]) != 0) mpz_submul(acc.get_mpz_t(), pi[r].get_mpz_t(), a.get_mpz_t());
          }
          if (sgn(acc) < 0) {
            enter = j;
            break;
          }
        }
      }
      if (enter == cols_.size()) return Status::kFeasible;
      for (std::size_t i = 0; i < m; ++i) alpha[i] = column_entry(i, enter);
      std::size_t leave = m;
      for (std::size_t i = 0; i < m; ++i) {
        if (sgn(alpha[i]) <= 0) continue;
        if (leave == m) {
          leave = i;
          continue;
        }
        // xb_[i] / alpha[i] against xb_[leave] / alpha[leave].
        lhs = xb_[i] * alpha[leave];
        rhs = xb_[leave] * alpha[i];
        int c = cmp(lhs, rhs);
        if (c < 0 || (c == 0 && basis_[i] < basis_[leave])) leave = i;
      }
      if (leave == m) return Status::kUnbounded;
      pivot(leave, enter, alpha);
    }
  }

 private:
  static constexpr std::size_t kNoFastPath = static_cast<std::size_t>(-1);

  // Pricing in machine integers when the duals, costs and determinant fit
  // in 31 bits and every coefficient in a long; sums stay within 128 bits.
  std::size_t small_price(const std::vector<Integer>& pi) {
    if (!small_cols_) return kNoFastPath;
    const std::size_t m = rows();
    small_pi_.assign(m, 0);
    for (std::size_t r = 0; r < m; ++r) {
      if (!fits32(pi[r])) return kNoFastPath;
      small_pi_[r] = pi[r].get_si();
    }
    if (!fits32(det_)) return kNoFastPath;
    const __int128 det = det_.get_si();
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      if (!allowed_[j]) continue;
      __int128 acc = 0;
      if (sgn(cost_[j]) != 0) {
        if (!fits32(cost_[j])) return kNoFastPath;
        acc = det * cost_[j].get_si();
      }
      for (std::size_t e = start_[j]; e < start_[j + 1]; ++e) {
        acc -= static_cast<__int128>(small_pi_[flat_row_[e]]) * flat_coef_[e];
      }
      if (acc < 0) return j;
    }
    return cols_.size();
  }

  static bool fits32(const Integer& v) {
    return mpz_sizeinbase(v.get_mpz_t(), 2) <= 31;
  }

  Rational quotient(const Integer& v) const {
    Rational out(v, det_);
    out.canonicalize();
    return out;
  }

  Integer column_entry(std::size_t i, std::size_t j) const {
    Integer v = 0;
    for (const auto& [r, a] : cols_[j]) {
      if (sgn(inv_[i][r]) != 0) mpz_addmul(v.get_mpz_t(), inv_[i][r].get_mpz_t(), a.get_mpz_t());
    }
    return v;
  }

  // Integer-preserving update: the new determinant is alpha[r] and every
  // other row becomes (row * alpha[r] - alpha[i] * row_r) / det_, an exact
  // division.
  void pivot(std::size_t r, std::size_t q, const std::vector<Integer>& alpha) {
    const std::size_t m = rows();
    const Integer p = alpha[r];
    const std::vector<Integer>& pr = inv_[r];
    nz_.clear();
    for (std::size_t k = 0; k < m; ++k) {
      if (sgn(pr[k]) != 0) nz_.push_back(k);
    }
    const bool scale = p != det_;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      std::vector<Integer>& row = inv_[i];
      if (sgn(alpha[i]) == 0) {
        if (!scale) continue;
        for (auto& v : row) {
          if (sgn(v) == 0) continue;
          v *= p;
          mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), det_.get_mpz_t());
        }
        xb_[i] *= p;
        mpz_divexact(xb_[i].get_mpz_t(), xb_[i].get_mpz_t(), det_.get_mpz_t());
        continue;
      }
      if (p != 1) {
        for (auto& v : row) {
          if (sgn(v) != 0) v *= p;
        }
        xb_[i] *= p;
      }
      for (std::size_t k : nz_) mpz_submul(row[k].get_mpz_t(), alpha[i].get_mpz_t(), pr[k].get_mpz_t());
      mpz_submul(xb_[i].get_mpz_t(), alpha[i].get_mpz_t(), xb_[r].get_mpz_t());
      if (det_ != 1) {
        for (auto& v : row) {
          if (sgn(v) != 0) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), det_.get_mpz_t());
        }
        mpz_divexact(xb_[i].get_mpz_t(), xb_[i].get_mpz_t(), det_.get_mpz_t());
      }
    }
    det_ = p;
    basis_[r] = q;
    if (sgn(det_) < 0) {
      det_ = -det_;
      for (auto& row : inv_) {
        for (auto& v : row) v = -v;
      }
      for (auto& v : xb_) v = -v;
    }
  }

  std::vector<SparseColumn> cols_;
  std::vector<Integer> xb_;
  std::vector<std::size_t> basis_;
  std::vector<Integer> cost_;
  Integer cost_den_ = 1;
  std::vector<bool> allowed_;
  std::vector<std::vector<Integer>> inv_;
  Integer det_;
  std::vector<std::size_t> nz_;
  bool small_cols_ = true;
  std::vector<std::size_t> start_;
  std::vector<std::size_t> flat_row_;
  std::vector<long> flat_coef_;
  std::vector<long> small_pi_;
};

// Solves the LP relaxation of m (every column continuous) under
// lower <= x <= upper. Fixed columns are folded into the right-hand side.
inline LpResult solve_lp(const Milp& m, const std::vector<Integer>& lower,
                         const std::vector<std::optional<Integer>>& upper,
                         bool optimize) {
  const std::size_t n = m.cols();
  LpResult res;
  std::vector<std::size_t> free_cols;
  std::vector<Rational> x(n);
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = lower[j];
    if (upper[j] && *upper[j] < lower[j]) return res;
    if (!(upper[j] && *upper[j] == lower[j])) free_cols.push_back(j);
  }
  const std::size_t nf = free_cols.size();
  // Row data: sparse coefficients over free columns, slack sign, rhs.
  struct Row {
    std::vector<std::pair<std::size_t, Integer>> coef;
    int slack = 0;  // +1 for <=, -1 for >=
    Integer b;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Row row;
    Integer b = m.rhs[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(m.a[i][j]) != 0 && sgn(lower[j]) != 0) b -= m.a[i][j] * lower[j];
    }
    for (std::size_t k = 0; k < nf; ++k) {
      const Integer& a = m.a[i][free_cols[k]];
      if (sgn(a) != 0) row.coef.emplace_back(k, a);
    }
    if (row.coef.empty()) {
      if (m.sense[i] == Sense::kEq ? b != 0 : b > 0) return res;
      continue;
    }
    row.slack = m.sense[i] == Sense::kGe ? -1 : 0;
    row.b = b;
    rows.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < nf; ++k) {
    std::size_t j = free_cols[k];
    if (!upper[j]) continue;
    rows.push_back({{{k, Integer(1)}}, 1, *upper[j] - lower[j]});
  }
  for (auto& row : rows) {
    if (sgn(row.b) < 0) {
      for (auto& e : row.coef) e.second = -e.second;
      row.slack = -row.slack;
      row.b = -row.b;
    }
  }
  std::size_t num_slack = 0, num_art = 0;
  for (const auto& row : rows) {
    num_slack += row.slack != 0;
    num_art += row.slack != 1;
  }
  const std::size_t cols = nf + num_slack + num_art;
  std::vector<SparseColumn> columns(cols);
  std::vector<Integer> b(rows.size());
  std::vector<std::size_t> basis(rows.size());
  std::size_t next_slack = nf, next_art = nf + num_slack;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [k, a] : rows[i].coef) columns[k].emplace_back(i, a);
    b[i] = rows[i].b;
    if (rows[i].slack != 0) {
      columns[next_slack].emplace_back(i, Integer(rows[i].slack));
      if (rows[i].slack == 1) basis[i] = next_slack;
      ++next_slack;
    }
    if (rows[i].slack != 1) {
      columns[next_art].emplace_back(i, Integer(1));
      basis[i] = next_art;
      ++next_art;
    }
  }
  RevisedSimplex lp(std::move(columns), std::move(b), std::move(basis));
  // Phase one: minimize the sum of artificials.
  std::vector<Rational> c(cols);
  for (std::size_t k = nf + num_slack; k < cols; ++k) c[k] = 1;
  lp.set_costs(c);
  lp.run();
  if (sgn(lp.objective()) != 0) return res;
  for (std::size_t i = 0; i < lp.rows(); ++i) {
    if (lp.basis(i) < nf + num_slack) continue;
    for (std::size_t k = 0; k < nf + num_slack; ++k) {
      if (sgn(lp.entry(i, k)) != 0) {
        lp.pivot(i, k);
        break;
      }
    }
  }
  for (std::size_t k = nf + num_slack; k < cols; ++k) lp.forbid(k);
  if (optimize && !m.objective.empty()) {
    for (auto& v : c) v = 0;
    for (std::size_t k = 0; k < nf; ++k) c[k] = m.objective[free_cols[k]];
    lp.set_costs(c);
    if (lp.run() == Status::kUnbounded) {
      res.status = Status::kUnbounded;
      return res;
    }
  }
  for (std::size_t i = 0; i < lp.rows(); ++i) {
    std::size_t bcol = lp.basis(i);
    if (bcol < nf) x[free_cols[bcol]] += lp.value(i);
  }
  res.status = Status::kFeasible;
  res.x = std::move(x);
  return res;
}

}  // namespace detail

// Vertex solution of a purely continuous system.
inline MilpResult solve_lp_vertex(const Milp& m) {
  m.validate();
  if (m.num_int != 0) {
    throw std::invalid_argument("solve_lp_vertex: integer variables present");
  }
  std::vector<Integer> lower(m.cols(), 0);
  std::vector<std::optional<Integer>> upper(m.cols());
  auto lp = detail::solve_lp(m, lower, upper, true);
  MilpResult out;
  out.status = lp.status;
  if (lp.status == Status::kFeasible) out.solution.y = std::move(lp.x);
  return out;
}

}  // namespace qsched

#endif  // QSCHED_ILP_SIMPLEX_HPP_
