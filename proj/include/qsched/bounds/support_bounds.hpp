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

#ifndef QSCHED_BOUNDS_SUPPORT_BOUNDS_HPP_
#define QSCHED_BOUNDS_SUPPORT_BOUNDS_HPP_

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsched/ilp/milp.hpp"
#include "qsched/rational.hpp"

namespace qsched {

// Shape parameters of an integer matrix.
class MatrixProfile {
 public:
  explicit MatrixProfile(std::vector<std::vector<Integer>> a) : a_(std::move(a)) {
    if (a_.empty() || a_[0].empty()) {
      throw std::invalid_argument("MatrixProfile: empty matrix");
    }
    for (const auto& row : a_) {
      if (row.size() != a_[0].size()) {
        throw std::invalid_argument("MatrixProfile: ragged matrix");
      }
    }
    for (std::size_t j = 0; j < a_[0].size(); ++j) {
      Integer col = 0;
      for (const auto& row : a_) {
        Integer v = abs(row[j]);
        col += v;
        if (v > delta_) delta_ = v;
      }
      if (col > a_max_) a_max_ = col;
    }
  }

  // Synthetic profile for evaluating formulas without a matrix.
  static MatrixProfile from_values(std::size_t m, long delta, long a_max) {
    MatrixProfile p;
    p.m_override_ = m;
    p.delta_ = delta;
    p.a_max_ = a_max;
    return p;
  }

  std::size_t m() const { return a_.empty() ? m_override_ : a_.size(); }
  const Integer& delta() const { return delta_; }
  const Integer& a_max() const { return a_max_; }

  // Largest column p-norm, p >= 1.
  double a_max_p(double p) const {
    if (p < 1) throw std::domain_error("a_max_p: p < 1");
    if (a_.empty()) return a_max_.get_d();
    double best = 0;
    for (std::size_t j = 0; j < a_[0].size(); ++j) {
      double s = 0;
      for (const auto& row : a_) s += std::pow(std::fabs(row[j].get_d()), p);
      best = std::max(best, std::pow(s, 1.0 / p));
    }
    return best;
  }

 private:
  MatrixProfile() = default;
  std::vector<std::vector<Integer>> a_;
  std::size_t m_override_ = 0;
  Integer delta_ = 0;
  Integer a_max_ = 0;
};

inline Integer max_column_norm(const std::vector<std::vector<Integer>>& a) {
  return MatrixProfile(a).a_max();
}

inline MatrixProfile integer_block_profile(const Milp& milp) {
  std::vector<std::vector<Integer>> a;
  for (const auto& row : milp.a) {
    a.emplace_back(row.begin(), row.begin() + milp.num_int);
  }
  return MatrixProfile(std::move(a));
}

namespace detail {

inline double round_up(double v) { return v + std::fabs(v) * 0x1p-40; }

inline void require_amax(const MatrixProfile& p) {
  if (p.m() < 1 || p.a_max() < 1) {
    throw std::domain_error("support bound: needs m >= 1 and A_max >= 1");
  }
}

}  // namespace detail

struct ClassicBounds {
  double es_bound;
  double aliev_bound;
};

inline ClassicBounds bound_classic(const MatrixProfile& p) {
  if (p.m() < 1 || p.delta() < 1) {
    throw std::domain_error("bound_classic: needs m >= 1 and delta >= 1");
  }
  const double m = static_cast<double>(p.m());
  const double d = p.delta().get_d();
  return {detail::round_up(2 * m * std::log2(4 * m * d)),
          detail::round_up(2 * m * std::log2(2 * std::sqrt(m) * d))};
}

inline double bound_tangent(const MatrixProfile& p, double alpha) {
  if (!(alpha > 0 && alpha < 1)) {
    throw std::domain_error("bound_tangent: alpha outside (0, 1)");
  }
  detail::require_amax(p);
  const double c = std::sqrt(2 * std::log2(std::exp(1.0)) / (std::exp(1.0) * alpha));
  return detail::round_up(static_cast<double>(p.m()) *
                          std::log2(c * p.a_max().get_d()) / (1 - alpha));
}

inline double bound_lambert(const MatrixProfile& p, double alpha_prime) {
  if (!(alpha_prime > 0)) throw std::domain_error("bound_lambert: alpha' <= 0");
  detail::require_amax(p);
  const double la = std::log2(p.a_max().get_d());
  const double t = la + std::sqrt(alpha_prime * (la + 0.05)) + alpha_prime / 2 +
                   std::log2(std::sqrt(1 / alpha_prime)) + 1.03;
  return detail::round_up(static_cast<double>(p.m()) * t);
}

inline double bound_main(const MatrixProfile& p) {
  detail::require_amax(p);
  const double a = p.a_max().get_d();
  return detail::round_up(static_cast<double>(p.m()) *
                          (std::log2(3 * a) + std::sqrt(std::log2(a))));
}

inline double bound_elementary(const MatrixProfile& p) {
  detail::require_amax(p);
  const double a = p.a_max().get_d();
  const double c = 1 + std::log2(std::exp(1.0));
  double t = 1;
  for (int it = 0; it < 10000; ++it) {
    double next = c + std::log2(1 + t * a);
    bool done = std::fabs(next - t) < 1e-9;
    t = next;
    if (done) break;
  }
  return detail::round_up(static_cast<double>(p.m()) * t);
}

struct PnormLogs {
  double via_dimension;
  double via_power;
};

inline PnormLogs pnorm_log_bound(const MatrixProfile& prof, double p) {
  if (p < 1) throw std::domain_error("pnorm_log_bound: p < 1");
  const double ap = prof.a_max_p(p);
  const double m = static_cast<double>(prof.m());
  return {detail::round_up(std::log2(std::pow(m, 1 - 1 / p) * ap)),
          detail::round_up(p * std::log2(ap))};
}

struct SupportBoundReport {
  std::vector<std::pair<std::string, double>> rows;
};

inline SupportBoundReport bound_report(const MatrixProfile& p, double alpha = 0.5,
                                       double alpha_prime = 1.0) {
  SupportBoundReport r;
  auto c = bound_classic(p);
  r.rows.emplace_back("es", c.es_bound);
  r.rows.emplace_back("aliev", c.aliev_bound);
  r.rows.emplace_back("tangent", bound_tangent(p, alpha));
  r.rows.emplace_back("lambert", bound_lambert(p, alpha_prime));
  r.rows.emplace_back("main", bound_main(p));
  r.rows.emplace_back("elementary", bound_elementary(p));
  return r;
}

// Budget for solve_support_bounded.
inline std::size_t support_budget(double bound) {
  return static_cast<std::size_t>(std::ceil(bound));
}

// Block-diagonal instance with blocks (2^0 ... 2^d), d = floor(log2 a_max),
// rhs 2^(d+1) - 1 and objective max 3^0 ... 3^d per block (stored negated).
inline Milp lower_bound_instance(std::size_t m, long a_max) {
  if (a_max < 1) throw std::domain_error("lower_bound_instance: a_max < 1");
  std::size_t d = 0;
  while ((2L << d) <= a_max) ++d;
  Milp milp;
  milp.num_int = m * (d + 1);
  for (std::size_t b = 0; b < m; ++b) {
    std::vector<Integer> row(milp.num_int, 0);
    for (std::size_t k = 0; k <= d; ++k) row[b * (d + 1) + k] = Integer(1) << k;
    milp.add_row(std::move(row), Sense::kEq, (Integer(1) << (d + 1)) - 1);
  }
  for (std::size_t b = 0; b < m; ++b) {
    Integer three = 1;
    for (std::size_t k = 0; k <= d; ++k, three *= 3) {
      milp.objective.emplace_back(-three);
    }
  }
  return milp;
}

}  // namespace qsched

#endif  // QSCHED_BOUNDS_SUPPORT_BOUNDS_HPP_
