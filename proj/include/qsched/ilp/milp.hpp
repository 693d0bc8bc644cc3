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

#ifndef QSCHED_ILP_MILP_HPP_
#define QSCHED_ILP_MILP_HPP_

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsched/rational.hpp"

namespace qsched {

enum class Sense { kEq, kGe };

// Mixed integer system  row_i . (x, y)  (= | >=)  rhs_i  with x, y >= 0.
// The first num_int columns are integral. Rows whose integer block is zero
// form the fractional-only block.
struct Milp {
  std::size_t num_int = 0;
  std::size_t num_cont = 0;
  std::vector<std::vector<Integer>> a;
  std::vector<Sense> sense;
  std::vector<Integer> rhs;
  // Minimized when non-empty; length num_int + num_cont.
  std::vector<Rational> objective;

  std::size_t rows() const { return a.size(); }
  std::size_t cols() const { return num_int + num_cont; }

  void add_row(std::vector<Integer> row, Sense s, Integer b) {
    a.push_back(std::move(row));
    sense.push_back(s);
    rhs.push_back(std::move(b));
  }

  void validate() const {
    if (sense.size() != a.size() || rhs.size() != a.size()) {
      throw std::invalid_argument("milp: row count mismatch");
    }
    for (const auto& row : a) {
      if (row.size() != cols()) {
        throw std::invalid_argument("milp: column count mismatch");
      }
    }
    if (!objective.empty() && objective.size() != cols()) {
      throw std::invalid_argument("milp: objective length mismatch");
    }
  }
};

// Mixed solution: x integral, y rational.
struct MilpSolution {
  std::vector<Integer> x;
  std::vector<Rational> y;

  std::size_t support() const {
    std::size_t s = 0;
    for (const auto& v : x) s += (v != 0);
    return s;
  }
};

enum class Status { kFeasible, kInfeasible, kUnbounded, kInfeasibleWithinSupport };

struct MilpResult {
  Status status = Status::kInfeasible;
  MilpSolution solution;

  bool feasible() const { return status == Status::kFeasible; }
};

class BoundUnderivable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SearchSpaceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact re-substitution of a solution into every row.
inline bool satisfies(const Milp& m, const MilpSolution& s) {
  if (s.x.size() != m.num_int || s.y.size() != m.num_cont) return false;
  for (const auto& v : s.x) {
    if (v < 0) return false;
  }
  for (const auto& v : s.y) {
    if (v < 0) return false;
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < m.num_int; ++j) {
      if (m.a[i][j] != 0) lhs += Rational(m.a[i][j] * s.x[j]);
    }
    for (std::size_t j = 0; j < m.num_cont; ++j) {
      if (m.a[i][m.num_int + j] != 0) lhs += m.a[i][m.num_int + j] * s.y[j];
    }
    if (m.sense[i] == Sense::kEq ? lhs != m.rhs[i] : lhs < m.rhs[i]) return false;
  }
  return true;
}

inline Rational objective_value(const Milp& m, const MilpSolution& s) {
  Rational v = 0;
  if (m.objective.empty()) return v;
  for (std::size_t j = 0; j < m.num_int; ++j) v += m.objective[j] * s.x[j];
  for (std::size_t j = 0; j < m.num_cont; ++j) {
    v += m.objective[m.num_int + j] * s.y[j];
  }
  return v;
}

// Matrix-literal fixture format, one row per line:
//   int <n> cont <r>
//   c0 c1 ... = b      (or >=)
//   min o0 o1 ...      (optional)
inline std::string to_text(const Milp& m) {
  std::ostringstream out;
  out << "int " << m.num_int << " cont " << m.num_cont << "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (const auto& v : m.a[i]) out << v.get_str() << " ";
    out << (m.sense[i] == Sense::kEq ? "=" : ">=") << " " << m.rhs[i].get_str()
        << "\n";
  }
  if (!m.objective.empty()) {
    out << "min";
    for (const auto& v : m.objective) out << " " << to_exact_string(v);
    out << "\n";
  }
  return out.str();
}

inline Milp milp_from_text(const std::string& text) {
  std::istringstream in(text);
  Milp m;
  std::string tok;
  if (!(in >> tok) || tok != "int" || !(in >> m.num_int) || !(in >> tok) ||
      tok != "cont" || !(in >> m.num_cont)) {
    throw std::invalid_argument("milp text: bad header");
  }
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::string> toks;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    if (toks[0] == "min") {
      for (std::size_t k = 1; k < toks.size(); ++k) {
        m.objective.push_back(parse_rational(toks[k]));
      }
      continue;
    }
    if (toks.size() != m.cols() + 2) {
      throw std::invalid_argument("milp text: bad row: " + line);
    }
    std::vector<Integer> row;
    for (std::size_t k = 0; k < m.cols(); ++k) row.emplace_back(toks[k]);
    Sense s;
    if (toks[m.cols()] == "=") {
      s = Sense::kEq;
    } else if (toks[m.cols()] == ">=") {
      s = Sense::kGe;
    } else {
      throw std::invalid_argument("milp text: bad relation: " + line);
    }
    m.add_row(std::move(row), s, Integer(toks.back()));
  }
  m.validate();
  return m;
}

}  // namespace qsched

#endif  // QSCHED_ILP_MILP_HPP_
