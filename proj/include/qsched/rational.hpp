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

#ifndef QSCHED_RATIONAL_HPP_
#define QSCHED_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qsched {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Rational pow_of(const Rational& base, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

// Exact "num/den" text; integers print without a denominator.
inline std::string to_exact_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_decimal_string(const Rational& q, int digits = 6) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  Rational shifted = q * scale;
  Integer n = floor_of(shifted + Rational(1, 2));
  bool neg = n < 0;
  if (neg) n = -n;
  std::string s = n.get_str();
  if (static_cast<int>(s.size()) <= digits) {
    s = std::string(digits + 1 - s.size(), '0') + s;
  }
  s.insert(s.size() - digits, ".");
  return neg ? "-" + s : s;
}

// Parses "3", "-2/7", "0.125", "1e-3" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational r(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
    r.canonicalize();
    return r;
  }
  std::string mant = text;
  long exp10 = 0;
  auto e = text.find_first_of("eE");
  if (e != std::string::npos) {
    mant = text.substr(0, e);
    exp10 = std::stol(text.substr(e + 1));
  }
  auto dot = mant.find('.');
  if (dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  if (mant.empty() || mant == "-" || mant == "+") {
    throw std::invalid_argument("malformed number: " + text);
  }
  if (mant[0] == '+') mant.erase(0, 1);
  Rational r{Integer(mant)};
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 < 0) {
    r /= p;
  } else {
    r *= p;
  }
  r.canonicalize();
  return r;
}

}  // namespace qsched

#endif  // QSCHED_RATIONAL_HPP_
