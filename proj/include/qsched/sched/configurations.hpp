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

#ifndef QSCHED_SCHED_CONFIGURATIONS_HPP_
#define QSCHED_SCHED_CONFIGURATIONS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qsched/rational.hpp"
#include "qsched/sched/preprocess.hpp"

namespace qsched {

// Sparse multiplicity vector over grid indices, sorted by index.
using Config = std::vector<std::pair<std::size_t, long>>;

inline std::vector<long> dense(const Config& c, std::size_t tau) {
  std::vector<long> v(tau, 0);
  for (auto [j, k] : c) v.at(j) += k;
  return v;
}

// Lexicographic order of the dense vectors.
inline bool config_less(const Config& a, const Config& b) {
  std::size_t i = 0;
  for (; i < a.size() && i < b.size(); ++i) {
    if (a[i] == b[i]) continue;
    if (a[i].first != b[i].first) return a[i].first < b[i].first;
    return a[i].second < b[i].second;
  }
  // A missing entry is a zero, so the longer vector is larger.
  return a.size() < b.size();
}

inline Rational config_size(const Config& c, const Grid& g) {
  Rational s = 0;
  for (auto [j, k] : c) s += g.b[j] * k;
  return s;
}

inline long config_norm(const Config& c) {
  long n = 0;
  for (auto [j, k] : c) n += k;
  return n;
}

inline long count_of(const Config& c, std::size_t j) {
  for (auto [i, k] : c) {
    if (i == j) return k;
  }
  return 0;
}

inline Config add_unit(Config c, std::size_t j, long k = 1) {
  for (auto& [i, v] : c) {
    if (i == j) {
      v += k;
      c.erase(std::remove_if(c.begin(), c.end(), [](const auto& e) { return e.second == 0; }),
              c.end());
      return c;
    }
  }
  if (k != 0) {
    c.emplace_back(j, k);
    std::sort(c.begin(), c.end());
  }
  return c;
}

// C_i^(1): pairs b_j + b_j' = b_i with j, j' one level below i;
// C_i^(2): 0/1 vectors over H_i with at most one even and one odd position
// per group G_k. `usable` restricts the indices that may appear.
inline std::vector<Config> build_configurations(const Grid& g, std::size_t i,
                                                const std::vector<bool>* usable = nullptr) {
  if (i >= g.tau) throw std::out_of_range("build_configurations: index");
  auto ok = [&](std::size_t j) {
    return (!usable || (*usable)[j]) && g.long_for(i, j);
  };
  std::vector<Config> out;
  const std::size_t k = g.k_of(i), l = g.l_of(i);
  for (std::size_t l1 = 0; l1 <= g.lambda; ++l1) {
    if (2 * l < l1) break;
    std::size_t l2 = 2 * l - l1;
    if (l2 < l1 || l2 > g.lambda) continue;
    auto j1 = g.index(k + 1, l1), j2 = g.index(k + 1, l2);
    if (!j1 || !j2 || !ok(*j1) || !ok(*j2)) continue;
    Config c = add_unit(add_unit({}, *j1), *j2);
    if (config_size(c, g) != g.b[i]) throw std::logic_error("pair identity broken");
    out.push_back(std::move(c));
  }
  std::vector<std::size_t> cand;
  for (std::size_t j = i; j < g.tau; ++j) {
    if (ok(j)) cand.push_back(j);
  }
  // used[2k + parity]
  std::vector<int> used(2 * (g.kappa + 1), 0);
  auto slots = [&](std::size_t j, std::vector<std::size_t>& s) {
    s.clear();
    std::size_t kj = g.k_of(j), lj = g.l_of(j);
    s.push_back(2 * kj + lj % 2);
    if (lj == 0 && kj > 0) s.push_back(2 * (kj - 1) + g.lambda % 2);
  };
  Config cur;
  Rational load = 0;
  std::vector<std::size_t> tmp;
  auto dfs = [&](auto&& self, std::size_t from) -> void {
    if (!cur.empty()) out.push_back(cur);
    for (std::size_t t = from; t < cand.size(); ++t) {
      std::size_t j = cand[t];
      if (load + g.b[j] > g.b[i]) continue;
      std::vector<std::size_t> s;
      slots(j, s);
      bool free = true;
      for (auto q : s) free = free && used[q] == 0;
      if (!free) continue;
      for (auto q : s) ++used[q];
      cur.emplace_back(j, 1);
      load += g.b[j];
      self(self, t + 1);
      load -= g.b[j];
      cur.pop_back();
      for (auto q : s) --used[q];
    }
  };
  dfs(dfs, 0);
  std::sort(out.begin(), out.end(), config_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool dominated_by(const Config& a, const Config& b) {
  std::size_t q = 0;
  for (auto [j, k] : a) {
    while (q < b.size() && b[q].first < j) ++q;
    if (q == b.size() || b[q].first != j || b[q].second < k) return false;
  }
  return true;
}

// Keeps configurations not dominated componentwise by another one.
// Only configurations of larger norm whose support signature covers the
// candidate's are compared.
inline std::vector<Config> maximal_configurations(const std::vector<Config>& cs) {
  const std::size_t n = cs.size();
  std::vector<long> norm(n);
  std::vector<std::uint64_t> sig(n);
  for (std::size_t a = 0; a < n; ++a) {
    norm[a] = config_norm(cs[a]);
    for (auto [j, k] : cs[a]) sig[a] |= std::uint64_t{1} << (j % 64);
  }
  std::vector<std::size_t> order(n);
  for (std::size_t a = 0; a < n; ++a) order[a] = a;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norm[x] > norm[y]; });
  std::vector<bool> keep(n, true);
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t a = order[p];
    for (std::size_t q = 0; q < p && norm[order[q]] > norm[a]; ++q) {
      const std::size_t b = order[q];
      if ((sig[a] & ~sig[b]) != 0) continue;
      if (dominated_by(cs[a], cs[b])) {
        keep[a] = false;
        break;
      }
    }
  }
  std::vector<Config> out;
  for (std::size_t a = 0; a < n; ++a) {
    if (keep[a]) out.push_back(cs[a]);
  }
  return out;
}

}  // namespace qsched

#endif  // QSCHED_SCHED_CONFIGURATIONS_HPP_
