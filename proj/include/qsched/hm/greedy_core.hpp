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

#ifndef QSCHED_HM_GREEDY_CORE_HPP_
#define QSCHED_HM_GREEDY_CORE_HPP_

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "qsched/rational.hpp"

namespace qsched {

// `count` identical machines that each accept load up to `cap` before the
// overhanging job.
struct GreedyBin {
  Integer count;
  Rational cap;
};

struct GreedyItem {
  Integer count;
  Rational size;
};

// `machines` machines of bin class `bin`, each taking the listed
// (item class, per-machine count) pairs.
struct GreedyBlock {
  std::size_t bin = 0;
  Integer machines;
  std::vector<std::pair<std::size_t, Integer>> items;
};

struct GreedyOutcome {
  std::vector<GreedyBlock> blocks;
  std::vector<Integer> leftover;
  bool complete() const {
    return std::all_of(leftover.begin(), leftover.end(),
                       [](const Integer& c) { return c == 0; });
  }
};

// Block-wise greedy: bins and items are consumed in the given order, every
// machine is filled until its cap is reached or exceeded by one job.
inline GreedyOutcome greedy_pack(std::vector<GreedyBin> bins, std::vector<GreedyItem> items) {
  GreedyOutcome out;
  const std::size_t m = bins.size(), n = items.size();
  std::size_t i = 0, j = 0;
  auto skip = [&] {
    while (i < m && bins[i].count <= 0) ++i;
    while (j < n && items[j].count <= 0) ++j;
  };
  skip();
  while (j < n && i < m) {
    Integer& mu = bins[i].count;
    Integer& eta = items[j].count;
    const Rational& cap = bins[i].cap;
    Integer x = cap > 0 ? ceil_of(cap / items[j].size) : Integer(0);
    if (mu * x < eta) {
      if (x > 0) out.blocks.push_back({i, mu, {{j, x}}});
      eta -= mu * x;
      mu = 0;
    } else if (x < eta) {
      Integer q = eta / x;
      out.blocks.push_back({i, q, {{j, x}}});
      eta -= q * x;
      mu -= q;
    } else {
      GreedyBlock b{i, 1, {}};
      Rational load = 0;
      while (load < cap && j < n) {
        Integer y = ceil_of((cap - load) / items[j].size);
        if (items[j].count < y) y = items[j].count;
        b.items.emplace_back(j, y);
        items[j].count -= y;
        load += items[j].size * y;
        if (items[j].count == 0) {
          ++j;
          while (j < n && items[j].count <= 0) ++j;
        }
      }
      out.blocks.push_back(std::move(b));
      mu -= 1;
    }
    skip();
  }
  out.leftover.reserve(n);
  for (const auto& it : items) out.leftover.push_back(it.count > 0 ? it.count : Integer(0));
  return out;
}

}  // namespace qsched

#endif  // QSCHED_HM_GREEDY_CORE_HPP_
