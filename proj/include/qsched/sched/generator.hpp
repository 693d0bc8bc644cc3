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

#ifndef QSCHED_SCHED_GENERATOR_HPP_
#define QSCHED_SCHED_GENERATOR_HPP_

#include <cstdint>
#include <vector>

#include "qsched/sched/instance.hpp"

namespace qsched {

// splitmix64: state += 0x9e3779b97f4a7c15, then two xor-shift-multiply
// rounds and a final xor-shift.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [lo, hi] by reduction modulo the range width.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    std::uint64_t width = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % width);
  }

 private:
  std::uint64_t state_;
};

struct GenParams {
  std::int64_t jobs = 8;
  std::int64_t machines = 3;
  int pbits = 4;  // p in [1, 2^pbits]
  int sbits = 2;  // s in [1, 2^sbits]
};

// Draws all processing times first, then all speeds.
inline Instance generate_instance(std::uint64_t seed, const GenParams& g) {
  SplitMix64 rng(seed);
  std::vector<std::int64_t> p, s;
  for (std::int64_t j = 0; j < g.jobs; ++j) p.push_back(rng.uniform(1, std::int64_t{1} << g.pbits));
  for (std::int64_t i = 0; i < g.machines; ++i) {
    s.push_back(rng.uniform(1, std::int64_t{1} << g.sbits));
  }
  return Instance::make(std::move(p), std::move(s));
}

// Instance with N uniform on [1, max_jobs] and M uniform on [1, max_machines],
// both drawn before the processing times and speeds.
inline Instance generate_sized(std::uint64_t seed, std::int64_t max_jobs,
                               std::int64_t max_machines, int pbits, int sbits) {
  SplitMix64 rng(seed);
  GenParams g;
  g.jobs = rng.uniform(1, max_jobs);
  g.machines = rng.uniform(1, max_machines);
  g.pbits = pbits;
  g.sbits = sbits;
  std::vector<std::int64_t> p, s;
  for (std::int64_t j = 0; j < g.jobs; ++j) p.push_back(rng.uniform(1, std::int64_t{1} << pbits));
  for (std::int64_t i = 0; i < g.machines; ++i) s.push_back(rng.uniform(1, std::int64_t{1} << sbits));
  return Instance::make(std::move(p), std::move(s));
}

}  // namespace qsched

#endif  // QSCHED_SCHED_GENERATOR_HPP_
