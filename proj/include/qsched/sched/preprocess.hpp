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

#ifndef QSCHED_SCHED_PREPROCESS_HPP_
#define QSCHED_SCHED_PREPROCESS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qsched/hm/hm_types.hpp"
#include "qsched/rational.hpp"
#include "qsched/sched/instance.hpp"

namespace qsched {

struct TrimRecord {
  std::vector<std::size_t> removed_jobs;
  std::vector<std::size_t> removed_machines;
  std::vector<std::size_t> kept_jobs;
  std::vector<std::size_t> kept_machines;
};

// Drops the M - N slowest machines, then machines below delta*s_max/N and
// jobs below delta*p_max/N.
inline std::pair<Instance, TrimRecord> trim_negligible(const Instance& inst,
                                                       const Rational& delta) {
  inst.validate();
  const std::size_t n = inst.n();
  TrimRecord rec;
  std::size_t first = inst.m() > n ? inst.m() - n : 0;
  for (std::size_t i = 0; i < first; ++i) rec.removed_machines.push_back(i);
  const Rational s_cut = delta * inst.machines.back() / n;
  const Rational p_cut = delta * inst.jobs.back() / n;
  Instance out;
  for (std::size_t i = first; i < inst.m(); ++i) {
    if (inst.machines[i] < s_cut) {
      rec.removed_machines.push_back(i);
    } else {
      rec.kept_machines.push_back(i);
      out.machines.push_back(inst.machines[i]);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (inst.jobs[j] < p_cut) {
      rec.removed_jobs.push_back(j);
    } else {
      rec.kept_jobs.push_back(j);
      out.jobs.push_back(inst.jobs[j]);
    }
  }
  return {out, rec};
}

struct HMTrimRecord {
  std::vector<std::pair<std::int64_t, std::int64_t>> removed_jobs;
  std::vector<std::pair<std::int64_t, std::int64_t>> removed_machines;
};

inline std::pair<HMInstance, HMTrimRecord> trim_negligible(const HMInstance& hm,
                                                           const Rational& delta) {
  hm.validate();
  const std::int64_t n = hm.total_jobs();
  HMTrimRecord rec;
  auto machines = hm.machines;
  std::int64_t excess = hm.total_machines() - n;
  while (excess > 0) {
    auto& slow = machines.back();
    std::int64_t take = std::min(excess, slow.second);
    rec.removed_machines.emplace_back(slow.first, take);
    slow.second -= take;
    excess -= take;
    if (slow.second == 0) machines.pop_back();
  }
  const Rational s_cut = delta * machines.front().first / n;
  const Rational p_cut = delta * hm.jobs.front().first / n;
  HMInstance out;
  for (auto mc : machines) {
    if (mc.first < s_cut) {
      rec.removed_machines.push_back(mc);
    } else {
      out.machines.push_back(mc);
    }
  }
  for (auto jc : hm.jobs) {
    if (jc.first < p_cut) {
      rec.removed_jobs.push_back(jc);
    } else {
      out.jobs.push_back(jc);
    }
  }
  return {out, rec};
}

// Largest (1+delta)^k <= v with k >= 0, for v >= 1.
inline Rational power_floor(const Rational& v, const Rational& delta) {
  if (v < 1) throw std::domain_error("power_floor: value below 1");
  const Rational base = 1 + delta;
  long k = static_cast<long>(std::floor(std::log(v.get_d()) / std::log(base.get_d())));
  if (k < 0) k = 0;
  Rational x = pow_of(base, static_cast<unsigned long>(k));
  while (x > v) {
    x /= base;
    --k;
  }
  while (x * base <= v) {
    x *= base;
    ++k;
  }
  return x;
}

using ValueCounts = std::vector<std::pair<Rational, std::int64_t>>;

struct Prerounded {
  ValueCounts jobs;      // ascending value
  ValueCounts machines;  // ascending value
};

inline ValueCounts group_values(const std::vector<Rational>& values) {
  std::map<Rational, std::int64_t> acc;
  for (const auto& v : values) ++acc[v];
  return {acc.begin(), acc.end()};
}

inline Prerounded preround(const Instance& inst, const Rational& delta) {
  std::vector<Rational> j, m;
  for (auto p : inst.jobs) j.push_back(power_floor(Rational(p), delta));
  for (auto s : inst.machines) m.push_back(power_floor(Rational(s), delta));
  return {group_values(j), group_values(m)};
}

// b_{k,l} = (1 - l/(2 lambda)) s_max 2^{-k}, stored at r = k lambda + l.
struct Grid {
  Rational delta;
  Rational s_max;
  std::size_t lambda = 0, kappa = 0, tau = 0, L = 0;
  std::vector<Rational> b;

  std::size_t k_of(std::size_t r) const { return r / lambda; }
  std::size_t l_of(std::size_t r) const { return r % lambda; }

  // Position l = lambda denotes (k+1, 0).
  std::optional<std::size_t> index(std::size_t k, std::size_t l) const {
    if (l == lambda) {
      ++k;
      l = 0;
    }
    std::size_t r = k * lambda + l;
    if (l >= lambda || r >= tau) return std::nullopt;
    return r;
  }

  // Largest r with b_r >= v.
  std::size_t round_up(const Rational& v) const {
    if (v > b.front()) throw std::domain_error("round_up: value above s_max");
    std::size_t lo = 0, hi = tau - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi + 1) / 2;
      if (b[mid] >= v) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    return lo;
  }

  // j in H_i: delta b_i < b_j <= b_i.
  bool long_for(std::size_t i, std::size_t j) const {
    return b[j] <= b[i] && b[j] > delta * b[i];
  }
};

inline std::size_t ceil_log2(const Rational& x) {
  std::size_t k = 0;
  Rational p = 1;
  while (p < x) {
    p *= 2;
    ++k;
  }
  return k;
}

inline Grid make_grid(const Rational& delta, std::int64_t n, const Rational& s_max) {
  if (delta <= 0 || delta > 1) throw std::domain_error("make_grid: delta outside (0, 1]");
  Grid g;
  g.delta = delta;
  g.s_max = s_max;
  g.lambda = static_cast<std::size_t>(ceil_of(1 / delta).get_ui());
  g.kappa = std::max<std::size_t>(1, ceil_log2(Rational(n) * n / delta));
  g.tau = g.kappa * g.lambda;
  const double inv = Rational(1 / delta).get_d();
  const double inner = std::log2(inv) * inv * inv * inv;
  if (inner > 1) {
    g.L = g.lambda * static_cast<std::size_t>(std::ceil(std::log2(inner) - 1e-12));
  } else {
    g.L = 0;
  }
  g.b.resize(g.tau);
  Rational scale = s_max;
  for (std::size_t k = 0; k < g.kappa; ++k) {
    for (std::size_t l = 0; l < g.lambda; ++l) {
      g.b[k * g.lambda + l] =
          scale * Rational(2 * g.lambda - l, 2 * g.lambda);
    }
    scale /= 2;
  }
  for (auto& v : g.b) v.canonicalize();
  return g;
}

struct RoundedInstance {
  Grid grid;
  Rational T;
  std::vector<Integer> mu;
  std::vector<Integer> eta;
  // Grid index of every input class, in input order.
  std::vector<std::size_t> job_class_index;
  std::vector<std::size_t> machine_class_index;
};

// Scales job values by 1/T, rounds jobs and speeds up to the grid built
// on the largest speed.
inline RoundedInstance round_to_grid(const ValueCounts& jobs,
                                     const ValueCounts& machines,
                                     const Rational& delta, const Rational& T,
                                     std::int64_t n) {
  Rational s_max = 0;
  for (const auto& [s, c] : machines) s_max = std::max(s_max, s);
  RoundedInstance ri;
  ri.grid = make_grid(delta, n, s_max);
  ri.T = T;
  ri.mu.assign(ri.grid.tau, 0);
  ri.eta.assign(ri.grid.tau, 0);
  for (const auto& [p, c] : jobs) {
    std::size_t r = ri.grid.round_up(p / T);
    ri.eta[r] += c;
    ri.job_class_index.push_back(r);
  }
  for (const auto& [s, c] : machines) {
    std::size_t r = ri.grid.round_up(s);
    ri.mu[r] += c;
    ri.machine_class_index.push_back(r);
  }
  return ri;
}

inline RoundedInstance round_to_grid(const Instance& inst, const Rational& delta,
                                     const Rational& T) {
  ValueCounts j, m;
  for (auto p : inst.jobs) j.emplace_back(Rational(p), 1);
  for (auto s : inst.machines) m.emplace_back(Rational(s), 1);
  return round_to_grid(j, m, delta, T, static_cast<std::int64_t>(inst.n()));
}

template <class R>
struct SearchResult {
  Rational T;
  std::size_t k = 0;
  R result;
  std::size_t probes = 0;
};

// Binary search for the smallest feasible guess T0 (1+delta)^k over
// k = 0..K with (1+delta)^K >= n. The top guess is only probed when every
// smaller probe fails; if it fails too, the range is extended upward one
// step at a time.
template <class Probe>
auto makespan_search(const Rational& T0, const Rational& delta, std::int64_t n,
                     Probe&& probe, std::size_t max_extension = 256)
    -> SearchResult<typename std::invoke_result_t<Probe, const Rational&>::value_type> {
  using R = typename std::invoke_result_t<Probe, const Rational&>::value_type;
  const Rational base = 1 + delta;
  std::size_t K = 0;
  for (Rational p = 1; p < n; p *= base) ++K;
  auto guess = [&](std::size_t k) -> Rational { return T0 * pow_of(base, k); };
  SearchResult<R> best;
  std::optional<R> found;
  std::size_t lo = 0, hi = K, probes = 0;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    ++probes;
    auto r = probe(guess(mid));
    if (r) {
      hi = mid;
      found = std::move(r);
    } else {
      lo = mid + 1;
    }
  }
  for (std::size_t ext = 0; !found; ++ext) {
    ++probes;
    found = probe(guess(hi));
    if (found) break;
    if (ext == max_extension) throw std::runtime_error("makespan_search: no feasible guess");
    ++hi;
  }
  best.k = hi;
  best.result = std::move(*found);
  best.T = guess(best.k);
  best.probes = probes;
  return best;
}

}  // namespace qsched

#endif  // QSCHED_SCHED_PREPROCESS_HPP_
