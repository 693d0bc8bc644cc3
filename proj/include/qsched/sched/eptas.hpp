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

#ifndef QSCHED_SCHED_EPTAS_HPP_
#define QSCHED_SCHED_EPTAS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qsched/hm/hm_types.hpp"
#include "qsched/rational.hpp"
#include "qsched/sched/hybrid_milp.hpp"
#include "qsched/sched/instance.hpp"
#include "qsched/sched/preprocess.hpp"
#include "qsched/sched/recursive_milp.hpp"

namespace qsched {

// delta = epsilon / kDeltaDivisor.
inline constexpr long kDeltaDivisor = 3;

inline Rational delta_for(const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("epsilon must be positive");
  Rational d = eps / kDeltaDivisor;
  if (d > Rational(1, 4)) d = Rational(1, 4);
  d.canonicalize();
  return d;
}

struct EptasOptions {
  RecursiveOptions milp;
  std::size_t max_extension = 256;
};

struct EptasResult {
  HMSchedule schedule;
  Rational makespan;
  Rational guess;
  Rational delta;
  std::size_t probes = 0;
};

// Runs trimming, prerounding, the guess search with the recursive MILP as
// probe, conversion to the hybrid MILP and record-level construction.
inline EptasResult eptas_with_delta(const HMInstance& hm, const Rational& delta,
                                    const EptasOptions& opt = {}) {
  hm.validate();
  auto [kept, trimmed] = trim_negligible(hm, delta);
  ClassLists cl{kept.jobs, kept.machines};
  ValueCounts jobs, machines;
  Rational p_max = 0, s_max = 0;
  for (auto [p, c] : cl.jobs) {
    jobs.emplace_back(power_floor(Rational(p), delta), c);
    p_max = std::max(p_max, jobs.back().first);
  }
  for (auto [s, c] : cl.machines) {
    machines.emplace_back(power_floor(Rational(s), delta), c);
    s_max = std::max(s_max, machines.back().first);
  }
  const std::int64_t n = kept.total_jobs();
  auto probe = [&](const Rational& T) -> std::optional<HMSchedule> {
    if (p_max / T > s_max) return std::nullopt;
    RoundedInstance ri = round_to_grid(jobs, machines, delta, T, n);
    RecursiveMilp rm = build_recursive_milp(ri, opt.milp);
    auto sol = solve_recursive_milp(rm);
    if (!sol) return std::nullopt;
    HybridSolution hs = convert_solution(rm, *sol, ri);
    return build_schedule_fast(hs, ri, cl, trimmed.removed_jobs);
  };
  auto sr = makespan_search(p_max / s_max, delta, n, probe, opt.max_extension);
  EptasResult out;
  out.schedule = std::move(sr.result);
  HMCheck chk = check_hm_schedule(hm, out.schedule);
  if (!chk.ok) throw std::logic_error("eptas: emitted schedule invalid: " + chk.message);
  out.makespan = chk.makespan;
  out.guess = sr.T;
  out.delta = delta;
  out.probes = sr.probes;
  return out;
}

inline EptasResult eptas(const HMInstance& hm, const Rational& eps,
                         const EptasOptions& opt = {}) {
  return eptas_with_delta(hm, delta_for(eps), opt);
}

inline Schedule eptas(const Instance& inst, const Rational& eps, const EptasOptions& opt = {}) {
  EptasResult r = eptas(HMInstance::from_instance(inst), eps, opt);
  return expand_schedule(r.schedule, inst);
}

}  // namespace qsched

#endif  // QSCHED_SCHED_EPTAS_HPP_
