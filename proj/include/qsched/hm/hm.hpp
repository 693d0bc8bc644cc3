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

#ifndef QSCHED_HM_HM_HPP_
#define QSCHED_HM_HM_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qsched/hm/greedy_core.hpp"
#include "qsched/hm/hm_types.hpp"
#include "qsched/rational.hpp"
#include "qsched/sched/eptas.hpp"

namespace qsched {

// Maximum of the total average load and the load of the k longest jobs
// on the k fastest machines, evaluated where a class runs out.
inline Rational preemptive_bound(const HMInstance& hm) {
  hm.validate();
  Integer total_p = 0, total_s = 0;
  for (auto [p, c] : hm.jobs) total_p += Integer(p) * c;
  for (auto [s, c] : hm.machines) total_s += Integer(s) * c;
  Rational best(total_p, total_s);
  best.canonicalize();
  const Integer limit = std::min(Integer(hm.total_jobs()), Integer(hm.total_machines()));
  std::size_t a = 0, b = 0;
  Integer ja = hm.jobs[0].second, mb = hm.machines[0].second;
  Integer k = 0, P = 0, S = 0;
  while (k < limit) {
    Integer step = std::min(std::min(ja, mb), Integer(limit - k));
    P += Integer(hm.jobs[a].first) * step;
    S += Integer(hm.machines[b].first) * step;
    k += step;
    ja -= step;
    mb -= step;
    Rational r(P, S);
    r.canonicalize();
    best = std::max(best, r);
    if (ja == 0 && ++a < hm.jobs.size()) ja = hm.jobs[a].second;
    if (mb == 0 && ++b < hm.machines.size()) mb = hm.machines[b].second;
  }
  return best;
}

// Greedy with guess T: longest jobs onto fastest machines, every machine
// filled to s*T and overpacked by at most one job.
inline HMSchedule hm_greedy(const HMInstance& hm, const Rational& T) {
  hm.validate();
  if (T <= 0) throw std::invalid_argument("hm_greedy: T must be positive");
  std::vector<GreedyBin> bins;
  for (auto [s, c] : hm.machines) bins.push_back({Integer(c), Rational(s) * T});
  std::vector<GreedyItem> items;
  for (auto [p, c] : hm.jobs) items.push_back({Integer(c), Rational(p)});
  GreedyOutcome res = greedy_pack(std::move(bins), std::move(items));
  if (!res.complete()) throw std::runtime_error("hm_greedy: ran out of machines");
  HMSchedule out;
  for (const auto& blk : res.blocks) {
    HMRecord r;
    r.speed = hm.machines[blk.bin].first;
    r.machines = blk.machines.get_si();
    for (const auto& [j, per] : blk.items) r.jobs.emplace_back(hm.jobs[j].first, per.get_si());
    out.records.push_back(std::move(r));
  }
  return out;
}

struct TwoEpsResult {
  HMSchedule schedule;
  Rational makespan;
  Rational t_p;
  std::size_t probes = 0;
};

// Binary search over guesses T_p (1+eps)^k, k = 0..K with (1+eps)^K >= 2.
// A probe at guess G succeeds when the greedy schedule at T = G has
// makespan at most 2G. The best validated schedule seen is returned.
inline TwoEpsResult hm_two_plus_eps(const HMInstance& hm, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("hm_two_plus_eps: eps must be positive");
  TwoEpsResult out;
  out.t_p = preemptive_bound(hm);
  const Rational base = 1 + eps;
  std::size_t K = 0;
  for (Rational p = 1; p < 2; p *= base) ++K;
  K = std::max<std::size_t>(K, 1);
  std::optional<Rational> best;
  auto probe = [&](std::size_t k) {
    ++out.probes;
    Rational G = out.t_p * pow_of(base, k);
    HMSchedule s = hm_greedy(hm, G);
    HMCheck chk = check_hm_schedule(hm, s);
    if (!chk.ok) throw std::logic_error("hm_two_plus_eps: invalid probe: " + chk.message);
    if (!best || chk.makespan < *best) {
      best = chk.makespan;
      out.schedule = std::move(s);
    }
    return chk.makespan <= 2 * G;
  };
  std::size_t lo = 0, hi = K;
  bool have_hi = false;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (probe(mid)) {
      hi = mid;
      have_hi = true;
    } else {
      lo = mid + 1;
    }
  }
  if (!have_hi) probe(hi);
  out.makespan = *best;
  return out;
}

// The EPTAS pipeline run on the compressed encoding.
inline EptasResult hm_eptas(const HMInstance& hm, const Rational& eps,
                            const EptasOptions& opt = {}) {
  return eptas(hm, eps, opt);
}

}  // namespace qsched

#endif  // QSCHED_HM_HM_HPP_
