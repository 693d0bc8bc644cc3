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

#ifndef QSCHED_HM_HM_TYPES_HPP_
#define QSCHED_HM_HM_TYPES_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsched/rational.hpp"
#include "qsched/sched/instance.hpp"

namespace qsched {

// (value, count) classes with distinct values, sorted by value descending.
struct HMInstance {
  std::vector<std::pair<std::int64_t, std::int64_t>> jobs;
  std::vector<std::pair<std::int64_t, std::int64_t>> machines;

  // Merges duplicate values and sorts descending.
  static HMInstance make(std::vector<std::pair<std::int64_t, std::int64_t>> jobs,
                         std::vector<std::pair<std::int64_t, std::int64_t>> machines) {
    HMInstance h{normalize(std::move(jobs)), normalize(std::move(machines))};
    h.validate();
    return h;
  }

  static HMInstance from_instance(const Instance& inst) {
    std::vector<std::pair<std::int64_t, std::int64_t>> j, m;
    for (auto p : inst.jobs) j.emplace_back(p, 1);
    for (auto s : inst.machines) m.emplace_back(s, 1);
    return make(std::move(j), std::move(m));
  }

  Instance expand() const {
    std::vector<std::int64_t> j, m;
    for (auto [p, c] : jobs) j.insert(j.end(), static_cast<std::size_t>(c), p);
    for (auto [s, c] : machines) m.insert(m.end(), static_cast<std::size_t>(c), s);
    return Instance::make(std::move(j), std::move(m));
  }

  void validate() const {
    if (jobs.empty() || machines.empty()) {
      throw std::invalid_argument("hm instance: empty class list");
    }
    auto check = [](const auto& list) {
      for (std::size_t k = 0; k < list.size(); ++k) {
        if (list[k].first < 1 || list[k].second < 1) {
          throw std::invalid_argument("hm instance: values and counts must be >= 1");
        }
        if (k > 0 && list[k - 1].first <= list[k].first) {
          throw std::invalid_argument("hm instance: classes must be distinct, descending");
        }
      }
    };
    check(jobs);
    check(machines);
  }

  std::int64_t total_jobs() const {
    std::int64_t n = 0;
    for (auto [p, c] : jobs) n += c;
    return n;
  }
  std::int64_t total_machines() const {
    std::int64_t n = 0;
    for (auto [s, c] : machines) n += c;
    return n;
  }

 private:
  static std::vector<std::pair<std::int64_t, std::int64_t>> normalize(
      std::vector<std::pair<std::int64_t, std::int64_t>> v) {
    std::map<std::int64_t, std::int64_t, std::greater<>> acc;
    for (auto [val, c] : v) acc[val] += c;
    return {acc.begin(), acc.end()};
  }
};

// a identical machines of speed s, each running b jobs of length p per
// (p, b) entry.
struct HMRecord {
  std::int64_t speed = 0;
  std::int64_t machines = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> jobs;
};

struct HMSchedule {
  std::vector<HMRecord> records;
};

struct HMCheck {
  bool ok = true;
  std::string message;
  Rational makespan;
};

// Validation straight from the records, never expanding machines.
inline HMCheck check_hm_schedule(const HMInstance& hm, const HMSchedule& s) {
  HMCheck out;
  std::map<std::int64_t, Integer> jobs_done, machines_used;
  for (const auto& r : s.records) {
    if (r.machines < 1) return {false, "record with no machines", 0};
    machines_used[r.speed] += r.machines;
    Integer load = 0;
    for (auto [p, b] : r.jobs) {
      if (b < 0) return {false, "negative job count", 0};
      jobs_done[p] += Integer(r.machines) * b;
      load += Integer(p) * b;
    }
    Rational c(load, r.speed);
    c.canonicalize();
    out.makespan = std::max(out.makespan, c);
  }
  for (auto [p, eta] : hm.jobs) {
    if (jobs_done[p] != eta) {
      return {false, "job class p=" + std::to_string(p) + " covered " +
                         jobs_done[p].get_str() + " of " + std::to_string(eta), 0};
    }
    jobs_done.erase(p);
  }
  for (const auto& [p, c] : jobs_done) {
    if (c != 0) return {false, "unknown job class p=" + std::to_string(p), 0};
  }
  for (const auto& [s, a] : machines_used) {
    auto it = std::find_if(hm.machines.begin(), hm.machines.end(),
                           [&](const auto& mc) { return mc.first == s; });
    if (it == hm.machines.end()) {
      return {false, "unknown speed " + std::to_string(s), 0};
    }
    if (a > it->second) {
      return {false, "speed " + std::to_string(s) + " over-used", 0};
    }
  }
  return out;
}

// Materializes records onto the expanded instance: machines of a speed
// and jobs of a length are handed out in index order.
inline Schedule expand_schedule(const HMSchedule& s, const Instance& inst) {
  std::map<std::int64_t, std::vector<std::size_t>> mach, jobs;
  for (std::size_t i = inst.m(); i-- > 0;) mach[inst.machines[i]].push_back(i);
  for (std::size_t j = inst.n(); j-- > 0;) jobs[inst.jobs[j]].push_back(j);
  for (auto& [k, v] : mach) std::reverse(v.begin(), v.end());
  for (auto& [k, v] : jobs) std::reverse(v.begin(), v.end());
  std::map<std::int64_t, std::size_t> next_m, next_j;
  Schedule out;
  out.assignment.assign(inst.n(), inst.m());
  for (const auto& r : s.records) {
    for (std::int64_t a = 0; a < r.machines; ++a) {
      auto& pool = mach.at(r.speed);
      std::size_t machine = pool.at(next_m[r.speed]++);
      for (auto [p, b] : r.jobs) {
        auto& jp = jobs.at(p);
        for (std::int64_t t = 0; t < b; ++t) out.assignment[jp.at(next_j[p]++)] = machine;
      }
    }
  }
  return out;
}

}  // namespace qsched

#endif  // QSCHED_HM_HM_TYPES_HPP_
