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

#ifndef QSCHED_IO_JSON_IO_HPP_
#define QSCHED_IO_JSON_IO_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qsched/hm/hm_types.hpp"
#include "qsched/rational.hpp"
#include "qsched/sched/instance.hpp"

namespace qsched {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::vector<std::pair<std::int64_t, std::int64_t>> read_classes(const Json& list,
                                                                       const char* key) {
  if (!list.is_array()) throw std::invalid_argument(std::string("expected an array of ") + key);
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& e : list) {
    if (e.is_number_integer()) {
      out.emplace_back(e.get<std::int64_t>(), 1);
    } else if (e.is_object() && e.contains(key)) {
      out.emplace_back(e.at(key).get<std::int64_t>(), e.value("count", std::int64_t{1}));
    } else {
      throw std::invalid_argument(std::string("malformed entry, expected integer or {\"") + key +
                                  "\": ...}");
    }
  }
  return out;
}

}  // namespace detail

inline HMInstance hm_instance_from_json(const Json& j) {
  return HMInstance::make(detail::read_classes(j.at("jobs"), "p"),
                          detail::read_classes(j.at("machines"), "s"));
}

inline Instance instance_from_json(const Json& j) {
  std::vector<std::int64_t> p, s;
  for (auto [v, c] : detail::read_classes(j.at("jobs"), "p")) {
    if (c < 0 || c > 1000000) throw std::invalid_argument("job count out of range");
    p.insert(p.end(), static_cast<std::size_t>(c), v);
  }
  for (auto [v, c] : detail::read_classes(j.at("machines"), "s")) {
    if (c < 0 || c > 1000000) throw std::invalid_argument("machine count out of range");
    s.insert(s.end(), static_cast<std::size_t>(c), v);
  }
  return Instance::make(std::move(p), std::move(s));
}

inline Json to_json(const Instance& inst) {
  Json j;
  j["jobs"] = Json::array();
  j["machines"] = Json::array();
  for (std::size_t k = 0; k < inst.n();) {
    std::size_t e = k;
    while (e < inst.n() && inst.jobs[e] == inst.jobs[k]) ++e;
    j["jobs"].push_back({{"p", inst.jobs[k]}, {"count", e - k}});
    k = e;
  }
  for (std::size_t k = 0; k < inst.m();) {
    std::size_t e = k;
    while (e < inst.m() && inst.machines[e] == inst.machines[k]) ++e;
    j["machines"].push_back({{"s", inst.machines[k]}, {"count", e - k}});
    k = e;
  }
  return j;
}

inline Json to_json(const HMInstance& hm) {
  Json j;
  j["jobs"] = Json::array();
  j["machines"] = Json::array();
  for (auto [p, c] : hm.jobs) j["jobs"].push_back({{"p", p}, {"count", c}});
  for (auto [s, c] : hm.machines) j["machines"].push_back({{"s", s}, {"count", c}});
  return j;
}

inline Json makespan_json(const Rational& c) {
  return {{"exact", to_exact_string(c)}, {"decimal", to_decimal_string(c)}};
}

// Job and machine indices refer to the ascending order of the instance.
inline Json to_json(const Schedule& s, const Instance& inst) {
  Json j;
  j["assignment"] = s.assignment;
  j["makespan"] = makespan_json(makespan(inst, s));
  return j;
}

inline Schedule schedule_from_json(const Json& j) {
  Schedule s;
  s.assignment = j.at("assignment").get<std::vector<std::size_t>>();
  return s;
}

inline Json to_json(const HMSchedule& s, const Rational& c) {
  Json j;
  j["records"] = Json::array();
  for (const auto& r : s.records) {
    Json rec{{"speed", r.speed}, {"machines", r.machines}, {"jobs", Json::array()}};
    for (auto [p, b] : r.jobs) rec["jobs"].push_back({{"p", p}, {"count", b}});
    j["records"].push_back(std::move(rec));
  }
  j["makespan"] = makespan_json(c);
  return j;
}

inline HMSchedule hm_schedule_from_json(const Json& j) {
  HMSchedule s;
  for (const auto& rec : j.at("records")) {
    HMRecord r;
    r.speed = rec.at("speed").get<std::int64_t>();
    r.machines = rec.at("machines").get<std::int64_t>();
    for (const auto& e : rec.at("jobs")) {
      r.jobs.emplace_back(e.at("p").get<std::int64_t>(), e.at("count").get<std::int64_t>());
    }
    s.records.push_back(std::move(r));
  }
  return s;
}

}  // namespace qsched

#endif  // QSCHED_IO_JSON_IO_HPP_
