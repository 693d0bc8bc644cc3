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

#ifndef QSCHED_SCHED_HYBRID_MILP_HPP_
#define QSCHED_SCHED_HYBRID_MILP_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsched/hm/greedy_core.hpp"
#include "qsched/hm/hm_types.hpp"
#include "qsched/rational.hpp"
#include "qsched/sched/configurations.hpp"
#include "qsched/sched/instance.hpp"
#include "qsched/sched/preprocess.hpp"
#include "qsched/sched/recursive_milp.hpp"

namespace qsched {

// x over configurations of long jobs, y over (machine index, tiny job index).
struct HybridSolution {
  std::map<std::pair<std::size_t, Config>, Rational> x;
  std::map<std::pair<std::size_t, std::size_t>, Rational> y;
};

// All multisets over H_i that fit into b_i.
inline std::vector<Config> build_cprime(const Grid& g, std::size_t i) {
  if (i >= g.tau) throw std::out_of_range("build_cprime: index");
  std::vector<std::size_t> cand;
  for (std::size_t j = i; j < g.tau; ++j) {
    if (g.long_for(i, j)) cand.push_back(j);
  }
  std::vector<Config> out;
  Config cur;
  Rational load = 0;
  auto dfs = [&](auto&& self, std::size_t from) -> void {
    out.push_back(cur);
    for (std::size_t t = from; t < cand.size(); ++t) {
      std::size_t j = cand[t];
      long k = 0;
      while (load + g.b[j] <= g.b[i]) {
        load += g.b[j];
        ++k;
        cur.emplace_back(j, k);
        self(self, t + 1);
        cur.pop_back();
      }
      load -= g.b[j] * k;
    }
  };
  dfs(dfs, 0);
  std::sort(out.begin(), out.end(), config_less);
  return out;
}

inline Rational free_speed(const Grid& g, std::size_t i, const Config& c) {
  return g.b[i] - config_size(c, g);
}

// Exact re-substitution of the three constraint families plus the domain
// restrictions on x and y. Returns an empty string when all hold.
inline std::string check_hybrid(const HybridSolution& hs, const RoundedInstance& ri) {
  const Grid& g = ri.grid;
  std::vector<Rational> count(g.tau), cover(g.tau), cap(g.tau);
  for (const auto& [key, v] : hs.x) {
    const auto& [i, c] = key;
    if (v < 0) return "negative x";
    if (i < g.L && !is_integral(v)) return "fractional x at integral index " + std::to_string(i);
    for (auto [j, k] : c) {
      if (!g.long_for(i, j)) return "configuration leaves H_" + std::to_string(i);
      cover[j] += v * k;
    }
    Rational f = free_speed(g, i, c);
    if (f < 0) return "configuration exceeds b_" + std::to_string(i);
    count[i] += v;
    cap[i] += f * v;
  }
  for (const auto& [key, v] : hs.y) {
    auto [i, j] = key;
    if (v < 0) return "negative y";
    if (v != 0 && (g.b[j] > g.delta * g.b[i])) {
      return "y routes long job " + std::to_string(j) + " to " + std::to_string(i);
    }
    cover[j] += v;
    cap[i] -= g.b[j] * v;
  }
  for (std::size_t r = 0; r < g.tau; ++r) {
    if (count[r] != ri.mu[r]) return "machine count mismatch at " + std::to_string(r);
    if (cover[r] != ri.eta[r]) return "job coverage mismatch at " + std::to_string(r);
    if (cap[r] < 0) return "capacity exceeded at " + std::to_string(r);
  }
  return {};
}

inline Config restrict_long(const Config& c, const Grid& g, std::size_t i) {
  Config out;
  for (auto e : c) {
    if (g.long_for(i, e.first)) out.push_back(e);
  }
  return out;
}

inline Config config_sum(const Config& a, const Config& b) {
  Config out = a;
  for (auto [j, k] : b) out = add_unit(std::move(out), j, k);
  return out;
}

inline HybridSolution convert_solution(const RecursiveMilp& rm, const ConfigMilpSolution& sol,
                                       const RoundedInstance& ri) {
  if (!satisfies(rm, sol)) throw std::invalid_argument("convert_solution: infeasible input");
  const Grid& g = ri.grid;
  const std::size_t tau = g.tau;
  auto cmp = [](const Config& a, const Config& b) { return config_less(a, b); };
  using Pool = std::map<Config, Rational, decltype(cmp)>;
  std::vector<Pool> pool(tau, Pool(cmp));
  for (std::size_t v = 0; v < rm.vars.size(); ++v) {
    if (sol.x[v] != 0) pool[rm.vars[v].i][rm.vars[v].gamma] += sol.x[v];
  }
  std::vector<Rational> eta(tau);
  for (std::size_t r = 0; r < tau; ++r) eta[r] = ri.eta[r];
  auto bump = [](Pool& p, const Config& c, const Rational& d) {
    Rational& v = p[c];
    v += d;
    if (v == 0) p.erase(c);
  };
  for (std::size_t i = 0; i < tau; ++i) {
    Pool& P = pool[i];
    const Config self{{i, 1}};
    const bool integral = i < g.L;
    Rational total = 0;
    for (const auto& [c, v] : P) total += v;
    Rational surplus = total - ri.mu[i];
    if (surplus < 0) throw std::logic_error("convert_solution: too few configurations");
    // Self configurations go first, then the lexicographically largest.
    while (surplus > 0) {
      auto it = P.find(self);
      if (it == P.end()) it = std::prev(P.end());
      Rational t = std::min(surplus, it->second);
      surplus -= t;
      bump(P, Config(it->first), -t);
    }
    for (;;) {
      std::map<std::size_t, Rational> zeta;
      for (const auto& [c, v] : P) {
        for (auto [j, k] : c) zeta[j] += v * k;
      }
      std::optional<std::size_t> hot;
      for (const auto& [j, z] : zeta) {
        if (z > eta[j]) {
          hot = j;
          break;
        }
      }
      if (!hot) {
        for (const auto& [j, z] : zeta) eta[j] -= z;
        break;
      }
      const std::size_t j = *hot;
      Rational need = zeta[j] - eta[j];
      while (need > 0) {
        auto host = std::find_if(P.begin(), P.end(),
                                 [&](const auto& e) { return count_of(e.first, j) > 0; });
        const Config gamma = host->first;
        Rational t = std::min(need, host->second);
        std::optional<Config> sub;
        if (j != i) {
          for (const auto& [c, v] : pool[j]) {
            if (c == Config{{j, 1}}) continue;
            Rational u = std::min(t, v);
            if (integral) u = floor_of(u);
            if (u > 0) {
              sub = c;
              t = u;
              break;
            }
          }
        }
        if (integral && !sub) t = std::max(Rational(floor_of(t)), std::min(Rational(1), t));
        Config repl = add_unit(gamma, j, -1);
        if (sub) {
          bump(pool[j], *sub, -t);
          repl = config_sum(repl, restrict_long(*sub, g, i));
        }
        bump(P, gamma, -t);
        bump(P, repl, t);
        need -= t;
      }
    }
  }
  HybridSolution hs;
  for (std::size_t i = 0; i < tau; ++i) {
    for (const auto& [c, v] : pool[i]) {
      if (i < tau && (ri.mu[i] > 0)) hs.x[{i, c}] = v;
    }
  }
  for (std::size_t i = tau; i-- > 0;) {
    if (ri.mu[i] == 0) continue;
    Rational z = 0;
    for (const auto& [c, v] : pool[i]) z += free_speed(g, i, c) * v;
    for (std::size_t j = tau; j-- > i + 1 && z > 0;) {
      if (g.b[j] > g.delta * g.b[i]) break;
      if (eta[j] == 0) continue;
      Rational amt = std::min(eta[j], Rational(z / g.b[j]));
      hs.y[{i, j}] += amt;
      z -= amt * g.b[j];
      eta[j] -= amt;
    }
  }
  for (std::size_t j = 0; j < tau; ++j) {
    if (eta[j] != 0) {
      throw std::logic_error("convert_solution: jobs of index " + std::to_string(j) +
                             " left unrouted");
    }
  }
  return hs;
}

// Original classes feeding a rounded instance: values with counts, listed
// in the order used for RoundedInstance::job_class_index and
// machine_class_index.
struct ClassLists {
  std::vector<std::pair<std::int64_t, std::int64_t>> jobs;
  std::vector<std::pair<std::int64_t, std::int64_t>> machines;
};

namespace detail {

struct Group {
  std::size_t mclass = 0;
  std::size_t grid = 0;
  Integer count;
  Config gamma;
  std::vector<std::pair<std::size_t, Integer>> jobs;
  bool designated = false;
};

// Pieces of original job classes per grid index, longest first.
class JobQueues {
 public:
  JobQueues(const ClassLists& cl, const RoundedInstance& ri) : q_(ri.grid.tau) {
    std::vector<std::size_t> order(cl.jobs.size());
    for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return cl.jobs[a].first > cl.jobs[b].first;
    });
    for (std::size_t c : order) q_[ri.job_class_index[c]].push_back({c, cl.jobs[c].second});
  }

  bool empty(std::size_t j) const { return q_[j].empty(); }
  std::pair<std::size_t, Integer>& front(std::size_t j) { return q_[j].front(); }

  std::vector<std::pair<std::size_t, Integer>> take(std::size_t j, Integer n) {
    std::vector<std::pair<std::size_t, Integer>> out;
    while (n > 0 && !q_[j].empty()) {
      auto& f = q_[j].front();
      Integer t = std::min(n, f.second);
      out.emplace_back(f.first, t);
      f.second -= t;
      n -= t;
      if (f.second == 0) q_[j].pop_front();
    }
    return out;
  }

  Integer available(std::size_t j) const {
    Integer s = 0;
    for (const auto& e : q_[j]) s += e.second;
    return s;
  }

 private:
  std::vector<std::deque<std::pair<std::size_t, Integer>>> q_;
};

inline void add_jobs(std::vector<std::pair<std::size_t, Integer>>& dst, std::size_t cls,
                     const Integer& k) {
  for (auto& e : dst) {
    if (e.first == cls) {
      e.second += k;
      return;
    }
  }
  dst.emplace_back(cls, k);
}

// Fills c slots of index j on every machine of g, splitting g whenever the
// supplying job class changes.
inline void fill_slots(const Group& g, std::size_t j, long c, JobQueues& q,
                       std::vector<Group>& out) {
  Integer left = g.count;
  while (left > 0) {
    if (q.empty(j)) {
      Group r = g;
      r.count = left;
      out.push_back(std::move(r));
      return;
    }
    auto& [cls, avail] = q.front(j);
    Integer full = avail / c;
    if (full > 0) {
      Integer take = std::min(full, left);
      Group r = g;
      r.count = take;
      add_jobs(r.jobs, cls, c);
      q.take(j, take * c);
      out.push_back(std::move(r));
      left -= take;
    } else {
      Group r = g;
      r.count = 1;
      for (const auto& [k, t] : q.take(j, c)) add_jobs(r.jobs, k, t);
      out.push_back(std::move(r));
      left -= 1;
    }
  }
}

}  // namespace detail

struct FastBuildStats {
  std::size_t extra_copies = 0;
  Integer overflow_jobs = 0;
};

// Record-level schedule: configuration copies go to machines in decreasing
// speed order with one extra copy per fractional variable on a fastest
// machine; tiny jobs are packed greedily into the free speed of every
// index. `extra_jobs` lists job classes placed on the fastest machine
// unconditionally.
inline HMSchedule build_schedule_fast(
    const HybridSolution& hs, const RoundedInstance& ri, const ClassLists& cl,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& extra_jobs = {},
    FastBuildStats* stats = nullptr) {
  const Grid& g = ri.grid;
  const std::size_t tau = g.tau;
  FastBuildStats st;
  if (cl.machines.empty()) throw std::invalid_argument("build_schedule_fast: no machines");
  std::size_t fast = 0;
  for (std::size_t c = 1; c < cl.machines.size(); ++c) {
    if (cl.machines[c].first > cl.machines[fast].first) fast = c;
  }
  // Machine slots per index: (class, count), fastest class first.
  std::vector<std::vector<std::pair<std::size_t, Integer>>> slots(tau);
  {
    std::vector<std::size_t> order(cl.machines.size());
    for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return cl.machines[a].first > cl.machines[b].first;
    });
    for (std::size_t c : order) {
      auto& s = slots[ri.machine_class_index[c]];
      if (c == fast) {
        s.insert(s.begin(), {c, 1});
        if (cl.machines[c].second > 1) s.emplace_back(c, cl.machines[c].second - 1);
      } else {
        s.emplace_back(c, cl.machines[c].second);
      }
    }
  }
  const std::size_t fast_grid = ri.machine_class_index[fast];
  std::vector<detail::Group> groups;
  Config extra;
  for (std::size_t i = 0; i < tau; ++i) {
    if (slots[i].empty()) continue;
    std::vector<std::pair<Config, Rational>> cs;
    for (auto it = hs.x.lower_bound({i, Config{}}); it != hs.x.end() && it->first.first == i;
         ++it) {
      if (it->second > 0) cs.emplace_back(it->first.second, it->second);
    }
    std::stable_sort(cs.begin(), cs.end(), [&](const auto& a, const auto& b) {
      return config_size(a.first, g) > config_size(b.first, g);
    });
    std::size_t s = 0;
    Integer used = 0;
    auto emit = [&](const Config& c, Integer copies) {
      while (copies > 0) {
        if (s == slots[i].size()) throw std::logic_error("build_schedule_fast: too many copies");
        auto [cls, cnt] = slots[i][s];
        Integer take = std::min(copies, Integer(cnt - used));
        groups.push_back({cls, i, take, c, {}, false});
        copies -= take;
        used += take;
        if (used == cnt) {
          ++s;
          used = 0;
        }
      }
    };
    for (const auto& [c, v] : cs) {
      emit(c, floor_of(v));
      if (!is_integral(v)) {
        ++st.extra_copies;
        extra = config_sum(extra, c);
      }
    }
    Integer rest = 0;
    for (std::size_t t = s; t < slots[i].size(); ++t) rest += slots[i][t].second;
    emit({}, rest - used);
  }
  // The first group emitted at the fastest index is the single fastest machine.
  for (auto& gr : groups) {
    if (gr.mclass == fast && gr.grid == fast_grid) {
      gr.designated = true;
      gr.gamma = config_sum(gr.gamma, extra);
      break;
    }
  }

  detail::JobQueues q(cl, ri);
  for (std::size_t j = 0; j < tau; ++j) {
    std::vector<detail::Group> next;
    next.reserve(groups.size());
    for (auto& gr : groups) {
      long c = count_of(gr.gamma, j);
      if (c == 0) {
        next.push_back(std::move(gr));
      } else {
        detail::fill_slots(gr, j, c, q, next);
      }
    }
    groups = std::move(next);
  }

  // Tiny jobs per machine index: ceil of y while jobs last.
  std::vector<std::vector<std::pair<std::size_t, Integer>>> tiny(tau);
  for (const auto& [key, v] : hs.y) {
    auto [i, j] = key;
    if (v <= 0) continue;
    for (const auto& piece : q.take(j, ceil_of(v))) tiny[i].push_back(piece);
  }
  std::vector<std::pair<std::size_t, Integer>> on_fast;
  for (std::size_t j = 0; j < tau; ++j) {
    for (const auto& piece : q.take(j, q.available(j))) on_fast.push_back(piece);
  }
  std::vector<detail::Group> packed;
  for (std::size_t i = 0; i < tau; ++i) {
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < groups.size(); ++k) {
      if (groups[k].grid == i) members.push_back(k);
    }
    if (tiny[i].empty()) {
      for (std::size_t k : members) packed.push_back(groups[k]);
      continue;
    }
    std::stable_sort(tiny[i].begin(), tiny[i].end(), [&](const auto& a, const auto& b) {
      return cl.jobs[a.first].first > cl.jobs[b.first].first;
    });
    std::vector<GreedyBin> bins;
    for (std::size_t k : members) {
      Rational f = free_speed(g, i, groups[k].gamma);
      bins.push_back({groups[k].count, f > 0 ? f : Rational(0)});
    }
    std::vector<GreedyItem> items;
    for (const auto& [cls, cnt] : tiny[i]) {
      items.push_back({cnt, g.b[ri.job_class_index[cls]]});
    }
    GreedyOutcome res = greedy_pack(bins, items);
    std::vector<Integer> left(members.size());
    for (std::size_t b = 0; b < members.size(); ++b) left[b] = groups[members[b]].count;
    for (const auto& blk : res.blocks) {
      detail::Group gr = groups[members[blk.bin]];
      gr.count = blk.machines;
      for (const auto& [it, per] : blk.items) detail::add_jobs(gr.jobs, tiny[i][it].first, per);
      left[blk.bin] -= blk.machines;
      packed.push_back(std::move(gr));
    }
    for (std::size_t b = 0; b < members.size(); ++b) {
      if (left[b] > 0) {
        detail::Group gr = groups[members[b]];
        gr.count = left[b];
        packed.push_back(std::move(gr));
      }
    }
    for (std::size_t it = 0; it < items.size(); ++it) {
      if (res.leftover[it] > 0) {
        st.overflow_jobs += res.leftover[it];
        on_fast.emplace_back(tiny[i][it].first, res.leftover[it]);
      }
    }
  }

  HMSchedule out;
  for (auto& gr : packed) {
    if (gr.count == 0) continue;
    std::map<std::int64_t, Integer, std::greater<>> per_p;
    for (const auto& [cls, per] : gr.jobs) per_p[cl.jobs[cls].first] += per;
    if (gr.designated) {
      for (const auto& [cls, cnt] : on_fast) per_p[cl.jobs[cls].first] += cnt;
      for (const auto& [p, cnt] : extra_jobs) per_p[p] += cnt;
    }
    HMRecord r;
    r.speed = cl.machines[gr.mclass].first;
    r.machines = gr.count.get_si();
    for (const auto& [p, per] : per_p) {
      if (per > 0) r.jobs.emplace_back(p, per.get_si());
    }
    out.records.push_back(std::move(r));
  }
  if (stats) *stats = st;
  return out;
}

}  // namespace qsched

#endif  // QSCHED_SCHED_HYBRID_MILP_HPP_
