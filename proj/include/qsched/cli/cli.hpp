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

#ifndef QSCHED_CLI_CLI_HPP_
#define QSCHED_CLI_CLI_HPP_

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsched/bounds/support_bounds.hpp"
#include "qsched/hm/hm.hpp"
#include "qsched/ilp/milp.hpp"
#include "qsched/io/json_io.hpp"
#include "qsched/rational.hpp"
#include "qsched/sched/eptas.hpp"
#include "qsched/sched/generator.hpp"
#include "qsched/sched/instance.hpp"
#include "qsched/sched/oracle.hpp"

namespace qsched::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string read_all(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline Json read_json(const std::string& path, std::istream& in) {
  try {
    return Json::parse(read_all(path, in));
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("malformed JSON: ") + e.what());
  }
}

inline void write_out(const std::string& path, std::ostream& out, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << text << "\n";
}

inline Rational positive_rational(const std::string& text, const char* what) {
  Rational r;
  try {
    r = parse_rational(text);
  } catch (const std::exception&) {
    throw UsageError(std::string("malformed ") + what + ": " + text);
  }
  if (r <= 0) throw UsageError(std::string(what) + " must be positive");
  return r;
}

inline std::string summary(const std::string& algorithm, const Rational& c) {
  return "algorithm " + algorithm + " makespan " + to_exact_string(c) + " (" +
         to_decimal_string(c) + ")";
}

inline Json milp_to_json(const Milp& m) {
  Json j;
  j["num_int"] = m.num_int;
  j["num_cont"] = m.num_cont;
  j["matrix"] = Json::array();
  for (const auto& row : m.a) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(v.get_si());
    j["matrix"].push_back(std::move(r));
  }
  j["sense"] = Json::array();
  j["rhs"] = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    j["sense"].push_back(m.sense[i] == Sense::kEq ? "=" : ">=");
    j["rhs"].push_back(m.rhs[i].get_str());
  }
  j["objective"] = Json::array();
  for (const auto& v : m.objective) j["objective"].push_back(to_exact_string(v));
  return j;
}

inline std::vector<std::vector<Integer>> matrix_from_json(const Json& j) {
  const Json& rows = j.is_array() ? j : j.at("matrix");
  std::vector<std::vector<Integer>> a;
  for (const auto& row : rows) {
    std::vector<Integer> r;
    for (const auto& v : row) {
      r.emplace_back(v.is_string() ? v.get<std::string>() : std::to_string(v.get<std::int64_t>()));
    }
    a.push_back(std::move(r));
  }
  return a;
}

}  // namespace detail

// Runs one command line. Output documents go to `out` (or --output),
// summary lines and diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Scheduling on uniformly related machines"};
  app.require_subcommand(1);
  std::string input, output, algorithm = "eptas", epsilon = "0.3";

  auto* solve = app.add_subcommand("solve", "solve an instance");
  solve->add_option("--algorithm", algorithm, "eptas | hm-greedy | two-eps | brute")
      ->check(CLI::IsMember({"eptas", "hm-greedy", "two-eps", "brute"}));
  solve->add_option("--epsilon", epsilon, "accuracy, > 0");
  solve->add_option("-i,--input", input, "instance JSON (default stdin)");
  solve->add_option("-o,--output", output, "schedule JSON (default stdout)");

  std::string guess;
  auto* hm = app.add_subcommand("hm", "solve a high-multiplicity instance");
  hm->add_option("--algorithm", algorithm, "eptas | hm-greedy | two-eps")
      ->check(CLI::IsMember({"eptas", "hm-greedy", "two-eps"}));
  hm->add_option("--epsilon", epsilon, "accuracy, > 0");
  hm->add_option("--guess", guess, "makespan guess for hm-greedy (default T_p)");
  hm->add_option("-i,--input", input, "instance JSON (default stdin)");
  hm->add_option("-o,--output", output, "record JSON (default stdout)");

  double alpha = 0.5, alpha_prime = 1.0;
  auto* bound = app.add_subcommand("bound", "support bounds of an integer matrix");
  bound->add_option("--alpha", alpha, "tangent parameter");
  bound->add_option("--alpha-prime", alpha_prime, "Lambert parameter");
  bound->add_option("-i,--input", input, "{\"matrix\": [[...]]} (default stdin)");
  bound->add_option("-o,--output", output, "report JSON (default stdout)");

  std::size_t lb_m = 1;
  long lb_amax = 1;
  auto* lower = app.add_subcommand("lowerbound", "emit the support lower-bound instance");
  lower->add_option("m", lb_m, "number of blocks")->required()->check(CLI::PositiveNumber);
  lower->add_option("a_max", lb_amax, "largest column norm")->required()->check(CLI::PositiveNumber);
  lower->add_option("-o,--output", output, "MILP JSON (default stdout)");

  std::string sched_path, bound_text;
  auto* verify = app.add_subcommand("verify", "check a schedule against an instance");
  verify->add_option("-i,--input,--instance", input, "instance JSON")->required();
  verify->add_option("-s,--schedule", sched_path, "schedule JSON (default stdin)");
  verify->add_option("--bound", bound_text, "makespan bound (default: the reported makespan)");

  std::uint64_t seed = 1;
  GenParams gp;
  bool sized = false;
  auto* gen = app.add_subcommand("gen", "emit a seeded random instance");
  gen->add_option("--seed", seed, "splitmix64 seed");
  gen->add_option("--jobs", gp.jobs, "number of jobs")->check(CLI::PositiveNumber);
  gen->add_option("--machines", gp.machines, "number of machines")->check(CLI::PositiveNumber);
  gen->add_option("--pbits", gp.pbits, "p in [1, 2^pbits]")->check(CLI::Range(0, 40));
  gen->add_option("--sbits", gp.sbits, "s in [1, 2^sbits]")->check(CLI::Range(0, 40));
  gen->add_flag("--sized", sized, "draw N and M uniformly up to --jobs and --machines");
  gen->add_option("-o,--output", output, "instance JSON (default stdout)");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) {
      Instance inst = instance_from_json(detail::read_json(input, in));
      const Rational eps = detail::positive_rational(epsilon, "epsilon");
      Schedule s;
      if (algorithm == "eptas") {
        s = eptas(inst, eps);
      } else if (algorithm == "brute") {
        s = opt_makespan_bruteforce(inst).schedule;
      } else {
        HMInstance h = HMInstance::from_instance(inst);
        HMSchedule hs = algorithm == "hm-greedy" ? hm_greedy(h, preemptive_bound(h))
                                                 : hm_two_plus_eps(h, eps).schedule;
        s = expand_schedule(hs, inst);
      }
      const Rational c = makespan(inst, s);
      Validation v = validate_schedule(inst, s, c);
      if (!v.ok) {
        err << "invalid schedule: " << v.message << "\n";
        return kViolation;
      }
      detail::write_out(output, out, to_json(s, inst).dump(2));
      err << detail::summary(algorithm, c) << "\n";
      return kOk;
    }
    if (*hm) {
      HMInstance h = hm_instance_from_json(detail::read_json(input, in));
      const Rational eps = detail::positive_rational(epsilon, "epsilon");
      HMSchedule s;
      if (algorithm == "eptas") {
        s = hm_eptas(h, eps).schedule;
      } else if (algorithm == "hm-greedy") {
        Rational t = guess.empty() ? preemptive_bound(h) : detail::positive_rational(guess, "guess");
        if (t < preemptive_bound(h)) {
          err << "guess below the preemptive bound " << to_exact_string(preemptive_bound(h))
              << "\n";
          return kViolation;
        }
        s = hm_greedy(h, t);
      } else {
        s = hm_two_plus_eps(h, eps).schedule;
      }
      HMCheck c = check_hm_schedule(h, s);
      if (!c.ok) {
        err << "invalid schedule: " << c.message << "\n";
        return kViolation;
      }
      detail::write_out(output, out, to_json(s, c.makespan).dump(2));
      err << detail::summary(algorithm, c.makespan) << "\n";
      return kOk;
    }
    if (*bound) {
      MatrixProfile p(detail::matrix_from_json(detail::read_json(input, in)));
      SupportBoundReport r = bound_report(p, alpha, alpha_prime);
      Json j;
      j["m"] = p.m();
      j["delta"] = p.delta().get_str();
      j["a_max"] = p.a_max().get_str();
      j["bounds"] = Json::object();
      for (const auto& [name, value] : r.rows) j["bounds"][name] = value;
      detail::write_out(output, out, j.dump(2));
      return kOk;
    }
    if (*lower) {
      detail::write_out(output, out, detail::milp_to_json(lower_bound_instance(lb_m, lb_amax)).dump(2));
      return kOk;
    }
    if (*verify) {
      std::istringstream none;
      Json ij = detail::read_json(input, none);
      Json sj = detail::read_json(sched_path, in);
      Rational limit;
      if (!bound_text.empty()) {
        limit = parse_rational(bound_text);
      } else if (sj.contains("makespan")) {
        limit = parse_rational(sj.at("makespan").at("exact").get<std::string>());
      } else {
        throw UsageError("no --bound given and the schedule reports no makespan");
      }
      if (sj.contains("records")) {
        HMInstance h = hm_instance_from_json(ij);
        HMCheck c = check_hm_schedule(h, hm_schedule_from_json(sj));
        if (!c.ok) {
          err << "violation: " << c.message << "\n";
          return kViolation;
        }
        if (c.makespan > limit) {
          err << "violation: makespan " << to_exact_string(c.makespan) << " > "
              << to_exact_string(limit) << "\n";
          return kViolation;
        }
        out << "ok makespan " << to_exact_string(c.makespan) << "\n";
        return kOk;
      }
      Instance inst = instance_from_json(ij);
      Schedule s = schedule_from_json(sj);
      Validation v = validate_schedule(inst, s, limit);
      if (!v.ok) {
        err << "violation: " << v.message << "\n";
        return kViolation;
      }
      out << "ok makespan " << to_exact_string(makespan(inst, s)) << "\n";
      return kOk;
    }
    if (*gen) {
      Instance inst = sized ? generate_sized(seed, gp.jobs, gp.machines, gp.pbits, gp.sbits)
                            : generate_instance(seed, gp);
      detail::write_out(output, out, to_json(inst).dump(2));
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const SearchSpaceTooLarge& e) {
    err << "guard exceeded: " << e.what() << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    err << "malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "malformed input: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace qsched::cli

#endif  // QSCHED_CLI_CLI_HPP_
