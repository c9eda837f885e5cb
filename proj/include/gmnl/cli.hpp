// Copyright 2026 The gmnl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "gmnl/inequalities.hpp"
#include "gmnl/inflation.hpp"
#include "gmnl/lonc.hpp"
#include "gmnl/serialization.hpp"

namespace gmnl {

enum class Format { Json, Csv, Text };

struct RunConfig {
  /** "verify c4", "verify caterpillar", ..., "inflation check". */
  std::string command;
  int spine = 0;
  std::vector<int> legs;
  int n = 0;
  int d = 0;
  int t = 1;
  double eta = 1.0;
  std::optional<double> tol;
  bool sweep = false;
  bool brute_force = false;
  bool state_check = false;
  std::string suite;
  std::string file;
  std::string trace_out;
  Format format = Format::Json;
  std::string output;
};

/** One row of a report: a named check and whether its expectation held. */
struct Check {
  std::string name;
  bool passed = true;
  json fields = json::object();
};

struct RunResult {
  std::string command;
  std::vector<Check> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
  int exit_code() const { return passed() ? 0 : 1; }
};

/** --tol wins over GMNL_TOL, which wins over the command default. */
inline double resolve_tol(const std::optional<double>& flag, double fallback) {
  double v = fallback;
  if (flag) {
    v = *flag;
  } else if (const char* env = std::getenv("GMNL_TOL"); env && *env) {
    char* end = nullptr;
    v = std::strtod(env, &end);
    if (end == env || *end != '\0') throw Error(ErrorKind::BadParameter, std::string("GMNL_TOL is not a number: ") + env);
  }
  if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorKind::BadParameter, "tolerance must be a finite non-negative number");
  return v;
}

/** Runs fn(i) for i in [0, count) on a few threads; results are stored by index. */
inline void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
  const size_t workers = std::min<size_t>(count, std::max(1u, std::min(8u, std::thread::hardware_concurrency())));
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace detail {

inline json without_name(json j) {
  j.erase("name");
  return j;
}

inline int vertex_count(int spine, const std::vector<int>& legs) {
  int n = spine;
  for (int k : legs) n += k;
  return n;
}

inline void check_spine(int spine, const std::vector<int>& legs) {
  if (spine < 3) throw Error(ErrorKind::BadParameter, "--spine must be at least 3");
  if (!legs.empty() && static_cast<int>(legs.size()) != spine) {
    throw Error(ErrorKind::BadParameter, "--legs needs one entry per spine position");
  }
  for (int k : legs) {
    if (k < 0) throw Error(ErrorKind::BadParameter, "--legs entries must be non-negative");
  }
}

inline Check caterpillar_check(std::string name, int spine, const std::vector<int>& legs, double eta, double tol) {
  const int N = vertex_count(spine, legs);
  const double threshold = noise_threshold(N, spine);
  InequalityReport r = verify_caterpillar(spine, legs, eta, tol);
  Check c{std::move(name), false, without_name(report_to_json(r))};
  const bool expect = eta > threshold;
  c.fields["N"] = N;
  c.fields["L"] = spine;
  c.fields["eta"] = round9(eta);
  c.fields["threshold"] = round9(threshold);
  c.fields["expect_violation"] = expect;
  c.passed = r.violated == expect;
  return c;
}

inline void add_verification(RunResult& out, const QuditVerification& v) {
  for (const CheckResult& c : v.checks) {
    json f = without_name(check_to_json(c));
    f.erase("passed");
    f["N"] = v.N;
    f["d"] = v.d;
    out.checks.push_back({c.name, c.passed, f});
  }
}

inline RunResult run_verify_c4(const RunConfig& cfg) {
  InequalityReport r = verify_c4(resolve_tol(cfg.tol, kDefaultTol));
  json f = without_name(report_to_json(r));
  f["expect_violation"] = true;
  return {cfg.command, {{"c4", r.violated, f}}};
}

inline RunResult run_verify_caterpillar(const RunConfig& cfg) {
  check_spine(cfg.spine, cfg.legs);
  if (cfg.eta < 0.0 || cfg.eta > 1.0) throw Error(ErrorKind::BadParameter, "--eta must lie in [0, 1]");
  const double tol = resolve_tol(cfg.tol, kDefaultTol);
  RunResult out{cfg.command, {}};
  out.checks.push_back(caterpillar_check("caterpillar", cfg.spine, cfg.legs, cfg.eta, tol));
  // Independent route: expectations straight from the state.
  Multigraph g = caterpillar_graph(cfg.spine, cfg.legs);
  double direct = caterpillar_lhs_from_state(graph_state(g), cfg.eta, classify_caterpillar(g));
  CheckResult agree = check_equal("caterpillar_state_route", direct, verify_caterpillar(cfg.spine, cfg.legs, cfg.eta).lhs,
                                  std::max(tol, 1e-9));
  json f = without_name(check_to_json(agree));
  f.erase("passed");
  out.checks.push_back({agree.name, agree.passed, f});
  return out;
}

inline void check_n_d(const RunConfig& cfg) {
  if (cfg.n < 3) throw Error(ErrorKind::BadParameter, "--n must be at least 3");
  if (cfg.d < 2) throw Error(ErrorKind::BadParameter, "--d must be at least 2");
}

inline RunResult run_verify_qudit_cluster(const RunConfig& cfg) {
  check_n_d(cfg);
  RunResult out{cfg.command, {}};
  add_verification(out, verify_qudit_cluster(cfg.n, cfg.d, resolve_tol(cfg.tol, 1e-9)));
  return out;
}

inline RunResult run_verify_qudit_ghz(const RunConfig& cfg) {
  check_n_d(cfg);
  RunResult out{cfg.command, {}};
  add_verification(out, verify_qudit_ghz(cfg.n, cfg.d, resolve_tol(cfg.tol, 1e-9)));
  return out;
}

inline RunResult run_verify_ghz_line(const RunConfig& cfg) {
  if (cfg.n < 3) throw Error(ErrorKind::BadParameter, "--n must be at least 3");
  if (cfg.t < 0) throw Error(ErrorKind::BadParameter, "--t must be non-negative");
  const double tol = resolve_tol(cfg.tol, kDefaultTol);
  RunResult out{cfg.command, {}};
  InequalityReport r = verify_ghz_line(cfg.n, tol);
  json f = without_name(report_to_json(r));
  f["n"] = cfg.n;
  f["expect_violation"] = true;
  out.checks.push_back({"ghz_line", r.violated, f});
  if (cfg.brute_force) {
    const double best = brute_force_lonc_max(cfg.n, cfg.t);
    // With t <= n - 2 rounds the first input cannot reach the last party.
    const bool bounded = cfg.t <= cfg.n - 2;
    json g{{"value", round9(best)}, {"bound", 4.0}, {"n", cfg.n}, {"t", cfg.t}, {"expect_bound", bounded}, {"tol", round9(tol)}};
    out.checks.push_back({"lonc_classical_max", !bounded || std::abs(best - 4.0) <= tol, g});
  }
  return out;
}

inline RunResult run_noise_threshold(const RunConfig& cfg) {
  check_spine(cfg.spine, cfg.legs);
  const int N = vertex_count(cfg.spine, cfg.legs);
  const double tol = resolve_tol(cfg.tol, kDefaultTol);
  const double threshold = noise_threshold(N, cfg.spine);
  RunResult out{cfg.command, {}};
  out.checks.push_back({"noise_threshold", true, {{"N", N}, {"L", cfg.spine}, {"value", round9(threshold)}}});
  if (cfg.sweep) {
    for (int k = 50; k <= 100; ++k) {
      char name[32];
      std::snprintf(name, sizeof name, "eta=%.2f", k / 100.0);
      out.checks.push_back(caterpillar_check(name, cfg.spine, cfg.legs, k / 100.0, tol));
    }
  } else {
    out.checks.push_back(caterpillar_check("threshold_minus_1e-3", cfg.spine, cfg.legs, threshold - 1e-3, tol));
    out.checks.push_back(caterpillar_check("threshold_plus_1e-3", cfg.spine, cfg.legs, std::min(1.0, threshold + 1e-3), tol));
  }
  return out;
}

inline RunResult run_lonc_prepare(const RunConfig& cfg) {
  if (cfg.n < 2) throw Error(ErrorKind::BadParameter, "--n must be at least 2");
  const double tol = resolve_tol(cfg.tol, 1e-9);
  ClusterProtocol p = prepare_cluster_protocol(cfg.n, cfg.state_check);
  TraceReport tr = validate_trace(p.trace, 2);
  RunResult out{cfg.command, {}};
  json tf = trace_report_to_json(tr);
  tf["events"] = p.trace.events.size();
  tf["N"] = cfg.n;
  out.checks.push_back({"trace", tr.valid && tr.rounds == 2, tf});
  out.checks.push_back({"final_graph_is_path", protocol_graph_is_path(p), {{"N", cfg.n}, {"graph", graph_to_json(p.final_graph)}}});
  if (p.overlap) {
    out.checks.push_back({"state_overlap", *p.overlap >= 1.0 - tol,
                          {{"value", round9(*p.overlap)}, {"target", 1.0}, {"tol", round9(tol)}}});
  }
  if (!cfg.trace_out.empty()) {
    std::ofstream f(cfg.trace_out);
    if (!f) throw Error(ErrorKind::BadParameter, "cannot write " + cfg.trace_out);
    f << trace_to_json(p.trace).dump(1) << "\n";
  }
  return out;
}

inline RunResult run_inflation_check(const RunConfig& cfg) {
  if (cfg.suite.empty() == cfg.file.empty()) throw Error(ErrorKind::BadParameter, "give exactly one of --suite or --file");
  std::string path = cfg.file;
  if (!cfg.suite.empty()) {
    static const std::set<std::string> suites{"appendixB", "appendixC", "appendixC_wide", "appendixD", "ghz"};
    if (!suites.count(cfg.suite)) throw Error(ErrorKind::BadParameter, "unknown suite " + cfg.suite);
    path = claims_path(cfg.suite);
  }
  ClaimScript script = load_claim_script(path);
  std::vector<ClaimResult> results(script.claims.size());
  parallel_for(results.size(), [&](size_t i) { results[i] = check_claim(script.claims[i]); });
  RunResult out{cfg.command, {}};
  for (size_t i = 0; i < results.size(); ++i) {
    char prefix[16];
    std::snprintf(prefix, sizeof prefix, "%04zu ", i + 1);
    json f = claim_result_to_json(results[i]);
    f.erase("description");
    f.erase("passed");
    f["script"] = script.name;
    out.checks.push_back({prefix + results[i].description, results[i].passed, f});
  }
  if (out.checks.empty()) throw Error(ErrorKind::Parse, "claim script has no claims");
  return out;
}

inline std::string text_value(const json& v) {
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return format9(v.get<double>());
  return v.dump();
}

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace detail

/** Dispatches a parsed configuration. Invalid parameters throw Error. */
inline RunResult run(const RunConfig& cfg) {
  using Handler = RunResult (*)(const RunConfig&);
  static const std::map<std::string, Handler> handlers{
      {"verify c4", detail::run_verify_c4},
      {"verify caterpillar", detail::run_verify_caterpillar},
      {"verify qudit-cluster", detail::run_verify_qudit_cluster},
      {"verify qudit-ghz", detail::run_verify_qudit_ghz},
      {"verify ghz-line", detail::run_verify_ghz_line},
      {"noise-threshold", detail::run_noise_threshold},
      {"lonc prepare", detail::run_lonc_prepare},
      {"inflation check", detail::run_inflation_check},
  };
  auto it = handlers.find(cfg.command);
  if (it == handlers.end()) throw Error(ErrorKind::BadParameter, "unknown command " + cfg.command);
  RunResult r = it->second(cfg);
  std::stable_sort(r.checks.begin(), r.checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
  return r;
}

inline std::string render(const RunResult& r, Format format) {
  std::ostringstream os;
  if (format == Format::Json) {
    json checks = json::array();
    for (const Check& c : r.checks) {
      json j = c.fields;
      j["name"] = c.name;
      j["passed"] = c.passed;
      checks.push_back(j);
    }
    json doc{{"command", r.command}, {"passed", r.passed()}, {"checks", checks}};
    os << doc.dump(2) << "\n";
  } else if (format == Format::Csv) {
    std::set<std::string> keys;
    for (const Check& c : r.checks) {
      for (const auto& [k, v] : c.fields.items()) keys.insert(k);
    }
    os << "name,passed";
    for (const std::string& k : keys) os << "," << detail::csv_cell(k);
    os << "\n";
    for (const Check& c : r.checks) {
      os << detail::csv_cell(c.name) << "," << (c.passed ? "true" : "false");
      for (const std::string& k : keys) {
        os << ",";
        if (c.fields.contains(k)) os << detail::csv_cell(detail::text_value(c.fields.at(k)));
      }
      os << "\n";
    }
  } else {
    for (const Check& c : r.checks) {
      os << c.name << ": " << (c.passed ? "PASS" : "FAIL");
      for (const auto& [k, v] : c.fields.items()) {
        if (v.is_object() || v.is_array()) continue;
        os << " " << k << "=" << detail::text_value(v);
      }
      os << "\n";
    }
    os << r.command << ": " << (r.passed() ? "all checks passed" : "some checks failed") << "\n";
  }
  return os.str();
}

/** Full command-line entry point; returns the process exit code. */
inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification suites for graph-state network nonlocality"};
  app.fallthrough();
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "json";
  std::optional<double> tol;
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--output", cfg.output, "Write the report to this file");
  app.add_option("--tol", tol, "Tolerance; overrides GMNL_TOL");

  CLI::App* verify = app.add_subcommand("verify", "Evaluate an inequality on its quantum realization");
  verify->require_subcommand(1);
  CLI::App* c4 = verify->add_subcommand("c4", "Four-qubit cluster inequality");
  CLI::App* cat = verify->add_subcommand("caterpillar", "Caterpillar graph-state inequality");
  cat->add_option("--spine", cfg.spine, "Spine length L")->required();
  cat->add_option("--legs", cfg.legs, "Leg count per spine position")->delimiter(',');
  cat->add_option("--eta", cfg.eta, "Visibility of the noisy state");
  CLI::App* qc = verify->add_subcommand("qudit-cluster", "Conditional CGLMP test on a qudit cluster state");
  qc->add_option("--n", cfg.n, "Number of qudits")->required();
  qc->add_option("--d", cfg.d, "Local dimension (prime)")->required();
  CLI::App* qg = verify->add_subcommand("qudit-ghz", "Conditional CGLMP test on a qudit GHZ state");
  qg->add_option("--n", cfg.n, "Number of qudits")->required();
  qg->add_option("--d", cfg.d, "Local dimension")->required();
  CLI::App* gl = verify->add_subcommand("ghz-line", "Line inequality on the GHZ state");
  gl->add_option("--n", cfg.n, "Number of parties")->required();
  gl->add_option("--t", cfg.t, "Communication rounds for the classical bound");
  gl->add_flag("--brute-force", cfg.brute_force, "Enumerate deterministic LONC strategies");

  CLI::App* nt = app.add_subcommand("noise-threshold", "Visibility threshold of the caterpillar inequality");
  nt->add_option("--spine", cfg.spine, "Spine length L")->required();
  nt->add_option("--legs", cfg.legs, "Leg count per spine position")->delimiter(',');
  nt->add_flag("--sweep", cfg.sweep, "Evaluate a grid of visibilities");

  CLI::App* lonc = app.add_subcommand("lonc", "One-way LOCC network protocols");
  lonc->require_subcommand(1);
  CLI::App* prep = lonc->add_subcommand("prepare", "Two-round cluster-state preparation");
  prep->add_option("--n", cfg.n, "Number of parties")->required();
  prep->add_flag("--state-check", cfg.state_check, "Replay the protocol on a state vector");
  prep->add_option("--trace", cfg.trace_out, "Write the event trace as JSON");

  CLI::App* infl = app.add_subcommand("inflation", "Subnetwork-equivalence claims");
  infl->require_subcommand(1);
  CLI::App* check = infl->add_subcommand("check", "Check a shipped suite or a claim file");
  std::vector<std::string> positional;
  check->add_option("--suite", cfg.suite, "appendixB, appendixC, appendixC_wide, appendixD or ghz");
  check->add_option("--file", cfg.file, "Claim script path");
  check->add_option("target", positional, "file PATH");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (*c4) cfg.command = "verify c4";
  if (*cat) cfg.command = "verify caterpillar";
  if (*qc) cfg.command = "verify qudit-cluster";
  if (*qg) cfg.command = "verify qudit-ghz";
  if (*gl) cfg.command = "verify ghz-line";
  if (*nt) cfg.command = "noise-threshold";
  if (*prep) cfg.command = "lonc prepare";
  if (*check) {
    cfg.command = "inflation check";
    if (!positional.empty()) {
      if (positional.size() != 2 || positional[0] != "file" || !cfg.file.empty()) {
        err << "error: expected 'file PATH'\n";
        return 2;
      }
      cfg.file = positional[1];
    }
  }
  cfg.tol = tol;
  cfg.format = format == "csv" ? Format::Csv : format == "text" ? Format::Text : Format::Json;

  RunResult result;
  try {
    result = run(cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const std::string text = render(result, cfg.format);
  if (cfg.output.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.output);
    if (!f) {
      err << "error: cannot write " << cfg.output << "\n";
      return 2;
    }
    f << text;
  }
  return result.exit_code();
}

}  // namespace gmnl
