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

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "gmnl/behavior.hpp"
#include "gmnl/error.hpp"
#include "gmnl/inequalities.hpp"
#include "gmnl/inflation.hpp"
#include "gmnl/lonc.hpp"
#include "gmnl/multigraph.hpp"
#include "gmnl/qudit.hpp"
#include "json.hpp"

namespace gmnl {

using json = nlohmann::json;

/** Text of x with 9 significant digits. */
inline std::string format9(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

/**
 * x rounded to 9 significant digits. The JSON writer prints the shortest
 * text that reads back as this value, so output never carries more digits.
 */
inline double round9(double x) { return std::strtod(format9(x).c_str(), nullptr); }

inline json graph_to_json(const Multigraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.i, e.j, e.w});
  return {{"d", g.d()}, {"n", g.n()}, {"edges", edges}};
}

/** Edges are [i, j] or [i, j, weight]; repeated edges accumulate. */
inline Multigraph graph_from_json(const json& j) {
  try {
    std::vector<Edge> edges;
    for (const json& e : j.at("edges")) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3) throw Error(ErrorKind::Parse, "edge must be [i, j] or [i, j, w]");
      edges.push_back({e[0].get<int>(), e[1].get<int>(), e.size() == 3 ? e[2].get<int>() : 1});
    }
    return new_multigraph(j.at("n").get<int>(), j.at("d").get<int>(), edges);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

inline json state_to_json(const PureState& psi) {
  json amp = json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
    amp.push_back({round9(psi.amplitudes()(i).real()), round9(psi.amplitudes()(i).imag())});
  }
  return {{"d", psi.d()}, {"n", psi.n()}, {"amplitudes", amp}};
}

/** Accepts the object form or a bare array of [re, im] pairs when d and n are given. */
inline PureState state_from_json(const json& j, int d = 0, int n = 0) {
  try {
    const json& amp = j.is_array() ? j : j.at("amplitudes");
    if (!j.is_array()) {
      d = j.at("d").get<int>();
      n = j.at("n").get<int>();
    }
    Vector v(amp.size());
    for (size_t i = 0; i < amp.size(); ++i) v(i) = cplx(amp[i].at(0).get<double>(), amp[i].at(1).get<double>());
    // Amplitudes were written with 9 digits, so renormalize before validation.
    if (v.norm() > 0.0 && std::abs(v.norm() - 1.0) < 1e-6) v /= v.norm();
    return PureState(d, n, v);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

inline std::string setting_key(const std::vector<int>& x) {
  std::string s;
  for (size_t k = 0; k < x.size(); ++k) s += (k ? "," : "") + std::to_string(x[k]);
  return s;
}

inline json behavior_to_json(const Behavior& b) {
  const Scenario& s = b.scenario();
  json p = json::object();
  for (std::uint64_t xi = 0; xi < s.setting_tuples(); ++xi) {
    json row = json::array();
    for (double v : b.table()[xi]) row.push_back(round9(v));
    p[setting_key(s.setting_tuple(xi))] = row;
  }
  return {{"parties", s.parties}, {"d", s.d}, {"settings", s.settings}, {"p", p}};
}

/** Keys of "p" are comma-separated setting tuples; every tuple must appear. */
inline Behavior behavior_from_json(const json& j) {
  try {
    Scenario s{j.at("parties").get<int>(), j.at("settings").get<std::vector<int>>(), j.at("d").get<int>()};
    s.validate();
    const json& p = j.at("p");
    if (p.size() != s.setting_tuples()) throw Error(ErrorKind::ScenarioMismatch, "one row per setting tuple");
    std::vector<std::vector<double>> table;
    for (std::uint64_t xi = 0; xi < s.setting_tuples(); ++xi) {
      const std::string key = setting_key(s.setting_tuple(xi));
      if (!p.contains(key)) throw Error(ErrorKind::ScenarioMismatch, "missing setting tuple " + key);
      table.push_back(p.at(key).get<std::vector<double>>());
    }
    return Behavior(s, table);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

inline json report_to_json(const InequalityReport& r) {
  return {{"name", r.name},
          {"lhs", round9(r.lhs)},
          {"bound", round9(r.bound)},
          {"direction", direction_name(r.direction)},
          {"violated", r.violated},
          {"margin", round9(r.margin)},
          {"settings", r.settings},
          {"tol", round9(r.tol)}};
}

inline json check_to_json(const CheckResult& c) {
  return {{"name", c.name},       {"value", round9(c.value)}, {"target", round9(c.target)},
          {"relation", c.relation}, {"tol", round9(c.tol)},   {"passed", c.passed}};
}

inline json verification_to_json(const QuditVerification& v) {
  json checks = json::array();
  for (const CheckResult& c : v.checks) checks.push_back(check_to_json(c));
  return {{"name", v.name}, {"N", v.N}, {"d", v.d}, {"passed", v.passed()}, {"checks", checks}};
}

inline json claim_result_to_json(const ClaimResult& r) {
  json j{{"description", r.description},
         {"expect", r.expect_equivalent ? "equivalent" : "inequivalent"},
         {"equivalent", r.equivalent},
         {"passed", r.passed}};
  // Signatures are only recorded for failed claims.
  if (!r.signature_a.empty()) j["signatureA"] = r.signature_a;
  if (!r.signature_b.empty()) j["signatureB"] = r.signature_b;
  if (!r.diff.empty()) j["diff"] = r.diff;
  return j;
}

inline json claim_report_to_json(const ClaimReport& rep) {
  json results = json::array();
  for (const ClaimResult& r : rep.results) results.push_back(claim_result_to_json(r));
  return {{"script", rep.script},
          {"claims", rep.results.size()},
          {"failures", rep.failures()},
          {"passed", rep.passed()},
          {"results", results}};
}

/** One record per event: {round, actor, kind, qubit, to}, plus gate details for local operations. */
inline json trace_to_json(const LoncTrace& t) {
  json out = json::array();
  for (const TraceEvent& e : t.events) {
    json ev{{"round", e.round}, {"actor", e.actor}, {"kind", event_kind_name(e.kind)}};
    ev["qubit"] = e.qubits.empty() ? json(nullptr) : json(t.qubit_names.at(e.qubits.front()));
    ev["to"] = e.kind == EventKind::Send ? json(e.to) : json(nullptr);
    if (e.kind == EventKind::LocalOp) {
      json qs = json::array();
      for (int q : e.qubits) qs.push_back(t.qubit_names.at(q));
      ev["gate"] = e.gate;
      ev["qubits"] = qs;
    }
    out.push_back(ev);
  }
  return out;
}

inline json trace_report_to_json(const TraceReport& r) {
  return {{"valid", r.valid}, {"rounds", r.rounds}, {"max_rounds", r.max_rounds}, {"violations", r.violations}};
}

}  // namespace gmnl
