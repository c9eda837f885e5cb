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


// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "gmnl/inequalities.hpp"
#include "gmnl/inflation.hpp"
#include "gmnl/lonc.hpp"
#include "gmnl/serialization.hpp"

using namespace gmnl;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

struct Outcome {
  bool passed;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double time_limit;  // seconds; 0 means none
  std::function<Outcome()> run;
};

std::string num(double x) { return format9(x); }

int vertex_count(const std::vector<int>& legs, int L) {
  int n = L;
  for (int k : legs) n += k;
  return n;
}

Outcome c4_reproduction() {
  InequalityReport r = verify_c4();
  bool ok = std::abs(r.lhs - 8.82842712) <= 1e-7 && r.bound == 8.0 && r.violated;
  return {ok, "lhs " + num(r.lhs) + ", bound " + num(r.bound)};
}

Outcome caterpillar_margins() {
  const std::vector<std::pair<int, std::vector<int>>> cases{
      {4, {}}, {3, {0, 1, 0}}, {4, {0, 1, 1, 0}}, {5, {0, 2, 0, 1, 0}}};
  bool ok = true;
  std::string detail;
  for (const auto& [L, legs] : cases) {
    const int N = vertex_count(legs, L);
    InequalityReport r = verify_caterpillar(L, legs);
    Multigraph g = caterpillar_graph(L, legs);
    double direct = caterpillar_lhs_from_state(graph_state(g), 1.0, classify_caterpillar(g));
    bool good = r.bound == 2.0 * (2 * N - L) && std::abs(r.margin - (2 * kSqrt2 - 2)) <= 1e-7 &&
                std::abs(direct - r.lhs) <= 1e-9;
    ok = ok && good;
    detail += (detail.empty() ? "" : "; ") + std::string("L=") + std::to_string(L) + " N=" + std::to_string(N) +
              " margin " + num(r.margin) + (good ? "" : " (wrong)");
  }
  return {ok, detail};
}

Outcome threshold_bracketing() {
  const std::vector<std::pair<int, std::vector<int>>> cases{{4, {}}, {4, {0, 1, 0, 0}}, {3, {0, 2, 0}}};
  bool ok = true;
  std::string detail;
  for (const auto& [L, legs] : cases) {
    const int N = vertex_count(legs, L);
    const double t = noise_threshold(N, L);
    const double closed = (2.0 * N - L) / (2.0 * N - L + kSqrt2 - 1.0);
    bool above = verify_caterpillar(L, legs, t + 1e-3).violated;
    bool below = verify_caterpillar(L, legs, t - 1e-3).violated;
    bool good = std::abs(t - closed) <= 1e-15 && above && !below;
    ok = ok && good;
    detail += (detail.empty() ? "" : "; ") + std::string("(N,L)=(") + std::to_string(N) + "," + std::to_string(L) +
              ") threshold " + num(t) + (good ? "" : " (bracket fails)");
  }
  return {ok, detail};
}

Outcome qudit_suite(const std::vector<std::pair<int, int>>& cases,
                    const std::function<QuditVerification(int, int)>& verify) {
  bool ok = true;
  std::string detail;
  for (const auto& [N, d] : cases) {
    QuditVerification v = verify(N, d);
    bool good = v.passed();
    for (const CheckResult& c : v.checks) {
      if (c.relation == "==") good = good && std::abs(c.value - 1.0) <= 1e-9;
    }
    ok = ok && good;
    detail += (detail.empty() ? "" : "; ") + std::string("(") + std::to_string(N) + "," + std::to_string(d) +
              ") cglmp " + num(v.checks.front().value) + " < " + num(d - 1.0) + (good ? "" : " (fails)");
  }
  return {ok, detail};
}

Outcome ghz_line() {
  bool ok = true;
  std::string detail = "lhs";
  for (int n : {3, 4, 5}) {
    InequalityReport r = verify_ghz_line(n);
    ok = ok && std::abs(r.lhs - (2 + 2 * kSqrt2)) <= 1e-7;
    detail += " " + num(r.lhs);
  }
  detail += "; classical max";
  for (auto [n, t] : std::vector<std::pair<int, int>>{{3, 1}, {4, 1}, {4, 2}}) {
    double best = brute_force_lonc_max(n, t);
    ok = ok && best == 4.0;
    detail += " (" + std::to_string(n) + "," + std::to_string(t) + ")=" + num(best);
  }
  return {ok, detail};
}

Outcome lonc_preparation() {
  bool ok = true;
  int valid = 0;
  for (int N = 2; N <= 10; ++N) {
    ClusterProtocol p = prepare_cluster_protocol(N);
    TraceReport r = validate_trace(p.trace, 2);
    bool good = r.valid && r.rounds == 2 && protocol_graph_is_path(p) && !validate_trace(p.trace, 1).valid;
    valid += good;
    ok = ok && good;
  }
  std::string detail = std::to_string(valid) + "/9 traces valid in exactly 2 rounds; overlap";
  for (int N : {3, 4}) {
    ClusterProtocol p = prepare_cluster_protocol(N, true);
    ok = ok && p.overlap && *p.overlap >= 1.0 - 1e-9;
    detail += " N=" + std::to_string(N) + ":" + (p.overlap ? num(*p.overlap) : std::string("-"));
  }
  return {ok, detail};
}

Outcome inflation_suites() {
  bool ok = true;
  std::string detail;
  for (const std::string suite : {"appendixB", "appendixC", "appendixC_wide", "appendixD"}) {
    ClaimReport rep = check_claims(load_claim_script(claims_path(suite)));
    ok = ok && rep.passed() && !rep.results.empty();
    detail += suite + " " + std::to_string(rep.results.size() - rep.failures()) + "/" +
              std::to_string(rep.results.size()) + "; ";
  }

  // Drawn four-party networks against the general formulas at L = 4.
  const std::vector<std::string> abcd{"A", "B", "C", "D"};
  const std::map<std::string, std::string> to_cat{{"A", "[1,0]"}, {"B", "[2,0]"}, {"C", "[3,0]"}, {"D", "[4,0]"}};
  auto relabel = [&](Signature s) {
    for (auto& b : s.bases) b = to_cat.at(b);
    for (auto& e : s.sources) e.type = to_cat.at(e.type);
    std::sort(s.sources.begin(), s.sources.end());
    return s;
  };
  int agree = 0;
  int total = 0;
  FamilyParams p{4, {}, 0, 0, 0};
  for (auto [drawn, formula] : std::vector<std::pair<std::string, std::string>>{{"line4_I0", "O"}, {"line4_I1", "I1"}}) {
    Network a = build_family(drawn);
    Network b = build_family(formula, p);
    for (int mask = 1; mask < 16; ++mask) {
      std::vector<std::string> sub;
      for (int i = 0; i < 4; ++i) {
        if (mask >> i & 1) sub.push_back(abcd[i]);
      }
      do {
        std::vector<std::string> mapped;
        for (const auto& x : sub) mapped.push_back(to_cat.at(x));
        agree += relabel(subnetwork_signature(a, sub)) == subnetwork_signature(b, mapped);
        ++total;
      } while (std::next_permutation(sub.begin(), sub.end()));
    }
  }
  ok = ok && agree == total;
  detail += "drawn vs formula " + std::to_string(agree) + "/" + std::to_string(total) + "; ";

  ClaimScript corrupt = load_claim_script(claims_path("appendixB"));
  for (Claim& c : corrupt.claims) c.expect_equivalent = !c.expect_equivalent;
  ClaimReport bad = check_claims(corrupt);
  bool caught = bad.failures() == static_cast<int>(bad.results.size());
  for (const ClaimResult& r : bad.results) caught = caught && !r.diff.empty() && !r.signature_a.empty();
  ok = ok && caught;
  detail += "corrupted claims rejected " + std::to_string(bad.failures()) + "/" + std::to_string(bad.results.size());
  return {ok, detail};
}

Behavior random_behavior(int d, int n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Vector v(ipow(d, n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(g(rng), g(rng));
  PureState psi(d, n, v / v.norm());
  SettingObservables obs(n);
  for (int p = 0; p < n; ++p) {
    for (int s = 0; s < 2; ++s) {
      Matrix m(d, d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) m(i, j) = cplx(g(rng), g(rng));
      }
      Eigen::HouseholderQR<Matrix> qr(m);
      Matrix u = qr.householderQ();
      obs[p].push_back(Observable(Matrix(u * z_matrix(d) * u.adjoint())));
    }
  }
  return quantum_behavior_mixed(psi, std::uniform_real_distribution<double>(0, 1)(rng), obs);
}

Outcome property_suites() {
  std::mt19937 rng(2026);
  std::string detail;

  int stab_ok = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 2;
    const int L = 3 + static_cast<int>(rng() % 4);
    std::vector<int> legs(L, 0);
    for (int extra = static_cast<int>(rng() % (9 - L)); extra > 0; --extra) legs[1 + rng() % (L - 2)]++;
    Multigraph g = caterpillar_graph(L, legs, d);
    for (const Edge& e : g.edges()) g.set_weight(e.i, e.j, 1 + static_cast<int>(rng() % (d - 1)));
    PureState psi = graph_state(g);
    bool good = g.n() <= 8;
    for (int i = 0; i < g.n(); ++i) good = good && std::abs(expectation(psi, stabilizer_operator(g, i)) - 1.0) < 1e-9;
    stab_ok += good;
  }
  detail += "stabilizers " + std::to_string(stab_ok) + "/50";

  int tri_ok = 0;
  Scenario three{3, {1, 1, 1}, 2};
  const std::vector<Term> products{{{0, 0, 1}}, {{1, 0, 1}}, {{2, 0, 1}}, {{0, 0, 1}, {1, 0, 1}}, {{1, 0, 1}, {2, 0, 1}}};
  std::exponential_distribution<double> ex;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> row(8);
    double sum = 0.0;
    for (double& v : row) sum += v = ex(rng);
    for (double& v : row) v /= sum;
    Behavior b(three, {row});
    tri_ok += correlation_triangle_check(b, products[rng() % 5], products[rng() % 5], products[rng() % 5], 1e-9).holds;
  }
  detail += "; triangle " + std::to_string(tri_ok) + "/1000";

  std::vector<Behavior> quantum;
  ObservableFamily c4 = observable_family("c4_qubit", 2);
  quantum.push_back(quantum_behavior(c4_state(), {c4.role("A"), c4.role("B"), c4.role("C"), c4.role("D")}));
  for (const auto& [L, legs] : std::vector<std::pair<int, std::vector<int>>>{{3, {0, 1, 0}}, {4, {0, 1, 1, 0}}}) {
    Multigraph g = caterpillar_graph(L, legs);
    quantum.push_back(quantum_behavior_mixed(graph_state(g), 0.9, caterpillar_observables(classify_caterpillar(g))));
  }
  for (int n : {3, 4, 5}) quantum.push_back(quantum_behavior(ghz_state(n, 2), ghz_line_observables(n)));
  for (auto [N, d] : std::vector<std::pair<int, int>>{{3, 3}, {4, 3}, {3, 5}}) {
    ObservableFamily f = observable_family("cluster_qudit", d);
    SettingObservables obs(N, f.role("chain"));
    obs[N - 2] = f.role("second_last");
    obs[N - 1] = f.role("last");
    quantum.push_back(quantum_behavior(graph_state(path_graph(N, d)), obs));
  }
  for (auto [N, d] : std::vector<std::pair<int, int>>{{3, 3}, {3, 4}}) {
    ObservableFamily f = observable_family("ghz_qudit", d);
    SettingObservables obs(N, f.role("rest"));
    obs[0] = f.role("first");
    obs[1] = f.role("second");
    quantum.push_back(quantum_behavior(ghz_state(N, d), obs));
  }
  for (int k = 0; k < 20; ++k) quantum.push_back(random_behavior(2 + k % 3, 3, rng));
  int ns_ok = 0;
  for (const Behavior& b : quantum) ns_ok += is_no_signalling(b, 1e-8).ok;
  detail += "; no-signalling " + std::to_string(ns_ok) + "/" + std::to_string(quantum.size());

  bool uniform_ok = true;
  detail += "; uniform CGLMP";
  for (int d : {2, 3, 5}) {
    double v = cglmp_value(uniform_behavior(Scenario{2, {2, 2}, d}), 0, 1);
    bool good = std::abs(v - (d - 1.0)) <= 1e-12;
    uniform_ok = uniform_ok && good;
    detail += " d=" + std::to_string(d) + ":" + num(v) + (good ? "" : " (expected " + num(d - 1.0) + ")");
  }

  bool ok = stab_ok == 50 && tri_ok == 1000 && ns_ok == static_cast<int>(quantum.size()) && uniform_ok;
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "four-qubit cluster inequality", 1.0, c4_reproduction},
      {2, "caterpillar quantum margin 2sqrt2-2", 30.0, caterpillar_margins},
      {3, "noise threshold bracketing at 1e-3", 0.0, threshold_bracketing},
      {4, "qudit cluster verification", 0.0,
       [] { return qudit_suite({{3, 2}, {3, 3}, {4, 3}, {3, 5}}, [](int N, int d) { return verify_qudit_cluster(N, d); }); }},
      {5, "qudit GHZ verification", 0.0,
       [] { return qudit_suite({{3, 2}, {4, 2}, {3, 3}, {3, 4}}, [](int N, int d) { return verify_qudit_ghz(N, d); }); }},
      {6, "GHZ line quantum value and classical LONC maximum", 60.0, ghz_line},
      {7, "two-round cluster preparation", 0.0, lonc_preparation},
      {8, "inflation claim suites", 0.0, inflation_suites},
      {9, "property suites", 0.0, property_suites},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool timely = c.time_limit <= 0.0 || secs < c.time_limit;
    if (!timely) o.detail += "; over the " + num(c.time_limit) + " s limit";
    bool passed = o.passed && timely;
    failed += !passed;
    std::printf("%s [%d] %s: %s (%.3f s)\n", passed ? "PASS" : "FAIL", c.id, c.title.c_str(), o.detail.c_str(), secs);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
