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

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "gmnl/behavior.hpp"
#include "gmnl/error.hpp"
#include "gmnl/multigraph.hpp"
#include "gmnl/qudit.hpp"

namespace gmnl {

constexpr double kDefaultTol = 1e-7;

enum class Direction { LessEqual, GreaterEqual };

inline const char* direction_name(Direction d) { return d == Direction::LessEqual ? "<=" : ">="; }

struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double bound = 0.0;
  Direction direction = Direction::LessEqual;
  bool violated = false;
  /** Amount by which lhs passes the bound; positive means violated. */
  double margin = 0.0;
  std::string settings;
  double tol = kDefaultTol;
};

inline InequalityReport make_report(std::string name, double lhs, double bound, Direction dir,
                                    std::string settings, double tol = kDefaultTol) {
  InequalityReport r{std::move(name), lhs, bound, dir, false, 0.0, std::move(settings), tol};
  r.margin = dir == Direction::LessEqual ? lhs - bound : bound - lhs;
  r.violated = r.margin > tol;
  return r;
}

struct WeightedTerm {
  double coeff;
  Term term;
};

/** Real linear combination of correlators. */
struct LinearFunctional {
  std::string name;
  std::vector<WeightedTerm> terms;
};

inline double evaluate(const Behavior& b, const LinearFunctional& f) {
  double v = 0.0;
  for (const WeightedTerm& t : f.terms) v += t.coeff * correlator(b, t.term).real();
  return v;
}

/** Party order A, B, C, D; D has three settings. */
inline LinearFunctional c4_functional() {
  enum { A, B, C, D };
  return {"c4",
          {{2, {{A, 0}, {B, 0}}},
           {2, {{C, 0}, {D, 2}}},
           {2, {{A, 1}, {B, 1}, {D, 2}}},
           {1, {{C, 0}, {D, 0}}},
           {1, {{C, 0}, {D, 1}}},
           {1, {{B, 0}, {C, 1}, {D, 0}}},
           {-1, {{B, 0}, {C, 1}, {D, 1}}}}};
}

inline InequalityReport c4_lhs(const Behavior& b, double tol = kDefaultTol) {
  if (b.parties() != 4 || b.d() != 2 || b.scenario().settings != std::vector<int>{2, 2, 2, 3}) {
    throw Error(ErrorKind::ScenarioMismatch, "expects qubit parties A, B, C, D with settings 2, 2, 2, 3");
  }
  return make_report("c4", evaluate(b, c4_functional()), 8.0, Direction::LessEqual, "c4_qubit", tol);
}

/** Setting counts for a caterpillar: three at spine position L-1, two elsewhere. */
inline std::vector<int> caterpillar_settings(const CaterpillarLabeling& lab) {
  std::vector<int> s(lab.N(), 2);
  s[lab.vertex(lab.L() - 1, 0)] = 3;
  return s;
}

/**
 * Caterpillar functional over vertex-indexed parties. Spine positions are
 * 1-based; position 0 stands for the identity.
 */
inline LinearFunctional caterpillar_functional(const CaterpillarLabeling& lab) {
  const int L = lab.L();
  if (L < 3) throw Error(ErrorKind::BadParameter, "spine must have at least 3 vertices");
  const std::vector<int> n = lab.leg_counts();
  int inner_legs = 0;
  for (int k = 0; k <= L - 3; ++k) inner_legs += n[k + 1];
  if (inner_legs != lab.N() - L) {
    throw Error(ErrorKind::Internal, "leg count does not match N - L");
  }
  auto A = [&](int pos, int leg, int setting) { return Factor{lab.vertex(pos, leg), setting, 1}; };
  auto legs_of = [&](int pos, Term t) {
    for (int j = 1; j <= n[pos - 1]; ++j) t.push_back(A(pos, j, 0));
    return t;
  };
  LinearFunctional f{"caterpillar", {}};
  f.terms.push_back({1, {A(L - 1, 0, 1), A(L, 0, 1)}});
  f.terms.push_back({1, legs_of(L - 1, {A(L - 2, 0, 0), A(L - 1, 0, 1), A(L, 0, 0)})});
  f.terms.push_back({-1, {A(L - 1, 0, 2), A(L, 0, 1)}});
  f.terms.push_back({1, legs_of(L - 1, {A(L - 2, 0, 0), A(L - 1, 0, 2), A(L, 0, 0)})});
  for (int k = 0; k <= L - 3; ++k) {
    Term t;
    if (k >= 1) t.push_back(A(k, 0, 0));
    t.push_back(A(k + 1, 0, 1));
    t.push_back(A(k + 2, 0, 0));
    f.terms.push_back({2, legs_of(k + 1, t)});
    for (int l = 1; l <= n[k + 1]; ++l) {
      f.terms.push_back({4, {A(k + 2, 0, 0), A(k + 2, l, 1)}});
    }
  }
  f.terms.push_back({2, {A(L - 1, 0, 0), A(L, 0, 1)}});
  return f;
}

inline double caterpillar_bound(const CaterpillarLabeling& lab) { return 2.0 * (2 * lab.N() - lab.L()); }

inline InequalityReport caterpillar_lhs(const Behavior& b, const CaterpillarLabeling& lab,
                                        double tol = kDefaultTol) {
  if (b.d() != 2 || b.parties() != lab.N() || b.scenario().settings != caterpillar_settings(lab)) {
    throw Error(ErrorKind::ScenarioMismatch, "behavior does not match the caterpillar scenario");
  }
  return make_report("caterpillar", evaluate(b, caterpillar_functional(lab)), caterpillar_bound(lab),
                     Direction::LessEqual, "caterpillar_qubit", tol);
}

/** Smallest visibility at which the caterpillar inequality is violated. */
inline double noise_threshold(int N, int L) {
  if (L < 3 || N < L) throw Error(ErrorKind::BadParameter, "need L >= 3 and N >= L");
  double k = 2.0 * N - L;
  return k / (k + std::numbers::sqrt2 - 1.0);
}

struct CglmpSettings {
  int m1 = 0;
  int m2 = 1;
  int n1 = 0;
  int n2 = 1;
};

/**
 * sum_k sum_i k [P(a_{m;i} - a_{n;i} = k) + P(a_{n;i} - a_{m;i+1} = k + delta_{i,1})]
 * with a_{m;3} = a_{m;1}; local models satisfy value >= d - 1.
 */
inline double cglmp_value(const Behavior& b, int m, int n, const CglmpSettings& s = {}) {
  const int d = b.d();
  if (m == n) throw Error(ErrorKind::BadParameter, "parties must differ");
  const int ms[2] = {s.m1, s.m2};
  const int ns[2] = {s.n1, s.n2};
  double v = 0.0;
  for (int i = 0; i < 2; ++i) {
    std::vector<double> p1 = combination_distribution(b, {{m, ms[i], 1}, {n, ns[i], d - 1}});
    std::vector<double> p2 = combination_distribution(b, {{n, ns[i], 1}, {m, ms[(i + 1) % 2], d - 1}});
    const int delta = i == 0 ? 1 : 0;
    for (int k = 0; k < d; ++k) v += k * (p1[k] + p2[mod(k + delta, d)]);
  }
  return v;
}

inline InequalityReport cglmp_report(const Behavior& b, int m, int n, const CglmpSettings& s = {},
                                     std::string settings = "", double tol = kDefaultTol) {
  return make_report("cglmp", cglmp_value(b, m, n, s), b.d() - 1.0, Direction::GreaterEqual,
                     std::move(settings), tol);
}

/**
 * I_{m,n} + d (1 - P(guess)), where the guess event is that the listed
 * outcome combination vanishes mod d. Bounded below by d - 1.
 */
inline InequalityReport monogamy_lhs(const Behavior& b, int m, int n, const CglmpSettings& s,
                                     const Term& guess, double tol = kDefaultTol) {
  double p = event_probability(b, guess, 0);
  double v = cglmp_value(b, m, n, s) + b.d() * (1.0 - p);
  return make_report("monogamy", v, b.d() - 1.0, Direction::GreaterEqual, "", tol);
}

/** Guess event a_{n;i} = a_{l;k}. */
inline Term equality_event(int d, int n, int i, int l, int k) { return {{n, i, 1}, {l, k, d - 1}}; }

/** Product of two outcome products, merging repeated (party, setting) pairs. */
inline Term merge_terms(const Term& a, const Term& b, int d) {
  Term out = a;
  for (const Factor& f : b) {
    bool merged = false;
    for (Factor& g : out) {
      if (g.party != f.party) continue;
      if (g.setting != f.setting) {
        throw Error(ErrorKind::BadParameter, "party measured with two settings in one product");
      }
      g.power = mod(g.power + f.power, d);
      merged = true;
    }
    if (!merged) out.push_back(f);
  }
  std::erase_if(out, [](const Factor& f) { return f.power == 0; });
  return out;
}

struct TriangleCheck {
  double lhs;
  double rhs;
  bool holds;
};

/** <M1 M2> >= <M1 M3> + <M2 M3> - 1 for +-1 valued products. */
inline TriangleCheck correlation_triangle_check(const Behavior& b, const Term& m1, const Term& m2,
                                                const Term& m3, double tol = 1e-12) {
  if (b.d() != 2) throw Error(ErrorKind::BadDimension, "binary outcomes only");
  auto corr = [&](const Term& x, const Term& y) {
    Term t = merge_terms(x, y, 2);
    return t.empty() ? 1.0 : correlator(b, t).real();
  };
  double lhs = corr(m1, m2);
  double rhs = corr(m1, m3) + corr(m2, m3) - 1.0;
  return {lhs, rhs, lhs >= rhs - tol};
}

/**
 * Line functional on n parties. Settings: first party {A0, A1}, middle
 * parties a single setting playing A1, last party {A0, A1, A2}.
 */
inline std::vector<int> ghz_line_settings(int n) {
  if (n < 2) throw Error(ErrorKind::BadParameter, "need at least 2 parties");
  std::vector<int> s(n, 1);
  s.front() = 2;
  s.back() = 3;
  return s;
}

inline LinearFunctional ghz_line_functional(int n) {
  ghz_line_settings(n);
  const int last = n - 1;
  Term chain;
  chain.push_back({0, 1, 1});
  for (int p = 1; p < last; ++p) chain.push_back({p, 0, 1});
  Term t1 = chain;
  t1.push_back({last, 1, 1});
  Term t2 = chain;
  t2.push_back({last, 2, 1});
  return {"ghz_line",
          {{1, t1}, {1, t2}, {1, {{0, 0, 1}, {last, 1, 1}}}, {-1, {{0, 0, 1}, {last, 2, 1}}},
           {2, {{0, 0, 1}, {last, 0, 1}}}}};
}

inline InequalityReport ghz_line_lhs(const Behavior& b, double tol = kDefaultTol) {
  if (b.d() != 2 || b.scenario().settings != ghz_line_settings(b.parties())) {
    throw Error(ErrorKind::ScenarioMismatch, "behavior does not match the line scenario");
  }
  return make_report("ghz_line", evaluate(b, ghz_line_functional(b.parties())), 4.0, Direction::LessEqual,
                     "ghz_line_qubit", tol);
}

/** Named sets of observables; each role lists its settings in order. */
struct ObservableFamily {
  std::string name;
  int d = 2;
  std::map<std::string, std::vector<double>> coefficients;
  std::map<std::string, std::vector<Observable>> roles;

  const std::vector<Observable>& role(const std::string& r) const {
    auto it = roles.find(r);
    if (it == roles.end()) throw Error(ErrorKind::UnknownLabel, "role " + r);
    return it->second;
  }
};

inline std::vector<std::string> family_names() {
  return {"c4_qubit", "caterpillar_qubit", "cglmp_base", "cglmp_shifted",
          "cluster_qudit", "ghz_line_qubit", "ghz_qudit"};
}

inline ObservableFamily observable_family(const std::string& name, int d) {
  if (d < 2) throw Error(ErrorKind::BadDimension, "d must be at least 2");
  const Matrix X = x_matrix(d);
  const Matrix Xd = X.adjoint();
  const Matrix Z = z_matrix(d);
  const Matrix F = fourier(d);
  const Matrix Fd = F.adjoint();
  auto conj = [](const Matrix& u, const Matrix& m) { return Observable(Matrix(u * m * u.adjoint())); };
  auto list = [&](const std::vector<double>& chis, const Matrix& outer, const Matrix& inner) {
    std::vector<Observable> out;
    for (double c : chis) out.push_back(conj(Matrix(outer * phase_u(d, c)), inner));
    return out;
  };
  const Matrix I = Matrix::Identity(d, d);
  ObservableFamily f{name, d, {}, {}};
  if (name == "cglmp_base" || name == "cglmp_shifted") {
    std::vector<double> alpha = name == "cglmp_base" ? std::vector<double>{0.0, 0.5} : std::vector<double>{0.25, 0.75};
    std::vector<double> beta = name == "cglmp_base" ? std::vector<double>{0.25, -0.25} : std::vector<double>{0.0, -0.5};
    f.coefficients = {{"alpha", alpha}, {"beta", beta}};
    f.roles["m"] = list(alpha, I, Xd);
    f.roles["n"] = list(beta, I, X);
    return f;
  }
  if (name == "cluster_qudit") {
    std::vector<double> beta{0.25, 0.75};
    std::vector<double> alpha{0.0, -0.5};
    f.coefficients = {{"alpha", alpha}, {"beta", beta}};
    f.roles["chain"] = {Observable(Z), Observable(X)};
    std::vector<Observable> second{Observable(Z)};
    for (const Observable& o : list(beta, F, Xd)) second.push_back(o);
    f.roles["second_last"] = second;
    f.roles["last"] = list(alpha, I, X);
    return f;
  }
  if (name == "ghz_qudit") {
    std::vector<double> alpha{0.0, 0.5};
    std::vector<double> beta{0.25, -0.25};
    f.coefficients = {{"alpha", alpha}, {"beta", beta}};
    f.roles["first"] = list(alpha, Fd, Xd);
    std::vector<Observable> second{Observable(Z)};
    for (const Observable& o : list(beta, F, X)) second.push_back(o);
    f.roles["second"] = second;
    f.roles["rest"] = {Observable(Z), Observable(X)};
    return f;
  }
  if (name == "c4_qubit" || name == "caterpillar_qubit" || name == "ghz_line_qubit") {
    if (d != 2) throw Error(ErrorKind::BadDimension, name + " is a qubit family");
    const Observable z(Z);
    const Observable x(X);
    const Observable plus(Matrix((Z + X) / std::numbers::sqrt2));
    const Observable minus(Matrix((X - Z) / std::numbers::sqrt2));
    if (name == "c4_qubit") {
      f.roles["A"] = {z, x};
      f.roles["B"] = {z, x};
      f.roles["C"] = {z, x};
      f.roles["D"] = {plus, Observable(Matrix((Z - X) / std::numbers::sqrt2)), z};
    } else if (name == "caterpillar_qubit") {
      f.roles["regular"] = {z, x};
      f.roles["special"] = {z, plus, minus};
    } else {
      f.roles["first"] = {z, x};
      f.roles["middle"] = {x};
      f.roles["last"] = {z, plus, minus};
    }
    return f;
  }
  throw Error(ErrorKind::UnknownFamily, name);
}

/** Settings of every vertex of a caterpillar graph state. */
inline SettingObservables caterpillar_observables(const CaterpillarLabeling& lab) {
  ObservableFamily f = observable_family("caterpillar_qubit", 2);
  SettingObservables obs(lab.N(), f.role("regular"));
  obs[lab.vertex(lab.L() - 1, 0)] = f.role("special");
  return obs;
}

inline SettingObservables ghz_line_observables(int n) {
  ghz_line_settings(n);
  ObservableFamily f = observable_family("ghz_line_qubit", 2);
  SettingObservables obs(n, f.role("middle"));
  obs.front() = f.role("first");
  obs.back() = f.role("last");
  return obs;
}

inline InequalityReport verify_c4(double tol = kDefaultTol) {
  ObservableFamily f = observable_family("c4_qubit", 2);
  Behavior b = quantum_behavior(c4_state(), {f.role("A"), f.role("B"), f.role("C"), f.role("D")});
  return c4_lhs(b, tol);
}

/** Caterpillar inequality on the noisy graph state of a caterpillar. */
inline InequalityReport verify_caterpillar(int L, const std::vector<int>& legs, double eta = 1.0,
                                           double tol = kDefaultTol) {
  Multigraph g = caterpillar_graph(L, legs);
  CaterpillarLabeling lab = classify_caterpillar(g);
  Behavior b = quantum_behavior_mixed(graph_state(g), eta, caterpillar_observables(lab));
  return caterpillar_lhs(b, lab, tol);
}

/** The same quantity from state-level expectations, without a behavior table. */
inline double caterpillar_lhs_from_state(const PureState& psi, double eta, const CaterpillarLabeling& lab) {
  SettingObservables obs = caterpillar_observables(lab);
  double v = 0.0;
  for (const WeightedTerm& t : caterpillar_functional(lab).terms) {
    ObservableAssignment a;
    for (const Factor& f : t.term) a.emplace(f.party, obs[f.party][f.setting]);
    v += t.coeff * expectation_mixed(psi, eta, a).real();
  }
  return v;
}

inline InequalityReport verify_ghz_line(int n, double tol = kDefaultTol) {
  Behavior b = quantum_behavior(ghz_state(n, 2), ghz_line_observables(n));
  return ghz_line_lhs(b, tol);
}

struct CheckResult {
  std::string name;
  double value;
  double target;
  /** One of "<", "==". */
  std::string relation;
  double tol;
  bool passed;
};

inline CheckResult check_less(std::string name, double value, double target, double tol) {
  return {std::move(name), value, target, "<", tol, value < target - tol};
}

inline CheckResult check_equal(std::string name, double value, double target, double tol) {
  return {std::move(name), value, target, "==", tol, std::abs(value - target) <= tol};
}

struct QuditVerification {
  std::string name;
  int N;
  int d;
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const CheckResult& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

/**
 * Cluster state on a path of N qudits (d prime): the CGLMP value of the
 * last two parties, conditioned on party N-2 seeing outcome 0 for Z, is
 * below d - 1, and the stabilizer correlations used alongside it are exact.
 */
inline QuditVerification verify_qudit_cluster(int N, int d, double tol = 1e-9) {
  if (!is_prime(d)) throw Error(ErrorKind::NonPrimeDimension, "d must be prime");
  if (N < 3) throw Error(ErrorKind::BadParameter, "need N >= 3");
  ObservableFamily f = observable_family("cluster_qudit", d);
  SettingObservables obs(N, f.role("chain"));
  obs[N - 2] = f.role("second_last");
  obs[N - 1] = f.role("last");
  Behavior b = quantum_behavior(graph_state(path_graph(N, d)), obs);
  QuditVerification r{"qudit_cluster", N, d, {}};
  Behavior cb = condition(b, {{N - 3, 0, 1}}, 0, std::vector<int>{N - 2, N - 1});
  r.checks.push_back(check_less("conditional_cglmp", cglmp_value(cb, 0, 1, {1, 2, 0, 1}), d - 1.0, tol));
  for (int i = 0; i <= N - 3; ++i) {
    Term t;
    if (i >= 1) t.push_back({i - 1, 0, 1});
    t.push_back({i, 1, 1});
    t.push_back({i + 1, 0, 1});
    r.checks.push_back(check_equal("stabilizer_" + std::to_string(i + 1), event_probability(b, t, 0), 1.0, tol));
  }
  r.checks.push_back(
      check_equal("stabilizer_" + std::to_string(N), event_probability(b, {{N - 2, 0, 1}, {N - 1, 0, 1}}, 0), 1.0, tol));
  return r;
}

/**
 * GHZ state of N qudits: the CGLMP value of parties 1 and 2, conditioned
 * on the X outcomes of the others multiplying to 1, is below d - 1, and
 * the Z outcomes agree along the chain.
 */
inline QuditVerification verify_qudit_ghz(int N, int d, double tol = 1e-9) {
  if (N < 3) throw Error(ErrorKind::BadParameter, "need N >= 3");
  ObservableFamily f = observable_family("ghz_qudit", d);
  SettingObservables obs(N, f.role("rest"));
  obs[0] = f.role("first");
  obs[1] = f.role("second");
  Behavior b = quantum_behavior(ghz_state(N, d), obs);
  QuditVerification r{"qudit_ghz", N, d, {}};
  Term cond;
  std::vector<int> surv{0, 1};
  for (int p = 2; p < N; ++p) cond.push_back({p, 1, 1});
  Behavior cb = condition(b, cond, 0, surv);
  r.checks.push_back(check_less("conditional_cglmp", cglmp_value(cb, 0, 1, {0, 1, 1, 2}), d - 1.0, tol));
  r.checks.push_back(check_equal("equal_1_2", event_probability(b, equality_event(d, 0, 0, 1, 0), 0), 1.0, tol));
  for (int p = 1; p + 1 < N; ++p) {
    r.checks.push_back(check_equal("equal_" + std::to_string(p + 1) + "_" + std::to_string(p + 2),
                                   event_probability(b, equality_event(d, p, 0, p + 1, 0), 0), 1.0, tol));
  }
  return r;
}

}  // namespace gmnl
