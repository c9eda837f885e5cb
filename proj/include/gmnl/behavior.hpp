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
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gmnl/arith.hpp"
#include "gmnl/error.hpp"
#include "gmnl/qudit.hpp"

namespace gmnl {

constexpr double kSumTol = 1e-9;
constexpr double kNegTol = 1e-12;
constexpr double kSignallingTol = 1e-6;
constexpr double kZeroProbability = 1e-9;

struct Scenario {
  int parties = 0;
  std::vector<int> settings;
  int d = 2;

  bool operator==(const Scenario&) const = default;

  void validate() const {
    if (d < 2) throw Error(ErrorKind::BadDimension, "d must be at least 2");
    if (parties < 1 || static_cast<int>(settings.size()) != parties) {
      throw Error(ErrorKind::ScenarioMismatch, "one setting count per party");
    }
    for (int s : settings) {
      if (s < 1) throw Error(ErrorKind::ScenarioMismatch, "every party needs a setting");
    }
  }

  std::uint64_t setting_tuples() const {
    std::uint64_t k = 1;
    for (int s : settings) k *= s;
    return k;
  }

  std::uint64_t outcome_tuples() const { return ipow(d, parties); }

  /** Mixed-radix index of a setting tuple, party 0 most significant. */
  std::uint64_t setting_index(const std::vector<int>& x) const {
    std::uint64_t idx = 0;
    for (int p = 0; p < parties; ++p) idx = idx * settings[p] + x[p];
    return idx;
  }

  std::vector<int> setting_tuple(std::uint64_t idx) const {
    std::vector<int> x(parties);
    for (int p = parties - 1; p >= 0; --p) {
      x[p] = static_cast<int>(idx % settings[p]);
      idx /= settings[p];
    }
    return x;
  }

  int outcome_digit(std::uint64_t a, int party) const {
    return static_cast<int>((a / ipow(d, parties - 1 - party)) % d);
  }
};

/** Conditional distribution p(a | x), one outcome table per setting tuple. */
class Behavior {
 public:
  Behavior() = default;

  Behavior(Scenario s, std::vector<std::vector<double>> table)
      : s_(std::move(s)), table_(std::move(table)) {
    s_.validate();
    if (table_.size() != s_.setting_tuples()) {
      throw Error(ErrorKind::ScenarioMismatch, "one outcome table per setting tuple");
    }
    for (const auto& row : table_) {
      if (row.size() != s_.outcome_tuples()) {
        throw Error(ErrorKind::ScenarioMismatch, "outcome table has wrong size");
      }
      double sum = 0.0;
      for (double v : row) {
        if (v < -kNegTol) throw Error(ErrorKind::NotNormalized, "negative probability");
        sum += v;
      }
      if (std::abs(sum - 1.0) > kSumTol) {
        throw Error(ErrorKind::NotNormalized, "probabilities do not sum to 1");
      }
    }
  }

  const Scenario& scenario() const { return s_; }
  int parties() const { return s_.parties; }
  int d() const { return s_.d; }
  const std::vector<double>& row(const std::vector<int>& x) const { return table_.at(s_.setting_index(x)); }
  const std::vector<std::vector<double>>& table() const { return table_; }

 private:
  Scenario s_;
  std::vector<std::vector<double>> table_;
};

/** One party's outcome raised to a power: A_{party; setting}^power. */
struct Factor {
  int party;
  int setting;
  int power = 1;
  bool operator==(const Factor&) const = default;
};

using Term = std::vector<Factor>;

namespace detail {

inline void check_factors(const Scenario& s, const Term& term, bool allow_zero_power) {
  std::set<int> seen;
  for (const Factor& f : term) {
    if (f.party < 0 || f.party >= s.parties) {
      throw Error(ErrorKind::ScenarioMismatch, "party " + std::to_string(f.party));
    }
    if (f.setting < 0 || f.setting >= s.settings[f.party]) {
      throw Error(ErrorKind::ScenarioMismatch, "setting " + std::to_string(f.setting) +
                                                   " of party " + std::to_string(f.party));
    }
    int lo = allow_zero_power ? 0 : 1;
    if (f.power < lo || f.power >= s.d) {
      throw Error(ErrorKind::BadParameter, "power " + std::to_string(f.power));
    }
    if (!seen.insert(f.party).second) {
      throw Error(ErrorKind::BadParameter, "party listed twice in one term");
    }
  }
}

/** Distribution of sum power * a over one outcome table. */
inline std::vector<double> combination_distribution(const Scenario& s, const std::vector<double>& row,
                                                    const Term& term) {
  std::vector<double> dist(s.d, 0.0);
  for (std::uint64_t a = 0; a < row.size(); ++a) {
    long long e = 0;
    for (const Factor& f : term) e += static_cast<long long>(f.power) * s.outcome_digit(a, f.party);
    dist[mod(e, s.d)] += row[a];
  }
  return dist;
}

}  // namespace detail

/**
 * Distribution of sum power * a (mod d) for the listed factors. Parties
 * outside the term are marginalised; every choice of their settings must
 * agree within 1e-6.
 */
inline std::vector<double> combination_distribution(const Behavior& b, const Term& term) {
  const Scenario& s = b.scenario();
  detail::check_factors(s, term, true);
  std::vector<double> first;
  double dev = 0.0;
  for (std::uint64_t xi = 0; xi < s.setting_tuples(); ++xi) {
    std::vector<int> x = s.setting_tuple(xi);
    bool match = true;
    for (const Factor& f : term) match = match && x[f.party] == f.setting;
    if (!match) continue;
    std::vector<double> dist = detail::combination_distribution(s, b.table()[xi], term);
    if (first.empty()) {
      first = dist;
    } else {
      for (int k = 0; k < s.d; ++k) dev = std::max(dev, std::abs(dist[k] - first[k]));
    }
  }
  if (dev >= kSignallingTol) {
    throw Error(ErrorKind::Signalling, "marginal depends on unmeasured settings");
  }
  return first;
}

/** <prod A^power> = sum_a w^{sum power a} p(a). */
inline cplx correlator(const Behavior& b, const Term& term) {
  detail::check_factors(b.scenario(), term, false);
  std::vector<double> dist = combination_distribution(b, term);
  cplx v = 0.0;
  for (int k = 0; k < b.d(); ++k) v += omega(b.d(), k) * dist[k];
  return v;
}

/** P(sum power * a = target mod d). */
inline double event_probability(const Behavior& b, const Term& term, int target) {
  return combination_distribution(b, term)[mod(target, b.d())];
}

/**
 * Behavior of the surviving parties given that the conditioning parties
 * (at fixed settings) produced sum power * a = target. Parties in neither
 * list are marginalised at setting 0.
 */
inline Behavior condition(const Behavior& b, const Term& cond, int target,
                          std::optional<std::vector<int>> survivors = std::nullopt) {
  const Scenario& s = b.scenario();
  detail::check_factors(s, cond, true);
  std::set<int> cparties;
  for (const Factor& f : cond) cparties.insert(f.party);
  std::vector<int> surv;
  if (survivors) {
    surv = *survivors;
    std::sort(surv.begin(), surv.end());
    if (std::adjacent_find(surv.begin(), surv.end()) != surv.end()) {
      throw Error(ErrorKind::BadParameter, "surviving party listed twice");
    }
    for (int p : surv) {
      if (p < 0 || p >= s.parties) throw Error(ErrorKind::ScenarioMismatch, "party " + std::to_string(p));
      if (cparties.count(p)) {
        throw Error(ErrorKind::OverlappingParties, "party " + std::to_string(p) + " both conditions and survives");
      }
    }
  } else {
    for (int p = 0; p < s.parties; ++p) {
      if (!cparties.count(p)) surv.push_back(p);
    }
  }
  if (surv.empty()) throw Error(ErrorKind::BadParameter, "no surviving party");

  Scenario ns{static_cast<int>(surv.size()), {}, s.d};
  for (int p : surv) ns.settings.push_back(s.settings[p]);
  std::vector<std::vector<double>> table;
  for (std::uint64_t yi = 0; yi < ns.setting_tuples(); ++yi) {
    std::vector<int> y = ns.setting_tuple(yi);
    std::vector<int> x(s.parties, 0);
    for (size_t k = 0; k < surv.size(); ++k) x[surv[k]] = y[k];
    for (const Factor& f : cond) x[f.party] = f.setting;
    const std::vector<double>& row = b.row(x);
    std::vector<double> out(ns.outcome_tuples(), 0.0);
    double total = 0.0;
    for (std::uint64_t a = 0; a < row.size(); ++a) {
      long long e = 0;
      for (const Factor& f : cond) e += static_cast<long long>(f.power) * s.outcome_digit(a, f.party);
      if (mod(e, s.d) != mod(target, s.d)) continue;
      std::uint64_t key = 0;
      for (int p : surv) key = key * s.d + s.outcome_digit(a, p);
      out[key] += row[a];
      total += row[a];
    }
    if (total < kZeroProbability) {
      throw Error(ErrorKind::ZeroProbability, "conditioning event has probability below 1e-9");
    }
    for (double& v : out) v /= total;
    table.push_back(std::move(out));
  }
  return Behavior(ns, table);
}

struct NoSignallingResult {
  bool ok;
  double max_deviation;
};

/** Checks that no party's setting changes the marginal of the others. */
inline NoSignallingResult is_no_signalling(const Behavior& b, double tol = 1e-8) {
  const Scenario& s = b.scenario();
  double dev = 0.0;
  for (int p = 0; p < s.parties; ++p) {
    if (s.settings[p] < 2) continue;
    for (std::uint64_t xi = 0; xi < s.setting_tuples(); ++xi) {
      std::vector<int> x = s.setting_tuple(xi);
      if (x[p] != 0) continue;
      auto marginal = [&](const std::vector<int>& xs) {
        std::vector<double> m(s.outcome_tuples() / s.d, 0.0);
        const std::vector<double>& row = b.row(xs);
        for (std::uint64_t a = 0; a < row.size(); ++a) {
          std::uint64_t key = 0;
          for (int q = 0; q < s.parties; ++q) {
            if (q != p) key = key * s.d + s.outcome_digit(a, q);
          }
          m[key] += row[a];
        }
        return m;
      };
      std::vector<double> ref = marginal(x);
      for (int v = 1; v < s.settings[p]; ++v) {
        x[p] = v;
        std::vector<double> m = marginal(x);
        for (size_t k = 0; k < m.size(); ++k) dev = std::max(dev, std::abs(m[k] - ref[k]));
      }
    }
  }
  return {dev <= tol, dev};
}

/** One observable list per party; setting index = position in the list. */
using SettingObservables = std::vector<std::vector<Observable>>;

inline Scenario scenario_of(const PureState& psi, const SettingObservables& obs) {
  if (static_cast<int>(obs.size()) != psi.n()) {
    throw Error(ErrorKind::ScenarioMismatch, "one observable list per party");
  }
  Scenario s{psi.n(), {}, psi.d()};
  for (const auto& list : obs) {
    for (const Observable& o : list) {
      if (o.d() != psi.d()) throw Error(ErrorKind::BadDimension, "observable dimension");
    }
    s.settings.push_back(static_cast<int>(list.size()));
  }
  s.validate();
  return s;
}

/** Behavior of eta |psi><psi| + (1 - eta) 1 / d^n under the given settings. */
inline Behavior quantum_behavior_mixed(const PureState& psi, double eta, const SettingObservables& obs) {
  if (eta < 0.0 || eta > 1.0) throw Error(ErrorKind::BadParameter, "eta must lie in [0, 1]");
  Scenario s = scenario_of(psi, obs);
  std::vector<std::vector<double>> table;
  for (std::uint64_t xi = 0; xi < s.setting_tuples(); ++xi) {
    std::vector<int> x = s.setting_tuple(xi);
    ObservableAssignment a;
    for (int p = 0; p < s.parties; ++p) a.emplace(p, obs[p][x[p]]);
    std::vector<double> row = outcome_distribution(psi, a).p;
    if (eta < 1.0) {
      std::vector<std::vector<double>> local(s.parties);
      for (int p = 0; p < s.parties; ++p) {
        for (int k = 0; k < s.d; ++k) local[p].push_back(obs[p][x[p]].projector(k).trace().real() / s.d);
      }
      for (std::uint64_t o = 0; o < row.size(); ++o) {
        double q = 1.0;
        for (int p = 0; p < s.parties; ++p) q *= local[p][s.outcome_digit(o, p)];
        row[o] = eta * row[o] + (1.0 - eta) * q;
      }
    }
    for (double& v : row) v = std::max(v, 0.0);
    table.push_back(std::move(row));
  }
  return Behavior(s, table);
}

inline Behavior quantum_behavior(const PureState& psi, const SettingObservables& obs) {
  return quantum_behavior_mixed(psi, 1.0, obs);
}

inline Behavior uniform_behavior(const Scenario& s) {
  s.validate();
  std::vector<std::vector<double>> table(s.setting_tuples(),
                                         std::vector<double>(s.outcome_tuples(), 1.0 / s.outcome_tuples()));
  return Behavior(s, table);
}

/** Every party answers outcome(party, setting) with certainty. */
inline Behavior deterministic_behavior(const Scenario& s, const std::function<int(int, int)>& outcome) {
  s.validate();
  std::vector<std::vector<double>> table;
  for (std::uint64_t xi = 0; xi < s.setting_tuples(); ++xi) {
    std::vector<int> x = s.setting_tuple(xi);
    std::uint64_t key = 0;
    for (int p = 0; p < s.parties; ++p) key = key * s.d + mod(outcome(p, x[p]), s.d);
    std::vector<double> row(s.outcome_tuples(), 0.0);
    row[key] = 1.0;
    table.push_back(std::move(row));
  }
  return Behavior(s, table);
}

/** Two-party box with p(a, b | x, y) = 1/2 when a + b = x y (mod 2). */
inline Behavior pr_box() {
  Scenario s{2, {2, 2}, 2};
  std::vector<std::vector<double>> table;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      std::vector<double> row(4, 0.0);
      for (int a = 0; a < 2; ++a) {
        for (int c = 0; c < 2; ++c) {
          if (((a + c) & 1) == ((x * y) & 1)) row[a * 2 + c] = 0.5;
        }
      }
      table.push_back(row);
    }
  }
  return Behavior(s, table);
}

}  // namespace gmnl
