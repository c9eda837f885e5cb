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
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmnl/error.hpp"
#include "gmnl/inequalities.hpp"
#include "gmnl/multigraph.hpp"
#include "gmnl/qudit.hpp"

namespace gmnl {

enum class EventKind { LocalOp, Send };

inline const char* event_kind_name(EventKind k) { return k == EventKind::Send ? "send" : "local-op"; }

/**
 * One step on the directed path. Local ops name a gate ("cz" on two qubits,
 * "lc_x" or "lc_z" on one); sends move a single qubit to party `to`.
 */
struct TraceEvent {
  int round = 0;
  int actor = 0;
  EventKind kind = EventKind::LocalOp;
  std::vector<int> qubits;
  std::string gate;
  int to = 0;
  int step = 0;
};

/** Parties are numbered 1..parties along the path. */
struct LoncTrace {
  int parties = 0;
  std::vector<std::string> qubit_names;
  std::vector<int> initial_owner;
  std::vector<TraceEvent> events;
};

struct TraceReport {
  bool valid = true;
  int rounds = 0;
  int max_rounds = 0;
  std::vector<std::vector<std::pair<int, int>>> sends;  // per round: (actor, qubit)
  std::vector<std::string> violations;
};

/**
 * Replays a trace: sends go from i to i+1, sends of one round form one
 * contiguous phase and take effect when it closes, and local ops touch
 * only qubits the actor holds.
 */
inline TraceReport validate_trace(const LoncTrace& trace, int max_rounds) {
  TraceReport rep;
  rep.max_rounds = max_rounds;
  auto fail = [&](size_t idx, const std::string& msg) {
    rep.valid = false;
    rep.violations.push_back("event " + std::to_string(idx) + ": " + msg);
  };
  const int nq = static_cast<int>(trace.initial_owner.size());
  std::vector<int> owner = trace.initial_owner;
  std::vector<std::pair<int, int>> pending;
  bool phase_open = false;
  auto close_phase = [&]() {
    for (auto [q, to] : pending) owner[q] = to;
    pending.clear();
    phase_open = false;
  };
  auto check_qubit = [&](size_t idx, int q) {
    if (q < 0 || q >= nq) {
      fail(idx, "unknown qubit " + std::to_string(q));
      return false;
    }
    return true;
  };

  for (size_t idx = 0; idx < trace.events.size(); ++idx) {
    const TraceEvent& e = trace.events[idx];
    if (e.actor < 1 || e.actor > trace.parties) {
      fail(idx, "unknown actor " + std::to_string(e.actor));
      continue;
    }
    if (e.kind == EventKind::Send) {
      if (!phase_open || e.round != rep.rounds) {
        close_phase();
        if (e.round != rep.rounds + 1) {
          fail(idx, "send tagged round " + std::to_string(e.round) + " after " + std::to_string(rep.rounds) +
                        " completed rounds");
        }
        ++rep.rounds;
        rep.sends.emplace_back();
        phase_open = true;
      }
      if (e.to != e.actor + 1 || e.to > trace.parties) {
        fail(idx, "direction: party " + std::to_string(e.actor) + " sends to " + std::to_string(e.to));
      }
      if (e.qubits.size() != 1) {
        fail(idx, "a send carries exactly one qubit");
        continue;
      }
      const int q = e.qubits[0];
      if (!check_qubit(idx, q)) continue;
      if (owner[q] != e.actor) fail(idx, "party " + std::to_string(e.actor) + " does not hold qubit " + trace.qubit_names[q]);
      for (const auto& [pq, to] : pending) {
        if (pq == q) fail(idx, "qubit sent twice in one round");
      }
      pending.push_back({q, e.to});
      rep.sends.back().push_back({e.actor, q});
    } else {
      close_phase();
      if (e.round != rep.rounds) {
        fail(idx, "local op tagged round " + std::to_string(e.round) + " after " + std::to_string(rep.rounds) +
                      " rounds");
      }
      size_t arity = e.gate == "cz" ? 2 : (e.gate == "lc_x" || e.gate == "lc_z") ? 1 : 0;
      if (arity == 0) {
        fail(idx, "unknown gate " + e.gate);
        continue;
      }
      if (e.qubits.size() != arity) {
        fail(idx, "gate " + e.gate + " has wrong arity");
        continue;
      }
      if (arity == 2 && e.qubits[0] == e.qubits[1]) fail(idx, "cz on a single qubit");
      for (int q : e.qubits) {
        if (!check_qubit(idx, q)) continue;
        if (owner[q] != e.actor) {
          fail(idx, "party " + std::to_string(e.actor) + " acts on qubit " + trace.qubit_names[q] + " it does not hold");
        }
      }
    }
  }
  close_phase();
  if (rep.rounds > max_rounds) {
    rep.valid = false;
    rep.violations.push_back("round budget: " + std::to_string(rep.rounds) + " send rounds exceed " +
                             std::to_string(max_rounds));
  }
  return rep;
}

constexpr int kLoncStateQubits = 13;

// Qubit (0,1) is index 0; (i,1) is 2i-1 and (i,2) is 2i for i in 1..N-1.
inline int lonc_qubit(int i, int k) {
  if (i == 0 && k == 1) return 0;
  if (i < 1 || (k != 1 && k != 2)) throw Error(ErrorKind::IndexOutOfRange, "no such protocol qubit");
  return 2 * i - 2 + k;
}

struct ClusterProtocol {
  LoncTrace trace;
  Multigraph final_graph;
  std::vector<int> spine;  // (0,1), (1,1), ..., (N-1,1)
  std::optional<PureState> state;
  std::optional<double> overlap;
};

/** Extracts the graph on `order`, relabelled 0..k-1, after checking every other vertex is isolated. */
inline std::optional<Multigraph> induced_if_rest_isolated(const Multigraph& g, const std::vector<int>& order) {
  std::vector<int> pos(g.n(), -1);
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  Multigraph out(static_cast<int>(order.size()), g.d());
  for (const Edge& e : g.edges()) {
    if (pos[e.i] < 0 || pos[e.j] < 0) return std::nullopt;
    out.set_weight(pos[e.i], pos[e.j], e.w);
  }
  return out;
}

namespace detail {

inline Matrix lc_factor(const std::string& gate) {
  // Single-site factors of the local-complementation Clifford.
  Multigraph pair(2, 2);
  pair.set_weight(0, 1, 1);
  LocalOperator op = lc_local_clifford_qubit(pair, 0);
  return gate == "lc_x" ? op.factors.at(0) : op.factors.at(1);
}

}  // namespace detail

/**
 * Two-round preparation of the N-vertex cluster on the directed path.
 * Graph operations follow the seven protocol steps; the optional state
 * replay applies the same events to |+>^(2N-1).
 */
inline ClusterProtocol prepare_cluster_protocol(int N, bool state_check = false) {
  if (N < 2) throw Error(ErrorKind::BadParameter, "protocol needs N >= 2");
  const int nq = 2 * N - 1;
  if (state_check && nq > kLoncStateQubits) {
    throw Error(ErrorKind::MemoryCap, "state replay is limited to " + std::to_string(kLoncStateQubits) + " qubits");
  }
  ClusterProtocol out;
  LoncTrace& t = out.trace;
  t.parties = N;
  t.qubit_names.resize(nq);
  t.initial_owner.resize(nq);
  t.qubit_names[0] = "(0,1)";
  t.initial_owner[0] = 1;
  for (int i = 1; i < N; ++i) {
    for (int k = 1; k <= 2; ++k) {
      t.qubit_names[lonc_qubit(i, k)] = "(" + std::to_string(i) + "," + std::to_string(k) + ")";
      t.initial_owner[lonc_qubit(i, k)] = i;
    }
  }
  Multigraph g(nq, 2);
  std::vector<int> owner = t.initial_owner;

  auto cz = [&](int step, int round, int actor, int a, int b) {
    t.events.push_back({round, actor, EventKind::LocalOp, {a, b}, "cz", 0, step});
    g.add_weight(a, b, 1);
  };
  auto send = [&](int step, int round, int actor, int q) {
    t.events.push_back({round, actor, EventKind::Send, {q}, "", actor + 1, step});
    owner[q] = actor + 1;
  };

  // 1. Local edges (i,1)-(i,2) and (0,1)-(1,1).
  for (int i = 1; i < N; ++i) cz(1, 0, i, lonc_qubit(i, 1), lonc_qubit(i, 2));
  cz(1, 0, 1, lonc_qubit(0, 1), lonc_qubit(1, 1));
  // 2. Round one: (i,2) moves to i+1.
  for (int i = 1; i < N; ++i) send(2, 1, i, lonc_qubit(i, 2));
  // 3. Party i links (i,1) with the received (i-1,2).
  for (int i = 2; i < N; ++i) cz(3, 1, i, lonc_qubit(i, 1), lonc_qubit(i - 1, 2));
  // 4. Local complementation at every (i,2), split into single-qubit gates by owner.
  for (int i = 1; i < N; ++i) {
    const int v = lonc_qubit(i, 2);
    t.events.push_back({1, owner[v], EventKind::LocalOp, {v}, "lc_x", 0, 4});
    for (int u : neighbourhood(g, v)) t.events.push_back({1, owner[u], EventKind::LocalOp, {u}, "lc_z", 0, 4});
    g = local_complementation(g, v);
  }
  // 5. Drop the step-3 edges.
  for (int i = 2; i < N; ++i) cz(5, 1, i, lonc_qubit(i, 1), lonc_qubit(i - 1, 2));
  // 6. Round two: (i,1) moves to i+1.
  for (int i = 1; i < N; ++i) send(6, 2, i, lonc_qubit(i, 1));
  // 7. Party i drops (i-1,1)-(i-1,2).
  for (int i = 2; i <= N; ++i) cz(7, 2, i, lonc_qubit(i - 1, 1), lonc_qubit(i - 1, 2));

  out.final_graph = g;
  out.spine.push_back(lonc_qubit(0, 1));
  for (int i = 1; i < N; ++i) out.spine.push_back(lonc_qubit(i, 1));

  if (state_check) {
    PureState::check_size(2, nq);
    PureState psi = graph_state(Multigraph(nq, 2));
    const Matrix rx = detail::lc_factor("lc_x");
    const Matrix rz = detail::lc_factor("lc_z");
    for (const TraceEvent& e : t.events) {
      if (e.kind != EventKind::LocalOp) continue;
      if (e.gate == "cz") {
        psi = apply_cz(psi, e.qubits[0], e.qubits[1]);
      } else {
        LocalOperator op{2, {{e.qubits[0], e.gate == "lc_x" ? rx : rz}}};
        psi = apply_unitary(psi, op);
      }
    }
    out.overlap = std::abs(overlap(graph_state(g), psi));
    out.state = std::move(psi);
  }
  return out;
}

/** Final graph is the N-path on the spine with every other qubit isolated. */
inline bool protocol_graph_is_path(const ClusterProtocol& p) {
  auto spine = induced_if_rest_isolated(p.final_graph, p.spine);
  return spine && *spine == path_graph(static_cast<int>(p.spine.size()));
}

/**
 * Deterministic strategies on the directed path: party p answers from the
 * inputs of parties max(0, p - t)..p. Every term of the functional must fix
 * the setting of each party with more than one input.
 */
struct LoncStrategySpace {
  int n;
  int t;
  std::vector<int> settings;
  std::vector<int> first_visible;
  std::vector<std::uint64_t> table_size;  // visible input tuples per party
};

constexpr double kLoncBudget = 1e8;

inline LoncStrategySpace lonc_strategy_space(const std::vector<int>& settings, int t) {
  const int n = static_cast<int>(settings.size());
  if (n < 2) throw Error(ErrorKind::BadParameter, "need at least two parties");
  if (t < 0) throw Error(ErrorKind::BadParameter, "negative round count");
  LoncStrategySpace s{n, t, settings, {}, {}};
  double log2_count = 0.0;
  for (int p = 0; p < n; ++p) {
    int first = std::max(0, p - t);
    std::uint64_t size = 1;
    for (int q = first; q <= p; ++q) size *= static_cast<std::uint64_t>(settings[q]);
    s.first_visible.push_back(first);
    s.table_size.push_back(size);
    log2_count += static_cast<double>(size);
  }
  if (log2_count > std::log2(kLoncBudget)) {
    throw Error(ErrorKind::BudgetExceeded, "2^" + std::to_string(static_cast<long long>(log2_count)) +
                                               " strategies exceed the enumeration budget");
  }
  return s;
}

/** Maximum of a qubit correlator functional over all deterministic strategies. */
inline double brute_force_lonc_max(const LinearFunctional& f, const std::vector<int>& settings, int t) {
  LoncStrategySpace s = lonc_strategy_space(settings, t);
  const int n = s.n;
  // Resolve each term to a full setting tuple and, per factor party, the
  // index into its response table.
  struct Lookup {
    double coeff;
    std::vector<std::pair<int, std::uint64_t>> entries;
  };
  std::vector<Lookup> lookups;
  for (const WeightedTerm& w : f.terms) {
    std::vector<int> x(n, -1);
    for (const Factor& fac : w.term) {
      if (fac.party < 0 || fac.party >= n || fac.setting < 0 || fac.setting >= settings[fac.party]) {
        throw Error(ErrorKind::ScenarioMismatch, "factor outside the scenario");
      }
      if (x[fac.party] >= 0 && x[fac.party] != fac.setting) {
        throw Error(ErrorKind::BadParameter, "party measured twice in one term");
      }
      x[fac.party] = fac.setting;
    }
    for (int p = 0; p < n; ++p) {
      if (x[p] < 0) {
        if (settings[p] != 1) throw Error(ErrorKind::BadParameter, "term leaves a party's input open");
        x[p] = 0;
      }
    }
    Lookup lk{w.coeff, {}};
    for (const Factor& fac : w.term) {
      if (fac.power % 2 == 0) continue;
      std::uint64_t idx = 0;
      for (int q = s.first_visible[fac.party]; q <= fac.party; ++q) idx = idx * settings[q] + x[q];
      lk.entries.push_back({fac.party, idx});
    }
    lookups.push_back(std::move(lk));
  }

  // Odometer over the bit-packed response tables of all parties.
  std::vector<std::uint64_t> table(n, 0);
  std::vector<std::uint64_t> limit(n);
  for (int p = 0; p < n; ++p) limit[p] = std::uint64_t{1} << s.table_size[p];
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    double v = 0.0;
    for (const Lookup& lk : lookups) {
      int sign = 1;
      for (auto [p, idx] : lk.entries) {
        if (table[p] >> idx & 1) sign = -sign;
      }
      v += lk.coeff * sign;
    }
    best = std::max(best, v);
    int p = 0;
    while (p < n && ++table[p] == limit[p]) table[p++] = 0;
    if (p == n) break;
  }
  return best;
}

inline double brute_force_lonc_max(int n, int t) {
  return brute_force_lonc_max(ghz_line_functional(n), ghz_line_settings(n), t);
}

}  // namespace gmnl
