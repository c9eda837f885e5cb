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
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gmnl/error.hpp"
#include "json.hpp"

namespace gmnl {

inline bool is_primed(const std::string& label) { return !label.empty() && label.back() == '\''; }
inline std::string prime(const std::string& label) { return label + "'"; }
inline std::string base_label(const std::string& label) {
  return is_primed(label) ? label.substr(0, label.size() - 1) : label;
}
inline std::string cat_label(int i, int j) { return "[" + std::to_string(i) + "," + std::to_string(j) + "]"; }

struct Source {
  std::string type;  // base label of the party the source excludes
  std::set<std::string> connected;
};

struct Network {
  std::string name;
  std::vector<std::string> parties;
  std::vector<Source> sources;

  bool has_party(const std::string& p) const { return std::find(parties.begin(), parties.end(), p) != parties.end(); }
};

// Members of (n, m)_step; empty when n > m.
inline std::vector<int> index_range(int n, int m, int step = 1) {
  std::vector<int> out;
  for (int i = n; i <= m; i += step) out.push_back(i);
  return out;
}

/**
 * Parties of a network family: caterpillar labels [i,j] when legs are
 * given (or N == 0), plain labels 1..N otherwise.
 */
struct FamilyParams {
  int L = 0;
  std::vector<int> legs;
  int N = 0;
  int k = 0;
  int m = 0;
};

struct PartyRow {
  std::string label;
  int i;
  int j;
};

inline std::vector<PartyRow> family_parties(const FamilyParams& p) {
  std::vector<PartyRow> rows;
  if (p.N > 0) {
    if (p.L != 0 || !p.legs.empty()) throw Error(ErrorKind::BadParameter, "give either N or L/legs");
    if (p.N < 2) throw Error(ErrorKind::BadParameter, "N must be at least 2");
    for (int i = 1; i <= p.N; ++i) rows.push_back({std::to_string(i), i, 0});
    return rows;
  }
  if (p.L < 2) throw Error(ErrorKind::BadParameter, "L must be at least 2");
  if (!p.legs.empty() && static_cast<int>(p.legs.size()) != p.L) {
    throw Error(ErrorKind::BadParameter, "legs must list one count per spine vertex");
  }
  for (int i = 1; i <= p.L; ++i) {
    int n = p.legs.empty() ? 0 : p.legs[i - 1];
    if (n < 0) throw Error(ErrorKind::BadParameter, "negative leg count");
    for (int j = 0; j <= n; ++j) rows.push_back({cat_label(i, j), i, j});
  }
  return rows;
}

/**
 * Two-copy inflation fixed by the unprimed sets tau[x]: the copies of source
 * type x reach tau[x] plus the primes of the rest, and the complement of
 * tau[x] plus the primes of tau[x].
 */
inline Network restricted_inflation(std::string name, const std::vector<std::string>& P,
                                    const std::map<std::string, std::set<std::string>>& tau) {
  Network net;
  net.name = std::move(name);
  net.parties = P;
  for (const auto& x : P) net.parties.push_back(prime(x));
  for (const auto& x : P) {
    auto it = tau.find(x);
    if (it == tau.end()) throw Error(ErrorKind::Internal, "missing source set for " + x);
    Source a{x, {}};
    Source b{x, {}};
    for (const auto& y : P) {
      if (y == x) continue;
      if (it->second.count(y)) {
        a.connected.insert(y);
        b.connected.insert(prime(y));
      } else {
        a.connected.insert(prime(y));
        b.connected.insert(y);
      }
    }
    if (it->second.count(x)) throw Error(ErrorKind::Internal, "source set contains its own type");
    net.sources.push_back(std::move(a));
    net.sources.push_back(std::move(b));
  }
  return net;
}

inline Network original_network(std::string name, const std::vector<std::string>& P) {
  Network net;
  net.name = std::move(name);
  net.parties = P;
  for (const auto& x : P) {
    Source s{x, {}};
    for (const auto& y : P) {
      if (y != x) s.connected.insert(y);
    }
    net.sources.push_back(std::move(s));
  }
  return net;
}

namespace detail {

inline Network explicit_network(std::string name, std::vector<std::string> parties,
                                std::vector<std::pair<std::string, std::vector<std::string>>> srcs) {
  Network net{std::move(name), std::move(parties), {}};
  for (auto& [t, c] : srcs) net.sources.push_back({t, std::set<std::string>(c.begin(), c.end())});
  return net;
}

inline std::map<std::string, Network> line4_tables() {
  const std::vector<std::string> P{"A", "B", "C", "D"};
  std::map<std::string, Network> t;
  t["line4_I0"] = explicit_network("line4_I0", P,
                                  {{"D", {"A", "B", "C"}}, {"C", {"A", "B", "D"}}, {"B", {"A", "C", "D"}}, {"A", {"B", "C", "D"}}});
  t["line4_I1"] = explicit_network(
      "line4_I1", P,
      {{"D", {"A", "B", "C"}}, {"C", {"A", "B", "D"}}, {"B", {"C", "D"}}, {"B", {"A"}}, {"A", {"B", "C", "D"}}});
  t["line4_I2"] = explicit_network(
      "line4_I2", P,
      {{"D", {"A", "B", "C"}}, {"C", {"A", "B", "D"}}, {"B", {"C", "D"}}, {"B", {"A"}}, {"A", {"C", "D"}}, {"A", {"B"}}});
  const std::vector<std::string> Q{"A'", "B'", "C", "D"};
  t["line4_I3"] = explicit_network(
      "line4_I3", Q,
      {{"D", {"A'", "B'", "C"}}, {"C", {"A'", "B'", "D"}}, {"B", {"A'", "C", "D"}}, {"A", {"B'", "C", "D"}}});
  t["line4_I4"] = explicit_network(
      "line4_I4", Q,
      {{"D", {"A'", "B'"}}, {"D", {"C"}}, {"C", {"A'", "B'", "D"}}, {"B", {"A'", "C", "D"}}, {"A", {"B'", "C", "D"}}});
  t["line4_I5"] = explicit_network("line4_I5", Q,
                                  {{"D", {"A'", "B'"}},
                                   {"D", {"C"}},
                                   {"C", {"A'", "B'"}},
                                   {"C", {"D"}},
                                   {"B", {"A'", "C", "D"}},
                                   {"A", {"B'", "C", "D"}}});
  t["line4_J"] = explicit_network("line4_J", {"A", "B", "C", "D", "A'", "B'"},
                                 {{"D", {"A", "B", "C"}},
                                  {"C", {"A", "B", "D"}},
                                  {"B", {"A"}},
                                  {"A", {"B"}},
                                  {"D", {"A'", "B'"}},
                                  {"C", {"A'", "B'"}},
                                  {"B", {"A'", "C", "D"}},
                                  {"A", {"B'", "C", "D"}}});
  return t;
}

}  // namespace detail

inline std::vector<std::string> family_names_inflation() {
  return {"O",       "I0",      "I1",      "I2",      "I3",      "Jk_m",    "ghz_I0", "ghz_I1",
          "line4_I0", "line4_I1", "line4_I2", "line4_I3", "line4_I4", "line4_I5", "line4_J"};
}

/**
 * Builds a named network. Caterpillar families take L and legs, chain
 * families take N; Jk_m also takes k and m. The line4_* tables are fixed
 * four-party networks and take no parameters.
 */
inline Network build_family(const std::string& name, const FamilyParams& p = {}) {
  if (name.rfind("line4_", 0) == 0) {
    auto tables = detail::line4_tables();
    auto it = tables.find(name);
    if (it == tables.end()) throw Error(ErrorKind::UnknownFamily, name);
    return it->second;
  }
  const auto known = family_names_inflation();
  if (std::find(known.begin(), known.end(), name) == known.end()) throw Error(ErrorKind::UnknownFamily, name);

  const std::vector<PartyRow> rows = family_parties(p);
  const int L = p.N > 0 ? p.N : p.L;
  std::vector<std::string> P;
  for (const auto& r : rows) P.push_back(r.label);
  if (name == "O") return original_network("O", P);

  // [S, .] minus self for a set S of spine positions.
  auto block = [&](const std::vector<int>& positions, const std::string& self) {
    std::set<int> pos(positions.begin(), positions.end());
    std::set<std::string> out;
    for (const auto& r : rows) {
      if (pos.count(r.i) && r.label != self) out.insert(r.label);
    }
    return out;
  };
  auto join = [](std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  const std::string first = rows.front().label;

  if (name == "Jk_m" && (p.k < 0 || p.k > L - 1 || p.m < 0)) {
    throw Error(ErrorKind::BadParameter, "Jk_m needs 0 <= k <= L-1 and m >= 0");
  }

  std::map<std::string, std::set<std::string>> tau;
  for (const auto& r : rows) {
    const int i = r.i;
    const bool odd = i % 2 == 1;
    std::set<std::string> t;
    if (name == "I0") {
      t = block(join(index_range(odd ? 1 : 2, i - 2, 2), index_range(i, L)), r.label);
    } else if (name == "I1") {
      t = block(odd ? index_range(1, L) : index_range(i, L), r.label);
    } else if (name == "I2") {
      if (odd) {
        t = block(index_range(i, L), r.label);
        if (r.label != first) t.insert(first);
      } else {
        t = block(index_range(2, L), r.label);
      }
    } else if (name == "I3") {
      t = block(odd ? index_range(i, L) : index_range(1, L), r.label);
    } else if (name == "Jk_m") {
      bool moved = i == p.k + 2 && r.j >= p.m + 1;
      t = block(moved ? index_range(i, L) : index_range(1, L), r.label);
    } else if (name == "ghz_I0") {
      t = block(index_range(1, L), r.label);
    } else if (name == "ghz_I1") {
      t = block(index_range(i + 1, L), r.label);
    }
    tau[r.label] = std::move(t);
  }
  std::string full = name;
  if (name == "Jk_m") full = "J" + std::to_string(p.k) + "_" + std::to_string(p.m);
  return restricted_inflation(full, P, tau);
}

/** Exchanges the primed and unprimed copies of one party everywhere. */
inline Network swap_primes(const Network& net, const std::string& label) {
  const std::string b = base_label(label);
  const std::string bp = prime(b);
  if (!net.has_party(b) && !net.has_party(bp)) throw Error(ErrorKind::UnknownLabel, label);
  auto sw = [&](const std::string& x) { return x == b ? bp : (x == bp ? b : x); };
  Network out;
  out.name = net.name;
  for (const auto& p : net.parties) out.parties.push_back(sw(p));
  for (const auto& s : net.sources) {
    Source t{s.type, {}};
    for (const auto& c : s.connected) t.connected.insert(sw(c));
    out.sources.push_back(std::move(t));
  }
  return out;
}

struct SignatureEntry {
  std::string type;
  std::vector<int> positions;

  bool operator<(const SignatureEntry& o) const { return std::tie(type, positions) < std::tie(o.type, o.positions); }
  bool operator==(const SignatureEntry& o) const { return type == o.type && positions == o.positions; }
};

/**
 * Party-source incidence restricted to an ordered party list. Parties are
 * kept by position and base label, sources by type only, and empty
 * restrictions are dropped.
 */
struct Signature {
  std::vector<std::string> bases;
  std::vector<SignatureEntry> sources;

  bool operator==(const Signature& o) const { return bases == o.bases && sources == o.sources; }
  bool operator!=(const Signature& o) const { return !(*this == o); }

  std::string str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < bases.size(); ++i) os << (i ? " " : "") << bases[i];
    os << ")";
    for (const auto& e : sources) os << " " << entry_str(e);
    return os.str();
  }

  static std::string entry_str(const SignatureEntry& e) {
    std::string s = e.type + "{";
    for (size_t i = 0; i < e.positions.size(); ++i) s += (i ? "," : "") + std::to_string(e.positions[i]);
    return s + "}";
  }
};

inline Signature subnetwork_signature(const Network& net, const std::vector<std::string>& subset) {
  if (subset.empty()) throw Error(ErrorKind::BadParameter, "empty party subset");
  std::map<std::string, int> pos;
  Signature sig;
  for (size_t i = 0; i < subset.size(); ++i) {
    if (!net.has_party(subset[i])) throw Error(ErrorKind::UnknownLabel, subset[i] + " not in " + net.name);
    if (!pos.emplace(subset[i], static_cast<int>(i)).second) {
      throw Error(ErrorKind::BadParameter, "duplicate party " + subset[i]);
    }
    sig.bases.push_back(base_label(subset[i]));
  }
  for (const auto& s : net.sources) {
    SignatureEntry e{s.type, {}};
    for (const auto& c : s.connected) {
      auto it = pos.find(c);
      if (it != pos.end()) e.positions.push_back(it->second);
    }
    if (e.positions.empty()) continue;
    std::sort(e.positions.begin(), e.positions.end());
    sig.sources.push_back(std::move(e));
  }
  std::sort(sig.sources.begin(), sig.sources.end());
  return sig;
}

inline bool same_network(const Network& a, const Network& b) {
  std::set<std::string> pa(a.parties.begin(), a.parties.end());
  std::set<std::string> pb(b.parties.begin(), b.parties.end());
  if (pa != pb) return false;
  std::vector<std::string> order(pa.begin(), pa.end());
  return subnetwork_signature(a, order) == subnetwork_signature(b, order);
}

// A network given by family name and parameters or as explicit data.
struct NetworkRef {
  std::string family;
  FamilyParams params;
  std::vector<std::string> swaps;
  std::optional<Network> network;
};

inline Network resolve(const NetworkRef& ref) {
  Network net = ref.network ? *ref.network : build_family(ref.family, ref.params);
  for (const auto& s : ref.swaps) net = swap_primes(net, s);
  return net;
}

struct Claim {
  std::string description;
  NetworkRef net_a;
  std::vector<std::string> subset_a;  // empty means every party
  NetworkRef net_b;
  std::vector<std::string> subset_b;
  bool expect_equivalent = true;
};

struct ClaimScript {
  std::string name;
  std::vector<Claim> claims;
};

struct ClaimResult {
  std::string description;
  bool expect_equivalent;
  bool equivalent;
  bool passed;
  std::string signature_a;
  std::string signature_b;
  std::string diff;
};

struct ClaimReport {
  std::string script;
  std::vector<ClaimResult> results;

  bool passed() const {
    return std::all_of(results.begin(), results.end(), [](const ClaimResult& r) { return r.passed; });
  }
  int failures() const {
    return static_cast<int>(std::count_if(results.begin(), results.end(), [](const ClaimResult& r) { return !r.passed; }));
  }
};

namespace detail {

inline std::vector<std::string> sorted_parties(const Network& n) {
  std::vector<std::string> v = n.parties;
  std::sort(v.begin(), v.end());
  return v;
}

inline std::string signature_diff(const Signature& a, const Signature& b) {
  std::string out;
  if (a.bases != b.bases) out += "party labels differ; ";
  std::vector<SignatureEntry> only_a;
  std::vector<SignatureEntry> only_b;
  std::set_difference(a.sources.begin(), a.sources.end(), b.sources.begin(), b.sources.end(),
                      std::back_inserter(only_a));
  std::set_difference(b.sources.begin(), b.sources.end(), a.sources.begin(), a.sources.end(),
                      std::back_inserter(only_b));
  out += "only in a:";
  for (const auto& e : only_a) out += " " + Signature::entry_str(e);
  out += "; only in b:";
  for (const auto& e : only_b) out += " " + Signature::entry_str(e);
  return out;
}

}  // namespace detail

inline ClaimResult check_claim(const Claim& c) {
  Network a = resolve(c.net_a);
  Network b = resolve(c.net_b);
  std::vector<std::string> sa = c.subset_a.empty() ? detail::sorted_parties(a) : c.subset_a;
  std::vector<std::string> sb = c.subset_b.empty() ? (c.subset_a.empty() ? detail::sorted_parties(b) : c.subset_a)
                                                   : c.subset_b;
  Signature ga = subnetwork_signature(a, sa);
  Signature gb = subnetwork_signature(b, sb);
  ClaimResult r;
  r.description = c.description;
  r.expect_equivalent = c.expect_equivalent;
  r.equivalent = ga == gb;
  r.passed = r.equivalent == c.expect_equivalent;
  if (!r.passed) {
    r.signature_a = ga.str();
    r.signature_b = gb.str();
    r.diff = detail::signature_diff(ga, gb);
  }
  return r;
}

inline ClaimReport check_claims(const ClaimScript& script) {
  ClaimReport rep{script.name, {}};
  for (const auto& c : script.claims) rep.results.push_back(check_claim(c));
  return rep;
}

// JSON claim scripts: [{"netA": ref, "subsetA": [...], "netB": ref, "subsetB": [...], "expect": "..."}].
inline NetworkRef network_ref_from_json(const nlohmann::json& j) {
  NetworkRef ref;
  if (!j.is_object()) throw Error(ErrorKind::Parse, "network reference must be an object");
  if (j.contains("sources")) {
    Network net;
    net.name = j.value("name", "explicit");
    net.parties = j.at("parties").get<std::vector<std::string>>();
    for (const auto& s : j.at("sources")) {
      auto c = s.at("connected").get<std::vector<std::string>>();
      for (const auto& p : c) {
        if (!net.has_party(p)) throw Error(ErrorKind::UnknownLabel, p);
      }
      net.sources.push_back({s.at("type").get<std::string>(), std::set<std::string>(c.begin(), c.end())});
    }
    ref.network = net;
  } else {
    ref.family = j.at("family").get<std::string>();
    ref.params.L = j.value("L", 0);
    ref.params.N = j.value("N", 0);
    ref.params.k = j.value("k", 0);
    ref.params.m = j.value("m", 0);
    if (j.contains("legs")) ref.params.legs = j.at("legs").get<std::vector<int>>();
  }
  if (j.contains("swap")) ref.swaps = j.at("swap").get<std::vector<std::string>>();
  return ref;
}

inline ClaimScript claim_script_from_json(const nlohmann::json& j, std::string name = "script") {
  ClaimScript script{std::move(name), {}};
  try {
    const nlohmann::json& list = j.is_object() ? j.at("claims") : j;
    if (j.is_object() && j.contains("name")) script.name = j.at("name").get<std::string>();
    if (!list.is_array()) throw Error(ErrorKind::Parse, "claim script must be an array");
    for (const auto& c : list) {
      Claim claim;
      claim.description = c.value("description", "");
      claim.net_a = network_ref_from_json(c.at("netA"));
      claim.net_b = network_ref_from_json(c.at("netB"));
      if (c.contains("subsetA")) claim.subset_a = c.at("subsetA").get<std::vector<std::string>>();
      if (c.contains("subsetB")) claim.subset_b = c.at("subsetB").get<std::vector<std::string>>();
      std::string expect = c.value("expect", "equivalent");
      if (expect != "equivalent" && expect != "inequivalent") throw Error(ErrorKind::Parse, "bad expect " + expect);
      claim.expect_equivalent = expect == "equivalent";
      if (claim.description.empty()) claim.description = "claim " + std::to_string(script.claims.size());
      script.claims.push_back(std::move(claim));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  return script;
}

inline ClaimScript load_claim_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
  std::string name = path.substr(path.find_last_of('/') + 1);
  return claim_script_from_json(j, name.substr(0, name.find('.')));
}

#ifdef GMNL_DATA_DIR
inline std::string claims_path(const std::string& suite) { return std::string(GMNL_DATA_DIR) + "/claims/" + suite + ".json"; }
#endif

}  // namespace gmnl
