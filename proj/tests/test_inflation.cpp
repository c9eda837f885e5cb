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

#include <functional>
#include <random>

#include "catch_amalgamated.hpp"
#include "gmnl/inflation.hpp"

using namespace gmnl;

namespace {

std::vector<std::set<std::string>> sources_of_type(const Network& n, const std::string& type) {
  std::vector<std::set<std::string>> out;
  for (const auto& s : n.sources) {
    if (s.type == type) out.push_back(s.connected);
  }
  return out;
}

std::set<std::string> unprimed(const std::set<std::string>& s) {
  std::set<std::string> out;
  for (const auto& p : s) {
    if (!is_primed(p)) out.insert(p);
  }
  return out;
}

std::vector<std::vector<int>> leg_configs(int L, int max_legs) {
  std::vector<std::vector<int>> out;
  std::vector<int> legs(L, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == L - 1) {
      out.push_back(legs);
      return;
    }
    for (int n = 0; n <= max_legs; ++n) {
      legs[i] = n;
      rec(i + 1);
    }
    legs[i] = 0;
  };
  rec(1);
  return out;
}

Claim drawn_claim(const std::string& a, std::vector<std::string> sa, const std::string& b, bool equiv = true) {
  Claim c;
  c.description = a + " vs " + b;
  c.net_a.family = a;
  c.net_b.family = b;
  c.subset_a = std::move(sa);
  c.expect_equivalent = equiv;
  return c;
}

}  // namespace

TEST_CASE("Original network connects every source to all but one party") {
  Network o = build_family("O", {4, {}, 0, 0, 0});
  REQUIRE(o.parties.size() == 4);
  REQUIRE(o.sources.size() == 4);
  for (const auto& s : o.sources) {
    CHECK(s.connected.size() == 3);
    CHECK_FALSE(s.connected.count(s.type));
  }
}

TEST_CASE("I1 routes even types to the tail of the spine") {
  Network n = build_family("I1", {4, {}, 0, 0, 0});
  auto two = sources_of_type(n, "[2,0]");
  REQUIRE(two.size() == 2);
  std::set<std::set<std::string>> sets{unprimed(two[0]), unprimed(two[1])};
  CHECK(sets == std::set<std::set<std::string>>{{"[3,0]", "[4,0]"}, {"[1,0]"}});
  auto four = sources_of_type(n, "[4,0]");
  std::set<std::set<std::string>> sets4{unprimed(four[0]), unprimed(four[1])};
  CHECK(sets4 == std::set<std::set<std::string>>{{}, {"[1,0]", "[2,0]", "[3,0]"}});
  auto one = sources_of_type(n, "[1,0]");
  std::set<std::set<std::string>> sets1{unprimed(one[0]), unprimed(one[1])};
  CHECK(sets1 == std::set<std::set<std::string>>{{}, {"[2,0]", "[3,0]", "[4,0]"}});
}

TEST_CASE("J re-routes only the legs of spine vertex k+2") {
  FamilyParams p{4, {0, 2, 0, 0}, 0, 0, 0};
  Network j = build_family("Jk_m", p);
  std::set<std::string> all;
  for (const auto& r : family_parties(p)) all.insert(r.label);
  for (const auto& r : family_parties(p)) {
    auto srcs = sources_of_type(j, r.label);
    REQUIRE(srcs.size() == 2);
    std::set<std::set<std::string>> sets{unprimed(srcs[0]), unprimed(srcs[1])};
    std::set<std::string> rest = all;
    rest.erase(r.label);
    if (r.i == 2 && r.j >= 1) {
      std::set<std::string> tail{"[2,0]", "[2,1]", "[2,2]", "[3,0]", "[4,0]"};
      tail.erase(r.label);
      std::set<std::string> other = rest;
      for (const auto& t : tail) other.erase(t);
      CHECK(sets == std::set<std::set<std::string>>{tail, other});
    } else {
      CHECK(sets == std::set<std::set<std::string>>{rest, {}});
    }
  }
  p.m = 1;
  Network j1 = build_family("Jk_m", p);
  CHECK(j1.name == "J0_1");
  auto srcs = sources_of_type(j1, "[2,1]");
  REQUIRE(srcs.size() == 2);
  CHECK((unprimed(srcs[0]).size() == 5 || unprimed(srcs[1]).size() == 5));
}

TEST_CASE("Restricted families keep two copies and the union rule") {
  for (int L = 2; L <= 6; ++L) {
    for (const auto& legs : leg_configs(L, L <= 5 ? 2 : 1)) {
      for (const std::string name : {"I0", "I1", "I2", "I3", "Jk_m"}) {
        for (int k = 0; k <= (name == "Jk_m" ? L - 1 : 0); ++k) {
          FamilyParams p{L, legs, 0, k, 0};
          Network n = build_family(name, p);
          auto rows = family_parties(p);
          std::set<std::string> all;
          for (const auto& r : rows) all.insert(r.label);
          REQUIRE(n.parties.size() == 2 * rows.size());
          REQUIRE(n.sources.size() == 2 * rows.size());
          for (const auto& r : rows) {
            REQUIRE(n.has_party(prime(r.label)));
            auto srcs = sources_of_type(n, r.label);
            REQUIRE(srcs.size() == 2);
            std::set<std::string> a = unprimed(srcs[0]);
            std::set<std::string> b = unprimed(srcs[1]);
            std::set<std::string> u = a;
            u.insert(b.begin(), b.end());
            std::set<std::string> expect = all;
            expect.erase(r.label);
            REQUIRE(u == expect);
            std::vector<std::string> both;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
            REQUIRE(both.empty());
            // Each copy reaches exactly one copy of every other party.
            REQUIRE(srcs[0].size() == rows.size() - 1);
            REQUIRE(srcs[1].size() == rows.size() - 1);
          }
        }
      }
    }
  }
}

TEST_CASE("Drawn four-party network signatures") {
  Network i0 = build_family("line4_I0");
  Network i1 = build_family("line4_I1");
  CHECK(subnetwork_signature(i0, {"B", "C", "D"}) == subnetwork_signature(i1, {"B", "C", "D"}));
  CHECK(subnetwork_signature(i1, {"A", "B"}) == subnetwork_signature(i0, {"A", "B"}));
  CHECK(subnetwork_signature(i0, {"A", "C"}) != subnetwork_signature(i1, {"A", "C"}));
}

TEST_CASE("Signature worked example") {
  // {A,C} in line4_I0: sources of type B and D reach both, A reaches C, C reaches A.
  Signature s = subnetwork_signature(build_family("line4_I0"), {"A", "C"});
  CHECK(s.str() == "(A C) A{1} B{0,1} C{0} D{0,1}");
  Signature t = subnetwork_signature(build_family("line4_I1"), {"A", "C"});
  CHECK(t.str() == "(A C) A{1} B{0} B{1} C{0} D{0,1}");
}

TEST_CASE("Signatures ignore source copy order") {
  std::mt19937 rng(3);
  for (const std::string name : {"I0", "I1", "I2", "I3"}) {
    Network n = build_family(name, {5, {0, 1, 2, 1, 0}, 0, 0, 0});
    std::vector<std::string> subset;
    for (const auto& p : n.parties) {
      if (rng() % 2) subset.push_back(p);
    }
    if (subset.empty()) subset.push_back(n.parties.front());
    Signature ref = subnetwork_signature(n, subset);
    for (int trial = 0; trial < 20; ++trial) {
      Network m = n;
      std::shuffle(m.sources.begin(), m.sources.end(), rng);
      REQUIRE(subnetwork_signature(m, subset) == ref);
    }
  }
}

TEST_CASE("Prime swaps") {
  Network i3 = build_family("line4_I3");
  CHECK(same_network(swap_primes(swap_primes(i3, "A"), "B"), build_family("line4_I0")));
  CHECK_FALSE(same_network(swap_primes(i3, "A"), build_family("line4_I0")));

  FamilyParams p{4, {}, 0, 0, 0};
  CHECK(same_network(swap_primes(build_family("I2", p), "[1,0]"), build_family("I3", p)));
  CHECK_FALSE(same_network(build_family("I2", p), build_family("I3", p)));

  std::mt19937 rng(11);
  for (const auto& legs : leg_configs(5, 2)) {
    FamilyParams q{5, legs, 0, 0, 0};
    for (const std::string name : {"I0", "I1", "I2", "I3"}) {
      Network n = build_family(name, q);
      const std::string party = n.parties[rng() % n.parties.size()];
      Network s = swap_primes(n, party);
      REQUIRE(same_network(swap_primes(s, party), n));
      std::vector<std::string> subset;
      for (const auto& x : n.parties) {
        if (base_label(x) != base_label(party) && rng() % 2) subset.push_back(x);
      }
      if (subset.empty()) continue;
      REQUIRE(subnetwork_signature(s, subset) == subnetwork_signature(n, subset));
    }
  }
  CHECK_THROWS_AS(swap_primes(i3, "E"), Error);
}

TEST_CASE("Drawn four-party networks agree with the general formulas at L = 4") {
  // A, B, C, D sit at spine positions 1..4. Only the first two drawings are
  // members of the formula families; they are compared on every ordered
  // subset of unprimed parties.
  const std::vector<std::string> fig{"A", "B", "C", "D"};
  const std::map<std::string, std::string> to_cat{
      {"A", "[1,0]"}, {"B", "[2,0]"}, {"C", "[3,0]"}, {"D", "[4,0]"}};
  auto relabel = [&](const Signature& s) {
    Signature out = s;
    for (auto& b : out.bases) b = to_cat.at(b);
    for (auto& e : out.sources) e.type = to_cat.at(e.type);
    std::sort(out.sources.begin(), out.sources.end());
    return out;
  };
  FamilyParams p{4, {}, 0, 0, 0};
  const std::vector<std::pair<std::string, std::string>> pairs{{"line4_I0", "O"}, {"line4_I1", "I1"}};
  for (const auto& [f, formula] : pairs) {
    Network a = build_family(f);
    Network b = build_family(formula, p);
    int checked = 0;
    for (int mask = 1; mask < 16; ++mask) {
      std::vector<std::string> sub;
      for (int i = 0; i < 4; ++i) {
        if (mask >> i & 1) sub.push_back(fig[i]);
      }
      do {
        std::vector<std::string> mapped;
        for (const auto& x : sub) mapped.push_back(to_cat.at(x));
        REQUIRE(relabel(subnetwork_signature(a, sub)) == subnetwork_signature(b, mapped));
        ++checked;
      } while (std::next_permutation(sub.begin(), sub.end()));
    }
    CHECK(checked == 64);
  }
  // The restricted-class I2 formula is not the drawn I2.
  Network i2 = build_family("I2", p);
  CHECK(relabel(subnetwork_signature(build_family("line4_I2"), fig)) !=
        subnetwork_signature(i2, {"[1,0]", "[2,0]", "[3,0]", "[4,0]"}));
}

TEST_CASE("Shipped claim scripts pass") {
  for (const std::string suite : {"appendixB", "appendixC", "appendixC_wide", "appendixD", "ghz"}) {
    ClaimScript script = load_claim_script(claims_path(suite));
    REQUIRE_FALSE(script.claims.empty());
    ClaimReport rep = check_claims(script);
    for (const auto& r : rep.results) {
      INFO(suite << ": " << r.description << "\n  a: " << r.signature_a << "\n  b: " << r.signature_b << "\n  "
                 << r.diff);
      CHECK(r.passed);
    }
    int inequivalent = 0;
    for (const auto& c : script.claims) inequivalent += c.expect_equivalent ? 0 : 1;
    if (suite != "appendixD") CHECK(inequivalent > 0);
  }
}

TEST_CASE("Caterpillar claim script covers both parities and the leg chains") {
  ClaimScript script = load_claim_script(claims_path("appendixC"));
  std::set<int> spines;
  bool chain = false;
  for (const auto& c : script.claims) {
    spines.insert(c.net_a.params.L);
    if (c.net_a.family == "Jk_m" && c.net_b.family == "O") chain = true;
  }
  CHECK(spines == std::set<int>{4, 5});
  CHECK(chain);
}

TEST_CASE("Corrupted claims fail with a diff") {
  ClaimScript script{"corrupt", {drawn_claim("line4_I0", {"A", "C", "D"}, "line4_I1")}};
  ClaimReport rep = check_claims(script);
  REQUIRE(rep.results.size() == 1);
  CHECK_FALSE(rep.passed());
  CHECK(rep.failures() == 1);
  CHECK_FALSE(rep.results[0].diff.empty());
  CHECK(rep.results[0].diff.find("only in a: B{0,1,2}") != std::string::npos);

  // Flip the expectation on a true claim from the shipped caterpillar script.
  ClaimScript c = load_claim_script(claims_path("appendixC"));
  c.claims.resize(1);
  c.claims[0].expect_equivalent = false;
  CHECK_FALSE(check_claims(c).passed());
}

TEST_CASE("Claim scripts parse explicit networks") {
  auto j = nlohmann::json::parse(R"([
    {"netA": {"parties": ["X", "Y"], "sources": [{"type": "Z", "connected": ["X", "Y"]}]},
     "netB": {"family": "O", "N": 3}, "subsetA": ["X", "Y"], "subsetB": ["1", "2"], "expect": "inequivalent"}
  ])");
  ClaimScript s = claim_script_from_json(j);
  REQUIRE(s.claims.size() == 1);
  CHECK(check_claims(s).passed());
  CHECK_THROWS_AS(claim_script_from_json(nlohmann::json::parse(R"([{"netA": {}}])")), Error);
  CHECK_THROWS_AS(claim_script_from_json(nlohmann::json::parse(R"({"claims": 3})")), Error);
  CHECK_THROWS_AS(load_claim_script("/nonexistent/claims.json"), Error);
}

TEST_CASE("Inflation errors") {
  auto kind = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Internal;
  };
  CHECK(kind([] { build_family("I9", {4, {}, 0, 0, 0}); }) == ErrorKind::UnknownFamily);
  CHECK(kind([] { build_family("line4_I9"); }) == ErrorKind::UnknownFamily);
  CHECK(kind([] { build_family("I1", {1, {}, 0, 0, 0}); }) == ErrorKind::BadParameter);
  CHECK(kind([] { build_family("I1", {4, {0, 1}, 0, 0, 0}); }) == ErrorKind::BadParameter);
  CHECK(kind([] { build_family("Jk_m", {4, {}, 0, 7, 0}); }) == ErrorKind::BadParameter);
  CHECK(kind([] { build_family("I1", {4, {}, 4, 0, 0}); }) == ErrorKind::BadParameter);
  CHECK(kind([] { subnetwork_signature(build_family("line4_I0"), {"E"}); }) == ErrorKind::UnknownLabel);
  CHECK(kind([] { subnetwork_signature(build_family("line4_I0"), {}); }) == ErrorKind::BadParameter);
  CHECK(kind([] { subnetwork_signature(build_family("line4_I0"), {"A", "A"}); }) == ErrorKind::BadParameter);
}
