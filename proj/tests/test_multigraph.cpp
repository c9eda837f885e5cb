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

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "catch_amalgamated.hpp"
#include "gmnl/multigraph.hpp"

using namespace gmnl;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::Internal;
}

// Qubit local complementation as set complementation inside N(v).
Multigraph lc_by_toggling(const Multigraph& g, int v) {
  Multigraph out = g;
  std::vector<int> nb;
  for (int u = 0; u < g.n(); ++u) {
    if (g.weight(u, v)) nb.push_back(u);
  }
  for (size_t a = 0; a < nb.size(); ++a) {
    for (size_t b = a + 1; b < nb.size(); ++b) out.set_weight(nb[a], nb[b], 1 - g.weight(nb[a], nb[b]));
  }
  return out;
}

Multigraph from_mask(int n, unsigned mask) {
  Multigraph g(n, 2);
  int bit = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (mask >> bit & 1u) g.set_weight(i, j, 1);
      ++bit;
    }
  }
  return g;
}

Multigraph relabel(const Multigraph& g, const std::vector<int>& perm) {
  Multigraph out(g.n(), g.d());
  for (const Edge& e : g.edges()) out.set_weight(perm[e.i], perm[e.j], e.w);
  return out;
}

}  // namespace

TEST_CASE("Edges accumulate modulo d") {
  Multigraph g = new_multigraph(3, 5, {{0, 1, 7}});
  CHECK(g.weight(0, 1) == 2);
  CHECK(g.weight(1, 0) == 2);
  g = new_multigraph(3, 3, {{0, 1, 2}, {1, 0, 2}});
  CHECK(g.weight(0, 1) == 1);
  g = new_multigraph(2, 2, {{0, 1, 1}, {0, 1, 1}});
  CHECK(g.edges().empty());
}

TEST_CASE("Malformed graphs are rejected") {
  CHECK(kind_of([] { new_multigraph(3, 2, {{1, 1, 1}}); }) == ErrorKind::SelfLoop);
  CHECK(kind_of([] { new_multigraph(3, 2, {{0, 3, 1}}); }) == ErrorKind::IndexOutOfRange);
  CHECK(kind_of([] { new_multigraph(3, 1, {}); }) == ErrorKind::BadDimension);
}

TEST_CASE("Neighbourhoods are sorted vertex lists") {
  Multigraph g = new_multigraph(4, 3, {{2, 0, 1}, {2, 3, 2}});
  CHECK(neighbourhood(g, 2) == std::vector<int>{0, 3});
  CHECK(neighbourhood(g, 1).empty());
}

TEST_CASE("Caterpillar classification of the drawn example") {
  // Spine 0..5; three legs at position 2, one at 3 and one at 5.
  Multigraph g = caterpillar_graph(6, {0, 3, 1, 0, 1, 0});
  CaterpillarLabeling lab = classify_caterpillar(g);
  CHECK(lab.spine == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(lab.leg_counts() == std::vector<int>{0, 3, 1, 0, 1, 0});
  CHECK(lab.legs[1] == std::vector<int>{6, 7, 8});
  CHECK(lab.label.at(9) == SpineLabel{3, 1});
  CHECK(lab.vertex(5, 1) == 10);
  CHECK(lab.N() == 11);
}

TEST_CASE("Caterpillar edge cases") {
  CHECK(classify_caterpillar(Multigraph(1, 2)).spine == std::vector<int>{0});
  CHECK(classify_caterpillar(new_multigraph(2, 2, {{1, 0, 1}})).spine == std::vector<int>{0, 1});
  // Star centred at 0: smallest leaves at both ends.
  CaterpillarLabeling star = classify_caterpillar(new_multigraph(4, 2, {{0, 3, 1}, {0, 1, 1}, {0, 2, 1}}));
  CHECK(star.spine == std::vector<int>{1, 0, 2});
  CHECK(star.leg_counts() == std::vector<int>{0, 1, 0});
  // Path 2 - 0 - 1 read from its smaller end.
  CHECK(classify_caterpillar(new_multigraph(3, 2, {{2, 0, 1}, {0, 1, 1}})).spine == std::vector<int>{1, 0, 2});
  // Weights are irrelevant to the shape.
  CHECK(classify_caterpillar(new_multigraph(3, 3, {{0, 1, 2}, {1, 2, 1}})).spine == std::vector<int>{0, 1, 2});
}

TEST_CASE("Non-caterpillars are rejected") {
  CHECK(kind_of([] { classify_caterpillar(new_multigraph(3, 2, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}})); }) ==
        ErrorKind::NotCaterpillar);
  CHECK(kind_of([] { classify_caterpillar(new_multigraph(4, 2, {{0, 1, 1}, {2, 3, 1}})); }) ==
        ErrorKind::Disconnected);
  // Spider with three legs of length two.
  CHECK(kind_of([] {
          classify_caterpillar(new_multigraph(7, 2, {{0, 1, 1}, {1, 2, 1}, {0, 3, 1}, {3, 4, 1}, {0, 5, 1}, {5, 6, 1}}));
        }) == ErrorKind::NotCaterpillar);
}

TEST_CASE("Caterpillar construction round-trips exhaustively") {
  for (int L = 3; L <= 6; ++L) {
    int inner = L - 2;
    int configs = 1;
    for (int k = 0; k < inner; ++k) configs *= 4;
    for (int c = 0; c < configs; ++c) {
      std::vector<int> legs(L, 0);
      int r = c;
      for (int k = 0; k < inner; ++k) {
        legs[k + 1] = r % 4;
        r /= 4;
      }
      CaterpillarLabeling lab = classify_caterpillar(caterpillar_graph(L, legs));
      REQUIRE(lab.leg_counts() == legs);
    }
  }
}

TEST_CASE("Classification is label independent up to orientation") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int L = 3 + static_cast<int>(rng() % 4);
    std::vector<int> legs(L, 0);
    for (int k = 1; k + 1 < L; ++k) legs[k] = static_cast<int>(rng() % 3);
    Multigraph g = caterpillar_graph(L, legs);
    std::vector<int> perm(g.n());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Multigraph h = relabel(g, perm);
    CaterpillarLabeling lab = classify_caterpillar(h);
    std::vector<int> rev(legs.rbegin(), legs.rend());
    CHECK((lab.leg_counts() == legs || lab.leg_counts() == rev));
    CHECK(h.degree(lab.spine.front()) == 1);
    CHECK(h.degree(lab.spine.back()) == 1);
    for (size_t k = 0; k + 1 < lab.spine.size(); ++k) CHECK(h.weight(lab.spine[k], lab.spine[k + 1]) != 0);
    CHECK(lab.spine.front() < lab.spine.back());
  }
}

TEST_CASE("Local complementation on a three-vertex path") {
  // B - A - C gains the edge B - C.
  Multigraph g = new_multigraph(3, 2, {{0, 1, 1}, {0, 2, 1}});
  Multigraph h = local_complementation(g, 0);
  CHECK(h.weight(1, 2) == 1);
  CHECK(h.weight(0, 1) == 1);
  CHECK(local_complementation(h, 0) == g);
}

TEST_CASE("Qubit local complementation is an involution on all graphs up to five vertices") {
  for (int n = 1; n <= 5; ++n) {
    unsigned pairs = n * (n - 1) / 2;
    for (unsigned mask = 0; mask < (1u << pairs); ++mask) {
      Multigraph g = from_mask(n, mask);
      for (int v = 0; v < n; ++v) {
        Multigraph h = local_complementation(g, v);
        REQUIRE(h == lc_by_toggling(g, v));
        REQUIRE(local_complementation(h, v) == g);
      }
    }
  }
}

TEST_CASE("Qudit local complementation has order dividing d") {
  std::mt19937 rng(11);
  for (int d : {3, 4, 5}) {
    for (int trial = 0; trial < 30; ++trial) {
      Multigraph g(5, d);
      for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) g.set_weight(i, j, static_cast<int>(rng() % d));
      }
      int v = static_cast<int>(rng() % 5);
      Multigraph h = g;
      for (int k = 0; k < d; ++k) h = local_complementation(h, v);
      REQUIRE(h == g);
      Multigraph once = local_complementation(g, v);
      for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
          if (i == j) continue;
          REQUIRE(once.weight(i, j) == (g.weight(i, j) + g.weight(i, v) * g.weight(j, v)) % d);
        }
      }
    }
  }
}

TEST_CASE("Vertex multiplication scales incident edges") {
  Multigraph g = new_multigraph(2, 5, {{0, 1, 2}});
  VertexMultiplication r = vertex_multiplication(g, 1, 3);
  CHECK(r.graph.weight(0, 1) == 1);
  CHECK(r.invertible);
  CHECK(kind_of([&] { vertex_multiplication(g, 0, 0); }) == ErrorKind::BadFactor);
  CHECK(kind_of([&] { vertex_multiplication(g, 0, 5); }) == ErrorKind::BadFactor);
  CHECK_FALSE(vertex_multiplication(new_multigraph(2, 4, {{0, 1, 1}}), 0, 2).invertible);
}

TEST_CASE("Linear graphs normalize to unit weights") {
  Multigraph g = new_multigraph(3, 3, {{0, 1, 2}, {1, 2, 2}});
  NormalizedGraph r = normalize_linear_graph(g);
  CHECK(r.graph == path_graph(3, 3));
  CHECK(r.log == std::vector<MultiplicationStep>{{1, 2}});

  // Brute force: some choice of multipliers on vertices 1 and 2 reaches the path.
  bool found = false;
  for (int b1 = 1; b1 < 3; ++b1) {
    for (int b2 = 1; b2 < 3; ++b2) {
      Multigraph h = vertex_multiplication(vertex_multiplication(g, 1, b1).graph, 2, b2).graph;
      found = found || h == path_graph(3, 3);
    }
  }
  CHECK(found);

  NormalizedGraph same = normalize_linear_graph(path_graph(4, 5));
  CHECK(same.log.empty());
  CHECK(same.graph == path_graph(4, 5));
}

TEST_CASE("Normalization replays and stays within N - 1 steps") {
  std::mt19937 rng(3);
  for (int d : {2, 3, 5, 7}) {
    for (int trial = 0; trial < 40; ++trial) {
      int n = 2 + static_cast<int>(rng() % 6);
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      Multigraph g(n, d);
      for (int k = 0; k + 1 < n; ++k) g.set_weight(perm[k], perm[k + 1], 1 + static_cast<int>(rng() % (d - 1)));
      NormalizedGraph r = normalize_linear_graph(g);
      REQUIRE(static_cast<int>(r.log.size()) <= n - 1);
      for (const Edge& e : r.graph.edges()) REQUIRE(e.w == 1);
      REQUIRE(r.graph.edges().size() == g.edges().size());
      Multigraph replay = g;
      for (const MultiplicationStep& s : r.log) replay = vertex_multiplication(replay, s.vertex, s.factor).graph;
      REQUIRE(replay == r.graph);
    }
  }
}

TEST_CASE("Normalization preconditions") {
  CHECK(kind_of([] { normalize_linear_graph(path_graph(3, 4)); }) == ErrorKind::NonPrimeDimension);
  CHECK(kind_of([] { normalize_linear_graph(new_multigraph(4, 3, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}})); }) ==
        ErrorKind::NotLinear);
  CHECK(kind_of([] { normalize_linear_graph(new_multigraph(3, 3, {{0, 1, 1}})); }) == ErrorKind::NotLinear);
}
