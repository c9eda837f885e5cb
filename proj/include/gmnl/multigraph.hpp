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
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "gmnl/arith.hpp"
#include "gmnl/error.hpp"

namespace gmnl {

struct Edge {
  int i;
  int j;
  int w = 1;
};

/**
 * Undirected multigraph over Z_d: symmetric adjacency with entries in
 * [0, d) and an empty diagonal.
 */
class Multigraph {
 public:
  Multigraph() = default;

  Multigraph(int n, int d) : n_(n), d_(d), adj_(static_cast<size_t>(n) * n, 0) {
    if (d < 2) throw Error(ErrorKind::BadDimension, "d must be at least 2");
    if (n < 1) throw Error(ErrorKind::BadDimension, "graph needs a vertex");
  }

  int n() const { return n_; }
  int d() const { return d_; }

  int weight(int i, int j) const {
    check_vertex(i);
    check_vertex(j);
    return adj_[idx(i, j)];
  }

  void set_weight(int i, int j, int w) {
    check_vertex(i);
    check_vertex(j);
    if (i == j) throw Error(ErrorKind::SelfLoop, "vertex " + std::to_string(i));
    adj_[idx(i, j)] = mod(w, d_);
    adj_[idx(j, i)] = mod(w, d_);
  }

  void add_weight(int i, int j, int w) { set_weight(i, j, weight(i, j) + w); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        if (adj_[idx(i, j)] != 0) out.push_back({i, j, adj_[idx(i, j)]});
      }
    }
    return out;
  }

  int degree(int v) const {
    int k = 0;
    for (int u = 0; u < n_; ++u) k += weight(v, u) != 0;
    return k;
  }

  bool operator==(const Multigraph& o) const {
    return n_ == o.n_ && d_ == o.d_ && adj_ == o.adj_;
  }

  void check_vertex(int v) const {
    if (v < 0 || v >= n_) {
      throw Error(ErrorKind::IndexOutOfRange, "vertex " + std::to_string(v));
    }
  }

 private:
  size_t idx(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }

  int n_ = 0;
  int d_ = 2;
  std::vector<int> adj_;
};

/** Builds a multigraph; repeated edges accumulate modulo d. */
inline Multigraph new_multigraph(int n, int d, const std::vector<Edge>& edges) {
  Multigraph g(n, d);
  for (const Edge& e : edges) {
    g.check_vertex(e.i);
    g.check_vertex(e.j);
    if (e.i == e.j) throw Error(ErrorKind::SelfLoop, "vertex " + std::to_string(e.i));
    g.add_weight(e.i, e.j, e.w);
  }
  return g;
}

inline std::vector<int> neighbourhood(const Multigraph& g, int v) {
  g.check_vertex(v);
  std::vector<int> out;
  for (int u = 0; u < g.n(); ++u) {
    if (g.weight(v, u) != 0) out.push_back(u);
  }
  return out;
}

inline bool is_connected(const Multigraph& g) {
  std::vector<bool> seen(g.n(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : neighbourhood(g, v)) {
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == g.n();
}

/** Path 0 - 1 - ... - (n-1) with unit weights. */
inline Multigraph path_graph(int n, int d = 2) {
  Multigraph g(n, d);
  for (int i = 0; i + 1 < n; ++i) g.set_weight(i, i + 1, 1);
  return g;
}

/**
 * Vertex order along a linear graph, starting from the endpoint with the
 * smaller index. Throws NotLinear otherwise.
 */
inline std::vector<int> linear_order(const Multigraph& g) {
  if (g.n() == 1) return {0};
  if (!is_connected(g) || static_cast<int>(g.edges().size()) != g.n() - 1) {
    throw Error(ErrorKind::NotLinear, "graph is not a path");
  }
  int start = -1;
  for (int v = 0; v < g.n(); ++v) {
    int k = g.degree(v);
    if (k > 2) throw Error(ErrorKind::NotLinear, "vertex of degree > 2");
    if (k == 1 && start < 0) start = v;
  }
  std::vector<int> order{start};
  int prev = -1;
  int cur = start;
  while (static_cast<int>(order.size()) < g.n()) {
    for (int u : neighbourhood(g, cur)) {
      if (u != prev) {
        prev = cur;
        cur = u;
        break;
      }
    }
    order.push_back(cur);
  }
  return order;
}

/** Spine position (1-based) and leg index (0 for the spine vertex itself). */
struct SpineLabel {
  int pos;
  int leg;
  bool operator==(const SpineLabel&) const = default;
  auto operator<=>(const SpineLabel&) const = default;
};

struct CaterpillarLabeling {
  std::vector<int> spine;
  std::vector<std::vector<int>> legs;
  std::map<int, SpineLabel> label;

  int L() const { return static_cast<int>(spine.size()); }
  int N() const { return static_cast<int>(label.size()); }

  std::vector<int> leg_counts() const {
    std::vector<int> out;
    for (const auto& l : legs) out.push_back(static_cast<int>(l.size()));
    return out;
  }

  /** Vertex carrying label [pos, leg]. */
  int vertex(int pos, int leg) const {
    if (pos < 1 || pos > L()) {
      throw Error(ErrorKind::IndexOutOfRange, "spine position " + std::to_string(pos));
    }
    if (leg == 0) return spine[pos - 1];
    const auto& l = legs[pos - 1];
    if (leg < 1 || leg > static_cast<int>(l.size())) {
      throw Error(ErrorKind::IndexOutOfRange, "leg " + std::to_string(leg));
    }
    return l[leg - 1];
  }
};

/**
 * Splits a caterpillar into its spine (longest induced path, both ends of
 * degree one) and legs. Among equally long spines the lexicographically
 * smallest vertex sequence wins.
 */
inline CaterpillarLabeling classify_caterpillar(const Multigraph& g) {
  if (!is_connected(g)) throw Error(ErrorKind::Disconnected, "graph is disconnected");
  const int n = g.n();
  if (static_cast<int>(g.edges().size()) != n - 1) {
    throw Error(ErrorKind::NotCaterpillar, "graph contains a cycle");
  }
  std::vector<int> spine;
  if (n == 1) {
    spine = {0};
  } else if (n == 2) {
    spine = {0, 1};
  } else {
    std::vector<bool> inner(n, false);
    for (int v = 0; v < n; ++v) inner[v] = g.degree(v) >= 2;
    std::vector<int> ends;
    int inner_count = 0;
    for (int v = 0; v < n; ++v) {
      if (!inner[v]) continue;
      ++inner_count;
      int k = 0;
      for (int u : neighbourhood(g, v)) k += inner[u];
      if (k > 2) throw Error(ErrorKind::NotCaterpillar, "branching spine");
      if (k <= 1) ends.push_back(v);
    }
    std::vector<int> path{ends.front()};
    int prev = -1;
    while (static_cast<int>(path.size()) < inner_count) {
      int cur = path.back();
      int next = -1;
      for (int u : neighbourhood(g, cur)) {
        if (inner[u] && u != prev) next = u;
      }
      if (next < 0) throw Error(ErrorKind::NotCaterpillar, "spine is not a path");
      prev = cur;
      path.push_back(next);
    }
    auto smallest_leaf = [&](int v, int exclude) {
      for (int u : neighbourhood(g, v)) {
        if (!inner[u] && u != exclude) return u;
      }
      throw Error(ErrorKind::Internal, "spine end without a leaf");
    };
    auto candidate = [&](std::vector<int> p) {
      std::vector<int> s;
      int first = smallest_leaf(p.front(), -1);
      s.push_back(first);
      s.insert(s.end(), p.begin(), p.end());
      s.push_back(smallest_leaf(p.back(), first));
      return s;
    };
    std::vector<int> fwd = candidate(path);
    std::reverse(path.begin(), path.end());
    std::vector<int> bwd = candidate(path);
    spine = std::min(fwd, bwd);
  }

  CaterpillarLabeling lab;
  lab.spine = spine;
  std::vector<bool> on_spine(n, false);
  for (int v : spine) on_spine[v] = true;
  for (size_t p = 0; p < spine.size(); ++p) {
    lab.label[spine[p]] = {static_cast<int>(p) + 1, 0};
    std::vector<int> l;
    for (int u : neighbourhood(g, spine[p])) {
      if (!on_spine[u]) l.push_back(u);
    }
    for (size_t j = 0; j < l.size(); ++j) {
      if (g.degree(l[j]) != 1) throw Error(ErrorKind::NotCaterpillar, "leg of degree > 1");
      lab.label[l[j]] = {static_cast<int>(p) + 1, static_cast<int>(j) + 1};
    }
    lab.legs.push_back(std::move(l));
  }
  if (static_cast<int>(lab.label.size()) != n) {
    throw Error(ErrorKind::NotCaterpillar, "vertex at distance > 1 from the spine");
  }
  return lab;
}

/**
 * Caterpillar with spine vertices 0..L-1 followed by the legs of each
 * spine position in order. legs is empty or has one entry per position.
 */
inline Multigraph caterpillar_graph(int L, const std::vector<int>& legs, int d = 2) {
  if (L < 1) throw Error(ErrorKind::BadParameter, "spine length must be positive");
  std::vector<int> n_legs = legs.empty() ? std::vector<int>(L, 0) : legs;
  if (static_cast<int>(n_legs.size()) != L) {
    throw Error(ErrorKind::BadParameter, "legs must have one entry per spine position");
  }
  if (n_legs.front() != 0 || n_legs.back() != 0) {
    throw Error(ErrorKind::BadParameter, "spine ends carry no legs");
  }
  int n = L;
  for (int k : n_legs) {
    if (k < 0) throw Error(ErrorKind::BadParameter, "negative leg count");
    n += k;
  }
  Multigraph g(n, d);
  for (int i = 0; i + 1 < L; ++i) g.set_weight(i, i + 1, 1);
  int next = L;
  for (int p = 0; p < L; ++p) {
    for (int j = 0; j < n_legs[p]; ++j) g.set_weight(p, next++, 1);
  }
  return g;
}

/** Local complementation at v: adj[i][j] += adj[i][v] adj[j][v] for i != j. */
inline Multigraph local_complementation(const Multigraph& g, int v) {
  g.check_vertex(v);
  Multigraph out = g;
  for (int i = 0; i < g.n(); ++i) {
    for (int j = i + 1; j < g.n(); ++j) {
      int extra = g.weight(i, v) * g.weight(j, v);
      if (extra != 0) out.set_weight(i, j, g.weight(i, j) + extra);
    }
  }
  return out;
}

struct VertexMultiplication {
  Multigraph graph;
  /** False when gcd(b, d) != 1, i.e. the map is not invertible. */
  bool invertible;
};

/** Scales every edge at v by b. */
inline VertexMultiplication vertex_multiplication(const Multigraph& g, int v, int b) {
  g.check_vertex(v);
  if (b <= 0 || b >= g.d()) {
    throw Error(ErrorKind::BadFactor, "factor must lie in [1, d)");
  }
  Multigraph out = g;
  for (int u = 0; u < g.n(); ++u) {
    if (u != v) out.set_weight(u, v, g.weight(u, v) * b);
  }
  return {out, std::gcd(b, g.d()) == 1};
}

struct MultiplicationStep {
  int vertex;
  int factor;
  bool operator==(const MultiplicationStep&) const = default;
};

struct NormalizedGraph {
  Multigraph graph;
  std::vector<MultiplicationStep> log;
};

/**
 * Makes every edge of a linear graph unit weight by multiplying the path
 * vertices in order, skipping vertices whose incoming edge is already 1.
 */
inline NormalizedGraph normalize_linear_graph(const Multigraph& g) {
  if (!is_prime(g.d())) throw Error(ErrorKind::NonPrimeDimension, "d must be prime");
  std::vector<int> order = linear_order(g);
  NormalizedGraph out{g, {}};
  for (size_t k = 1; k < order.size(); ++k) {
    int w = out.graph.weight(order[k - 1], order[k]);
    if (w == 1) continue;
    int b = *mod_inverse(w, g.d());
    out.graph = vertex_multiplication(out.graph, order[k], b).graph;
    out.log.push_back({order[k], b});
  }
  return out;
}

}  // namespace gmnl
