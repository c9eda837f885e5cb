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

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "gmnl/arith.hpp"
#include "gmnl/error.hpp"
#include "gmnl/multigraph.hpp"

namespace gmnl {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

constexpr std::uint64_t kMaxAmplitudes = std::uint64_t{1} << 22;
constexpr double kStateTol = 1e-9;

/** Primitive d-th root of unity raised to a real exponent. */
inline cplx omega(int d, double power = 1.0) {
  return std::polar(1.0, 2.0 * std::numbers::pi * power / d);
}

inline Matrix x_matrix(int d) {
  Matrix m = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) m((j + 1) % d, j) = 1.0;
  return m;
}

inline Matrix z_matrix(int d) {
  Matrix m = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) m(j, j) = omega(d, j);
  return m;
}

/** Normalized discrete Fourier matrix, F_ij = w^{ij} / sqrt(d). */
inline Matrix fourier(int d) {
  if (d < 2) throw Error(ErrorKind::BadDimension, "d must be at least 2");
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = omega(d, mod(static_cast<long long>(i) * j, d)) / std::sqrt(double(d));
  }
  return m;
}

/** diag(w^{j chi}) for a real exponent chi. */
inline Matrix phase_u(int d, double chi) {
  if (d < 2) throw Error(ErrorKind::BadDimension, "d must be at least 2");
  Matrix m = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) m(j, j) = omega(d, j * chi);
  return m;
}

/**
 * Unitary with O^d = 1. Outcome a labels the eigenvalue w^a; the
 * projectors are the discrete Fourier transform of the powers of O.
 */
class Observable {
 public:
  Observable() = default;

  explicit Observable(const Matrix& m) : mat_(m) {
    if (m.rows() != m.cols() || m.rows() < 2) {
      throw Error(ErrorKind::NotObservable, "matrix must be square with d >= 2");
    }
    d_ = static_cast<int>(m.rows());
    Matrix id = Matrix::Identity(d_, d_);
    if ((m.adjoint() * m - id).cwiseAbs().maxCoeff() > kStateTol) {
      throw Error(ErrorKind::NotObservable, "matrix is not unitary");
    }
    std::vector<Matrix> powers{id};
    for (int k = 1; k <= d_; ++k) powers.push_back(powers.back() * m);
    if ((powers[d_] - id).cwiseAbs().maxCoeff() > kStateTol) {
      throw Error(ErrorKind::NotObservable, "matrix power d is not the identity");
    }
    basis_ = Matrix::Zero(d_, d_);
    int col = 0;
    for (int a = 0; a < d_; ++a) {
      Matrix p = Matrix::Zero(d_, d_);
      for (int k = 0; k < d_; ++k) p += omega(d_, -a * k) * powers[k];
      p /= double(d_);
      proj_.push_back(p);
      Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (p + p.adjoint()));
      for (int c = 0; c < d_; ++c) {
        if (es.eigenvalues()(c) > 0.5) {
          if (col >= d_) throw Error(ErrorKind::NotObservable, "eigenspaces overlap");
          basis_.col(col) = es.eigenvectors().col(c);
          outcome_.push_back(a);
          ++col;
        }
      }
    }
    if (col != d_) throw Error(ErrorKind::NotObservable, "eigenspaces are incomplete");
  }

  int d() const { return d_; }
  const Matrix& matrix() const { return mat_; }
  const Matrix& projector(int a) const { return proj_.at(mod(a, d_)); }
  /** Orthonormal eigenbasis, one column per basis vector. */
  const Matrix& basis() const { return basis_; }
  /** Outcome exponent of basis column c. */
  int outcome_of(int c) const { return outcome_.at(c); }

 private:
  int d_ = 0;
  Matrix mat_;
  std::vector<Matrix> proj_;
  Matrix basis_;
  std::vector<int> outcome_;
};

inline Observable pauli_x(int d) { return Observable(x_matrix(d)); }
inline Observable pauli_z(int d) { return Observable(z_matrix(d)); }

/** Party index to observable; unlisted parties are not measured. */
using ObservableAssignment = std::map<int, Observable>;

/** Tensor product of single-site operators; unlisted sites carry identity. */
struct LocalOperator {
  int d = 2;
  std::map<int, Matrix> factors;
};

inline LocalOperator to_operator(int d, const ObservableAssignment& a) {
  LocalOperator op{d, {}};
  for (const auto& [p, o] : a) op.factors[p] = o.matrix();
  return op;
}

/** Normalized pure state of n qudits; party 0 is the most significant digit. */
class PureState {
 public:
  PureState() = default;

  PureState(int d, int n, Vector amp) : d_(d), n_(n), amp_(std::move(amp)) {
    check_size(d, n);
    if (static_cast<std::uint64_t>(amp_.size()) != ipow(d, n)) {
      throw Error(ErrorKind::BadDimension, "amplitude count must be d^n");
    }
    if (std::abs(amp_.norm() - 1.0) > kStateTol) {
      throw Error(ErrorKind::NotNormalized, "state norm deviates from 1");
    }
  }

  static void check_size(int d, int n) {
    if (d < 2) throw Error(ErrorKind::BadDimension, "d must be at least 2");
    if (n < 1) throw Error(ErrorKind::BadDimension, "need at least one party");
    double log_size = n * std::log2(double(d));
    if (log_size > 22.0 + 1e-12) {
      throw Error(ErrorKind::MemoryCap, "state exceeds 2^22 amplitudes");
    }
  }

  int d() const { return d_; }
  int n() const { return n_; }
  const Vector& amplitudes() const { return amp_; }

 private:
  int d_ = 2;
  int n_ = 0;
  Vector amp_;
};

/** Applies m to one site of an amplitude vector in place. */
inline void apply_site(Vector& amp, int d, int n, int site, const Matrix& m) {
  if (site < 0 || site >= n) throw Error(ErrorKind::IndexOutOfRange, "site " + std::to_string(site));
  if (m.rows() != d || m.cols() != d) throw Error(ErrorKind::BadDimension, "operator size");
  const std::uint64_t stride = ipow(d, n - 1 - site);
  const std::uint64_t block = stride * d;
  const std::uint64_t total = static_cast<std::uint64_t>(amp.size());
  Vector buf(d);
  for (std::uint64_t base = 0; base < total; base += block) {
    for (std::uint64_t off = 0; off < stride; ++off) {
      for (int k = 0; k < d; ++k) buf(k) = amp(base + off + k * stride);
      Vector r = m * buf;
      for (int k = 0; k < d; ++k) amp(base + off + k * stride) = r(k);
    }
  }
}

/** op|psi>, not renormalized. */
inline Vector apply(const PureState& psi, const LocalOperator& op) {
  Vector v = psi.amplitudes();
  for (const auto& [site, m] : op.factors) apply_site(v, psi.d(), psi.n(), site, m);
  return v;
}

/** Applies a product of single-site unitaries. */
inline PureState apply_unitary(const PureState& psi, const LocalOperator& op) {
  return PureState(psi.d(), psi.n(), apply(psi, op));
}

/** Multiplies by w^{w k_i k_j}, i.e. CZ^w between sites i and j. */
inline PureState apply_cz(const PureState& psi, int i, int j, int w = 1) {
  const int d = psi.d();
  const int n = psi.n();
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
    throw Error(ErrorKind::IndexOutOfRange, "controlled phase sites");
  }
  Vector v = psi.amplitudes();
  const std::uint64_t si = ipow(d, n - 1 - i);
  const std::uint64_t sj = ipow(d, n - 1 - j);
  for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(v.size()); ++idx) {
    int ki = static_cast<int>((idx / si) % d);
    int kj = static_cast<int>((idx / sj) % d);
    v(idx) *= omega(d, mod(static_cast<long long>(w) * ki * kj, d));
  }
  return PureState(d, n, v);
}

inline cplx overlap(const PureState& a, const PureState& b) {
  if (a.d() != b.d() || a.n() != b.n()) throw Error(ErrorKind::BadDimension, "state shapes differ");
  return a.amplitudes().dot(b.amplitudes());
}

/** |<a|b>| >= 1 - tol. */
inline bool equal_up_to_phase(const PureState& a, const PureState& b, double tol = kStateTol) {
  return std::abs(overlap(a, b)) >= 1.0 - tol;
}

inline cplx expectation(const PureState& psi, const LocalOperator& op) {
  return psi.amplitudes().dot(apply(psi, op));
}

inline cplx expectation(const PureState& psi, const ObservableAssignment& obs) {
  return expectation(psi, to_operator(psi.d(), obs));
}

/** Expectation in eta |psi><psi| + (1 - eta) 1 / d^n. */
inline cplx expectation_mixed(const PureState& psi, double eta, const LocalOperator& op) {
  cplx noise = 1.0;
  for (const auto& [site, m] : op.factors) noise *= m.trace() / double(psi.d());
  return eta * expectation(psi, op) + (1.0 - eta) * noise;
}

inline cplx expectation_mixed(const PureState& psi, double eta, const ObservableAssignment& obs) {
  return expectation_mixed(psi, eta, to_operator(psi.d(), obs));
}

/** Joint outcome distribution of the assigned parties, in ascending party order. */
struct OutcomeDistribution {
  int d = 2;
  std::vector<int> parties;
  /** Index is the outcome tuple read in base d, first party most significant. */
  std::vector<double> p;
};

inline OutcomeDistribution outcome_distribution(const PureState& psi, const ObservableAssignment& obs) {
  const int d = psi.d();
  const int n = psi.n();
  Vector v = psi.amplitudes();
  OutcomeDistribution out;
  out.d = d;
  for (const auto& [site, o] : obs) {
    if (o.d() != d) throw Error(ErrorKind::BadDimension, "observable dimension");
    apply_site(v, d, n, site, o.basis().adjoint());
    out.parties.push_back(site);
  }
  out.p.assign(ipow(d, out.parties.size()), 0.0);
  std::vector<std::uint64_t> stride;
  std::vector<const Observable*> ob;
  for (const auto& [site, o] : obs) {
    stride.push_back(ipow(d, n - 1 - site));
    ob.push_back(&o);
  }
  for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(v.size()); ++idx) {
    double w = std::norm(v(idx));
    if (w == 0.0) continue;
    std::uint64_t key = 0;
    for (size_t k = 0; k < stride.size(); ++k) {
      int c = static_cast<int>((idx / stride[k]) % d);
      key = key * d + ob[k]->outcome_of(c);
    }
    out.p[key] += w;
  }
  return out;
}

/** X_i prod_j Z_j^{adj[i][j]}. */
inline LocalOperator stabilizer_operator(const Multigraph& g, int i) {
  g.check_vertex(i);
  LocalOperator op{g.d(), {}};
  op.factors[i] = x_matrix(g.d());
  Matrix z = z_matrix(g.d());
  for (int j : neighbourhood(g, i)) {
    Matrix zp = Matrix::Identity(g.d(), g.d());
    for (int k = 0; k < g.weight(i, j); ++k) zp = zp * z;
    op.factors[j] = zp;
  }
  return op;
}

/** prod CZ^{adj} applied to (F|0>)^n. */
inline PureState graph_state(const Multigraph& g) {
  const int d = g.d();
  const int n = g.n();
  PureState::check_size(d, n);
  const std::uint64_t size = ipow(d, n);
  std::vector<Edge> edges = g.edges();
  Vector amp(size);
  const double norm = 1.0 / std::sqrt(double(size));
  std::vector<int> k(n);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    std::uint64_t r = idx;
    for (int p = n - 1; p >= 0; --p) {
      k[p] = static_cast<int>(r % d);
      r /= d;
    }
    long long phase = 0;
    for (const Edge& e : edges) phase += static_cast<long long>(e.w) * k[e.i] * k[e.j];
    amp(idx) = norm * omega(d, mod(phase, d));
  }
  PureState psi(d, n, amp);
  for (int i = 0; i < n; ++i) {
    Vector s = apply(psi, stabilizer_operator(g, i));
    if ((s - psi.amplitudes()).cwiseAbs().maxCoeff() > kStateTol) {
      throw Error(ErrorKind::Internal, "stabilizer check failed at vertex " + std::to_string(i));
    }
  }
  return psi;
}

inline PureState basis_superposition(int d, int n, const std::vector<std::pair<std::uint64_t, cplx>>& terms) {
  PureState::check_size(d, n);
  Vector amp = Vector::Zero(ipow(d, n));
  for (const auto& [idx, c] : terms) amp(idx) += c;
  return PureState(d, n, amp);
}

/** (|0000> + |0011> + |1100> - |1111>) / 2. */
inline PureState c4_state() {
  return basis_superposition(2, 4, {{0b0000, 0.5}, {0b0011, 0.5}, {0b1100, 0.5}, {0b1111, -0.5}});
}

inline PureState ghz_state(int n, int d) {
  PureState::check_size(d, n);
  std::vector<std::pair<std::uint64_t, cplx>> terms;
  std::uint64_t ones = 0;
  for (int p = 0; p < n; ++p) ones = ones * d + 1;
  for (int j = 0; j < d; ++j) terms.push_back({ones * j, 1.0 / std::sqrt(double(d))});
  return basis_superposition(d, n, terms);
}

/**
 * Local Cliffords realising local complementation at v on a qubit graph
 * state: exp(-i pi X / 4) on v, exp(i pi Z / 4) on each neighbour.
 */
inline LocalOperator lc_local_clifford_qubit(const Multigraph& g, int v) {
  if (g.d() != 2) throw Error(ErrorKind::BadDimension, "qubit graphs only");
  g.check_vertex(v);
  const double c = std::cos(std::numbers::pi / 4);
  const cplx i(0.0, 1.0);
  Matrix rx(2, 2);
  rx << c, -i * c, -i * c, c;
  Matrix rz = Matrix::Zero(2, 2);
  rz(0, 0) = std::exp(i * std::numbers::pi / 4.0);
  rz(1, 1) = std::exp(-i * std::numbers::pi / 4.0);
  LocalOperator op{2, {}};
  op.factors[v] = rx;
  for (int u : neighbourhood(g, v)) op.factors[u] = rz;
  return op;
}

}  // namespace gmnl
