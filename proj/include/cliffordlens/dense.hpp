// Copyright 2026 The cliffordlens Authors
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
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "cliffordlens/clifford.hpp"
#include "cliffordlens/errors.hpp"
#include "cliffordlens/pauli.hpp"
#include "cliffordlens/random.hpp"

namespace cliffordlens {

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxStateQubits = 12;
inline constexpr std::size_t kMaxOperatorQubits = 10;

namespace detail {

inline void check_state_cap(std::size_t n) {
  if (n > kMaxStateQubits) {
    throw CapExceeded("state on " + std::to_string(n) + " qubits exceeds the " +
                      std::to_string(kMaxStateQubits) + "-qubit cap");
  }
}

inline void check_operator_cap(std::size_t n) {
  if (n > kMaxOperatorQubits) {
    throw CapExceeded("dense operator on " + std::to_string(n) + " qubits exceeds the " +
                      std::to_string(kMaxOperatorQubits) + "-qubit cap");
  }
}

// i^k for k mod 4.
inline cplx ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

}  // namespace detail

/// Pure state on n qubits. Basis index bit q is the value of qubit q.
class StateVector {
 public:
  StateVector() = default;

  /// Wraps amplitudes. With normalize set the vector is rescaled, otherwise
  /// its norm must be 1 within 1e-10.
  StateVector(std::size_t n, Eigen::VectorXcd amps, bool normalize = false) : n_(n), amps_(std::move(amps)) {
    detail::check_state_cap(n);
    if (static_cast<std::size_t>(amps_.size()) != (std::size_t{1} << n)) {
      throw DimensionError("amplitude vector length does not match 2^" + std::to_string(n));
    }
    const double nrm = amps_.norm();
    if (normalize) {
      if (nrm == 0.0) throw PreconditionError("cannot normalize the zero vector");
      amps_ /= nrm;
    } else if (std::abs(nrm - 1.0) > 1e-10) {
      throw PreconditionError("state is not normalized (norm " + std::to_string(nrm) + ")");
    }
  }

  static StateVector basis(std::size_t n, std::uint64_t index) {
    detail::check_state_cap(n);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(std::int64_t{1} << n);
    if (index >= (std::uint64_t{1} << n)) throw DimensionError("basis index out of range");
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(n, std::move(v));
  }

  static StateVector zero(std::size_t n) { return basis(n, 0); }

  /// |+>^n.
  static StateVector plus(std::size_t n) {
    detail::check_state_cap(n);
    const Eigen::Index d = Eigen::Index{1} << n;
    return StateVector(n, Eigen::VectorXcd::Constant(d, 1.0 / std::sqrt(double(d))));
  }

  /// (|0...0> + |1...1>)/sqrt(2).
  static StateVector ghz(std::size_t n) {
    detail::check_state_cap(n);
    if (n == 0) throw DimensionError("GHZ state needs at least one qubit");
    const Eigen::Index d = Eigen::Index{1} << n;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
    v(0) = v(d - 1) = 1.0 / std::sqrt(2.0);
    return StateVector(n, std::move(v));
  }

  /// Haar-random state from normalized complex Gaussians.
  static StateVector random(std::size_t n, Rng& rng) {
    detail::check_state_cap(n);
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(Eigen::Index{1} << n);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(g(rng), g(rng));
    return StateVector(n, std::move(v), true);
  }

  std::size_t n_qubits() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  cplx operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

  /// Mutable access for in-place kernels; callers must preserve the norm.
  Eigen::VectorXcd& mutable_amplitudes() { return amps_; }

  /// "index,re,im" rows with a header line.
  std::string to_csv() const {
    std::ostringstream os;
    os << "index,re,im\n";
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
      os << i << ',' << detail::format_double(amps_(i).real()) << ',' << detail::format_double(amps_(i).imag())
         << '\n';
    }
    return os.str();
  }

 private:
  std::size_t n_ = 0;
  Eigen::VectorXcd amps_;
};

/// |<a|b>|^2.
inline double fidelity(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionError("fidelity: size mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

/// a (x) b with a on the low qubits.
inline StateVector tensor(const StateVector& a, const StateVector& b) {
  const std::size_t n = a.n_qubits() + b.n_qubits();
  detail::check_state_cap(n);
  Eigen::VectorXcd v(Eigen::Index{1} << n);
  const Eigen::Index da = static_cast<Eigen::Index>(a.dim());
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(b.dim()); ++j) {
    v.segment(j * da, da) = a.amplitudes() * b.amplitudes()(j);
  }
  return StateVector(n, std::move(v), true);
}

/// Reorders qubits: qubit i of the result is qubit order[i] of psi.
inline StateVector permute_qubits(const StateVector& psi, std::span<const std::size_t> order) {
  const std::size_t n = psi.n_qubits();
  if (order.size() != n) throw DimensionError("permute_qubits: order has wrong length");
  std::vector<bool> used(n, false);
  for (std::size_t q : order) {
    if (q >= n || used[q]) throw DimensionError("permute_qubits: not a permutation");
    used[q] = true;
  }
  Eigen::VectorXcd v(psi.amplitudes().size());
  for (std::uint64_t i = 0; i < psi.dim(); ++i) {
    std::uint64_t j = 0;
    for (std::size_t q = 0; q < n; ++q) j |= ((i >> order[q]) & 1u) << q;
    v(static_cast<Eigen::Index>(j)) = psi[i];
  }
  return StateVector(n, std::move(v), true);
}

/// Dense 2^n x 2^n matrix, n <= kMaxOperatorQubits.
class DenseOperator {
 public:
  DenseOperator() = default;
  DenseOperator(std::size_t n, Eigen::MatrixXcd m) : n_(n), m_(std::move(m)) {
    detail::check_operator_cap(n);
    const Eigen::Index d = Eigen::Index{1} << n;
    if (m_.rows() != d || m_.cols() != d) throw DimensionError("operator shape does not match 2^n");
  }

  static DenseOperator identity(std::size_t n) {
    detail::check_operator_cap(n);
    return DenseOperator(n, Eigen::MatrixXcd::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n));
  }

  static DenseOperator zero(std::size_t n) {
    detail::check_operator_cap(n);
    return DenseOperator(n, Eigen::MatrixXcd::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n));
  }

  static DenseOperator from_pauli(const PauliString& p) {
    const std::size_t n = p.n_qubits();
    detail::check_operator_cap(n);
    const Eigen::Index d = Eigen::Index{1} << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    const std::uint64_t xm = p.x_mask(), zm = p.z_mask();
    const cplx base = detail::ipow(p.phase() + static_cast<int>(p.y_count()));
    for (std::uint64_t i = 0; i < std::uint64_t(d); ++i) {
      const double s = (std::popcount(zm & i) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(i ^ xm), static_cast<Eigen::Index>(i)) = base * s;
    }
    return DenseOperator(n, std::move(m));
  }

  static DenseOperator from_pauli_sum(const PauliSumOperator& g) {
    const std::size_t n = g.n_qubits();
    detail::check_operator_cap(n);
    const Eigen::Index d = Eigen::Index{1} << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& [p, c] : g.terms()) {
      const std::uint64_t xm = p.x_mask(), zm = p.z_mask();
      const cplx base = c * detail::ipow(static_cast<int>(p.y_count()));
      for (std::uint64_t i = 0; i < std::uint64_t(d); ++i) {
        const double s = (std::popcount(zm & i) & 1) ? -1.0 : 1.0;
        m(static_cast<Eigen::Index>(i ^ xm), static_cast<Eigen::Index>(i)) += base * s;
      }
    }
    return DenseOperator(n, std::move(m));
  }

  /// |psi><psi|.
  static DenseOperator projector(const StateVector& psi) {
    return DenseOperator(psi.n_qubits(), psi.amplitudes() * psi.amplitudes().adjoint());
  }

  std::size_t n_qubits() const { return n_; }
  Eigen::Index dim() const { return m_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return m_; }

  bool is_hermitian(double tol = 1e-12) const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }

  cplx trace() const { return m_.trace(); }

  friend DenseOperator operator+(const DenseOperator& a, const DenseOperator& b) {
    return DenseOperator(a.n_, a.m_ + b.m_);
  }
  friend DenseOperator operator-(const DenseOperator& a, const DenseOperator& b) {
    return DenseOperator(a.n_, a.m_ - b.m_);
  }
  friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
    return DenseOperator(a.n_, a.m_ * b.m_);
  }
  friend DenseOperator operator*(cplx s, const DenseOperator& a) { return DenseOperator(a.n_, s * a.m_); }

 private:
  std::size_t n_ = 0;
  Eigen::MatrixXcd m_;
};

/// a (x) b on dense matrices with a on the low qubits.
inline Eigen::MatrixXcd kron_low(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return Eigen::kroneckerProduct(b, a).eval();
}

/// P|psi> for a Pauli word (phase included), unnormalized kernel.
inline Eigen::VectorXcd apply_pauli(const PauliString& p, const Eigen::VectorXcd& v) {
  const std::uint64_t xm = p.x_mask(), zm = p.z_mask();
  const cplx base = detail::ipow(p.phase() + static_cast<int>(p.y_count()));
  Eigen::VectorXcd out(v.size());
  for (std::uint64_t i = 0; i < std::uint64_t(v.size()); ++i) {
    const double s = (std::popcount(zm & i) & 1) ? -1.0 : 1.0;
    out(static_cast<Eigen::Index>(i ^ xm)) = base * s * v(static_cast<Eigen::Index>(i));
  }
  return out;
}

/// G|psi> for a Pauli sum; the result is not normalized.
inline Eigen::VectorXcd apply_pauli_sum(const PauliSumOperator& g, const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  for (const auto& [p, c] : g.terms()) out += c * apply_pauli(p, v);
  return out;
}

inline double expectation(const StateVector& psi, const PauliSumOperator& o) {
  if (o.n_qubits() != psi.n_qubits()) throw DimensionError("expectation: size mismatch");
  return psi.amplitudes().dot(apply_pauli_sum(o, psi.amplitudes())).real();
}

inline double expectation(const StateVector& psi, const DenseOperator& o) {
  if (o.n_qubits() != psi.n_qubits()) throw DimensionError("expectation: size mismatch");
  if (!o.is_hermitian(1e-10)) throw NonHermitian("expectation of a non-Hermitian operator");
  return psi.amplitudes().dot(o.matrix() * psi.amplitudes()).real();
}

/// exp(-i theta G)|psi>. Commuting Pauli sums use the exact product of
/// cos(theta c) - i sin(theta c) P factors; others use a dense exponential.
inline StateVector evolve_phase(const StateVector& psi, const PauliSumOperator& g, double theta) {
  if (g.n_qubits() != psi.n_qubits()) throw DimensionError("evolve_phase: size mismatch");
  if (!std::isfinite(theta)) throw PreconditionError("evolve_phase: theta must be finite");
  Eigen::VectorXcd v = psi.amplitudes();
  if (g.terms_commute()) {
    for (const auto& [p, c] : g.terms()) {
      const double a = theta * c;
      v = std::cos(a) * v - cplx(0, std::sin(a)) * apply_pauli(p, v);
    }
  } else {
    const DenseOperator gd = DenseOperator::from_pauli_sum(g);
    const Eigen::MatrixXcd u = (cplx(0, -theta) * gd.matrix()).exp();
    v = u * v;
  }
  return StateVector(psi.n_qubits(), std::move(v), true);
}

/// exp(-i theta G)|psi> for a dense Hermitian G.
inline StateVector evolve_phase(const StateVector& psi, const DenseOperator& g, double theta) {
  if (g.n_qubits() != psi.n_qubits()) throw DimensionError("evolve_phase: size mismatch");
  if (!g.is_hermitian(1e-10)) throw NonHermitian("evolve_phase: generator is not Hermitian");
  const Eigen::MatrixXcd u = (cplx(0, -theta) * g.matrix()).exp();
  return StateVector(psi.n_qubits(), u * psi.amplitudes(), true);
}

/// Applies a 2x2 unitary to qubit q in place.
inline void apply_1q(Eigen::VectorXcd& v, const Eigen::Matrix2cd& u, std::size_t q) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  for (std::uint64_t i = 0; i < std::uint64_t(v.size()); ++i) {
    if (i & bit) continue;
    const Eigen::Index i0 = static_cast<Eigen::Index>(i), i1 = static_cast<Eigen::Index>(i | bit);
    const cplx a = v(i0), b = v(i1);
    v(i0) = u(0, 0) * a + u(0, 1) * b;
    v(i1) = u(1, 0) * a + u(1, 1) * b;
  }
}

inline void apply_cnot(Eigen::VectorXcd& v, std::size_t c, std::size_t t) {
  const std::uint64_t cb = std::uint64_t{1} << c, tb = std::uint64_t{1} << t;
  for (std::uint64_t i = 0; i < std::uint64_t(v.size()); ++i) {
    if ((i & cb) && !(i & tb)) std::swap(v(static_cast<Eigen::Index>(i)), v(static_cast<Eigen::Index>(i | tb)));
  }
}

inline void apply_gate(Eigen::VectorXcd& v, const Gate& g) {
  if (g.kind == GateKind::CNOT) apply_cnot(v, g.q0, g.q1);
  else apply_1q(v, detail::gate_matrix_1q(g.kind), g.q0);
}

inline StateVector apply_circuit(const StateVector& psi, const CliffordCircuit& c) {
  if (c.n_qubits() != psi.n_qubits()) throw DimensionError("apply_circuit: size mismatch");
  Eigen::VectorXcd v = psi.amplitudes();
  for (const Gate& g : c.gates()) apply_gate(v, g);
  return StateVector(psi.n_qubits(), std::move(v), true);
}

/// Applies the single-qubit unitary u to every qubit (u tensor n).
inline StateVector apply_collective(const StateVector& psi, const Eigen::Matrix2cd& u) {
  Eigen::VectorXcd v = psi.amplitudes();
  for (std::size_t q = 0; q < psi.n_qubits(); ++q) apply_1q(v, u, q);
  return StateVector(psi.n_qubits(), std::move(v), true);
}

inline Eigen::Matrix2cd t_gate_matrix() {
  Eigen::Matrix2cd t;
  t << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4);
  return t;
}

/// Dense unitary of a circuit (n <= kMaxOperatorQubits).
inline DenseOperator circuit_unitary(const CliffordCircuit& c) {
  const std::size_t n = c.n_qubits();
  detail::check_operator_cap(n);
  const Eigen::Index d = Eigen::Index{1} << n;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(d, d);
  for (Eigen::Index col = 0; col < d; ++col) {
    Eigen::VectorXcd v = u.col(col);
    for (const Gate& g : c.gates()) apply_gate(v, g);
    u.col(col) = v;
  }
  return DenseOperator(n, std::move(u));
}

/// Tensor power u^{(x) n} as a dense matrix.
inline Eigen::MatrixXcd tensor_power(const Eigen::MatrixXcd& u, std::size_t n) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (std::size_t i = 0; i < n; ++i) out = kron_low(out, u);
  return out;
}

/// Splits psi across the cut between qubits [0, k) and [k, n). Returns the
/// factors when the reduced state's purity is at least 1 - tol.
inline std::optional<std::pair<StateVector, StateVector>> schmidt_factor_check(const StateVector& psi,
                                                                                std::size_t k,
                                                                                double tol = 1e-9) {
  const std::size_t n = psi.n_qubits();
  if (k == 0 || k >= n) throw DimensionError("schmidt_factor_check: cut must satisfy 0 < k < n");
  const Eigen::Index rows = Eigen::Index{1} << k, cols = Eigen::Index{1} << (n - k);
  Eigen::Map<const Eigen::MatrixXcd> m(psi.amplitudes().data(), rows, cols);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd s = svd.singularValues();
  double purity = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) purity += std::pow(s(i), 4);
  if (purity < 1.0 - tol) return std::nullopt;
  StateVector low(k, svd.matrixU().col(0), true);
  StateVector high(n - k, svd.matrixV().col(0).conjugate(), true);
  return std::make_pair(std::move(low), std::move(high));
}

/// Reduced density matrix on the listed qubits (in list order).
inline Eigen::MatrixXcd reduced_density(const StateVector& psi, std::span<const std::size_t> keep) {
  std::vector<std::size_t> order(keep.begin(), keep.end());
  for (std::size_t q = 0; q < psi.n_qubits(); ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) order.push_back(q);
  }
  const StateVector p = permute_qubits(psi, order);
  const Eigen::Index rows = Eigen::Index{1} << keep.size();
  const Eigen::Index cols = static_cast<Eigen::Index>(p.dim()) / rows;
  Eigen::Map<const Eigen::MatrixXcd> m(p.amplitudes().data(), rows, cols);
  return m * m.adjoint();
}

/// Samples a computational-basis index from |amplitude|^2.
inline std::uint64_t sample_index(const StateVector& psi, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double r = u(rng);
  const auto& a = psi.amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    r -= std::norm(a(i));
    if (r < 0) return static_cast<std::uint64_t>(i);
  }
  // Rounding left a sliver; return the last index with nonzero weight.
  for (Eigen::Index i = a.size() - 1; i >= 0; --i) {
    if (std::norm(a(i)) > 0) return static_cast<std::uint64_t>(i);
  }
  return 0;
}

}  // namespace cliffordlens
