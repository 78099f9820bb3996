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

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cliffordlens/dense.hpp"
#include "cliffordlens/errors.hpp"
#include "cliffordlens/pauli.hpp"

namespace cliffordlens {

inline constexpr std::size_t kMaxProfileQubits = 12;
inline constexpr std::size_t kFullPauliScanQubits = 6;

/// Rank-two SLD of a pure unitary family at theta = 0:
///   L = 2i sqrt(var) (|psi0><chi| - |chi><psi0|).
struct SldForm {
  StateVector psi0;
  StateVector chi;
  double var_g = 0.0;
  double theta_ref = 0.0;

  std::size_t n_qubits() const { return psi0.n_qubits(); }

  double qfi() const { return 4.0 * var_g; }

  /// (+2 sqrt(var), -2 sqrt(var)).
  std::pair<double, double> eigenvalues() const {
    const double e = 2.0 * std::sqrt(var_g);
    return {e, -e};
  }

  /// Eigenvector of L for eigenvalue sign * 2 sqrt(var):
  /// (|psi0> -+ i|chi>)/sqrt(2).
  StateVector eigenvector(int sign) const {
    const cplx s(0, sign >= 0 ? -1.0 : 1.0);
    return StateVector(n_qubits(), (psi0.amplitudes() + s * chi.amplitudes()) / std::sqrt(2.0), true);
  }

  DenseOperator dense() const {
    const auto& p = psi0.amplitudes();
    const auto& c = chi.amplitudes();
    const cplx f(0, 2.0 * std::sqrt(var_g));
    return DenseOperator(n_qubits(), f * (p * c.adjoint() - c * p.adjoint()));
  }
};

/// Variance of G on psi together with <G^2>, computed from G|psi>.
inline std::pair<double, double> generator_variance(const StateVector& psi, const PauliSumOperator& g) {
  if (g.n_qubits() != psi.n_qubits()) throw DimensionError("generator/state size mismatch");
  const Eigen::VectorXcd gpsi = apply_pauli_sum(g, psi.amplitudes());
  const double mean = psi.amplitudes().dot(gpsi).real();
  const double second = gpsi.squaredNorm();
  return {std::max(0.0, second - mean * mean), second};
}

namespace detail {

inline bool degenerate_variance(double var, double second) {
  return second == 0.0 || var <= 1e-12 * second;
}

}  // namespace detail

/// Builds the SLD of exp(-i theta G)|psi0> at theta = 0. Throws
/// DegenerateProtocol when psi0 is (numerically) an eigenstate of G.
inline SldForm build_sld(const StateVector& psi0, const PauliSumOperator& g) {
  if (g.n_qubits() != psi0.n_qubits()) throw DimensionError("build_sld: size mismatch");
  const Eigen::VectorXcd gpsi = apply_pauli_sum(g, psi0.amplitudes());
  const double mean = psi0.amplitudes().dot(gpsi).real();
  const double second = gpsi.squaredNorm();
  const double var = std::max(0.0, second - mean * mean);
  if (detail::degenerate_variance(var, second)) {
    throw DegenerateProtocol("generator has zero variance on the probe state; the SLD vanishes");
  }
  Eigen::VectorXcd chi = (gpsi - mean * psi0.amplitudes()) / std::sqrt(var);
  SldForm l{psi0, StateVector(psi0.n_qubits(), std::move(chi), true), var, 0.0};
  return l;
}

/// 4 Var(G) on psi0; 0 for eigenstates.
inline double qfi(const StateVector& psi0, const PauliSumOperator& g) {
  const auto [var, second] = generator_variance(psi0, g);
  if (detail::degenerate_variance(var, second)) return 0.0;
  return 4.0 * var;
}

/// (pi_+, pi_-): projectors onto the SLD eigenvectors with eigenvalues
/// +2 sqrt(var) and -2 sqrt(var).
inline std::pair<DenseOperator, DenseOperator> optimal_projectors(const SldForm& l) {
  return {DenseOperator::projector(l.eigenvector(+1)), DenseOperator::projector(l.eigenvector(-1))};
}

/// Classical Fisher information of a POVM on exp(-i theta G)|psi0>, by
/// central differences of the outcome probabilities. Outcomes with
/// probability below 1e-12 at theta are skipped.
inline double classical_fisher_information(const StateVector& psi0, const PauliSumOperator& g,
                                           const std::vector<DenseOperator>& povm, double theta = 0.0,
                                           double step = 1e-4) {
  auto probs = [&](double t) {
    const StateVector s = evolve_phase(psi0, g, t);
    std::vector<double> p;
    for (const auto& e : povm) p.push_back(s.amplitudes().dot(e.matrix() * s.amplitudes()).real());
    return p;
  };
  const auto p0 = probs(theta), pp = probs(theta + step), pm = probs(theta - step);
  double f = 0.0;
  for (std::size_t i = 0; i < p0.size(); ++i) {
    if (p0[i] < 1e-12) continue;
    const double d = (pp[i] - pm[i]) / (2.0 * step);
    f += d * d / p0[i];
  }
  return f;
}

struct QfiReport {
  double qfi = 0.0;
  std::pair<double, double> eigenvalues{0.0, 0.0};
  std::size_t max_pauli_weight = 0;
  /// weight -> sum of squared Pauli coefficients of that weight.
  std::map<std::size_t, double> weight_histogram;
  /// The two locality scales ln(n^2/3) and ln(n^2)/3.
  double locality_bound_clifford = 0.0;
  double locality_bound_pauli = 0.0;
};

namespace detail {

// In-place Walsh-Hadamard transform: out[z] = sum_i (-1)^{z.i} in[i].
inline void fwht(Eigen::VectorXcd& a) {
  const Eigen::Index n = a.size();
  for (Eigen::Index h = 1; h < n; h <<= 1) {
    for (Eigen::Index i = 0; i < n; i += h << 1) {
      for (Eigen::Index j = i; j < i + h; ++j) {
        const cplx u = a(j), v = a(j + h);
        a(j) = u + v;
        a(j + h) = u - v;
      }
    }
  }
}

}  // namespace detail

/// Calls fn(word, coefficient) for every Pauli word in the expansion
/// L = sum_P c_P P of the SLD with |c_P| > cutoff. Words are enumerated by
/// X pattern; for n > 6 only X patterns i ^ j with i, j in the joint
/// computational support of psi0 and chi are visited, which is exact for a
/// rank-two operator.
template <class Fn>
void for_each_sld_pauli_term(const SldForm& l, double cutoff, Fn&& fn) {
  const std::size_t n = l.n_qubits();
  if (n > kMaxProfileQubits) {
    throw CapExceeded("Pauli decomposition limited to " + std::to_string(kMaxProfileQubits) + " qubits");
  }
  const std::uint64_t d = std::uint64_t{1} << n;
  const auto& psi = l.psi0.amplitudes();
  const auto& chi = l.chi.amplitudes();

  std::vector<std::uint64_t> xs;
  if (n <= kFullPauliScanQubits) {
    for (std::uint64_t x = 0; x < d; ++x) xs.push_back(x);
  } else {
    std::vector<std::uint64_t> support;
    for (std::uint64_t i = 0; i < d; ++i) {
      if (std::abs(psi(Eigen::Index(i))) > 1e-15 || std::abs(chi(Eigen::Index(i))) > 1e-15) support.push_back(i);
    }
    std::set<std::uint64_t> seen;
    for (std::uint64_t a : support) {
      for (std::uint64_t b : support) seen.insert(a ^ b);
    }
    xs.assign(seen.begin(), seen.end());
  }

  const cplx pref = cplx(0, 2.0 * std::sqrt(l.var_g)) / double(d);
  Eigen::VectorXcd f(static_cast<Eigen::Index>(d));
  Eigen::VectorXcd g(static_cast<Eigen::Index>(d));
  for (std::uint64_t x : xs) {
    for (std::uint64_t i = 0; i < d; ++i) {
      f(Eigen::Index(i)) = std::conj(chi(Eigen::Index(i ^ x))) * psi(Eigen::Index(i));
      g(Eigen::Index(i)) = std::conj(psi(Eigen::Index(i ^ x))) * chi(Eigen::Index(i));
    }
    detail::fwht(f);
    detail::fwht(g);
    for (std::uint64_t z = 0; z < d; ++z) {
      // Unsigned word P = i^{|x&z|} X^x Z^z.
      const cplx c = pref * detail::ipow(std::popcount(x & z)) * (f(Eigen::Index(z)) - g(Eigen::Index(z)));
      if (std::abs(c) <= cutoff) continue;
      PauliString p(n);
      for (std::size_t q = 0; q < n; ++q) {
        p.set_x(q, (x >> q) & 1u);
        p.set_z(q, (z >> q) & 1u);
      }
      fn(p, c.real());
    }
  }
}

/// Pauli-weight diagnostics of an SLD (n <= 12).
inline QfiReport pauli_weight_profile(const SldForm& l) {
  QfiReport r;
  r.qfi = l.qfi();
  r.eigenvalues = l.eigenvalues();
  const double scale = std::max(1.0, 2.0 * std::sqrt(l.var_g));
  for_each_sld_pauli_term(l, 1e-10 * scale, [&](const PauliString& p, double c) {
    const std::size_t w = p.weight();
    r.weight_histogram[w] += c * c;
    r.max_pauli_weight = std::max(r.max_pauli_weight, w);
  });
  const double n2 = double(l.n_qubits()) * double(l.n_qubits());
  r.locality_bound_clifford = std::log(n2 / 3.0);
  r.locality_bound_pauli = std::log(n2) / 3.0;
  return r;
}

/// The SLD as a Pauli sum, dropping coefficients below cutoff.
inline PauliSumOperator sld_pauli_sum(const SldForm& l, double cutoff = 1e-12) {
  PauliSumOperator out(l.n_qubits());
  for_each_sld_pauli_term(l, cutoff, [&](const PauliString& p, double c) { out.add(p, c); });
  return out;
}

}  // namespace cliffordlens
