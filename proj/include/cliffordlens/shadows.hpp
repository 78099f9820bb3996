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

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "cliffordlens/clifford.hpp"
#include "cliffordlens/dense.hpp"
#include "cliffordlens/errors.hpp"
#include "cliffordlens/pauli.hpp"
#include "cliffordlens/random.hpp"

namespace cliffordlens {

/// One randomized-measurement round: the single-qubit Clifford index used on
/// each qubit, and either a bit string (character q is qubit q) or a real
/// ensemble readout.
struct ShadowRecord {
  std::vector<std::size_t> unitaries;
  std::variant<std::string, double> outcome;

  bool has_bits() const { return std::holds_alternative<std::string>(outcome); }
  const std::string& bits() const { return std::get<std::string>(outcome); }
  double value() const { return std::get<double>(outcome); }

  friend bool operator==(const ShadowRecord&, const ShadowRecord&) = default;
};

namespace detail {

// For single-qubit Clifford e, the signed Pauli U^dagger Z U that a
// computational-basis measurement after U reads out, as (axis, sign).
struct MeasuredAxis {
  char axis;
  int sign;
};

inline const std::vector<MeasuredAxis>& measured_axes() {
  static const std::vector<MeasuredAxis> table = [] {
    std::vector<MeasuredAxis> out;
    const Eigen::Matrix2cd z = detail::gate_matrix_1q(GateKind::Z);
    for (const auto& e : single_qubit_cliffords()) {
      const Eigen::Matrix2cd m = e.matrix.adjoint() * z * e.matrix;
      for (char a : {'X', 'Y', 'Z'}) {
        const double t = (detail::gate_matrix_1q(a == 'X' ? GateKind::X : a == 'Y' ? GateKind::Y : GateKind::Z) * m)
                             .trace()
                             .real() /
                         2.0;
        if (std::abs(std::abs(t) - 1.0) < 1e-12) {
          out.push_back({a, t > 0 ? 1 : -1});
          break;
        }
      }
    }
    return out;
  }();
  return table;
}

}  // namespace detail

/// Random Pauli-basis shadow: a uniformly random single-qubit Clifford on
/// every qubit, then one computational-basis sample.
inline ShadowRecord pauli_shadow_sample(const StateVector& psi, Rng& rng) {
  detail::check_state_cap(psi.n_qubits());
  const std::size_t n = psi.n_qubits();
  ShadowRecord r;
  r.unitaries.resize(n);
  Eigen::VectorXcd v = psi.amplitudes();
  const auto& table = single_qubit_cliffords();
  for (std::size_t q = 0; q < n; ++q) {
    r.unitaries[q] = random_single_qubit_clifford_index(rng);
    apply_1q(v, table[r.unitaries[q]].matrix, q);
  }
  const std::uint64_t idx = sample_index(StateVector(n, std::move(v), true), rng);
  std::string bits(n, '0');
  for (std::size_t q = 0; q < n; ++q) bits[q] = ((idx >> q) & 1u) ? '1' : '0';
  r.outcome = bits;
  return r;
}

/// Single-record estimate of a Pauli sum: each word contributes its
/// coefficient times prod_q 3 s_q (-1)^{b_q} when every support qubit was
/// measured along the word's axis, and 0 otherwise.
inline double pauli_shadow_single(const ShadowRecord& r, const PauliSumOperator& o) {
  if (!r.has_bits()) throw PreconditionError("Pauli shadow estimate needs bit-string records");
  const auto& bits = r.bits();
  if (bits.size() != o.n_qubits() || r.unitaries.size() != o.n_qubits()) {
    throw DimensionError("shadow record does not match the observable size");
  }
  const auto& axes = detail::measured_axes();
  double total = 0.0;
  for (const auto& [p, c] : o.terms()) {
    double v = c;
    for (std::size_t q = 0; q < p.n_qubits() && v != 0.0; ++q) {
      const char a = p.axis(q);
      if (a == 'I') continue;
      const auto& m = axes.at(r.unitaries[q]);
      if (m.axis != a) {
        v = 0.0;
      } else {
        v *= 3.0 * m.sign * (bits[q] == '1' ? -1.0 : 1.0);
      }
    }
    total += v;
  }
  return total;
}

struct ShadowEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  double single_shot_variance = 0.0;  // unbiased sample variance of one record
  std::size_t records = 0;
};

inline ShadowEstimate pauli_shadow_estimate(const std::vector<ShadowRecord>& records, const PauliSumOperator& o) {
  if (records.empty()) throw PreconditionError("pauli_shadow_estimate: no records");
  double mean = 0.0, m2 = 0.0;
  std::size_t count = 0;
  for (const auto& r : records) {
    const double x = pauli_shadow_single(r, o);
    ++count;
    const double delta = x - mean;
    mean += delta / double(count);
    m2 += delta * (x - mean);
  }
  ShadowEstimate e;
  e.estimate = mean;
  e.records = count;
  e.single_shot_variance = count > 1 ? m2 / double(count - 1) : 0.0;
  e.std_error = std::sqrt(e.single_shot_variance / double(count));
  return e;
}

/// Affine coefficients of the ensemble shadow channel
/// M(X) = c_identity tr(X) 1 + c_state X for a traceless observable.
struct ChannelCoefficients {
  double c_identity = 0.0;
  double c_state = 0.0;
  std::size_t dimension = 0;
};

inline ChannelCoefficients ensemble_channel_coeffs(const DenseOperator& o, std::size_t d) {
  if (d < 2) throw PreconditionError("ensemble channel needs d >= 2");
  if (static_cast<std::size_t>(o.dim()) != d) throw DimensionError("observable dimension does not match d");
  if (std::abs(o.trace()) > 1e-10) throw PreconditionError("ensemble channel observable must be traceless");
  const double tr2 = (o.matrix() * o.matrix()).trace().real();
  if (tr2 <= 0.0) throw PreconditionError("ensemble channel observable must be nonzero");
  const double dd = double(d);
  return {-tr2 / (dd * (dd * dd - 1.0)), tr2 / (dd * dd - 1.0), d};
}

/// Finite unitary ensemble with uniform weights.
struct UnitaryEnsemble {
  std::size_t dimension = 0;
  std::vector<Eigen::MatrixXcd> unitaries;
  std::string name;
};

/// The single-qubit Clifford group (d = 2) or the two-qubit Clifford group
/// (d = 4); both are unitary 2-designs.
inline UnitaryEnsemble clifford_ensemble(std::size_t d) {
  UnitaryEnsemble e;
  e.dimension = d;
  if (d == 2) {
    e.name = "clifford1";
    for (const auto& c : single_qubit_cliffords()) e.unitaries.emplace_back(c.matrix);
  } else if (d == 4) {
    e.name = "clifford2";
    for (const auto& m : two_qubit_clifford_matrices()) e.unitaries.emplace_back(m);
  } else {
    throw PreconditionError("Clifford ensembles are provided for d = 2 and d = 4");
  }
  return e;
}

/// Tensor products of single-qubit Cliffords on log2(d) qubits. Not a
/// 2-design for d > 2; kept to exercise the deficiency check.
inline UnitaryEnsemble local_clifford_ensemble(std::size_t qubits) {
  UnitaryEnsemble e;
  e.dimension = std::size_t{1} << qubits;
  e.name = "local_clifford";
  e.unitaries.emplace_back(Eigen::MatrixXcd::Identity(1, 1));
  for (std::size_t q = 0; q < qubits; ++q) {
    std::vector<Eigen::MatrixXcd> next;
    for (const auto& u : e.unitaries) {
      for (const auto& c : single_qubit_cliffords()) next.push_back(kron_low(u, c.matrix));
    }
    e.unitaries = std::move(next);
  }
  return e;
}

/// Exact average M(X) = E_U[tr(U X U^dagger O) U^dagger O U] as a d^2 x d^2
/// superoperator acting on column-stacked matrices.
inline Eigen::MatrixXcd ensemble_channel_superoperator(const DenseOperator& o, const UnitaryEnsemble& group) {
  const Eigen::Index d = o.dim();
  if (static_cast<std::size_t>(d) != group.dimension) throw DimensionError("ensemble and observable dimensions differ");
  if (d > 16) throw CapExceeded("exact ensemble averaging is limited to d <= 16");
  if (group.unitaries.empty()) throw PreconditionError("empty unitary ensemble");
  Eigen::MatrixXcd sup = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (const auto& u : group.unitaries) {
    const Eigen::MatrixXcd a = u.adjoint() * o.matrix() * u;
    // tr(U E_ij U^dagger O) = (U^dagger O U)_{ji}; column (i,j) of the
    // superoperator is vec(M(E_ij)).
    Eigen::Map<const Eigen::VectorXcd> va(a.data(), d * d);
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index i = 0; i < d; ++i) sup.col(i + d * j) += a(j, i) * va;
    }
  }
  sup /= double(group.unitaries.size());
  return sup;
}

/// Largest entrywise deviation of the ensemble channel from the affine form.
inline double design_residual(const DenseOperator& o, const UnitaryEnsemble& group) {
  const auto c = ensemble_channel_coeffs(o, group.dimension);
  const Eigen::MatrixXcd sup = ensemble_channel_superoperator(o, group);
  const Eigen::Index d = o.dim();
  Eigen::MatrixXcd want = c.c_state * Eigen::MatrixXcd::Identity(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) want(i + d * i, j + d * j) += c.c_identity;
  }
  return (sup - want).cwiseAbs().maxCoeff();
}

/// Applies the exact ensemble channel to rho. Throws DesignDeficiency when
/// the ensemble does not reproduce the affine form within 1e-6.
inline DenseOperator ensemble_channel_apply(const DenseOperator& rho, const DenseOperator& o,
                                            const UnitaryEnsemble& group) {
  if (rho.dim() != o.dim()) throw DimensionError("state and observable dimensions differ");
  const double res = design_residual(o, group);
  if (res > 1e-6) {
    throw DesignDeficiency("ensemble '" + group.name + "' is not a 2-design (residual " + std::to_string(res) + ")");
  }
  const Eigen::MatrixXcd sup = ensemble_channel_superoperator(o, group);
  const Eigen::Index d = o.dim();
  Eigen::Map<const Eigen::VectorXcd> vr(rho.matrix().data(), d * d);
  Eigen::VectorXcd out = sup * vr;
  return DenseOperator(rho.n_qubits(), Eigen::Map<Eigen::MatrixXcd>(out.data(), d, d));
}

/// M^{-1}(X) = (X - c_identity 1)/c_state for unit-trace preimages.
inline DenseOperator ensemble_channel_invert(const DenseOperator& x, const ChannelCoefficients& c) {
  if (c.c_state == 0.0) throw PreconditionError("ensemble channel is not invertible (c_state = 0)");
  const Eigen::Index d = x.dim();
  return DenseOperator(x.n_qubits(), (x.matrix() - c.c_identity * Eigen::MatrixXcd::Identity(d, d)) / c.c_state);
}

/// Single-shot ensemble shadow from readout <O>_U of U rho U^dagger:
/// M^{-1}(<O>_U U^dagger O U).
inline DenseOperator ensemble_shadow_snapshot(const Eigen::MatrixXcd& u, double readout, const DenseOperator& o,
                                              const ChannelCoefficients& c) {
  return ensemble_channel_invert(DenseOperator(o.n_qubits(), readout * (u.adjoint() * o.matrix() * u)), c);
}

// ----- Collective Clifford channel with S_z readout -----

inline constexpr std::size_t kMaxMoment2Qubits = 5;
inline constexpr std::size_t kMaxCollectiveQubits = 6;

namespace detail {

inline std::vector<Eigen::MatrixXcd> collective_unitaries(std::size_t n) {
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& c : single_qubit_cliffords()) out.push_back(tensor_power(c.matrix, n));
  return out;
}

}  // namespace detail

/// (1/3) sum_a S_a (x) S_a on 2n qubits (first copy on the low qubits).
inline DenseOperator collective_moment2_target(std::size_t n) {
  if (n > kMaxMoment2Qubits) throw CapExceeded("second moment limited to n <= 5");
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(Eigen::Index{1} << (2 * n), Eigen::Index{1} << (2 * n));
  for (char a : {'X', 'Y', 'Z'}) {
    const Eigen::MatrixXcd s = DenseOperator::from_pauli_sum(PauliSumOperator::collective(n, a)).matrix();
    sum += kron_low(s, s);
  }
  return DenseOperator(2 * n, sum / 3.0);
}

/// Omega2 = E_U[(U (x) U) (S_z (x) S_z) (U (x) U)^dagger] with U = u^{(x) n},
/// averaged exactly over the 24 single-qubit Cliffords.
inline DenseOperator collective_channel_moment2(std::size_t n) {
  if (n < 1) throw PreconditionError("n must be positive");
  if (n > kMaxMoment2Qubits) throw CapExceeded("second moment limited to n <= 5");
  const Eigen::MatrixXcd sz = DenseOperator::from_pauli_sum(PauliSumOperator::collective(n, 'Z')).matrix();
  const Eigen::Index d = Eigen::Index{1} << n;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (const auto& u : detail::collective_unitaries(n)) {
    const Eigen::MatrixXcd a = u * sz * u.adjoint();
    acc += kron_low(a, a);
  }
  return DenseOperator(2 * n, acc / 24.0);
}

/// Identity component tr(Omega)/d of a 2n-qubit operator.
inline double identity_component(const DenseOperator& op) { return op.trace().real() / double(op.dim()); }

/// Collective shadow channel with S_z readout:
/// M(X) = E_u[tr(U X U^dagger S_z) U^dagger S_z U], U = u^{(x) n}.
inline DenseOperator collective_channel_apply(const DenseOperator& x) {
  const std::size_t n = x.n_qubits();
  if (n > kMaxCollectiveQubits) throw CapExceeded("collective channel limited to n <= 6");
  const Eigen::MatrixXcd sz = DenseOperator::from_pauli_sum(PauliSumOperator::collective(n, 'Z')).matrix();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(x.dim(), x.dim());
  for (const auto& u : detail::collective_unitaries(n)) {
    const Eigen::MatrixXcd a = u.adjoint() * sz * u;
    // tr(U X U^dagger S_z) = tr(X a).
    out += (x.matrix() * a).trace() * a;
  }
  return DenseOperator(n, out / 24.0);
}

/// Degree-k collective test operator: S_z for k = 1, S_z^2 minus its
/// identity component for k = 2.
inline DenseOperator collective_polynomial(std::size_t k, std::size_t n) {
  const auto sz = PauliSumOperator::collective(n, 'Z');
  if (k == 1) return DenseOperator::from_pauli_sum(sz);
  if (k == 2) {
    PauliSumOperator sq = sz * sz;
    sq.add(PauliString(n), -sq.coefficient(PauliString(n)));
    return DenseOperator::from_pauli_sum(sq);
  }
  throw PreconditionError("collective eigenvalue available for k in {1, 2}");
}

/// Scale factor lambda with M(O) = lambda O under the collective channel.
/// Throws DiagonalityViolation when O is not an eigenoperator within 1e-8
/// (residual relative to the Frobenius norm of O).
inline double collective_scale_factor(const DenseOperator& o) {
  const double norm2 = (o.matrix().adjoint() * o.matrix()).trace().real();
  if (norm2 == 0.0) throw PreconditionError("collective scale factor of the zero operator");
  const DenseOperator m = collective_channel_apply(o);
  const double lambda = (o.matrix().adjoint() * m.matrix()).trace().real() / norm2;
  const double resid = (m.matrix() - lambda * o.matrix()).norm() / std::sqrt(norm2);
  if (resid > 1e-8) {
    throw DiagonalityViolation("operator is not an eigenoperator of the collective channel (residual " +
                               std::to_string(resid) + ")");
  }
  return lambda;
}

/// lambda_k for the degree-k collective polynomial. lambda_2 comes out as 0:
/// the channel's image is spanned by S_x, S_y, S_z.
inline double collective_channel_eigenvalue(std::size_t k, std::size_t n) {
  if (k != 1 && k != 2) throw PreconditionError("collective eigenvalue available for k in {1, 2}");
  if (n < 1) throw PreconditionError("n must be positive");
  if (n > kMaxCollectiveQubits) throw CapExceeded("collective eigenvalue limited to n <= 6");
  if (k == 2 && n < 2) throw PreconditionError("S_z^2 is proportional to the identity for n = 1");
  return collective_scale_factor(collective_polynomial(k, n));
}

/// n 2^{n-2}/3, the closed form of lambda_1 for the unnormalized S_z.
inline double collective_lambda1_closed_form(std::size_t n) {
  return double(n) * std::ldexp(1.0, static_cast<int>(n) - 2) / 3.0;
}

/// lambda_1 divided by the Hilbert-space dimension, n/12, which grows like n.
inline double collective_lambda1_trace_normalized(std::size_t n) {
  return collective_lambda1_closed_form(n) / std::ldexp(1.0, static_cast<int>(n));
}

/// Collective twirl E_u[u^{(x) m} X u^{(x) m dagger}] over the 24 Cliffords.
inline DenseOperator collective_twirl(const DenseOperator& x) {
  const std::size_t m = x.n_qubits();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(x.dim(), x.dim());
  for (const auto& c : single_qubit_cliffords()) {
    const Eigen::MatrixXcd u = tensor_power(c.matrix, m);
    out += u * x.matrix() * u.adjoint();
  }
  return DenseOperator(m, out / 24.0);
}

/// Tangent operator -i[G, rho0] of a pure unitary family at theta = 0.
inline DenseOperator tangent_operator(const StateVector& psi0, const PauliSumOperator& g) {
  const Eigen::MatrixXcd rho = psi0.amplitudes() * psi0.amplitudes().adjoint();
  const Eigen::MatrixXcd gm = DenseOperator::from_pauli_sum(g).matrix();
  return DenseOperator(psi0.n_qubits(), cplx(0, -1) * (gm * rho - rho * gm));
}

struct SufficiencyReport {
  double tangent_image_norm = 0.0;  // ||M(-i[G, rho0])||_F
  double two_twirl_norm = 0.0;      // ||Phi2(rho0 (x) rho0_dot)||_F
};

/// Metrological-sufficiency diagnostics for the collective S_z channel.
inline SufficiencyReport sufficiency_diagnostics(const StateVector& psi0, const PauliSumOperator& g) {
  const std::size_t n = psi0.n_qubits();
  if (n > 4) throw CapExceeded("sufficiency diagnostics limited to n <= 4 (two-copy operators)");
  const DenseOperator rhodot = tangent_operator(psi0, g);
  SufficiencyReport r;
  r.tangent_image_norm = collective_channel_apply(rhodot).matrix().norm();
  const Eigen::MatrixXcd rho = psi0.amplitudes() * psi0.amplitudes().adjoint();
  r.two_twirl_norm = collective_twirl(DenseOperator(2 * n, kron_low(rho, rhodot.matrix()))).matrix().norm();
  return r;
}

// ----- Sample complexity -----

struct SampleComplexityQuote {
  std::size_t k = 0;
  double op_norm = 0.0;
  double variance = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  double bound_hoeffding = 0.0;          // 2 4^{2k} ||L||^2 ln(2/delta) / eps^2
  double bound_variance_scaled = 0.0;    // 2 4^k ||L||^2 ln(2/delta) / (eta^2 var)
  double bound_variance_scaled_4_2k = 0.0;  // same with 4^{2k}
  double clifford_bound = 0.0;           // 3 tr(L^2)
};

inline SampleComplexityQuote sample_complexity(std::size_t k, double op_norm, double variance, double epsilon,
                                               double delta, double eta, double trace_l2 = 0.0) {
  if (!(op_norm > 0 && variance > 0 && epsilon > 0 && delta > 0 && eta > 0)) {
    throw PreconditionError("sample_complexity: inputs must be positive");
  }
  if (delta >= 1.0) throw PreconditionError("sample_complexity: delta must be below 1");
  if (trace_l2 < 0) throw PreconditionError("sample_complexity: tr(L^2) must be non-negative");
  SampleComplexityQuote q{k, op_norm, variance, epsilon, delta, eta};
  const double log_term = std::log(2.0 / delta);
  const double four_k = std::pow(4.0, double(k));
  q.bound_hoeffding = 2.0 * four_k * four_k * op_norm * op_norm * log_term / (epsilon * epsilon);
  q.bound_variance_scaled = 2.0 * four_k * op_norm * op_norm * log_term / (eta * eta * variance);
  q.bound_variance_scaled_4_2k = 2.0 * four_k * four_k * op_norm * op_norm * log_term / (eta * eta * variance);
  q.clifford_bound = 3.0 * trace_l2;
  return q;
}

/// Ratio of Hoeffding bounds before and after a lens: 4^{2(k_pre - k_post)}.
inline double lens_reduction_factor(std::size_t k_pre, std::size_t k_post) {
  return std::pow(4.0, 2.0 * (double(k_pre) - double(k_post)));
}

}  // namespace cliffordlens
