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
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cliffordlens/clifford.hpp"
#include "cliffordlens/dense.hpp"
#include "cliffordlens/errors.hpp"
#include "cliffordlens/pauli.hpp"
#include "cliffordlens/sld.hpp"

namespace cliffordlens {

inline constexpr double kLensTolerance = 1e-9;

/// {0, +-0.05, +-0.1, 0.2, pi/7} radians.
inline std::vector<double> default_theta_grid() {
  return {0.0, 0.05, -0.05, 0.1, -0.1, 0.2, std::numbers::pi / 7.0};
}

/// A Clifford lens C for the protocol (psi0, G) together with the result of
/// checking, on a theta grid, that C exp(-i theta G)|psi0> factors as
/// |psi_theta^(k)> (x) |aux> with a fixed |aux>.
struct LensResult {
  CliffordCircuit circuit;
  std::vector<std::size_t> informative_qubits;
  std::size_t k = 0;
  StateVector probe_state;                 // psi0 on all n qubits
  PauliSumOperator generator;              // G on all n qubits
  StateVector informative_state;           // factor of C psi0 on the informative qubits
  std::optional<StateVector> aux_state;    // factor on the rest; empty when k = n
  PauliSumOperator effective_generator;    // G~ on the k informative qubits
  double generator_residual = 0.0;         // max_i ||A_i|aux> - lambda_i|aux>||
  bool verified = false;
  double residual = 1.0;                   // 1 - worst factorization fidelity over the grid
  double aux_fidelity_min = 0.0;           // worst fidelity of a grid point's aux factor with aux_state
  std::vector<double> theta_grid;
  double tolerance = kLensTolerance;

  std::size_t n_qubits() const { return circuit.n_qubits(); }

  /// Qubits of the register other than the informative ones, ascending.
  std::vector<std::size_t> aux_qubits() const {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < n_qubits(); ++q) {
      if (std::find(informative_qubits.begin(), informative_qubits.end(), q) == informative_qubits.end()) {
        out.push_back(q);
      }
    }
    return out;
  }

  /// Informative factor of the lensed state at theta: the normalized
  /// projection of C exp(-i theta G)|psi0> onto <aux|.
  StateVector informative_factor(double theta) const;

  /// SLD of the reduced protocol (informative_state, effective_generator).
  SldForm lensed_sld() const { return build_sld(informative_state, effective_generator); }
};

namespace detail {

// Qubit order with the informative qubits first (in the given order).
inline std::vector<std::size_t> informative_first(std::size_t n, const std::vector<std::size_t>& informative) {
  std::vector<std::size_t> order = informative;
  for (std::size_t q = 0; q < n; ++q) {
    if (std::find(informative.begin(), informative.end(), q) == informative.end()) order.push_back(q);
  }
  return order;
}

// (1 (x) <aux|) phi with phi already permuted so the k informative qubits
// are the low bits.
inline Eigen::VectorXcd project_aux(const StateVector& permuted, std::size_t k, const StateVector& aux) {
  const Eigen::Index rows = Eigen::Index{1} << k;
  const Eigen::Index cols = static_cast<Eigen::Index>(permuted.dim()) / rows;
  Eigen::Map<const Eigen::MatrixXcd> m(permuted.amplitudes().data(), rows, cols);
  return m * aux.amplitudes().conjugate();
}

}  // namespace detail

inline StateVector LensResult::informative_factor(double theta) const {
  StateVector phi = apply_circuit(evolve_phase(probe_state, generator, theta), circuit);
  if (!aux_state) return permute_qubits(phi, detail::informative_first(n_qubits(), informative_qubits));
  const StateVector permuted = permute_qubits(phi, detail::informative_first(n_qubits(), informative_qubits));
  return StateVector(k, detail::project_aux(permuted, k, *aux_state), true);
}

/// Effective generator obtained by grouping the terms of C G C^dagger by
/// their informative part and replacing each aux part A_i by
/// lambda_i = <aux|A_i|aux>. Also returns max_i ||A_i|aux> - lambda_i|aux>||,
/// which vanishes when |aux> is a joint eigenvector as required.
inline std::pair<PauliSumOperator, double> effective_generator(const PauliSumOperator& conjugated,
                                                               const std::vector<std::size_t>& informative,
                                                               const std::optional<StateVector>& aux) {
  const std::size_t n = conjugated.n_qubits();
  const std::size_t k = informative.size();
  std::vector<std::size_t> rest;
  for (std::size_t q = 0; q < n; ++q) {
    if (std::find(informative.begin(), informative.end(), q) == informative.end()) rest.push_back(q);
  }
  PauliSumOperator out(k);
  if (!aux) {
    for (const auto& [p, c] : conjugated.terms()) out.add(restrict_to(p, informative), c);
    return {out, 0.0};
  }
  std::map<PauliString, Eigen::VectorXcd> action;  // informative word -> A_i|aux>
  std::map<PauliString, double> lambda;
  for (const auto& [p, c] : conjugated.terms()) {
    const PauliString inf = restrict_to(p, informative).unsigned_word();
    const PauliString a = restrict_to(p, rest).unsigned_word();
    const Eigen::VectorXcd av = c * apply_pauli(a, aux->amplitudes());
    auto [it, fresh] = action.try_emplace(inf, av);
    if (!fresh) it->second += av;
    lambda[inf] += aux->amplitudes().dot(av).real();
  }
  double worst = 0.0;
  for (const auto& [inf, av] : action) {
    const double l = lambda[inf];
    worst = std::max(worst, (av - l * aux->amplitudes()).norm());
    out.add(inf, l);
  }
  out.prune(1e-14);
  return {out, worst};
}

/// Verifies that `circuit` lenses (psi0, g) onto `informative` over the
/// theta grid and fills in the factors and effective generator.
inline LensResult verify_lens(const StateVector& psi0, const PauliSumOperator& g, const CliffordCircuit& circuit,
                              std::vector<std::size_t> informative, std::vector<double> grid = default_theta_grid(),
                              double tol = kLensTolerance) {
  const std::size_t n = psi0.n_qubits();
  if (g.n_qubits() != n || circuit.n_qubits() != n) throw DimensionError("verify_lens: size mismatch");
  if (grid.empty()) throw PreconditionError("verify_lens: empty theta grid");
  for (std::size_t q : informative) {
    if (q >= n) throw DimensionError("verify_lens: informative qubit out of range");
  }
  if (informative.empty()) throw DegenerateProtocol("lens leaves no informative qubits; no phase can be read");
  LensResult r;
  r.circuit = circuit;
  r.informative_qubits = informative;
  r.k = informative.size();
  r.probe_state = psi0;
  r.generator = g;
  r.theta_grid = grid;
  r.tolerance = tol;

  const auto order = detail::informative_first(n, informative);
  const StateVector lensed = permute_qubits(apply_circuit(psi0, circuit), order);
  if (r.k == n) {
    r.informative_state = lensed;
  } else {
    auto f = schmidt_factor_check(lensed, r.k, 1.0);
    r.informative_state = f->first;
    r.aux_state = f->second;
  }

  const auto [geff, gres] = effective_generator(conjugate_pauli_sum(circuit, g), informative, r.aux_state);
  r.effective_generator = geff;
  r.generator_residual = gres;

  double worst = 0.0;
  double aux_min = 1.0;
  for (double theta : grid) {
    const StateVector phi = permute_qubits(apply_circuit(evolve_phase(psi0, g, theta), circuit), order);
    const StateVector expect_inf = evolve_phase(r.informative_state, r.effective_generator, theta);
    if (!r.aux_state) {
      worst = std::max(worst, 1.0 - fidelity(phi, expect_inf));
      continue;
    }
    const Eigen::VectorXcd proj = detail::project_aux(phi, r.k, *r.aux_state);
    const double weight = proj.squaredNorm();
    worst = std::max(worst, 1.0 - weight);
    if (weight > 0) {
      worst = std::max(worst, 1.0 - fidelity(StateVector(r.k, proj, true), expect_inf));
    }
    if (auto f = schmidt_factor_check(phi, r.k, 1.0)) aux_min = std::min(aux_min, fidelity(f->second, *r.aux_state));
  }
  r.residual = std::max(0.0, worst);
  r.aux_fidelity_min = r.aux_state ? aux_min : 1.0;
  r.verified = r.residual <= tol && (1.0 - r.aux_fidelity_min) <= tol;
  return r;
}

namespace detail {

inline CliffordCircuit cnot_cascade(std::size_t n) {
  CliffordCircuit c(n);
  for (std::size_t j = 1; j < n; ++j) c.cnot(0, j);
  return c;
}

}  // namespace detail

/// Ramsey lens for GHZ_n under S_z: CNOT(0 -> j) for j = 1..n-1.
inline LensResult ramsey_lens(std::size_t n, std::vector<double> grid = default_theta_grid(),
                              double tol = kLensTolerance) {
  if (n < 1) throw PreconditionError("ramsey_lens: n must be at least 1");
  detail::check_state_cap(n);
  return verify_lens(StateVector::ghz(n), PauliSumOperator::collective(n, 'Z'), detail::cnot_cascade(n), {0},
                     std::move(grid), tol);
}

/// One logical qubit in a stabilizer code.
struct StabilizerCodeSpec {
  std::size_t n_physical = 0;
  std::vector<PauliString> stabilizer_generators;
  PauliString logical_z;
  PauliString logical_x;

  /// Throws PreconditionError unless generators commute, both logicals
  /// commute with every generator, and the logicals anticommute.
  void validate() const {
    auto sized = [&](const PauliString& p) { return p.n_qubits() == n_physical; };
    if (!sized(logical_z) || !sized(logical_x)) throw DimensionError("code: logical operator has wrong size");
    for (std::size_t i = 0; i < stabilizer_generators.size(); ++i) {
      const auto& s = stabilizer_generators[i];
      if (!sized(s)) throw DimensionError("code: generator has wrong size");
      if (!s.is_hermitian()) throw PreconditionError("code: generator " + s.str() + " is not Hermitian");
      for (std::size_t j = i + 1; j < stabilizer_generators.size(); ++j) {
        if (!commutes(s, stabilizer_generators[j])) throw PreconditionError("code: generators do not commute");
      }
      if (!commutes(s, logical_z) || !commutes(s, logical_x)) {
        throw PreconditionError("code: logical operator does not commute with " + s.str());
      }
    }
    if (commutes(logical_z, logical_x)) throw PreconditionError("code: logical Z and X commute");
  }
};

/// Repetition code: generators Z_i Z_{i+1}, Z_L = Z_0, X_L = X^n.
inline StabilizerCodeSpec repetition_code(std::size_t n) {
  StabilizerCodeSpec c;
  c.n_physical = n;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    PauliString s(n);
    s.set_axis(i, 'Z');
    s.set_axis(i + 1, 'Z');
    c.stabilizer_generators.push_back(s);
  }
  c.logical_z = PauliString::single(n, 0, 'Z');
  c.logical_x = PauliString(n);
  for (std::size_t q = 0; q < n; ++q) c.logical_x.set_axis(q, 'X');
  return c;
}

/// Four-qubit surface-code block: |0>_L = (|0000> + |1111>)/sqrt2,
/// |1>_L = (|0101> + |1010>)/sqrt2 (character i of a ket is qubit i).
/// Stabilizers XXXX, Z0Z2, Z1Z3; Z_L = Z0Z1, X_L = X0X2.
inline StabilizerCodeSpec surface_code_block() {
  StabilizerCodeSpec c;
  c.n_physical = 4;
  c.stabilizer_generators = {PauliString::parse("XXXX"), PauliString::parse("ZIZI"), PauliString::parse("IZIZ")};
  c.logical_z = PauliString::parse("ZZII");
  c.logical_x = PauliString::parse("XIXI");
  return c;
}

/// Logical repetition code over n_logical surface-code blocks: block
/// stabilizers plus Z_L(b) Z_L(b+1); Z_L = Z_L(0), X_L = X_L on every block.
inline StabilizerCodeSpec surface_code_ghz(std::size_t n_logical) {
  if (n_logical < 1) throw PreconditionError("surface code needs at least one logical block");
  const std::size_t n = 4 * n_logical;
  const auto block = surface_code_block();
  auto place = [&](const PauliString& p, std::size_t b) {
    PauliString out(n);
    for (std::size_t q = 0; q < 4; ++q) out.set_axis(4 * b + q, p.axis(q));
    return out;
  };
  StabilizerCodeSpec c;
  c.n_physical = n;
  for (std::size_t b = 0; b < n_logical; ++b) {
    for (const auto& s : block.stabilizer_generators) c.stabilizer_generators.push_back(place(s, b));
  }
  for (std::size_t b = 0; b + 1 < n_logical; ++b) {
    c.stabilizer_generators.push_back(place(block.logical_z, b) * place(block.logical_z, b + 1));
  }
  c.logical_z = place(block.logical_z, 0);
  c.logical_x = PauliString(n);
  for (std::size_t b = 0; b < n_logical; ++b) c.logical_x = c.logical_x * place(block.logical_x, b);
  return c;
}

namespace detail {

// Encoder for one surface-code block: logical input on qubit `base`, the
// other three qubits of the block in |0>.
inline void append_block_encoder(CliffordCircuit& c, std::size_t base) {
  c.cnot(base, base + 2).h(base + 1).cnot(base + 1, base).cnot(base + 1, base + 2).cnot(base + 1, base + 3);
}

// Logical GHZ preparation without the initial Hadamard: fan out from qubit
// 0 to each block's qubit 0, then encode every block.
inline CliffordCircuit surface_ghz_encoder(std::size_t n_logical) {
  CliffordCircuit c(4 * n_logical);
  for (std::size_t b = 1; b < n_logical; ++b) c.cnot(0, 4 * b);
  for (std::size_t b = 0; b < n_logical; ++b) append_block_encoder(c, 4 * b);
  return c;
}

}  // namespace detail

/// Phase generator sum_b Z_L(b)/2 with Z_L(b) = Z_{4b} Z_{4b+1}.
inline PauliSumOperator surface_code_generator(std::size_t n_logical) {
  const std::size_t n = 4 * n_logical;
  PauliSumOperator g(n);
  for (std::size_t b = 0; b < n_logical; ++b) {
    PauliString p(n);
    p.set_axis(4 * b, 'Z');
    p.set_axis(4 * b + 1, 'Z');
    g.add(p, 0.5);
  }
  return g;
}

/// Logical GHZ state over surface-code blocks.
inline StateVector surface_code_ghz_state(std::size_t n_logical) {
  const std::size_t n = 4 * n_logical;
  detail::check_state_cap(n);
  CliffordCircuit prep(n);
  prep.h(0);
  prep.append(detail::surface_ghz_encoder(n_logical));
  return apply_circuit(StateVector::zero(n), prep);
}

/// Surface-code lens: decode every block, then undo the logical fan-out.
/// The total phase n_logical * theta lands on physical qubit 0.
inline LensResult surface_code_lens(std::size_t n_logical, std::vector<double> grid = default_theta_grid(),
                                    double tol = kLensTolerance) {
  if (n_logical < 1) throw PreconditionError("surface_code_lens: n_logical must be at least 1");
  const std::size_t n = 4 * n_logical;
  if (n > kMaxStateQubits) {
    throw CapExceeded("surface_code_lens: " + std::to_string(n) + " physical qubits exceed the verification cap");
  }
  return verify_lens(surface_code_ghz_state(n_logical), surface_code_generator(n_logical),
                     detail::surface_ghz_encoder(n_logical).inverse(), {0}, std::move(grid), tol);
}

/// Probe for the k-qubit magic protocol: T H on qubits 0..k-1, then the
/// CNOT fan-out from qubit 0.
inline StateVector magic_k_state(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) throw PreconditionError("magic_k: need 1 <= k <= n");
  detail::check_state_cap(n);
  Eigen::VectorXcd v = StateVector::zero(n).amplitudes();
  const Eigen::Matrix2cd th = t_gate_matrix() * detail::gate_matrix_1q(GateKind::H);
  for (std::size_t q = 0; q < k; ++q) apply_1q(v, th, q);
  for (std::size_t j = 1; j < n; ++j) apply_cnot(v, 0, j);
  return StateVector(n, std::move(v), true);
}

/// Lens for the magic-k protocol under S_z: the inverse of the fan-out.
/// The last n-k qubits disentangle and the phase lives on qubits 0..k-1.
inline LensResult magic_k_lens(std::size_t n, std::size_t k, std::vector<double> grid = default_theta_grid(),
                               double tol = kLensTolerance) {
  const StateVector psi0 = magic_k_state(n, k);
  std::vector<std::size_t> informative(k);
  for (std::size_t i = 0; i < k; ++i) informative[i] = i;
  return verify_lens(psi0, PauliSumOperator::collective(n, 'Z'), detail::cnot_cascade(n).inverse(),
                     std::move(informative), std::move(grid), tol);
}

/// Signed Pauli s from a stabilizer projector (1 + s)/2 given as a Pauli sum.
inline PauliString projector_stabilizer(const PauliSumOperator& proj) {
  const std::size_t n = proj.n_qubits();
  if (proj.size() != 2) throw UnsupportedProjector("projector is not of the form (1 + s)/2: " + proj.str());
  const double id = proj.coefficient(PauliString(n));
  if (std::abs(id - 0.5) > 1e-12) throw UnsupportedProjector("projector is not of the form (1 + s)/2: " + proj.str());
  for (const auto& [p, c] : proj.terms()) {
    if (p.is_identity_word()) continue;
    if (std::abs(std::abs(c) - 0.5) > 1e-12) {
      throw UnsupportedProjector("projector is not of the form (1 + s)/2: " + proj.str());
    }
    PauliString s = p;
    if (c < 0) s.set_phase(2);
    return s;
  }
  throw UnsupportedProjector("projector has no Pauli part");
}

/// Result of simultaneously mapping commuting stabilizers s_a to +Z_{p_a}.
struct StabilizerReduction {
  CliffordCircuit circuit;
  std::vector<std::size_t> pivots;    // p_a for each kept generator
  std::vector<std::size_t> free_qubits;
  std::vector<std::size_t> kept;      // indices of independent generators
};

namespace detail {

// GF(2) rank test: true when p is a product of the rows (ignoring signs).
inline bool in_span(std::vector<std::pair<std::vector<std::uint64_t>, std::size_t>>& basis, const PauliString& p) {
  // Rows stored as concatenated x|z bit vectors with their pivot bit.
  std::vector<std::uint64_t> v;
  for (auto w : p.x_words()) v.push_back(w);
  for (auto w : p.z_words()) v.push_back(w);
  for (const auto& [row, piv] : basis) {
    if ((v[piv >> 6] >> (piv & 63)) & 1u) {
      for (std::size_t i = 0; i < v.size(); ++i) v[i] ^= row[i];
    }
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i]) {
      const std::size_t piv = i * 64 + static_cast<std::size_t>(std::countr_zero(v[i]));
      // Keep the basis reduced with respect to the new pivot.
      for (auto& [row, rp] : basis) {
        if ((row[piv >> 6] >> (piv & 63)) & 1u) {
          for (std::size_t j = 0; j < v.size(); ++j) row[j] ^= v[j];
        }
      }
      basis.emplace_back(std::move(v), piv);
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Symplectic Gaussian elimination: finds a Clifford C with
/// C s_a C^dagger = +Z_{p_a} for every independent generator. Generators
/// must commute pairwise; dependent ones are dropped.
inline StabilizerReduction reduce_stabilizers(const std::vector<PauliString>& gens, std::size_t n) {
  StabilizerReduction red;
  red.circuit = CliffordCircuit(n);
  std::vector<std::pair<std::vector<std::uint64_t>, std::size_t>> basis;
  std::vector<bool> assigned(n, false);
  for (std::size_t a = 0; a < gens.size(); ++a) {
    if (gens[a].n_qubits() != n) throw DimensionError("stabilizer generator has wrong size");
    if (!gens[a].is_hermitian()) throw PreconditionError("stabilizer generator must be Hermitian");
    if (detail::in_span(basis, gens[a])) continue;
    red.kept.push_back(a);
    CliffordCircuit step(n);
    PauliString s = conjugate_pauli(red.circuit, gens[a]);
    // Make the free part Z-type.
    for (std::size_t q = 0; q < n; ++q) {
      if (assigned[q]) continue;
      const char ax = s.axis(q);
      if (ax == 'X') step.h(q);
      else if (ax == 'Y') step.s(q).h(q);
    }
    s = conjugate_pauli(step, s);
    std::size_t pivot = n;
    for (std::size_t q = n; q-- > 0;) {
      if (!assigned[q] && s.z(q)) {
        pivot = q;
        break;
      }
    }
    if (pivot == n) throw PreconditionError("stabilizer generators are dependent or inconsistent");
    for (std::size_t q = 0; q < n; ++q) {
      if (q != pivot && s.z(q)) step.cnot(q, pivot);
    }
    s = conjugate_pauli(step, conjugate_pauli(red.circuit, gens[a]));
    if (s.phase() == 2) step.x(pivot);
    red.circuit.append(step);
    assigned[pivot] = true;
    red.pivots.push_back(pivot);
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (!assigned[q]) red.free_qubits.push_back(q);
  }
  return red;
}

/// Lens from a family of commuting stabilizer projectors (1 + s_a)/2 that
/// fix psi0 and commute with G. The informative qubits are those left free
/// by the elimination.
inline LensResult commuting_projector_lens(const std::vector<PauliSumOperator>& projectors, const PauliSumOperator& g,
                                           const StateVector& psi0, std::vector<double> grid = default_theta_grid(),
                                           double tol = kLensTolerance) {
  const std::size_t n = psi0.n_qubits();
  if (g.n_qubits() != n) throw DimensionError("commuting_projector_lens: generator size mismatch");
  std::vector<PauliString> gens;
  for (const auto& p : projectors) {
    if (p.n_qubits() != n) throw DimensionError("commuting_projector_lens: projector size mismatch");
    gens.push_back(projector_stabilizer(p));
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (!commutes(gens[i], gens[j])) throw PreconditionError("projectors do not commute");
    }
  }
  for (const auto& s : gens) {
    const Eigen::VectorXcd sp = apply_pauli(s, psi0.amplitudes());
    if ((sp - psi0.amplitudes()).norm() > 1e-10) {
      throw PreconditionError("probe state is outside the joint +1 eigenspace of " + s.str());
    }
    for (const auto& [p, c] : g.terms()) {
      if (!commutes(p, s)) throw PreconditionError("generator does not preserve the code space of " + s.str());
    }
  }
  const auto red = reduce_stabilizers(gens, n);
  if (red.free_qubits.empty()) {
    throw DegenerateProtocol("code space is one-dimensional; it carries no phase");
  }
  return verify_lens(psi0, g, red.circuit, red.free_qubits, std::move(grid), tol);
}

/// Decoder for a one-logical-qubit code: maps the code space onto qubit 0
/// with Z_L -> Z_0 and X_L -> X_0 on code states.
inline CliffordCircuit synthesize_decoder(const StabilizerCodeSpec& code) {
  code.validate();
  const std::size_t n = code.n_physical;
  auto red = reduce_stabilizers(code.stabilizer_generators, n);
  if (red.free_qubits.size() != 1) {
    throw PreconditionError("code does not encode exactly one logical qubit (" +
                            std::to_string(red.free_qubits.size()) + " free qubits)");
  }
  const std::size_t f = red.free_qubits[0];
  const std::vector<std::size_t> fq = {f};
  // On code states every pivot is |0>, so only the free factor matters.
  const PauliString zl = restrict_to(conjugate_pauli(red.circuit, code.logical_z), fq);
  const PauliString xl = restrict_to(conjugate_pauli(red.circuit, code.logical_x), fq);
  const PauliString z = PauliString::parse("Z"), x = PauliString::parse("X");
  const SingleQubitClifford* fix = nullptr;
  for (const auto& e : single_qubit_cliffords()) {
    if (conjugate_pauli(e.circuit(), zl) == z && conjugate_pauli(e.circuit(), xl) == x) {
      fix = &e;
      break;
    }
  }
  if (!fix) throw PreconditionError("logical operators do not restrict to a Pauli pair on the free qubit");
  CliffordCircuit c = red.circuit;
  c.append(fix->circuit(n, f));
  if (f != 0) c.swap(f, 0);
  return c;
}

/// Checks C exp(-i theta Z_L)(a|phi0> + b|phi1>) = exp(-i theta Z)(a|0> + b|1>) (x) |aux>
/// on qubit 0 with a single |aux>, for the four amplitude pairs and every
/// theta in the grid.
inline bool verify_kickback(const CliffordCircuit& c, const StabilizerCodeSpec& code,
                            const std::vector<double>& grid = default_theta_grid(), double tol = kLensTolerance) {
  code.validate();
  const std::size_t n = code.n_physical;
  if (c.n_qubits() != n) throw DimensionError("verify_kickback: circuit size mismatch");
  detail::check_state_cap(n);
  // phi0: project a fixed generic state onto the +1 space of every
  // generator and of Z_L.
  Rng rng = make_rng(0x5eed, {n});
  Eigen::VectorXcd v = StateVector::random(n, rng).amplitudes();
  std::vector<PauliString> fix = code.stabilizer_generators;
  fix.push_back(code.logical_z);
  for (const auto& s : fix) v = 0.5 * (v + apply_pauli(s, v));
  if (v.norm() < 1e-8) throw PreconditionError("code space is empty");
  const StateVector phi0(n, v, true);
  const StateVector phi1(n, apply_pauli(code.logical_x, phi0.amplitudes()), true);

  PauliSumOperator p(n);
  p.add(code.logical_z, 1.0);
  const PauliSumOperator z1 = PauliSumOperator::parse("Z");
  const double r = 1.0 / std::sqrt(2.0);
  const std::vector<std::pair<cplx, cplx>> pairs = {{1, 0}, {0, 1}, {r, r}, {r, cplx(0, r)}};

  std::optional<StateVector> aux;
  for (const auto& [a, b] : pairs) {
    const StateVector in(n, a * phi0.amplitudes() + b * phi1.amplitudes(), true);
    Eigen::VectorXcd q(2);
    q << a, b;
    const StateVector q0(1, q, true);
    for (double theta : grid) {
      const StateVector out = apply_circuit(evolve_phase(in, p, theta), c);
      if (!aux) {
        if (n == 1) {
          aux = StateVector();
        } else {
          // <0| on qubit 0 picks out the aux factor of the (1, 0) case.
          Eigen::VectorXcd av(Eigen::Index{1} << (n - 1));
          for (Eigen::Index i = 0; i < av.size(); ++i) av(i) = out[static_cast<std::size_t>(2 * i)];
          if (av.norm() < 1e-6) return false;
          aux = StateVector(n - 1, av, true);
        }
      }
      const StateVector expect_q = evolve_phase(q0, z1, theta);
      const StateVector expect = n == 1 ? expect_q : tensor(expect_q, *aux);
      if (1.0 - fidelity(out, expect) > tol) return false;
    }
  }
  return true;
}

}  // namespace cliffordlens
