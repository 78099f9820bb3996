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
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "cliffordlens/errors.hpp"
#include "cliffordlens/pauli.hpp"
#include "cliffordlens/random.hpp"

namespace cliffordlens {

enum class GateKind : std::uint8_t { H, S, CNOT, X, Y, Z };

inline const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::CNOT: return "CNOT";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
  }
  return "?";
}

struct Gate {
  GateKind kind = GateKind::H;
  std::size_t q0 = 0;  // target, or control for CNOT
  std::size_t q1 = 0;  // CNOT target

  bool two_qubit() const { return kind == GateKind::CNOT; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Conjugates p in place: p <- g p g^dagger, with exact sign.
inline void conjugate_in_place(PauliString& p, const Gate& g) {
  const std::size_t a = g.q0;
  switch (g.kind) {
    case GateKind::H: {
      const bool x = p.x(a), z = p.z(a);
      if (x && z) p.set_phase(p.phase() + 2);
      p.set_x(a, z);
      p.set_z(a, x);
      break;
    }
    case GateKind::S: {
      const bool x = p.x(a), z = p.z(a);
      if (x) {
        if (z) p.set_phase(p.phase() + 2);
        p.set_z(a, !z);
      }
      break;
    }
    case GateKind::CNOT: {
      const std::size_t t = g.q1;
      const bool xc = p.x(a), zc = p.z(a), xt = p.x(t), zt = p.z(t);
      if (xc && zt && !(xt ^ zc)) p.set_phase(p.phase() + 2);
      p.set_x(t, xt ^ xc);
      p.set_z(a, zc ^ zt);
      break;
    }
    case GateKind::X:
      if (p.z(a)) p.set_phase(p.phase() + 2);
      break;
    case GateKind::Y:
      if (p.x(a) ^ p.z(a)) p.set_phase(p.phase() + 2);
      break;
    case GateKind::Z:
      if (p.x(a)) p.set_phase(p.phase() + 2);
      break;
  }
}

/// Ordered gate list over {H, S, CNOT, X, Y, Z}; gates act left to right.
class CliffordCircuit {
 public:
  CliffordCircuit() = default;
  explicit CliffordCircuit(std::size_t n) : n_(n) {}

  std::size_t n_qubits() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  CliffordCircuit& append(Gate g) {
    check(g);
    gates_.push_back(g);
    return *this;
  }
  CliffordCircuit& append(const CliffordCircuit& other) {
    if (other.n_ != n_) throw DimensionError("circuit size mismatch in append");
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
  }

  CliffordCircuit& h(std::size_t q) { return append({GateKind::H, q, 0}); }
  CliffordCircuit& s(std::size_t q) { return append({GateKind::S, q, 0}); }
  CliffordCircuit& x(std::size_t q) { return append({GateKind::X, q, 0}); }
  CliffordCircuit& y(std::size_t q) { return append({GateKind::Y, q, 0}); }
  CliffordCircuit& z(std::size_t q) { return append({GateKind::Z, q, 0}); }
  CliffordCircuit& cnot(std::size_t c, std::size_t t) { return append({GateKind::CNOT, c, t}); }
  /// S^dagger as S S S.
  CliffordCircuit& sdg(std::size_t q) { return s(q).s(q).s(q); }
  /// SWAP as three CNOTs.
  CliffordCircuit& swap(std::size_t a, std::size_t b) { return cnot(a, b).cnot(b, a).cnot(a, b); }

  CliffordCircuit inverse() const {
    CliffordCircuit inv(n_);
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
      if (it->kind == GateKind::S) {
        inv.sdg(it->q0);
      } else {
        inv.gates_.push_back(*it);
      }
    }
    return inv;
  }

  /// Circuit text: a "# qubits N" header line, then one gate per line.
  std::string str() const {
    std::ostringstream os;
    os << "# qubits " << n_ << "\n";
    for (const Gate& g : gates_) {
      os << gate_name(g.kind) << ' ' << g.q0;
      if (g.two_qubit()) os << ' ' << g.q1;
      os << '\n';
    }
    return os.str();
  }

  /// Parses circuit text. Text after '#' is ignored except for an optional
  /// "# qubits N" header; without it (and without n) the width is inferred
  /// from the largest index.
  static CliffordCircuit parse(std::string_view text, std::optional<std::size_t> n = std::nullopt) {
    std::vector<Gate> gates;
    std::optional<std::size_t> declared = n;
    std::size_t max_index = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        std::istringstream cs(line.substr(hash + 1));
        std::string key;
        std::size_t val = 0;
        if (cs >> key >> val && key == "qubits" && !declared) declared = val;
        line.resize(hash);
      }
      std::istringstream ls(line);
      std::string name;
      if (!(ls >> name)) continue;
      Gate g;
      if (name == "H") g.kind = GateKind::H;
      else if (name == "S") g.kind = GateKind::S;
      else if (name == "CNOT" || name == "CX") g.kind = GateKind::CNOT;
      else if (name == "X") g.kind = GateKind::X;
      else if (name == "Y") g.kind = GateKind::Y;
      else if (name == "Z") g.kind = GateKind::Z;
      else throw ParseError("line " + std::to_string(lineno) + ": unknown gate '" + name + "'");
      long long a = -1, b = -1;
      if (!(ls >> a) || a < 0) throw ParseError("line " + std::to_string(lineno) + ": bad qubit index");
      g.q0 = static_cast<std::size_t>(a);
      if (g.two_qubit()) {
        if (!(ls >> b) || b < 0) throw ParseError("line " + std::to_string(lineno) + ": bad target index");
        g.q1 = static_cast<std::size_t>(b);
      }
      std::string extra;
      if (ls >> extra) throw ParseError("line " + std::to_string(lineno) + ": trailing text '" + extra + "'");
      max_index = std::max({max_index, g.q0 + 1, g.two_qubit() ? g.q1 + 1 : 0});
      gates.push_back(g);
    }
    CliffordCircuit c(declared ? *declared : max_index);
    for (const Gate& g : gates) c.append(g);
    return c;
  }

  friend bool operator==(const CliffordCircuit&, const CliffordCircuit&) = default;

 private:
  void check(const Gate& g) const {
    if (g.q0 >= n_ || (g.two_qubit() && g.q1 >= n_)) {
      throw DimensionError("gate " + std::string(gate_name(g.kind)) + " index out of range for " +
                           std::to_string(n_) + " qubits");
    }
    if (g.two_qubit() && g.q0 == g.q1) throw DimensionError("CNOT control equals target");
  }

  std::size_t n_ = 0;
  std::vector<Gate> gates_;
};

/// C p C^dagger for the unitary C of circuit c.
inline PauliString conjugate_pauli(const CliffordCircuit& c, PauliString p) {
  if (p.n_qubits() != c.n_qubits()) throw DimensionError("conjugate_pauli: size mismatch");
  for (const Gate& g : c.gates()) conjugate_in_place(p, g);
  return p;
}

inline PauliSumOperator conjugate_pauli_sum(const CliffordCircuit& c, const PauliSumOperator& g) {
  if (g.n_qubits() != c.n_qubits()) throw DimensionError("conjugate_pauli_sum: size mismatch");
  PauliSumOperator out(g.n_qubits());
  for (const auto& [p, coeff] : g.terms()) out.add(conjugate_pauli(c, p), coeff);
  return out;
}

/// Stabilizer tableau: n stabilizer rows and n destabilizer rows.
class CliffordTableau {
 public:
  CliffordTableau() = default;

  /// Tableau of |0...0>: stabilizers Z_i, destabilizers X_i.
  static CliffordTableau zero_state(std::size_t n) {
    CliffordTableau t;
    t.n_ = n;
    for (std::size_t i = 0; i < n; ++i) {
      t.stab_.push_back(PauliString::single(n, i, 'Z'));
      t.destab_.push_back(PauliString::single(n, i, 'X'));
    }
    return t;
  }

  std::size_t n_qubits() const { return n_; }
  const std::vector<PauliString>& stabilizers() const { return stab_; }
  const std::vector<PauliString>& destabilizers() const { return destab_; }

  void apply_gate_in_place(const Gate& g) {
    if (g.q0 >= n_ || (g.two_qubit() && (g.q1 >= n_ || g.q1 == g.q0))) {
      throw DimensionError("tableau gate index out of range");
    }
    for (auto& r : stab_) conjugate_in_place(r, g);
    for (auto& r : destab_) conjugate_in_place(r, g);
  }

  /// True when stabilizers commute pairwise, destabilizers commute pairwise,
  /// and destabilizer i anticommutes exactly with stabilizer i.
  bool symplectic_pairing_holds() const {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (j > i && !commutes(stab_[i], stab_[j])) return false;
        if (j > i && !commutes(destab_[i], destab_[j])) return false;
        if (commutes(destab_[i], stab_[j]) == (i == j)) return false;
      }
    }
    return true;
  }

  friend bool operator==(const CliffordTableau&, const CliffordTableau&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<PauliString> stab_;
  std::vector<PauliString> destab_;
};

inline CliffordTableau apply_gate(CliffordTableau t, const Gate& g) {
  t.apply_gate_in_place(g);
  return t;
}

inline CliffordTableau apply_circuit(CliffordTableau t, const CliffordCircuit& c) {
  if (c.n_qubits() != t.n_qubits()) throw DimensionError("tableau/circuit size mismatch");
  for (const Gate& g : c.gates()) t.apply_gate_in_place(g);
  return t;
}

namespace detail {

inline Eigen::Matrix2cd gate_matrix_1q(GateKind k) {
  using C = std::complex<double>;
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd m;
  switch (k) {
    case GateKind::H: m << r, r, r, -r; break;
    case GateKind::S: m << 1, 0, 0, C(0, 1); break;
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::Y: m << 0, C(0, -1), C(0, 1), 0; break;
    case GateKind::Z: m << 1, 0, 0, -1; break;
    default: throw PreconditionError("not a single-qubit gate");
  }
  return m;
}

}  // namespace detail

/// One element of the single-qubit Clifford group (modulo phase).
struct SingleQubitClifford {
  std::size_t index = 0;
  std::vector<GateKind> gates;  // canonical word over {H, S}, applied left to right
  PauliString image_x;          // U X U^dagger
  PauliString image_y;
  PauliString image_z;
  Eigen::Matrix2cd matrix;

  /// Gate word as "H;S"; the identity is "I".
  std::string label() const {
    if (gates.empty()) return "I";
    std::string s;
    for (std::size_t i = 0; i < gates.size(); ++i) {
      if (i) s += ';';
      s += gate_name(gates[i]);
    }
    return s;
  }

  CliffordCircuit circuit(std::size_t n = 1, std::size_t q = 0) const {
    CliffordCircuit c(n);
    for (GateKind k : gates) c.append({k, q, 0});
    return c;
  }

  /// Image of axis 'X', 'Y' or 'Z'.
  const PauliString& image(char axis) const {
    return axis == 'X' ? image_x : axis == 'Y' ? image_y : image_z;
  }
};

/// The 24 single-qubit Cliffords in canonical order: breadth-first over
/// words in {H, S}, deduplicated by conjugation action. Element 0 is the
/// identity.
inline const std::vector<SingleQubitClifford>& single_qubit_cliffords() {
  static const std::vector<SingleQubitClifford> table = [] {
    std::vector<SingleQubitClifford> out;
    std::map<std::string, bool> seen;
    std::vector<std::vector<GateKind>> frontier{{}};
    const PauliString X = PauliString::parse("X"), Y = PauliString::parse("Y"),
                      Z = PauliString::parse("Z");
    while (!frontier.empty()) {
      std::vector<std::vector<GateKind>> next;
      for (const auto& word : frontier) {
        CliffordCircuit c(1);
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
        for (GateKind k : word) {
          c.append({k, 0, 0});
          m = detail::gate_matrix_1q(k) * m;
        }
        PauliString ix = conjugate_pauli(c, X), iz = conjugate_pauli(c, Z);
        const std::string key = ix.str() + "|" + iz.str();
        if (seen.count(key)) continue;
        seen[key] = true;
        SingleQubitClifford e;
        e.index = out.size();
        e.gates = word;
        e.image_x = ix;
        e.image_y = conjugate_pauli(c, Y);
        e.image_z = iz;
        e.matrix = m;
        out.push_back(e);
        for (GateKind k : {GateKind::H, GateKind::S}) {
          auto w = word;
          w.push_back(k);
          next.push_back(std::move(w));
        }
      }
      frontier = std::move(next);
    }
    return out;
  }();
  return table;
}

/// Index into single_qubit_cliffords() for a label such as "H;S".
inline std::size_t single_qubit_clifford_index(std::string_view label) {
  for (const auto& e : single_qubit_cliffords()) {
    if (e.label() == label) return e.index;
  }
  throw ParseError("unknown single-qubit Clifford label '" + std::string(label) + "'");
}

/// Uniform index in [0, 24).
inline std::size_t random_single_qubit_clifford_index(Rng& rng) {
  std::uniform_int_distribution<std::size_t> dist(0, single_qubit_cliffords().size() - 1);
  return dist(rng);
}

/// Uniformly random single-qubit Clifford as a one-qubit circuit.
inline CliffordCircuit random_single_qubit_clifford(Rng& rng) {
  return single_qubit_cliffords()[random_single_qubit_clifford_index(rng)].circuit();
}

namespace detail {

// Matrix with the global phase fixed so the first entry of largest modulus
// is real positive, rounded into a hashable key.
inline std::string phase_canonical_key(const Eigen::Matrix4cd& m) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < 16; ++i) {
    if (std::abs(m.data()[i]) > std::abs(m.data()[best]) + 1e-9) best = i;
  }
  const std::complex<double> ph = std::conj(m.data()[best]) / std::abs(m.data()[best]);
  std::string key;
  key.reserve(16 * 8);
  for (std::size_t i = 0; i < 16; ++i) {
    const std::complex<double> v = m.data()[i] * ph;
    const long re = std::lround(v.real() * 1e6), im = std::lround(v.imag() * 1e6);
    key += std::to_string(re) + "," + std::to_string(im) + ";";
  }
  return key;
}

}  // namespace detail

/// The 11520 two-qubit Cliffords modulo phase, as 4x4 unitaries in the
/// little-endian basis (qubit 0 is the low index bit).
inline const std::vector<Eigen::Matrix4cd>& two_qubit_clifford_matrices() {
  static const std::vector<Eigen::Matrix4cd> table = [] {
    using M4 = Eigen::Matrix4cd;
    auto kron_low = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
      // a on qubit 0 (low bit), b on qubit 1.
      M4 out;
      for (int i1 = 0; i1 < 2; ++i1)
        for (int i0 = 0; i0 < 2; ++i0)
          for (int j1 = 0; j1 < 2; ++j1)
            for (int j0 = 0; j0 < 2; ++j0) out(i0 + 2 * i1, j0 + 2 * j1) = a(i0, j0) * b(i1, j1);
      return out;
    };
    const Eigen::Matrix2cd I = Eigen::Matrix2cd::Identity();
    const auto H = detail::gate_matrix_1q(GateKind::H);
    const auto S = detail::gate_matrix_1q(GateKind::S);
    M4 cnot = M4::Zero();
    for (int i = 0; i < 4; ++i) {
      const int j = (i & 1) ? (i ^ 2) : i;
      cnot(j, i) = 1;
    }
    const std::array<M4, 5> gens = {kron_low(H, I), kron_low(I, H), kron_low(S, I), kron_low(I, S), cnot};
    std::vector<M4> out;
    std::unordered_map<std::string, std::size_t> seen;
    out.push_back(M4::Identity());
    seen.emplace(detail::phase_canonical_key(out[0]), 0);
    for (std::size_t head = 0; head < out.size(); ++head) {
      for (const M4& g : gens) {
        M4 m = g * out[head];
        auto key = detail::phase_canonical_key(m);
        if (seen.emplace(std::move(key), out.size()).second) out.push_back(m);
      }
    }
    return out;
  }();
  return table;
}

}  // namespace cliffordlens
