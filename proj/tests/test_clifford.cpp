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

#include <gtest/gtest.h>

#include <set>

#include "cliffordlens/clifford.hpp"
#include "cliffordlens/dense.hpp"
#include "oracle.hpp"

namespace cl = cliffordlens;

namespace {

// Dense unitary of a circuit built from oracle gate matrices.
Eigen::MatrixXcd oracle_unitary(const cl::CliffordCircuit& c) {
  const std::size_t n = c.n_qubits();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (const auto& g : c.gates()) {
    Eigen::MatrixXcd m;
    if (g.kind == cl::GateKind::CNOT) m = oracle::cnot(g.q0, g.q1, n);
    else m = oracle::embed1(oracle::gate2(cl::gate_name(g.kind)[0]), g.q0, n);
    u = m * u;
  }
  return u;
}

cl::CliffordCircuit random_circuit(std::size_t n, std::size_t len, cl::Rng& rng) {
  cl::CliffordCircuit c(n);
  std::uniform_int_distribution<int> kind(0, 5);
  std::uniform_int_distribution<std::size_t> q(0, n - 1);
  for (std::size_t i = 0; i < len; ++i) {
    const int k = kind(rng);
    if (k == 2 && n > 1) {
      std::size_t a = q(rng), b = q(rng);
      while (b == a) b = q(rng);
      c.cnot(a, b);
    } else if (k != 2) {
      c.append({static_cast<cl::GateKind>(k), q(rng), 0});
    }
  }
  return c;
}

}  // namespace

TEST(CliffordCircuit, InverseReversesAndInverts) {
  cl::CliffordCircuit c(3);
  c.h(0).s(1).cnot(0, 2).x(1);
  const auto inv = c.inverse();
  ASSERT_EQ(inv.size(), 6u);
  EXPECT_EQ(inv.gates()[0].kind, cl::GateKind::X);
  EXPECT_EQ(inv.gates()[1].kind, cl::GateKind::CNOT);
  for (int i = 2; i < 5; ++i) EXPECT_EQ(inv.gates()[i].kind, cl::GateKind::S);
  EXPECT_EQ(inv.gates()[5].kind, cl::GateKind::H);
  const Eigen::MatrixXcd prod = oracle_unitary(inv) * oracle_unitary(c);
  EXPECT_LT(oracle::max_abs(prod - Eigen::MatrixXcd::Identity(8, 8)), 1e-12);
}

TEST(CliffordCircuit, RejectsBadIndices) {
  cl::CliffordCircuit c(2);
  EXPECT_THROW(c.h(2), cl::DimensionError);
  EXPECT_THROW(c.cnot(1, 1), cl::DimensionError);
  EXPECT_THROW(c.cnot(0, 5), cl::DimensionError);
}

TEST(CliffordCircuit, TextRoundTrip) {
  cl::CliffordCircuit c(4);
  c.h(0).cnot(0, 3).s(2).y(1).z(3).x(0);
  const auto text = c.str();
  EXPECT_EQ(cl::CliffordCircuit::parse(text), c);
  const auto parsed = cl::CliffordCircuit::parse("H 0\n# a comment\nCNOT 0 3  # trailing\nS 2\n");
  EXPECT_EQ(parsed.n_qubits(), 4u);
  EXPECT_EQ(parsed.size(), 3u);
  EXPECT_THROW(cl::CliffordCircuit::parse("T 0\n"), cl::ParseError);
  EXPECT_THROW(cl::CliffordCircuit::parse("CNOT 0\n"), cl::ParseError);
  EXPECT_THROW(cl::CliffordCircuit::parse("H 0 1\n"), cl::ParseError);
  EXPECT_THROW(cl::CliffordCircuit::parse("# qubits 2\nH 3\n"), cl::DimensionError);
}

TEST(CliffordTableau, GateExamples) {
  auto t = cl::apply_gate(cl::CliffordTableau::zero_state(1), {cl::GateKind::H, 0, 0});
  EXPECT_EQ(t.stabilizers()[0].str(), "X");
  t = cl::apply_gate(t, {cl::GateKind::S, 0, 0});
  EXPECT_EQ(t.stabilizers()[0].str(), "Y");

  cl::CliffordCircuit bell(2);
  bell.h(0).cnot(0, 1);
  const auto tb = cl::apply_circuit(cl::CliffordTableau::zero_state(2), bell);
  std::set<std::string> stabs;
  for (const auto& s : tb.stabilizers()) stabs.insert(s.str());
  // Row 0 starts as Z0 and becomes X0X1; row 1 becomes Z0Z1.
  EXPECT_EQ(stabs, (std::set<std::string>{"XX", "ZZ"}));
  EXPECT_THROW(cl::apply_gate(cl::CliffordTableau::zero_state(2), {cl::GateKind::H, 4, 0}), cl::DimensionError);
}

TEST(CliffordTableau, PairingHoldsAfterEveryGate) {
  cl::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_circuit(5, 40, rng);
    auto t = cl::CliffordTableau::zero_state(5);
    for (const auto& g : c.gates()) {
      t.apply_gate_in_place(g);
      ASSERT_TRUE(t.symplectic_pairing_holds());
    }
  }
}

TEST(CliffordTableau, AgreesWithDenseStates) {
  cl::Rng rng(5);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto c = random_circuit(n, 30, rng);
      const auto t = cl::apply_circuit(cl::CliffordTableau::zero_state(n), c);
      const auto psi = cl::apply_circuit(cl::StateVector::zero(n), c);
      for (const auto& s : t.stabilizers()) {
        // Stabilizer eigenvalue +1 on the dense state.
        const Eigen::VectorXcd sp = cl::apply_pauli(s, psi.amplitudes());
        ASSERT_NEAR(std::norm(psi.amplitudes().dot(sp)), 1.0, 1e-12);
        ASSERT_NEAR(psi.amplitudes().dot(sp).real(), 1.0, 1e-12);
      }
    }
  }
}

TEST(ConjugatePauli, Examples) {
  cl::CliffordCircuit c(2);
  c.cnot(0, 1);
  EXPECT_EQ(cl::conjugate_pauli(c, cl::PauliString::parse("ZZ")).str(), "IZ");

  cl::Rng rng(1);
  const auto rc = random_circuit(3, 25, rng);
  EXPECT_EQ(cl::conjugate_pauli(rc, cl::PauliString(3)).str(), "III");

  cl::CliffordCircuit cascade(3);
  cascade.cnot(0, 1).cnot(0, 2);
  const auto img = cl::conjugate_pauli(cascade, cl::PauliString::parse("ZZZ"));
  const Eigen::MatrixXcd u = oracle_unitary(cascade);
  const Eigen::MatrixXcd dense = u * oracle::word_matrix("ZZZ") * u.adjoint();
  EXPECT_LT(oracle::max_abs(oracle::word_matrix(img.str()) - dense), 1e-12);
  // Odd-parity Z words are fixed by the cascade; even ones shrink.
  EXPECT_EQ(img.str(), "ZZZ");
  EXPECT_EQ(cl::conjugate_pauli(cascade, cl::PauliString::parse("ZZI")).str(), "IZI");
  EXPECT_EQ(cl::conjugate_pauli(cascade, cl::PauliString::parse("XII")).str(), "XXX");
  EXPECT_THROW(cl::conjugate_pauli(cascade, cl::PauliString(2)), cl::DimensionError);
}

TEST(ConjugatePauli, EveryGateMatchesDenseOnAllWords) {
  const std::size_t n = 2;
  std::vector<cl::Gate> gates = {{cl::GateKind::H, 0, 0}, {cl::GateKind::S, 1, 0}, {cl::GateKind::X, 0, 0},
                                 {cl::GateKind::Y, 1, 0}, {cl::GateKind::Z, 0, 0}, {cl::GateKind::CNOT, 0, 1},
                                 {cl::GateKind::CNOT, 1, 0}};
  for (const auto& g : gates) {
    cl::CliffordCircuit c(n);
    c.append(g);
    const Eigen::MatrixXcd u = oracle_unitary(c);
    for (std::uint64_t w = 0; w < 16; ++w) {
      for (const char* sign : {"", "-", "+i", "-i"}) {
        const std::string word = sign + oracle::word_from_index(w, n);
        const auto img = cl::conjugate_pauli(c, cl::PauliString::parse(word));
        const Eigen::MatrixXcd dense = u * oracle::word_matrix(word) * u.adjoint();
        ASSERT_LT(oracle::max_abs(oracle::word_matrix(img.str()) - dense), 1e-12)
            << cl::gate_name(g.kind) << " on " << word;
      }
    }
  }
}

TEST(ConjugatePauli, InverseIsExactInvolution) {
  cl::Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = random_circuit(6, 50, rng);
    for (std::uint64_t w = 1; w < 4096; w += 97) {
      auto p = cl::PauliString::parse(oracle::word_from_index(w, 6));
      p.set_phase(static_cast<int>(w % 4));
      ASSERT_EQ(cl::conjugate_pauli(c.inverse(), cl::conjugate_pauli(c, p)), p);
    }
  }
}

TEST(ConjugatePauliSum, Examples) {
  const auto g = cl::PauliSumOperator::parse("0.5*ZII + -0.25*XYZ + 1.5*YYI + 0.75*IXZ + -2*ZZZ");
  EXPECT_EQ(cl::conjugate_pauli_sum(cl::CliffordCircuit(3), g), g);

  cl::Rng rng(3);
  const auto c = random_circuit(3, 30, rng);
  const auto img = cl::conjugate_pauli_sum(c, g);
  EXPECT_EQ(img.size(), g.size());
  Eigen::MatrixXcd gd = Eigen::MatrixXcd::Zero(8, 8), id = Eigen::MatrixXcd::Zero(8, 8);
  for (const auto& [p, v] : g.terms()) gd += v * oracle::word_matrix(p.str());
  for (const auto& [p, v] : img.terms()) id += v * oracle::word_matrix(p.str());
  const Eigen::MatrixXcd u = oracle_unitary(c);
  EXPECT_LT(oracle::max_abs(id - u * gd * u.adjoint()), 1e-12);
  std::multiset<double> mags_in, mags_out;
  for (const auto& [p, v] : g.terms()) mags_in.insert(std::abs(v));
  for (const auto& [p, v] : img.terms()) mags_out.insert(std::abs(v));
  EXPECT_EQ(mags_in, mags_out);
}

TEST(SingleQubitCliffords, EnumerationHas24DistinctActions) {
  const auto& table = cl::single_qubit_cliffords();
  ASSERT_EQ(table.size(), 24u);
  EXPECT_EQ(table[0].label(), "I");
  std::set<std::string> actions;
  for (const auto& e : table) {
    actions.insert(e.image_x.str() + e.image_y.str() + e.image_z.str());
    // Signed permutation of the axes.
    std::set<char> axes;
    for (const auto* img : {&e.image_x, &e.image_y, &e.image_z}) {
      ASSERT_EQ(img->weight(), 1u);
      ASSERT_TRUE(img->is_hermitian());
      axes.insert(img->axis(0));
    }
    EXPECT_EQ(axes.size(), 3u);
    // The stored matrix realizes the stored action.
    for (char a : {'X', 'Y', 'Z'}) {
      const Eigen::Matrix2cd lhs = e.matrix * oracle::pauli2(a) * e.matrix.adjoint();
      ASSERT_LT(oracle::max_abs(oracle::word_matrix(e.image(a).str()) - lhs), 1e-12);
    }
    EXPECT_EQ(cl::single_qubit_clifford_index(e.label()), e.index);
  }
  EXPECT_EQ(actions.size(), 24u);
}

TEST(SingleQubitCliffords, UniformSampling) {
  cl::Rng rng(2024);
  const int draws = 24000;
  std::vector<int> counts(24, 0);
  for (int i = 0; i < draws; ++i) ++counts[cl::random_single_qubit_clifford_index(rng)];
  const double p = 1.0 / 24, mean = draws * p, sd = std::sqrt(draws * p * (1 - p));
  for (int c : counts) EXPECT_LT(std::abs(c - mean), 5 * sd);
  const auto c = cl::random_single_qubit_clifford(rng);
  EXPECT_EQ(c.n_qubits(), 1u);
}

TEST(TwoQubitCliffords, GroupOrder) {
  const auto& g = cl::two_qubit_clifford_matrices();
  EXPECT_EQ(g.size(), 11520u);
  for (std::size_t i = 0; i < g.size(); i += 997) {
    EXPECT_LT(oracle::max_abs(g[i] * g[i].adjoint() - Eigen::Matrix4cd::Identity()), 1e-12);
  }
}
