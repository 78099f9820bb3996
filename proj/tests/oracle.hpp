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

// Independent dense oracles shared by the unit tests. Nothing here calls the
// library's own dense conversion routines.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace oracle {

using cplx = std::complex<double>;

inline Eigen::Matrix2cd pauli2(char c) {
  Eigen::Matrix2cd m;
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m.setIdentity(); break;
  }
  return m;
}

// Matrix of a signed word such as "-iXYZ", qubit 0 on the least significant
// index bit.
inline Eigen::MatrixXcd word_matrix(const std::string& text) {
  cplx scalar = 1;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') scalar = -1;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    scalar *= cplx(0, 1);
    ++pos;
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (std::size_t q = pos; q < text.size(); ++q) {
    Eigen::MatrixXcd next = Eigen::kroneckerProduct(Eigen::MatrixXcd(pauli2(text[q])), m);
    m = next;
  }
  return scalar * m;
}

inline Eigen::Matrix2cd gate2(char g) {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd m;
  switch (g) {
    case 'H': m << r, r, r, -r; break;
    case 'S': m << 1, 0, 0, cplx(0, 1); break;
    default: m = pauli2(g); break;
  }
  return m;
}

// Single-qubit matrix u embedded on qubit q of n.
inline Eigen::MatrixXcd embed1(const Eigen::Matrix2cd& u, std::size_t q, std::size_t n) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::MatrixXcd f = (i == q) ? Eigen::MatrixXcd(u) : Eigen::MatrixXcd::Identity(2, 2);
    Eigen::MatrixXcd next = Eigen::kroneckerProduct(f, m);
    m = next;
  }
  return m;
}

// CNOT as the projector sum |0><0|_c (x) 1 + |1><1|_c (x) X_t.
inline Eigen::MatrixXcd cnot(std::size_t c, std::size_t t, std::size_t n) {
  Eigen::Matrix2cd p0, p1;
  p0 << 1, 0, 0, 0;
  p1 << 0, 0, 0, 1;
  return embed1(p0, c, n) + embed1(p1, c, n) * embed1(pauli2('X'), t, n);
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Every word of length n over {I,X,Y,Z}, enumerated in base 4.
inline std::string word_from_index(std::uint64_t idx, std::size_t n) {
  static const char kAxes[4] = {'I', 'X', 'Y', 'Z'};
  std::string s(n, 'I');
  for (std::size_t q = 0; q < n; ++q) {
    s[q] = kAxes[idx & 3];
    idx >>= 2;
  }
  return s;
}

// Permutation matrix sending qubit q to position perm[q].
inline Eigen::MatrixXcd qubit_permutation(const std::vector<std::size_t>& perm) {
  const std::size_t n = perm.size();
  const Eigen::Index d = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index b = 0; b < d; ++b) {
    Eigen::Index out = 0;
    for (std::size_t q = 0; q < n; ++q) {
      if ((b >> q) & 1) out |= Eigen::Index{1} << perm[q];
    }
    m(out, b) = 1;
  }
  return m;
}

}  // namespace oracle
