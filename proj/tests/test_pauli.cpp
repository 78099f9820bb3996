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

#include "cliffordlens/pauli.hpp"
#include "oracle.hpp"

namespace cl = cliffordlens;

namespace {

const char* kSigns[4] = {"", "+i", "-", "-i"};

std::string signed_word(std::uint64_t idx, std::size_t n, int phase) {
  return std::string(kSigns[phase]) + oracle::word_from_index(idx, n);
}

}  // namespace

TEST(PauliString, ParseAndPrint) {
  for (const char* s : {"XYZ", "-XYZ", "+iXYZ", "-iXYZ", "I", "IIZI"}) {
    EXPECT_EQ(cl::PauliString::parse(s).str(), s);
  }
  EXPECT_EQ(cl::PauliString::parse("+XX").str(), "XX");
  EXPECT_EQ(cl::PauliString::parse("iZ").phase(), 1);
  EXPECT_THROW(cl::PauliString::parse("XQ"), cl::ParseError);
  EXPECT_THROW(cl::PauliString::parse("-"), cl::ParseError);
  EXPECT_THROW(cl::PauliString::parse(""), cl::ParseError);
}

TEST(PauliString, IdentityIsCanonical) {
  cl::PauliString id(5);
  EXPECT_EQ(id.weight(), 0u);
  EXPECT_EQ(id.phase(), 0);
  EXPECT_EQ(id.str(), "IIIII");
}

TEST(PauliString, MultiplyExamples) {
  auto xz = cl::multiply(cl::PauliString::parse("XI"), cl::PauliString::parse("ZI"));
  EXPECT_EQ(xz.str(), "-iYI");
  auto ii = cl::multiply(cl::PauliString::parse("I"), cl::PauliString::parse("I"));
  EXPECT_EQ(ii.str(), "I");
  auto xx = cl::PauliString::parse("XX");
  EXPECT_EQ((xx * xx).str(), "II");
  EXPECT_THROW(cl::multiply(cl::PauliString(2), cl::PauliString(3)), cl::DimensionError);
}

TEST(PauliString, CommutesExamples) {
  EXPECT_FALSE(cl::commutes(cl::PauliString::parse("X"), cl::PauliString::parse("Z")));
  EXPECT_TRUE(cl::commutes(cl::PauliString::parse("XI"), cl::PauliString::parse("IZ")));
  EXPECT_TRUE(cl::commutes(cl::PauliString::parse("XX"), cl::PauliString::parse("ZZ")));
  const auto a = oracle::word_matrix("XX"), b = oracle::word_matrix("ZZ");
  EXPECT_LT(oracle::max_abs(a * b - b * a), 1e-14);
  EXPECT_THROW(cl::commutes(cl::PauliString(1), cl::PauliString(2)), cl::DimensionError);
}

TEST(PauliString, WeightExamples) {
  EXPECT_EQ(cl::weight(cl::PauliString::parse("XIZ")), 2u);
  EXPECT_EQ(cl::weight(cl::PauliString(5)), 0u);
  EXPECT_EQ(cl::weight(cl::PauliString::parse("ZZZZZZZ")), 7u);
}

// Exhaustive products against dense matrices, all signed words, n <= 2, and
// unsigned words at n = 3.
TEST(PauliString, MultiplyMatchesDenseExhaustive) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::uint64_t count = std::uint64_t{1} << (2 * n);
    const int phases = n <= 2 ? 4 : 1;
    for (std::uint64_t i = 0; i < count; ++i) {
      for (std::uint64_t j = 0; j < count; ++j) {
        for (int pa = 0; pa < phases; ++pa) {
          for (int pb = 0; pb < phases; ++pb) {
            const auto sa = signed_word(i, n, pa), sb = signed_word(j, n, pb);
            const auto prod = cl::multiply(cl::PauliString::parse(sa), cl::PauliString::parse(sb));
            const Eigen::MatrixXcd expect = oracle::word_matrix(sa) * oracle::word_matrix(sb);
            ASSERT_LT(oracle::max_abs(oracle::word_matrix(prod.str()) - expect), 1e-12)
                << sa << " * " << sb << " gave " << prod.str();
          }
        }
      }
    }
  }
}

TEST(PauliString, CommutesMatchesDenseExhaustive) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::uint64_t count = std::uint64_t{1} << (2 * n);
    for (std::uint64_t i = 0; i < count; ++i) {
      for (std::uint64_t j = 0; j < count; ++j) {
        const auto sa = oracle::word_from_index(i, n), sb = oracle::word_from_index(j, n);
        const auto a = oracle::word_matrix(sa), b = oracle::word_matrix(sb);
        const bool dense = oracle::max_abs(a * b - b * a) < 1e-12;
        ASSERT_EQ(cl::commutes(cl::PauliString::parse(sa), cl::PauliString::parse(sb)), dense) << sa << " " << sb;
      }
    }
  }
}

TEST(PauliString, GroupLawProperties) {
  // Associativity and the commutation sign, n = 4, words sampled on a stride.
  const std::size_t n = 4;
  const std::uint64_t count = std::uint64_t{1} << (2 * n);
  for (std::uint64_t i = 0; i < count; i += 7) {
    for (std::uint64_t j = 3; j < count; j += 11) {
      const auto a = cl::PauliString::parse(oracle::word_from_index(i, n));
      const auto b = cl::PauliString::parse(oracle::word_from_index(j, n));
      const auto c = cl::PauliString::parse(oracle::word_from_index((i * 31 + j) % count, n));
      ASSERT_EQ((a * b) * c, a * (b * c));
      const auto ab = a * b, ba = b * a;
      ASSERT_EQ(ab.unsigned_word(), ba.unsigned_word());
      const int diff = (ab.phase() - ba.phase() + 4) % 4;
      ASSERT_EQ(diff, cl::commutes(a, b) ? 0 : 2);
      const auto ma = oracle::word_matrix(a.str()), mb = oracle::word_matrix(b.str());
      ASSERT_LT(oracle::max_abs(oracle::word_matrix(ab.str()) - ma * mb), 1e-12);
    }
  }
}

TEST(PauliString, SquareHasRealPhaseAndTrivialBits) {
  for (std::uint64_t i = 0; i < 64; ++i) {
    for (int ph = 0; ph < 4; ++ph) {
      const auto p = cl::PauliString::parse(signed_word(i, 3, ph));
      const auto sq = p * p;
      EXPECT_TRUE(sq.is_identity_word());
      EXPECT_TRUE(sq.is_hermitian());
    }
  }
}

TEST(PauliString, WeightInvariantUnderIdentityAndPhase) {
  for (std::uint64_t i = 0; i < 256; ++i) {
    auto p = cl::PauliString::parse(oracle::word_from_index(i, 4));
    const std::size_t w = p.weight();
    EXPECT_EQ((p * cl::PauliString(4)).weight(), w);
    p.set_phase(3);
    EXPECT_EQ(p.weight(), w);
  }
}

TEST(PauliString, PackedWordsBeyond64Qubits) {
  std::string a(130, 'I'), b(130, 'I');
  a[3] = 'X'; a[70] = 'Y'; a[129] = 'Z';
  b[3] = 'Z'; b[70] = 'Y'; b[129] = 'Z';
  const auto pa = cl::PauliString::parse(a), pb = cl::PauliString::parse(b);
  EXPECT_EQ(pa.weight(), 3u);
  EXPECT_FALSE(cl::commutes(pa, pb));
  // X*Z = -iY, Y*Y = I, Z*Z = I.
  const auto prod = pa * pb;
  EXPECT_EQ(prod.phase(), 3);
  EXPECT_EQ(prod.axis(3), 'Y');
  EXPECT_EQ(prod.axis(70), 'I');
  EXPECT_EQ(prod.axis(129), 'I');
  EXPECT_EQ(prod.weight(), 1u);
}

TEST(PauliSumOperator, FoldsSignsIntoCoefficients) {
  cl::PauliSumOperator g(2);
  g.add(cl::PauliString::parse("-ZZ"), 0.5);
  g.add(cl::PauliString::parse("XI"), 1.0);
  EXPECT_EQ(g.size(), 2u);
  EXPECT_DOUBLE_EQ(g.coefficient(cl::PauliString::parse("ZZ")), -0.5);
  EXPECT_THROW(g.add(cl::PauliString::parse("iXX"), 1.0), cl::NonHermitian);
  g.add(cl::PauliString::parse("ZZ"), 0.5);
  EXPECT_EQ(g.size(), 1u);
}

TEST(PauliSumOperator, MaxWeightAndIdentity) {
  EXPECT_EQ(cl::PauliSumOperator::collective(4, 'Z').max_weight(), 1u);
  EXPECT_TRUE(cl::PauliSumOperator::identity(3, 2.0).is_identity_multiple());
  EXPECT_FALSE(cl::PauliSumOperator::collective(3, 'X').is_identity_multiple());
  EXPECT_TRUE(cl::PauliSumOperator::collective(3, 'Y').terms_commute());
  EXPECT_FALSE((cl::PauliSumOperator::collective(2, 'X') + cl::PauliSumOperator::collective(2, 'Z')).terms_commute());
}

TEST(PauliSumOperator, TextRoundTrip) {
  const auto g = cl::PauliSumOperator::parse("0.5*ZII + 0.5*IZI - 0.25*XXX + YYI");
  EXPECT_EQ(g.n_qubits(), 3u);
  EXPECT_EQ(g.size(), 4u);
  EXPECT_DOUBLE_EQ(g.coefficient(cl::PauliString::parse("XXX")), -0.25);
  EXPECT_DOUBLE_EQ(g.coefficient(cl::PauliString::parse("YYI")), 1.0);
  EXPECT_EQ(cl::PauliSumOperator::parse(g.str()), g);
  EXPECT_EQ(cl::PauliSumOperator::parse("-1e-3*XZ").coefficient(cl::PauliString::parse("XZ")), -1e-3);
  EXPECT_THROW(cl::PauliSumOperator::parse("0.5*ZI + X"), cl::ParseError);
  EXPECT_THROW(cl::PauliSumOperator::parse("abc*ZI"), cl::ParseError);
  EXPECT_THROW(cl::PauliSumOperator::parse(""), cl::ParseError);
}

TEST(PauliSumOperator, ProductMatchesDense) {
  const auto a = cl::PauliSumOperator::parse("0.5*ZI + 0.3*XX - 0.2*YZ");
  const auto sq = a * a;
  Eigen::MatrixXcd ma = 0.5 * oracle::word_matrix("ZI") + 0.3 * oracle::word_matrix("XX") -
                        0.2 * oracle::word_matrix("YZ");
  Eigen::MatrixXcd got = Eigen::MatrixXcd::Zero(4, 4);
  for (const auto& [p, c] : sq.terms()) got += c * oracle::word_matrix(p.str());
  EXPECT_LT(oracle::max_abs(got - ma * ma), 1e-12);
}
