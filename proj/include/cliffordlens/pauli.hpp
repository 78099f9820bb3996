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
#include <charconv>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cliffordlens/errors.hpp"

namespace cliffordlens {

namespace detail {

inline std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

// Shortest decimal representation that round-trips.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Signed n-qubit Pauli word i^phase * P_0 (x) P_1 (x) ... (x) P_{n-1}.
///
/// Each factor is stored symplectically as a pair of bits (x, z) with
/// (1, 0) = X, (0, 1) = Z and (1, 1) = Y, so a word with phase 0 is always
/// Hermitian. Bits are packed 64 qubits per machine word. Character i of the
/// text form is qubit i.
class PauliString {
 public:
  PauliString() = default;

  /// Identity on n qubits.
  explicit PauliString(std::size_t n)
      : n_(n), x_(detail::words_for(n), 0), z_(detail::words_for(n), 0) {}

  /// Parses "XYZ", "+XYZ", "-XYZ", "+iXYZ", "-iXYZ" (also "iXYZ").
  static PauliString parse(std::string_view text) {
    std::uint8_t phase = 0;
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      if (text[pos] == '-') phase = 2;
      ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
      phase = static_cast<std::uint8_t>((phase + 1) & 3);
      ++pos;
    }
    std::string_view body = text.substr(pos);
    if (body.empty()) throw ParseError("empty Pauli word: '" + std::string(text) + "'");
    PauliString p(body.size());
    for (std::size_t q = 0; q < body.size(); ++q) {
      char c = body[q];
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
        throw ParseError("invalid Pauli character '" + std::string(1, c) + "' in '" +
                         std::string(text) + "'");
      }
      p.set_axis(q, c);
    }
    p.phase_ = phase;
    return p;
  }

  /// Single-qubit Pauli `axis` on qubit q, identity elsewhere.
  static PauliString single(std::size_t n, std::size_t q, char axis) {
    PauliString p(n);
    p.set_axis(q, axis);
    return p;
  }

  std::size_t n_qubits() const { return n_; }

  bool x(std::size_t q) const { return (x_[q >> 6] >> (q & 63)) & 1u; }
  bool z(std::size_t q) const { return (z_[q >> 6] >> (q & 63)) & 1u; }

  void set_x(std::size_t q, bool v) { set_bit(x_, q, v); }
  void set_z(std::size_t q, bool v) { set_bit(z_, q, v); }

  char axis(std::size_t q) const {
    static constexpr char kNames[4] = {'I', 'X', 'Z', 'Y'};
    return kNames[(x(q) ? 1 : 0) | (z(q) ? 2 : 0)];
  }

  void set_axis(std::size_t q, char axis) {
    check_qubit(q);
    switch (axis) {
      case 'I': set_x(q, false); set_z(q, false); break;
      case 'X': set_x(q, true); set_z(q, false); break;
      case 'Y': set_x(q, true); set_z(q, true); break;
      case 'Z': set_x(q, false); set_z(q, true); break;
      default: throw ParseError(std::string("invalid Pauli axis '") + axis + "'");
    }
  }

  /// Exponent k of the scalar i^k, in [0, 4).
  std::uint8_t phase() const { return phase_; }
  void set_phase(int k) { phase_ = static_cast<std::uint8_t>(((k % 4) + 4) % 4); }

  /// True when the scalar is +1 or -1.
  bool is_hermitian() const { return (phase_ & 1u) == 0; }

  std::span<const std::uint64_t> x_words() const { return x_; }
  std::span<const std::uint64_t> z_words() const { return z_; }
  std::span<std::uint64_t> x_words() { return x_; }
  std::span<std::uint64_t> z_words() { return z_; }

  std::size_t weight() const {
    std::size_t w = 0;
    for (std::size_t i = 0; i < x_.size(); ++i) w += std::popcount(x_[i] | z_[i]);
    return w;
  }

  /// True when every tensor factor is the identity (any phase).
  bool is_identity_word() const { return weight() == 0; }

  /// Same tensor factors with phase reset to +1.
  PauliString unsigned_word() const {
    PauliString p = *this;
    p.phase_ = 0;
    return p;
  }

  /// Number of Y factors; the word equals i^{phase + ny} X^x Z^z.
  std::size_t y_count() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < x_.size(); ++i) c += std::popcount(x_[i] & z_[i]);
    return c;
  }

  /// Bit mask of X/Y positions (requires n <= 64).
  std::uint64_t x_mask() const { return x_.empty() ? 0 : x_[0]; }
  /// Bit mask of Z/Y positions (requires n <= 64).
  std::uint64_t z_mask() const { return z_.empty() ? 0 : z_[0]; }

  std::string str() const {
    static constexpr const char* kPrefix[4] = {"", "+i", "-", "-i"};
    std::string out = kPrefix[phase_];
    out.reserve(out.size() + n_);
    for (std::size_t q = 0; q < n_; ++q) out.push_back(axis(q));
    return out;
  }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_ == b.n_ && a.phase_ == b.phase_ && a.x_ == b.x_ && a.z_ == b.z_;
  }

  /// Orders by qubit count, then the symplectic bits, then phase.
  friend bool operator<(const PauliString& a, const PauliString& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    if (a.x_ != b.x_) return a.x_ < b.x_;
    if (a.z_ != b.z_) return a.z_ < b.z_;
    return a.phase_ < b.phase_;
  }

 private:
  static void set_bit(std::vector<std::uint64_t>& v, std::size_t q, bool b) {
    const std::uint64_t m = std::uint64_t{1} << (q & 63);
    if (b) v[q >> 6] |= m; else v[q >> 6] &= ~m;
  }
  void check_qubit(std::size_t q) const {
    if (q >= n_) throw DimensionError("qubit index " + std::to_string(q) + " out of range");
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
  std::uint8_t phase_ = 0;
};

namespace detail {

inline void require_same_size(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw DimensionError("Pauli size mismatch: " + std::to_string(a.n_qubits()) + " vs " +
                         std::to_string(b.n_qubits()));
  }
}

}  // namespace detail

/// Exact product a*b.
inline PauliString multiply(const PauliString& a, const PauliString& b) {
  detail::require_same_size(a, b);
  PauliString out = a;
  auto ox = out.x_words();
  auto oz = out.z_words();
  auto bx = b.x_words();
  auto bz = b.z_words();
  // Per bit position, a two-bit counter of the i^{+-1} factors picked up by
  // the single-qubit products.
  std::size_t cnt1 = 0;
  std::size_t cnt2 = 0;
  for (std::size_t w = 0; w < ox.size(); ++w) {
    const std::uint64_t x1 = ox[w], z1 = oz[w], x2 = bx[w], z2 = bz[w];
    const std::uint64_t nx = x1 ^ x2;
    const std::uint64_t nz = z1 ^ z2;
    const std::uint64_t x1z2 = x1 & z2;
    const std::uint64_t anti = (x2 & z1) ^ x1z2;
    const std::uint64_t c2 = (nx ^ nz ^ x1z2) & anti;
    cnt1 += std::popcount(anti);
    cnt2 += std::popcount(c2);
    ox[w] = nx;
    oz[w] = nz;
  }
  out.set_phase(static_cast<int>(a.phase() + b.phase() + cnt1 + 2 * cnt2));
  return out;
}

inline PauliString operator*(const PauliString& a, const PauliString& b) { return multiply(a, b); }

/// True iff the symplectic inner product of a and b is even.
inline bool commutes(const PauliString& a, const PauliString& b) {
  detail::require_same_size(a, b);
  auto ax = a.x_words(), az = a.z_words(), bx = b.x_words(), bz = b.z_words();
  std::size_t parity = 0;
  for (std::size_t w = 0; w < ax.size(); ++w) {
    parity += std::popcount((ax[w] & bz[w]) ^ (az[w] & bx[w]));
  }
  return (parity & 1u) == 0;
}

inline std::size_t weight(const PauliString& p) { return p.weight(); }

/// Tensor product a (x) b; a occupies the low qubit indices.
inline PauliString tensor(const PauliString& a, const PauliString& b) {
  PauliString out(a.n_qubits() + b.n_qubits());
  for (std::size_t q = 0; q < a.n_qubits(); ++q) out.set_axis(q, a.axis(q));
  for (std::size_t q = 0; q < b.n_qubits(); ++q) out.set_axis(a.n_qubits() + q, b.axis(q));
  out.set_phase(a.phase() + b.phase());
  return out;
}

/// Factors of p on the listed qubits, in list order. The full phase of p is
/// carried by the result.
inline PauliString restrict_to(const PauliString& p, std::span<const std::size_t> qubits) {
  PauliString out(qubits.size());
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] >= p.n_qubits()) throw DimensionError("restrict_to: qubit out of range");
    out.set_axis(i, p.axis(qubits[i]));
  }
  out.set_phase(p.phase());
  return out;
}

/// Hermitian operator sum_j c_j P_j with real c_j over unsigned Pauli words.
///
/// Signs of added strings are folded into the coefficients so each word
/// appears once as a key.
class PauliSumOperator {
 public:
  using TermMap = std::map<PauliString, double>;

  PauliSumOperator() = default;
  explicit PauliSumOperator(std::size_t n) : n_(n) {}

  /// Parses "0.5*ZII + 0.5*IZI - XXX". Every word must have the same length.
  static PauliSumOperator parse(std::string_view text);

  /// c times the identity on n qubits.
  static PauliSumOperator identity(std::size_t n, double c = 1.0) {
    PauliSumOperator op(n);
    op.add(PauliString(n), c);
    return op;
  }

  /// Collective spin S_axis = sum_i sigma_axis_i / 2.
  static PauliSumOperator collective(std::size_t n, char axis) {
    PauliSumOperator op(n);
    for (std::size_t q = 0; q < n; ++q) op.add(PauliString::single(n, q, axis), 0.5);
    return op;
  }

  std::size_t n_qubits() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds coeff * p. Throws NonHermitian when p carries a phase of +-i.
  void add(const PauliString& p, double coeff) {
    if (terms_.empty() && n_ == 0) n_ = p.n_qubits();
    if (p.n_qubits() != n_) throw DimensionError("Pauli sum term has wrong qubit count");
    if (!p.is_hermitian()) throw NonHermitian("Pauli term " + p.str() + " is not Hermitian");
    if (p.phase() == 2) coeff = -coeff;
    if (coeff == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(p.unsigned_word(), coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0.0) terms_.erase(it);
    }
  }

  double coefficient(const PauliString& word) const {
    auto it = terms_.find(word.unsigned_word());
    if (it == terms_.end()) return 0.0;
    return word.phase() == 2 ? -it->second : it->second;
  }

  /// Maximum Pauli weight over the terms; 0 for multiples of the identity.
  std::size_t max_weight() const {
    std::size_t w = 0;
    for (const auto& [p, c] : terms_) w = std::max(w, p.weight());
    return w;
  }

  bool is_identity_multiple() const { return max_weight() == 0; }

  /// True when all terms pairwise commute.
  bool terms_commute() const {
    for (auto i = terms_.begin(); i != terms_.end(); ++i) {
      for (auto j = std::next(i); j != terms_.end(); ++j) {
        if (!commutes(i->first, j->first)) return false;
      }
    }
    return true;
  }

  /// Drops terms with |c| <= tol.
  void prune(double tol) {
    std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
  }

  PauliSumOperator& operator+=(const PauliSumOperator& other) {
    if (n_ == 0 && terms_.empty()) n_ = other.n_;
    if (other.n_ != n_) throw DimensionError("Pauli sum size mismatch");
    for (const auto& [p, c] : other.terms_) add(p, c);
    return *this;
  }

  PauliSumOperator& operator*=(double s) {
    if (s == 0.0) {
      terms_.clear();
      return *this;
    }
    for (auto& [p, c] : terms_) c *= s;
    return *this;
  }

  friend PauliSumOperator operator+(PauliSumOperator a, const PauliSumOperator& b) { return a += b; }
  friend PauliSumOperator operator*(double s, PauliSumOperator a) { return a *= s; }

  /// Product of two sums, re-expanded over Pauli words. The result must be
  /// Hermitian (e.g. G*G) or NonHermitian is thrown.
  friend PauliSumOperator operator*(const PauliSumOperator& a, const PauliSumOperator& b) {
    if (a.n_ != b.n_) throw DimensionError("Pauli sum size mismatch");
    std::map<PauliString, std::pair<double, double>> acc;  // word -> (re, im)
    for (const auto& [pa, ca] : a.terms_) {
      for (const auto& [pb, cb] : b.terms_) {
        PauliString prod = multiply(pa, pb);
        const double v = ca * cb;
        auto& slot = acc[prod.unsigned_word()];
        switch (prod.phase()) {
          case 0: slot.first += v; break;
          case 1: slot.second += v; break;
          case 2: slot.first -= v; break;
          default: slot.second -= v; break;
        }
      }
    }
    PauliSumOperator out(a.n_);
    for (const auto& [p, c] : acc) {
      if (std::abs(c.second) > 1e-12 * (1.0 + std::abs(c.first))) {
        throw NonHermitian("product of Pauli sums is not Hermitian");
      }
      out.add(p, c.first);
    }
    return out;
  }

  friend bool operator==(const PauliSumOperator& a, const PauliSumOperator& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// "0.5*ZII + 0.5*IZI"; "0" for the zero operator.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [p, c] : terms_) {
      if (!first) out += c < 0 ? " - " : " + ";
      else if (c < 0) out += "-";
      out += detail::format_double(std::abs(c));
      out += "*";
      out += p.str();
      first = false;
    }
    return out;
  }

 private:
  std::size_t n_ = 0;
  TermMap terms_;
};

inline PauliSumOperator PauliSumOperator::parse(std::string_view text) {
  PauliSumOperator op;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  bool expect_term = true;
  double sign = 1.0;
  skip_ws();
  if (pos == text.size()) throw ParseError("empty Pauli sum");
  while (pos < text.size()) {
    skip_ws();
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      if (text[pos] == '-') sign = -sign;
      ++pos;
      skip_ws();
      expect_term = true;
    }
    if (!expect_term) throw ParseError("missing '+' or '-' between terms");
    double coeff = 1.0;
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] != ' ' && text[pos] != '\t' && text[pos] != '+' &&
           !(text[pos] == '-' && pos > start && text[pos - 1] != 'e' && text[pos - 1] != 'E')) {
      ++pos;
    }
    std::string_view token = text.substr(start, pos - start);
    if (token.empty()) throw ParseError("dangling operator in Pauli sum");
    std::string_view word = token;
    if (auto star = token.find('*'); star != std::string_view::npos) {
      std::string_view num = token.substr(0, star);
      auto res = std::from_chars(num.data(), num.data() + num.size(), coeff);
      if (res.ec != std::errc() || res.ptr != num.data() + num.size()) {
        throw ParseError("bad coefficient '" + std::string(num) + "'");
      }
      word = token.substr(star + 1);
    }
    PauliString p = PauliString::parse(word);
    if (!p.is_hermitian()) throw NonHermitian("Pauli sum term " + p.str() + " is not Hermitian");
    if (!op.terms_.empty() && p.n_qubits() != op.n_) {
      throw ParseError("Pauli sum words have different lengths");
    }
    if (op.terms_.empty() && op.n_ == 0) op.n_ = p.n_qubits();
    op.add(p, sign * coeff);
    sign = 1.0;
    expect_term = false;
    skip_ws();
  }
  return op;
}

}  // namespace cliffordlens
