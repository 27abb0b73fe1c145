// Copyright 2026 The QIDA Authors
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

/**
 * @file pauli.hpp
 * @brief Pauli words in symplectic (x, z) form and sums of weighted words.
 *
 * Qubit k is bit k of both masks; (x_k, z_k) = (0,0) I, (1,0) X, (1,1) Y,
 * (0,1) Z. With Y = iXZ a word equals i^{|x&z|} X^x Z^z, and acting on a
 * computational basis state
 *
 *     P |b> = i^{|x&z|} (-1)^{|z&b|} |b ^ x>.
 */

#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace qida {

using Complex = std::complex<double>;

struct PauliWord {
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  friend auto operator<=>(const PauliWord&, const PauliWord&) = default;
};

/// Real-weighted word, the term type of Hamiltonians.
struct PauliTerm {
  double coeff = 0.0;
  PauliWord word;
};

/// i^k for k taken modulo 4.
inline Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

/// Product a*b as (phase, word).
inline std::pair<Complex, PauliWord> multiply(const PauliWord& a,
                                              const PauliWord& b) {
  const PauliWord c{a.x ^ b.x, a.z ^ b.z};
  const int k = std::popcount(a.x & a.z) + std::popcount(b.x & b.z) +
                2 * std::popcount(a.z & b.x) - std::popcount(c.x & c.z);
  return {i_power(k), c};
}

/// Word as a length-n string over {I,X,Y,Z}; character k is qubit k.
std::string to_string(const PauliWord& w, int n_qubits);
PauliWord parse_pauli_word(const std::string& s);

/// Complex-weighted sum of Pauli words.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(Complex identity_coeff) {
    if (identity_coeff != Complex{}) terms_[PauliWord{}] = identity_coeff;
  }

  void add(const PauliWord& w, Complex c) { terms_[w] += c; }
  const std::map<PauliWord, Complex>& terms() const noexcept { return terms_; }

  PauliSum& operator+=(const PauliSum& o) {
    for (const auto& [w, c] : o.terms_) terms_[w] += c;
    return *this;
  }
  PauliSum& operator*=(Complex s) {
    for (auto& [w, c] : terms_) c *= s;
    return *this;
  }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b) {
    PauliSum out;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) {
        auto [phase, w] = multiply(wa, wb);
        out.terms_[w] += phase * ca * cb;
      }
    return out;
  }
  friend PauliSum operator*(Complex s, PauliSum a) { return a *= s; }
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }

  /// Drops terms with |c| < tol.
  void prune(double tol);

 private:
  std::map<PauliWord, Complex> terms_;
};

}  // namespace qida
