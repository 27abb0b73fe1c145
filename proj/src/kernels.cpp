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

#include "qida/kernels.hpp"

#include <bit>
#include <map>

#include "qida/error.hpp"

namespace qida::kernels {

FlipOperator::FlipOperator(int n_qubits, std::span<const PauliTerm> terms)
    : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 30)
    throw InputError("flip operator supports at most 30 qubits");
  const std::size_t n = dim();
  std::map<std::uint64_t, std::vector<const PauliTerm*>> by_flip;
  for (const auto& t : terms) {
    if (std::popcount(t.word.x & t.word.z) % 2 != 0)
      throw InputError("Pauli word with an odd number of Y has imaginary matrix elements");
    by_flip[t.word.x].push_back(&t);
  }
  groups_.reserve(by_flip.size());
  for (const auto& [flip, members] : by_flip) {
    Group g;
    g.flip = flip;
    g.coeff.assign(n, 0.0);
    for (const PauliTerm* t : members) {
      // <j|P|i> with i = j ^ x equals i^{|x&z|} (-1)^{|z&i|}; |x&z| is even.
      const double base =
          (std::popcount(t->word.x & t->word.z) / 2) % 2 ? -t->coeff : t->coeff;
      const std::uint64_t z = t->word.z;
      for (std::size_t j = 0; j < n; ++j) {
        const std::uint64_t i = j ^ flip;
        g.coeff[j] += (std::popcount(z & i) & 1) ? -base : base;
      }
    }
    groups_.push_back(std::move(g));
  }
}

namespace serial {

void apply_pauli_terms(std::span<const PauliTerm> terms, std::span<const Complex> in,
                       std::span<Complex> out) {
  for (auto& o : out) o = Complex{};
  for (const auto& t : terms) {
    const Complex phase = i_power(std::popcount(t.word.x & t.word.z)) * t.coeff;
    for (std::uint64_t i = 0; i < in.size(); ++i) {
      const double sign = (std::popcount(t.word.z & i) & 1) ? -1.0 : 1.0;
      out[i ^ t.word.x] += phase * sign * in[i];
    }
  }
}

}  // namespace serial

}  // namespace qida::kernels
