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

#include "qida/pauli.hpp"

#include <cmath>
#include <iterator>

#include "qida/error.hpp"

namespace qida {

std::string to_string(const PauliWord& w, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), 'I');
  for (int k = 0; k < n_qubits; ++k) {
    const bool x = (w.x >> k) & 1, z = (w.z >> k) & 1;
    s[k] = x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }
  return s;
}

PauliWord parse_pauli_word(const std::string& s) {
  if (s.size() > 64) throw InputError("Pauli word longer than 64 qubits");
  PauliWord w;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const std::uint64_t bit = std::uint64_t{1} << k;
    switch (s[k]) {
      case 'I': break;
      case 'X': w.x |= bit; break;
      case 'Y': w.x |= bit; w.z |= bit; break;
      case 'Z': w.z |= bit; break;
      default: throw ParseError(std::string("invalid Pauli letter '") + s[k] + "'");
    }
  }
  return w;
}

void PauliSum::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < tol)
      it = terms_.erase(it);
    else
      ++it;
  }
}

}  // namespace qida
