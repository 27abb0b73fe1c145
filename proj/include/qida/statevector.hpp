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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qida/pauli.hpp"

namespace qida {

/// 2^n amplitudes; qubit 0 is the least significant bit of the index.
struct Statevector {
  int n_qubits = 0;
  std::vector<Complex> amplitudes;

  Statevector() = default;
  explicit Statevector(int n) : n_qubits(n), amplitudes(std::size_t{1} << n) {}

  std::size_t dim() const noexcept { return amplitudes.size(); }

  static Statevector basis_state(int n, std::uint64_t index, Complex amp = 1.0) {
    Statevector s(n);
    s.amplitudes.at(index) = amp;
    return s;
  }

  double norm() const;
  void normalize();
};

/// <a|b>
Complex inner(const Statevector& a, const Statevector& b);

}  // namespace qida
