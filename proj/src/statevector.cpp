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

#include "qida/statevector.hpp"

#include <cmath>
#include <span>

#include "qida/error.hpp"
#include "qida/kernels.hpp"

namespace qida {

double Statevector::norm() const {
  return std::sqrt(std::real(kernels::dot<Complex>(amplitudes, amplitudes)));
}

void Statevector::normalize() {
  const double n = norm();
  if (n == 0.0) throw NumericalError("cannot normalize the zero vector");
  for (auto& a : amplitudes) a /= n;
}

Complex inner(const Statevector& a, const Statevector& b) {
  if (a.n_qubits != b.n_qubits) throw InputError("statevector size mismatch");
  return kernels::dot<Complex>(a.amplitudes, b.amplitudes);
}

}  // namespace qida
