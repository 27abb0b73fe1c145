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
 * @file encoding.hpp
 * @brief Jordan-Wigner encoding of the electronic Hamiltonian.
 *
 * Occupation of spin orbital p is bit p of the basis-state index, and
 *
 *     a+_p = (prod_{k<p} Z_k) (X_p - i Y_p) / 2.
 *
 * Spin orbitals are laid out blocked: all alpha orbitals on qubits
 * [0, M), all beta orbitals on qubits [M, 2M).
 */

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qida/fcidump.hpp"
#include "qida/kernels.hpp"
#include "qida/pauli.hpp"

namespace qida {

enum class SpinOrbitalOrder { Blocked };

SpinOrbitalOrder parse_spin_order(const std::string& name);
std::string to_string(SpinOrbitalOrder order);

/// Qubit carrying spatial orbital `spatial` with spin 0 (alpha) or 1 (beta).
int spin_orbital_qubit(int spatial, int spin, int n_orb,
                       SpinOrbitalOrder order = SpinOrbitalOrder::Blocked);

/// Pauli coefficients below this magnitude are dropped.
inline constexpr double kPauliPruneTolerance = 1e-14;
/// Largest imaginary residue silently truncated.
inline constexpr double kImaginaryTolerance = 1e-12;

struct PauliHamiltonian {
  int n_qubits = 0;
  std::vector<PauliTerm> terms;  // unique words, sorted

  /// Coefficient of the identity word (0 if absent).
  double constant() const;
  Eigen::MatrixXcd to_dense() const;
  kernels::FlipOperator compile() const {
    return kernels::FlipOperator(n_qubits, terms);
  }
};

/// Combines duplicates, truncates imaginary residues and prunes.
PauliHamiltonian to_hamiltonian(const PauliSum& sum, int n_qubits);

PauliSum jw_ladder_operator(int p, int n_qubits, bool dagger);

PauliHamiltonian build_hamiltonian(const IntegralSet& s,
                                   SpinOrbitalOrder order = SpinOrbitalOrder::Blocked);

struct DeterminantIndex {
  std::uint64_t index = 0;
  int phase = 1;
};

/// Basis index and sign of a+_{o[0]} a+_{o[1]} ... a+_{o[k-1]} |vac>.
/// The ascending ordering has phase +1.
DeterminantIndex determinant_state_index(std::span<const int> occupied, int n_qubits);

}  // namespace qida
