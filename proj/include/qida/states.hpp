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
 * @file states.hpp
 * @brief Reference statevectors (HF, MP2, FCI) and qubit mutual information.
 *
 * Entropies are in nats. The pairwise mutual information
 *
 *     I(i, j) = S(i) + S(j) - S(i, j)
 *
 * is computed from one- and two-qubit reduced density matrices obtained by
 * partial trace of |psi><psi|.
 */

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "qida/encoding.hpp"
#include "qida/meanfield.hpp"
#include "qida/statevector.hpp"

namespace qida {

/// Eigenvalues at or below this contribute nothing to an entropy.
inline constexpr double kEntropyEigenvalueFloor = 1e-14;
/// Largest raw value (nats) below which a state counts as uncorrelated and
/// max normalization yields the zero matrix instead of amplified round-off.
inline constexpr double kQmiZeroFloor = 1e-10;

enum class QmiNormalization {
  MaxElement,  // divide by the largest off-diagonal raw entry
  TwoLn2,      // divide by 2 ln 2, the two-qubit maximum
};

QmiNormalization parse_qmi_normalization(const std::string& name);
std::string to_string(QmiNormalization mode);

struct QmiMatrix {
  int n = 0;
  Eigen::MatrixXd raw;
  Eigen::MatrixXd normalized;
  QmiNormalization mode = QmiNormalization::MaxElement;
  /// Smallest raw value seen before negative round-off was clamped to 0.
  double min_unclamped = 0.0;
};

Statevector hf_statevector(int n_qubits, int n_elec,
                           SpinOrbitalOrder order = SpinOrbitalOrder::Blocked);

/// Normalized |HF> + sum_{i<j,a<b} t_ij^ab a+_a a+_b a_j a_i |HF>.
Statevector mp2_statevector(const AmplitudeSet& a,
                            SpinOrbitalOrder order = SpinOrbitalOrder::Blocked);

/// The unnormalized first-order doubles part, without the HF determinant.
Statevector mp2_first_order(const AmplitudeSet& a,
                            SpinOrbitalOrder order = SpinOrbitalOrder::Blocked);

struct FciResult {
  double energy = 0.0;
  Statevector state;
  std::size_t sector_dim = 0;
  int iterations = 0;
  double residual = 0.0;
};

/// Lowest eigenpair in the sector with n_elec electrons and 2 S_z = ms2.
FciResult fci_ground_state(const PauliHamiltonian& h, int n_elec, int ms2 = 0,
                           SpinOrbitalOrder order = SpinOrbitalOrder::Blocked);

/// Reduced density matrix of qubits (i, j); local index is 2*b_i + b_j.
Eigen::Matrix4cd two_qubit_rdm(const Statevector& psi, int i, int j);
Eigen::Matrix2cd one_qubit_rdm(const Statevector& psi, int i);

double von_neumann_entropy(const Eigen::MatrixXcd& rho);

QmiMatrix qmi_matrix(const Statevector& psi,
                     QmiNormalization mode = QmiNormalization::MaxElement);

/// Recomputes `normalized` from `raw` under `mode`.
void renormalize(QmiMatrix& q, QmiNormalization mode);

/// CSV with header `i,j,raw,normalized`, one row per pair i<j.
void write_qmi_csv(const QmiMatrix& q, std::ostream& out);
QmiMatrix read_qmi_csv(std::istream& in);
QmiMatrix read_qmi_csv(const std::string& path);

/// Number of pairs i<j with normalized > threshold.
int count_above(const QmiMatrix& q, double threshold);

}  // namespace qida
