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
 * @file natorb.hpp
 * @brief Natural orbitals and orbital-basis changes of integrals and states.
 *
 * An OrbitalRotation U holds the new orbitals as columns expressed in the
 * old basis, phi'_p = sum_q U_qp phi_q. Integrals transform as h' = U^T h U
 * and states by the Fock-space image exp(-K), K = sum kappa_pq a+_p a_q with
 * kappa = log U, so that <psi|H|psi> = <psi'|H'|psi'>.
 */

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qida/encoding.hpp"
#include "qida/fcidump.hpp"
#include "qida/statevector.hpp"

namespace qida {

struct OrbitalRotation {
  Eigen::MatrixXd U;
  std::vector<double> occupations;  // descending; empty for a bare rotation
};

/// Spin-summed D_pq = <a+_{p alpha} a_{q alpha}> + <a+_{p beta} a_{q beta}>.
Eigen::MatrixXd one_body_rdm_spatial(const Statevector& psi,
                                     SpinOrbitalOrder order = SpinOrbitalOrder::Blocked);

OrbitalRotation natural_orbitals(const Eigen::MatrixXd& D);

IntegralSet transform_integrals(const IntegralSet& s, const OrbitalRotation& R);

struct KrylovOptions {
  double tolerance = 1e-12;
  int max_dim = 200;
};

Statevector rotate_statevector(const Statevector& psi, const OrbitalRotation& R,
                               SpinOrbitalOrder order = SpinOrbitalOrder::Blocked,
                               const KrylovOptions& opts = {});

}  // namespace qida
