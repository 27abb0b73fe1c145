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

// Restricted closed-shell Hartree-Fock quantities and spin-orbital MP2.
//
// Spin orbitals are blocked: index p < M is spatial orbital p with spin
// alpha, index M + p is spatial orbital p with spin beta. The lowest N/2
// spatial orbitals are doubly occupied.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qida/fcidump.hpp"

namespace qida {

/// Largest Fock off-diagonal magnitude accepted as canonical.
inline constexpr double kCanonicalTolerance = 1e-7;

struct Amplitude {
  int i, j, a, b;  // i < j occupied, a < b virtual (spin-orbital indices)
  double t;
};

struct AmplitudeSet {
  int n_occ_so = 0;
  int n_so = 0;
  std::vector<Amplitude> t;
  std::vector<double> eps;  // per spin orbital
};

Eigen::MatrixXd fock_matrix(const IntegralSet& s);
double hf_energy(const IntegralSet& s);

/// Antisymmetrized <pq||rs> in the blocked spin-orbital basis.
double antisymmetrized_eri(const IntegralSet& s, int p, int q, int r, int t);

AmplitudeSet mp2_amplitudes(const IntegralSet& s);
double mp2_energy(const AmplitudeSet& a, const IntegralSet& s);

}  // namespace qida
