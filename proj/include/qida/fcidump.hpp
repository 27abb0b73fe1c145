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
 * @file fcidump.hpp
 * @brief Molecular integrals in a spatial-orbital basis and FCIDUMP I/O.
 *
 * Two-electron integrals use chemists' notation throughout the library:
 *
 *     (pq|rs) = \int phi_p(1) phi_q(1) r12^-1 phi_r(2) phi_s(2)
 *
 * which is also the order of the four indices on an FCIDUMP body line. All
 * integrals are real, so (pq|rs) is stored once per class of the 8-fold
 * permutational symmetry.
 */

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qida {

class IntegralSet {
 public:
  IntegralSet() = default;
  IntegralSet(int n_orb, int n_elec, int ms2 = 0);

  int n_orb() const noexcept { return n_orb_; }
  int n_elec() const noexcept { return n_elec_; }
  int ms2() const noexcept { return ms2_; }

  double core_energy() const noexcept { return core_energy_; }
  void set_core_energy(double e) noexcept { core_energy_ = e; }

  /// One-electron integrals; always kept symmetric.
  const Eigen::MatrixXd& h() const noexcept { return h_; }
  double h(int p, int q) const;
  void set_h(int p, int q, double value);

  double eri(int p, int q, int r, int s) const;
  void set_eri(int p, int q, int r, int s, double value);

  /// Packed storage, one value per symmetry class.
  const std::vector<double>& eri_packed() const noexcept { return eri_; }

  std::string source_label;
  std::vector<int> orbsym;
  int isym = 1;

 private:
  std::size_t eri_index(int p, int q, int r, int s) const;
  void check_index(int p) const;

  int n_orb_ = 0;
  int n_elec_ = 0;
  int ms2_ = 0;
  double core_energy_ = 0.0;
  Eigen::MatrixXd h_;
  std::vector<double> eri_;
};

/// Value of (pq|rs); throws RangeError for indices outside [0, n_orb).
inline double eri_get(const IntegralSet& s, int p, int q, int r, int t) {
  return s.eri(p, q, r, t);
}

IntegralSet parse_fcidump(std::istream& in);
IntegralSet parse_fcidump(const std::string& text);
IntegralSet read_fcidump(const std::string& path);

void write_fcidump(const IntegralSet& s, std::ostream& out);
std::string write_fcidump(const IntegralSet& s);
void save_fcidump(const IntegralSet& s, const std::string& path);

}  // namespace qida
