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

#include "qida/meanfield.hpp"

#include <cmath>
#include <sstream>

#include "qida/error.hpp"

namespace qida {

namespace {

int occupied_spatial(const IntegralSet& s) {
  if (s.n_elec() % 2 != 0)
    throw InputError("unsupported occupation: odd electron count " +
                     std::to_string(s.n_elec()) +
                     " (restricted closed-shell only)");
  return s.n_elec() / 2;
}

// Chemists' (pq|rs) with spin-orbital indices; zero unless the spins of
// p,q and of r,s agree.
double so_chem(const IntegralSet& s, int p, int q, int r, int t) {
  const int M = s.n_orb();
  if (p / M != q / M || r / M != t / M) return 0.0;
  return s.eri(p % M, q % M, r % M, t % M);
}

bool is_occupied(int p, int M, int nocc) { return p % M < nocc; }

}  // namespace

Eigen::MatrixXd fock_matrix(const IntegralSet& s) {
  const int nocc = occupied_spatial(s);
  const int M = s.n_orb();
  Eigen::MatrixXd F = s.h();
  for (int p = 0; p < M; ++p)
    for (int q = 0; q < M; ++q) {
      double g = 0.0;
      for (int i = 0; i < nocc; ++i)
        g += 2.0 * s.eri(p, q, i, i) - s.eri(p, i, i, q);
      F(p, q) += g;
    }
  return F;
}

double hf_energy(const IntegralSet& s) {
  const int nocc = occupied_spatial(s);
  double e = s.core_energy();
  for (int i = 0; i < nocc; ++i) {
    e += 2.0 * s.h()(i, i);
    for (int j = 0; j < nocc; ++j)
      e += 2.0 * s.eri(i, i, j, j) - s.eri(i, j, j, i);
  }
  return e;
}

double antisymmetrized_eri(const IntegralSet& s, int p, int q, int r, int t) {
  // <pq|rt> = (pr|qt)
  return so_chem(s, p, r, q, t) - so_chem(s, p, t, q, r);
}

AmplitudeSet mp2_amplitudes(const IntegralSet& s) {
  const int nocc = occupied_spatial(s);
  const int M = s.n_orb();
  const Eigen::MatrixXd F = fock_matrix(s);
  double off = 0.0;
  for (int p = 0; p < M; ++p)
    for (int q = 0; q < M; ++q)
      if (p != q) off = std::max(off, std::abs(F(p, q)));
  if (off >= kCanonicalTolerance) {
    std::ostringstream msg;
    msg << "orbitals are not canonical (max |F_pq| = " << off
        << "); semicanonicalize the integrals before MP2";
    throw InputError(msg.str());
  }

  AmplitudeSet a;
  a.n_so = 2 * M;
  a.n_occ_so = s.n_elec();
  a.eps.resize(a.n_so);
  for (int p = 0; p < a.n_so; ++p) a.eps[p] = F(p % M, p % M);

  std::vector<int> occ, vir;
  for (int p = 0; p < a.n_so; ++p)
    (is_occupied(p, M, nocc) ? occ : vir).push_back(p);

  for (std::size_t x = 0; x < occ.size(); ++x)
    for (std::size_t y = x + 1; y < occ.size(); ++y)
      for (std::size_t u = 0; u < vir.size(); ++u)
        for (std::size_t w = u + 1; w < vir.size(); ++w) {
          const int i = occ[x], j = occ[y], c = vir[u], d = vir[w];
          // Spin selection: alpha count must match between pairs.
          if ((i < M) + (j < M) != (c < M) + (d < M)) continue;
          const double v = antisymmetrized_eri(s, i, j, c, d);
          const double denom = a.eps[i] + a.eps[j] - a.eps[c] - a.eps[d];
          if (std::abs(denom) < 1e-12) {
            std::ostringstream msg;
            msg << "singular MP2 denominator for (i,j,a,b) = (" << i << ',' << j
                << ',' << c << ',' << d << ")";
            throw NumericalError(msg.str());
          }
          a.t.push_back({i, j, c, d, v / denom});
        }
  return a;
}

double mp2_energy(const AmplitudeSet& a, const IntegralSet& s) {
  if (a.n_so != 2 * s.n_orb() || a.n_occ_so != s.n_elec())
    throw InputError("amplitude set does not match the integral set");
  double e = 0.0;
  for (const auto& x : a.t) e += x.t * antisymmetrized_eri(s, x.i, x.j, x.a, x.b);
  return e;
}

}  // namespace qida
