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

#include "qida/encoding.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "qida/error.hpp"

namespace qida {

SpinOrbitalOrder parse_spin_order(const std::string& name) {
  if (name == "blocked") return SpinOrbitalOrder::Blocked;
  throw InputError("unsupported spin-orbital order '" + name +
                   "' (only 'blocked' is implemented)");
}

std::string to_string(SpinOrbitalOrder) { return "blocked"; }

int spin_orbital_qubit(int spatial, int spin, int n_orb, SpinOrbitalOrder) {
  if (spatial < 0 || spatial >= n_orb || spin < 0 || spin > 1)
    throw RangeError("spin orbital out of range");
  return spin * n_orb + spatial;
}

double PauliHamiltonian::constant() const {
  for (const auto& t : terms)
    if (t.word.x == 0 && t.word.z == 0) return t.coeff;
  return 0.0;
}

Eigen::MatrixXcd PauliHamiltonian::to_dense() const {
  if (n_qubits > 14) throw InputError("dense reconstruction limited to 14 qubits");
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : terms) {
    const Complex phase = i_power(std::popcount(t.word.x & t.word.z)) * t.coeff;
    for (std::uint64_t i = 0; i < dim; ++i) {
      const double sign = (std::popcount(t.word.z & i) & 1) ? -1.0 : 1.0;
      m(i ^ t.word.x, i) += phase * sign;
    }
  }
  return m;
}

PauliHamiltonian to_hamiltonian(const PauliSum& sum, int n_qubits) {
  PauliHamiltonian h;
  h.n_qubits = n_qubits;
  for (const auto& [w, c] : sum.terms()) {
    if (std::abs(c.imag()) > kImaginaryTolerance) {
      std::ostringstream msg;
      msg << "encoding produced imaginary coefficient " << c.imag() << " on "
          << to_string(w, n_qubits);
      throw NumericalError(msg.str());
    }
    if (std::abs(c.real()) < kPauliPruneTolerance) continue;
    h.terms.push_back({c.real(), w});
  }
  return h;
}

PauliSum jw_ladder_operator(int p, int n_qubits, bool dagger) {
  if (p < 0 || p >= n_qubits)
    throw RangeError("ladder operator index " + std::to_string(p) +
                     " outside [0, " + std::to_string(n_qubits) + ")");
  const std::uint64_t bit = std::uint64_t{1} << p;
  const std::uint64_t zstring = bit - 1;
  PauliSum op;
  // Z_{<p} X_p and Z_{<p} Y_p carry no extra phase in (x, z) form.
  op.add(PauliWord{bit, zstring}, 0.5);
  op.add(PauliWord{bit, zstring | bit}, Complex(0.0, dagger ? -0.5 : 0.5));
  return op;
}

PauliHamiltonian build_hamiltonian(const IntegralSet& s, SpinOrbitalOrder order) {
  const int M = s.n_orb();
  const int n = 2 * M;
  if (n > 62) throw InputError("too many spin orbitals for 64-bit words");

  std::vector<PauliSum> cre(n), ann(n);
  for (int p = 0; p < n; ++p) {
    cre[p] = jw_ladder_operator(p, n, true);
    ann[p] = jw_ladder_operator(p, n, false);
  }
  auto qubit = [&](int spatial, int spin) {
    return spin_orbital_qubit(spatial, spin, M, order);
  };

  PauliSum h(Complex(s.core_energy(), 0.0));
  for (int sigma = 0; sigma < 2; ++sigma)
    for (int p = 0; p < M; ++p)
      for (int q = 0; q < M; ++q) {
        const double v = s.h()(p, q);
        if (v == 0.0) continue;
        h += Complex(v) * (cre[qubit(p, sigma)] * ann[qubit(q, sigma)]);
      }

  // 1/2 sum (pq|rs) a+_{p s} a+_{r t} a_{s t} a_{q s}
  std::vector<PauliSum> cc(n * n), aa(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      cc[a * n + b] = cre[a] * cre[b];
      aa[a * n + b] = ann[a] * ann[b];
    }
  for (int sigma = 0; sigma < 2; ++sigma)
    for (int tau = 0; tau < 2; ++tau)
      for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q)
          for (int r = 0; r < M; ++r)
            for (int t = 0; t < M; ++t) {
              const double v = s.eri(p, q, r, t);
              if (v == 0.0) continue;
              const int P = qubit(p, sigma), Q = qubit(q, sigma);
              const int R = qubit(r, tau), T = qubit(t, tau);
              if (P == R || Q == T) continue;
              h += Complex(0.5 * v) * (cc[P * n + R] * aa[T * n + Q]);
            }
  return to_hamiltonian(h, n);
}

DeterminantIndex determinant_state_index(std::span<const int> occupied, int n_qubits) {
  DeterminantIndex out;
  // Apply the creation operators right to left.
  for (auto it = occupied.rbegin(); it != occupied.rend(); ++it) {
    const int q = *it;
    if (q < 0 || q >= n_qubits)
      throw RangeError("spin orbital " + std::to_string(q) + " outside register");
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (out.index & bit)
      throw InputError("spin orbital " + std::to_string(q) +
                       " occupied twice (Pauli exclusion)");
    if (std::popcount(out.index & (bit - 1)) & 1) out.phase = -out.phase;
    out.index |= bit;
  }
  return out;
}

}  // namespace qida
