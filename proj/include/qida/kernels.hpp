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
 * @file kernels.hpp
 * @brief Data-parallel statevector kernels.
 *
 * Every kernel in qida::kernels is an OpenMP loop over amplitudes. The
 * namespace qida::kernels::serial holds straightforward single-threaded
 * reference versions; they are kept for the test suite and the benchmark
 * and are not used on hot paths.
 *
 * Results never depend on the thread count: each output element is written
 * by exactly one iteration, and reductions sum a fixed number of chunks in
 * a fixed order.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "qida/pauli.hpp"

namespace qida::kernels {

/// Below this many amplitudes the loops run on the calling thread.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 12;
/// Fixed partition used by every reduction.
inline constexpr std::size_t kReductionChunks = 64;

namespace detail {

inline std::size_t insert_zero(std::size_t k, int bit) {
  const std::size_t low = k & ((std::size_t{1} << bit) - 1);
  return ((k >> bit) << (bit + 1)) | low;
}

template <class T>
inline T conj_if_complex(const T& v) {
  if constexpr (std::is_same_v<T, Complex>)
    return std::conj(v);
  else
    return v;
}

/// (-1)^{number of set bits of i below bit p}
inline double parity_below(std::uint64_t i, int p) {
  return (std::popcount(i & ((std::uint64_t{1} << p) - 1)) & 1) ? -1.0 : 1.0;
}

}  // namespace detail

/// R_Y(theta) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]] on qubit q.
template <class T>
void ry(std::span<T> psi, int q, double theta) {
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  const std::size_t half = psi.size() / 2;
  const std::size_t bit = std::size_t{1} << q;
  const std::ptrdiff_t nhalf = static_cast<std::ptrdiff_t>(half);
#pragma omp parallel for schedule(static) if (psi.size() >= kParallelThreshold)
  for (std::ptrdiff_t k = 0; k < nhalf; ++k) {
    const std::size_t i0 = detail::insert_zero(static_cast<std::size_t>(k), q);
    const std::size_t i1 = i0 | bit;
    const T a0 = psi[i0], a1 = psi[i1];
    psi[i0] = c * a0 - s * a1;
    psi[i1] = s * a0 + c * a1;
  }
}

/// CNOT with the given control and target.
template <class T>
void cnot(std::span<T> psi, int control, int target) {
  const int lo = std::min(control, target), hi = std::max(control, target);
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  const std::ptrdiff_t quarter = static_cast<std::ptrdiff_t>(psi.size() / 4);
#pragma omp parallel for schedule(static) if (psi.size() >= kParallelThreshold)
  for (std::ptrdiff_t k = 0; k < quarter; ++k) {
    const std::size_t base =
        detail::insert_zero(detail::insert_zero(static_cast<std::size_t>(k), lo), hi) |
        cbit;
    std::swap(psi[base], psi[base | tbit]);
  }
}

/// <lambda| (-iY_q) |psi> for real registers.
inline double ry_generator_overlap(std::span<const double> lambda,
                                   std::span<const double> psi, int q) {
  const std::size_t half = psi.size() / 2;
  const std::size_t bit = std::size_t{1} << q;
  const std::size_t chunk = (half + kReductionChunks - 1) / kReductionChunks;
  double partial[kReductionChunks] = {};
  const std::ptrdiff_t nchunks = static_cast<std::ptrdiff_t>(kReductionChunks);
#pragma omp parallel for schedule(static) if (psi.size() >= kParallelThreshold)
  for (std::ptrdiff_t c = 0; c < nchunks; ++c) {
    const std::size_t begin = std::min(half, static_cast<std::size_t>(c) * chunk);
    const std::size_t end = std::min(half, begin + chunk);
    double acc = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
      const std::size_t i0 = detail::insert_zero(k, q), i1 = i0 | bit;
      acc += lambda[i1] * psi[i0] - lambda[i0] * psi[i1];
    }
    partial[c] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

/// sum_i conj(a_i) b_i
template <class T>
T dot(std::span<const T> a, std::span<const T> b) {
  const std::size_t n = a.size();
  const std::size_t chunk = (n + kReductionChunks - 1) / kReductionChunks;
  T partial[kReductionChunks] = {};
  const std::ptrdiff_t nchunks = static_cast<std::ptrdiff_t>(kReductionChunks);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t c = 0; c < nchunks; ++c) {
    const std::size_t begin = std::min(n, static_cast<std::size_t>(c) * chunk);
    const std::size_t end = std::min(n, begin + chunk);
    T acc{};
    for (std::size_t i = begin; i < end; ++i)
      acc += detail::conj_if_complex(a[i]) * b[i];
    partial[c] = acc;
  }
  T total{};
  for (const T& p : partial) total += p;
  return total;
}

/// out += coeff * a+_p a_q in, Jordan-Wigner signs included.
template <class T>
void hopping(std::span<const T> in, std::span<T> out, int p, int q, double coeff) {
  const std::uint64_t pb = std::uint64_t{1} << p, qb = std::uint64_t{1} << q;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for schedule(static) if (in.size() >= kParallelThreshold)
  for (std::ptrdiff_t jj = 0; jj < n; ++jj) {
    const std::uint64_t j = static_cast<std::uint64_t>(jj);
    if (!(j & pb)) continue;
    if (p == q) {
      out[j] += coeff * in[j];
      continue;
    }
    if (j & qb) continue;
    const std::uint64_t i = j ^ pb ^ qb;  // source: q occupied, p empty
    const std::uint64_t mid = i ^ qb;
    const double sign = detail::parity_below(i, q) * detail::parity_below(mid, p);
    out[j] += (coeff * sign) * in[i];
  }
}

/// Real Hamiltonian compiled into bit-flip groups:
///   (H psi)[j] = sum_g coeff_g[j] * psi[j ^ flip_g].
/// Terms sharing an X mask collapse into one dense coefficient vector
/// indexed by the destination amplitude.
class FlipOperator {
 public:
  struct Group {
    std::uint64_t flip = 0;
    std::vector<double> coeff;
  };

  FlipOperator() = default;
  FlipOperator(int n_qubits, std::span<const PauliTerm> terms);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return std::size_t{1} << n_qubits_; }
  const std::vector<Group>& groups() const noexcept { return groups_; }

  /// out = H in; in and out must not alias.
  template <class T>
  void apply(std::span<const T> in, std::span<T> out) const {
    constexpr std::size_t kBlock = 1024;
    const std::size_t n = in.size();
    const std::ptrdiff_t nblocks = static_cast<std::ptrdiff_t>((n + kBlock - 1) / kBlock);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (std::ptrdiff_t b = 0; b < nblocks; ++b) {
      const std::size_t begin = static_cast<std::size_t>(b) * kBlock;
      const std::size_t end = std::min(n, begin + kBlock);
      for (std::size_t j = begin; j < end; ++j) out[j] = T{};
      for (const Group& g : groups_) {
        const double* c = g.coeff.data();
        const std::uint64_t x = g.flip;
        for (std::size_t j = begin; j < end; ++j) out[j] += c[j] * in[j ^ x];
      }
    }
  }

  /// <psi|H|psi> with scratch storage for H psi.
  template <class T>
  double expectation(std::span<const T> psi, std::span<T> scratch) const {
    apply<T>(psi, scratch);
    return std::real(dot<T>(psi, std::span<const T>(scratch.data(), scratch.size())));
  }

 private:
  int n_qubits_ = 0;
  std::vector<Group> groups_;
};

namespace serial {

template <class T>
void ry(std::span<T> psi, int q, double theta) {
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (i & bit) continue;
    const T a0 = psi[i], a1 = psi[i | bit];
    psi[i] = c * a0 - s * a1;
    psi[i | bit] = s * a0 + c * a1;
  }
}

template <class T>
void cnot(std::span<T> psi, int control, int target) {
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < psi.size(); ++i)
    if ((i & cbit) && !(i & tbit)) std::swap(psi[i], psi[i | tbit]);
}

inline double ry_generator_overlap(std::span<const double> lambda,
                                   std::span<const double> psi, int q) {
  const std::size_t bit = std::size_t{1} << q;
  double acc = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i)
    if (!(i & bit)) acc += lambda[i | bit] * psi[i] - lambda[i] * psi[i | bit];
  return acc;
}

template <class T>
T dot(std::span<const T> a, std::span<const T> b) {
  T acc{};
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += detail::conj_if_complex(a[i]) * b[i];
  return acc;
}

/// out = sum_t c_t P_t in, one term at a time with explicit phases.
void apply_pauli_terms(std::span<const PauliTerm> terms, std::span<const Complex> in,
                       std::span<Complex> out);

}  // namespace serial

}  // namespace qida::kernels
