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

// Serial reference kernels against their OpenMP counterparts. The argument
// of each benchmark is the qubit count.

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "qida/encoding.hpp"
#include "qida/fcidump.hpp"
#include "qida/kernels.hpp"

namespace {

using qida::Complex;
namespace k = qida::kernels;

std::vector<double> random_real(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> v(std::size_t{1} << n);
  for (auto& x : v) x = g(rng);
  return v;
}

template <bool Parallel>
void BM_Ry(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  auto psi = random_real(n, 1);
  for (auto _ : st) {
    for (int q = 0; q < n; ++q) {
      if constexpr (Parallel) k::ry<double>(psi, q, 0.3);
      else k::serial::ry<double>(psi, q, 0.3);
    }
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * n * static_cast<std::int64_t>(psi.size()));
}

template <bool Parallel>
void BM_Cnot(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  auto psi = random_real(n, 2);
  for (auto _ : st) {
    for (int q = 0; q + 1 < n; ++q) {
      if constexpr (Parallel) k::cnot<double>(psi, q, q + 1);
      else k::serial::cnot<double>(psi, q, q + 1);
    }
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * (n - 1) * static_cast<std::int64_t>(psi.size()));
}

template <bool Parallel>
void BM_Dot(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto a = random_real(n, 3), b = random_real(n, 4);
  for (auto _ : st) {
    double r = Parallel ? k::dot<double>(a, b) : k::serial::dot<double>(a, b);
    benchmark::DoNotOptimize(r);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(a.size()));
}

template <bool Parallel>
void BM_RyGeneratorOverlap(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto lam = random_real(n, 5), psi = random_real(n, 6);
  for (auto _ : st) {
    double acc = 0.0;
    for (int q = 0; q < n; ++q)
      acc += Parallel ? k::ry_generator_overlap(lam, psi, q)
                      : k::serial::ry_generator_overlap(lam, psi, q);
    benchmark::DoNotOptimize(acc);
  }
  st.SetItemsProcessed(st.iterations() * n * static_cast<std::int64_t>(psi.size()));
}

// Hamiltonian application on the molecular fixtures: grouped flip operator
// versus one Pauli term at a time.
const qida::PauliHamiltonian& hamiltonian(int index) {
  static const char* names[] = {"h2_631g", "lih_sto3g", "h2o_sto3g", "nh3_sto3g"};
  static std::vector<qida::PauliHamiltonian> cache = [] {
    std::vector<qida::PauliHamiltonian> out;
    for (const char* name : names)
      out.push_back(qida::build_hamiltonian(
          qida::read_fcidump(std::string(QIDA_BENCH_DATA_DIR) + "/" + name + ".fcidump")));
    return out;
  }();
  return cache.at(index);
}

template <bool Parallel>
void BM_HamiltonianApply(benchmark::State& st) {
  const auto& h = hamiltonian(static_cast<int>(st.range(0)));
  const std::size_t dim = std::size_t{1} << h.n_qubits;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<Complex> in(dim), out(dim);
  for (auto& x : in) x = {g(rng), 0.0};
  const k::FlipOperator op = h.compile();
  for (auto _ : st) {
    if constexpr (Parallel) op.apply<Complex>(in, out);
    else k::serial::apply_pauli_terms(h.terms, in, out);
    benchmark::ClobberMemory();
  }
  st.SetLabel(std::to_string(h.n_qubits) + " qubits, " + std::to_string(h.terms.size()) +
              " terms");
}

}  // namespace

BENCHMARK(BM_Ry<false>)->DenseRange(12, 20, 4);
BENCHMARK(BM_Ry<true>)->DenseRange(12, 20, 4);
BENCHMARK(BM_Cnot<false>)->DenseRange(12, 20, 4);
BENCHMARK(BM_Cnot<true>)->DenseRange(12, 20, 4);
BENCHMARK(BM_Dot<false>)->DenseRange(12, 20, 4);
BENCHMARK(BM_Dot<true>)->DenseRange(12, 20, 4);
BENCHMARK(BM_RyGeneratorOverlap<false>)->DenseRange(12, 20, 4);
BENCHMARK(BM_RyGeneratorOverlap<true>)->DenseRange(12, 20, 4);
BENCHMARK(BM_HamiltonianApply<false>)->DenseRange(0, 3);
BENCHMARK(BM_HamiltonianApply<true>)->DenseRange(0, 3);

BENCHMARK_MAIN();
