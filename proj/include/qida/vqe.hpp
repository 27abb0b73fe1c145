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
 * @file vqe.hpp
 * @brief Exact statevector VQE over R_Y/CNOT circuits.
 *
 * R_Y and CNOT are real, so the optimizer works on real amplitudes. The
 * gradient is obtained by one reverse sweep (adjoint method) using
 * dR_Y(t)/dt = -(i/2) Y R_Y(t), where -iY is the real matrix [[0,-1],[1,0]].
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "qida/ansatz.hpp"
#include "qida/encoding.hpp"
#include "qida/kernels.hpp"
#include "qida/statevector.hpp"

namespace qida {

struct OptimizerOptions {
  double energy_tolerance = 1e-9;
  double gradient_tolerance = 1e-8;
  int max_iterations = 5000;
};

struct VqeRun {
  std::uint64_t seed = 0;
  std::vector<double> initial_params;
  std::vector<double> final_params;
  double final_energy = 0.0;
  int iterations = 0;
  bool converged = false;
  bool failed = false;  // a non-finite energy was met
  double n_expectation = 0.0;
  std::vector<double> energy_trace;
};

/// Applies the circuit to |0...0> in place on a real register.
void simulate_real(const CircuitSpec& c, std::span<const double> params,
                   std::vector<double>& psi);
Statevector simulate(const CircuitSpec& c, std::span<const double> params);

double energy(const CircuitSpec& c, std::span<const double> params,
              const kernels::FlipOperator& h);
double energy(const CircuitSpec& c, std::span<const double> params,
              const PauliHamiltonian& h);

/// Returns the energy and fills grad (resized to parameter_count).
double energy_and_gradient(const CircuitSpec& c, std::span<const double> params,
                           const kernels::FlipOperator& h, std::vector<double>& grad);
std::vector<double> gradient(const CircuitSpec& c, std::span<const double> params,
                             const PauliHamiltonian& h);

/// <N> = sum_i |psi_i|^2 popcount(i).
double particle_number(std::span<const double> psi);

VqeRun minimize(const CircuitSpec& c, const kernels::FlipOperator& h, std::uint64_t seed,
                const OptimizerOptions& opts = {});
VqeRun minimize(const CircuitSpec& c, const PauliHamiltonian& h, std::uint64_t seed,
                const OptimizerOptions& opts = {});

/// Seeds base_seed .. base_seed + n_restarts - 1, ordered by seed.
/// jobs <= 0 uses the OpenMP default.
std::vector<VqeRun> run_batch(const CircuitSpec& c, const kernels::FlipOperator& h,
                              int n_restarts, std::uint64_t base_seed, int jobs = 0,
                              const OptimizerOptions& opts = {});

/// Header `seed,final_energy,pct_corr,iterations,converged,n_expectation`.
void write_runs_csv(std::span<const VqeRun> runs, double e_hf, double e_fci,
                    std::ostream& out);

}  // namespace qida
