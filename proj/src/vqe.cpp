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

#include "qida/vqe.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include <Eigen/Dense>

#include "qida/error.hpp"
#include "qida/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qida {

namespace {

void check_params(const CircuitSpec& c, std::span<const double> params) {
  if (static_cast<int>(params.size()) != c.parameter_count)
    throw InputError("expected " + std::to_string(c.parameter_count) +
                     " parameters, got " + std::to_string(params.size()));
}

void check_dims(const CircuitSpec& c, const kernels::FlipOperator& h) {
  if (h.n_qubits() != c.n_qubits)
    throw InputError("Hamiltonian acts on " + std::to_string(h.n_qubits()) +
                     " qubits but the circuit has " + std::to_string(c.n_qubits));
}

// Line-search and curvature guards of the quasi-Newton loop.
constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 40;
constexpr double kCurvatureFloor = 1e-12;

}  // namespace

void simulate_real(const CircuitSpec& c, std::span<const double> params,
                   std::vector<double>& psi) {
  check_params(c, params);
  psi.assign(std::size_t{1} << c.n_qubits, 0.0);
  psi[0] = 1.0;
  std::span<double> s(psi);
  for (const Gate& g : c.gates) {
    if (g.kind == Gate::Kind::RY)
      kernels::ry<double>(s, g.q0, params[g.param]);
    else
      kernels::cnot<double>(s, g.q0, g.q1);
  }
}

Statevector simulate(const CircuitSpec& c, std::span<const double> params) {
  std::vector<double> psi;
  simulate_real(c, params, psi);
  Statevector out(c.n_qubits);
  for (std::size_t i = 0; i < psi.size(); ++i) out.amplitudes[i] = psi[i];
  return out;
}

double energy(const CircuitSpec& c, std::span<const double> params,
              const kernels::FlipOperator& h) {
  check_dims(c, h);
  std::vector<double> psi, scratch(std::size_t{1} << c.n_qubits);
  simulate_real(c, params, psi);
  return h.expectation<double>(psi, scratch);
}

double energy(const CircuitSpec& c, std::span<const double> params,
              const PauliHamiltonian& h) {
  return energy(c, params, h.compile());
}

double energy_and_gradient(const CircuitSpec& c, std::span<const double> params,
                           const kernels::FlipOperator& h, std::vector<double>& grad) {
  check_dims(c, h);
  std::vector<double> psi, lambda(std::size_t{1} << c.n_qubits);
  simulate_real(c, params, psi);
  h.apply<double>(psi, lambda);
  const double e = kernels::dot<double>(psi, lambda);

  grad.assign(c.parameter_count, 0.0);
  std::span<double> ps(psi), ls(lambda);
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    const Gate& g = *it;
    if (g.kind == Gate::Kind::CNOT) {
      kernels::cnot<double>(ps, g.q0, g.q1);
      kernels::cnot<double>(ls, g.q0, g.q1);
      continue;
    }
    grad[g.param] = kernels::ry_generator_overlap(lambda, psi, g.q0);
    kernels::ry<double>(ps, g.q0, -params[g.param]);
    kernels::ry<double>(ls, g.q0, -params[g.param]);
  }
  return e;
}

std::vector<double> gradient(const CircuitSpec& c, std::span<const double> params,
                             const PauliHamiltonian& h) {
  std::vector<double> g;
  energy_and_gradient(c, params, h.compile(), g);
  return g;
}

double particle_number(std::span<const double> psi) {
  double n = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) n += psi[i] * psi[i] * std::popcount(i);
  return n;
}

VqeRun minimize(const CircuitSpec& c, const kernels::FlipOperator& h, std::uint64_t seed,
                const OptimizerOptions& opts) {
  check_dims(c, h);
  const int n = c.parameter_count;
  VqeRun run;
  run.seed = seed;
  Rng rng(seed);
  run.initial_params.resize(n);
  for (double& t : run.initial_params) t = rng.uniform(-std::numbers::pi, std::numbers::pi);

  using Vec = Eigen::VectorXd;
  Vec x = Eigen::Map<const Vec>(run.initial_params.data(), n);
  std::vector<double> gbuf;
  double e = energy_and_gradient(c, {x.data(), static_cast<std::size_t>(n)}, h, gbuf);
  Vec g = Eigen::Map<Vec>(gbuf.data(), n);
  run.energy_trace.push_back(e);
  if (!std::isfinite(e)) {
    run.failed = true;
    run.final_params = run.initial_params;
    run.final_energy = e;
    return run;
  }

  Eigen::MatrixXd Hinv = Eigen::MatrixXd::Identity(n, n);
  int it = 0;
  bool restarted = false;
  while (it < opts.max_iterations) {
    if (n == 0 || g.lpNorm<Eigen::Infinity>() < opts.gradient_tolerance) {
      run.converged = true;
      break;
    }
    Vec d = -Hinv * g;
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      Hinv.setIdentity();
      d = -g;
      slope = -g.squaredNorm();
    }

    double alpha = 1.0;
    Vec x_new;
    double e_new = 0.0;
    bool accepted = false;
    for (int k = 0; k < kMaxBacktracks; ++k) {
      x_new = x + alpha * d;
      e_new = energy_and_gradient(c, {x_new.data(), static_cast<std::size_t>(n)}, h, gbuf);
      if (!std::isfinite(e_new)) {
        run.failed = true;
        break;
      }
      if (e_new <= e + kArmijo * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (run.failed) break;
    if (!accepted) {
      // A stale curvature model can give a useless direction; retry once
      // along steepest descent before declaring stagnation.
      if (restarted) break;
      restarted = true;
      Hinv.setIdentity();
      continue;
    }
    restarted = false;
    ++it;

    const Vec g_new = Eigen::Map<Vec>(gbuf.data(), n);
    const Vec s = x_new - x;
    const Vec y = g_new - g;
    const double sy = s.dot(y);
    if (sy > kCurvatureFloor * s.norm() * y.norm()) {
      const double rho = 1.0 / sy;
      const Vec Hy = Hinv * y;
      const double yHy = y.dot(Hy);
      Hinv += ((sy + yHy) * rho * rho) * (s * s.transpose()) -
              rho * (Hy * s.transpose() + s * Hy.transpose());
    }
    const double de = e - e_new;
    x = x_new;
    g = g_new;
    e = e_new;
    run.energy_trace.push_back(e);
    if (std::abs(de) < opts.energy_tolerance) {
      run.converged = true;
      break;
    }
  }

  run.iterations = it;
  run.final_params.assign(x.data(), x.data() + n);
  if (run.failed) {
    run.converged = false;
    run.final_energy = std::numeric_limits<double>::quiet_NaN();
    return run;
  }
  run.final_energy = e;
  std::vector<double> psi;
  simulate_real(c, run.final_params, psi);
  run.n_expectation = particle_number(psi);
  return run;
}

VqeRun minimize(const CircuitSpec& c, const PauliHamiltonian& h, std::uint64_t seed,
                const OptimizerOptions& opts) {
  return minimize(c, h.compile(), seed, opts);
}

std::vector<VqeRun> run_batch(const CircuitSpec& c, const kernels::FlipOperator& h,
                              int n_restarts, std::uint64_t base_seed, int jobs,
                              const OptimizerOptions& opts) {
  if (n_restarts < 1) throw RangeError("restart count must be at least 1");
  check_dims(c, h);
  std::vector<VqeRun> runs(n_restarts);
  int threads = 1;
#ifdef _OPENMP
  threads = jobs > 0 ? jobs : omp_get_max_threads();
#endif
  (void)jobs;
  // Each slot is written by exactly one run; kernels inside a run stay
  // serial because nested parallelism is off.
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1)
  for (int k = 0; k < n_restarts; ++k)
    runs[k] = minimize(c, h, base_seed + static_cast<std::uint64_t>(k), opts);
  return runs;
}

void write_runs_csv(std::span<const VqeRun> runs, double e_hf, double e_fci,
                    std::ostream& out) {
  out << "seed,final_energy,pct_corr,iterations,converged,n_expectation\n";
  const double denom = e_fci - e_hf;
  char buf[256];
  for (const VqeRun& r : runs) {
    const double pct = 100.0 * (r.final_energy - e_hf) / denom + 0.0;  // no "-0"
    std::snprintf(buf, sizeof buf, "%llu,%.12g,%.12g,%d,%d,%.12g\n",
                  static_cast<unsigned long long>(r.seed), r.final_energy, pct,
                  r.iterations, r.converged ? 1 : 0, r.n_expectation);
    out << buf;
  }
}

}  // namespace qida
