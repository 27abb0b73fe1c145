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

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "qida/ansatz.hpp"
#include "qida/encoding.hpp"
#include "qida/error.hpp"
#include "qida/harness.hpp"
#include "qida/meanfield.hpp"
#include "qida/states.hpp"
#include "qida/vqe.hpp"
#include "test_support.hpp"

namespace qida {
namespace {

using std::numbers::pi;

// Full 2^n x 2^n matrix of a one-qubit gate, qubit 0 = least significant.
Eigen::MatrixXd embed(const Eigen::Matrix2d& g, int q, int n) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
  for (int k = n - 1; k >= 0; --k) {
    const Eigen::MatrixXd f = k == q ? Eigen::MatrixXd(g) : Eigen::MatrixXd::Identity(2, 2);
    Eigen::MatrixXd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        next.block(2 * i, 2 * j, 2, 2) = out(i, j) * f;
    out = next;
  }
  return out;
}

Eigen::MatrixXd cnot_matrix(int c, int t, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) m(((b >> c) & 1) ? (b ^ (Eigen::Index{1} << t)) : b, b) = 1;
  return m;
}

Eigen::VectorXd oracle_state(const CircuitSpec& c, const std::vector<double>& params) {
  const int n = c.n_qubits;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(Eigen::Index{1} << n);
  v[0] = 1.0;
  for (const auto& g : c.gates) {
    if (g.kind == Gate::Kind::RY) {
      const double th = params[g.param];
      Eigen::Matrix2d r;
      r << std::cos(th / 2), -std::sin(th / 2), std::sin(th / 2), std::cos(th / 2);
      v = embed(r, g.q0, n) * v;
    } else {
      v = cnot_matrix(g.q0, g.q1, n) * v;
    }
  }
  return v;
}

std::vector<double> random_params(int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-pi, pi);
  std::vector<double> p(k);
  for (auto& x : p) x = u(rng);
  return p;
}

// Random real Hamiltonian: words with an even number of Y factors.
PauliHamiltonian random_real_hamiltonian(int n, int n_terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> bits(0, (std::uint64_t{1} << n) - 1);
  std::normal_distribution<double> g;
  PauliSum sum;
  while (static_cast<int>(sum.terms().size()) < n_terms) {
    const PauliWord w{bits(rng), bits(rng)};
    if (std::popcount(w.x & w.z) % 2 == 0) sum.add(w, g(rng));
  }
  return to_hamiltonian(sum, n);
}

EntanglerBlock empty_block(int n) {
  EntanglerBlock b;
  b.n_qubits = n;
  return b;
}

TEST(Simulate, MatchesDenseGateOracle) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    const CircuitSpec c = build_circuit(random_entangler(n, trial), 1 + trial % 3, n,
                                        trial % 2 ? RotationPlacement::AllQubits
                                                  : RotationPlacement::TouchedQubits);
    const auto p = random_params(c.parameter_count, rng);
    std::vector<double> psi;
    simulate_real(c, p, psi);
    const Eigen::VectorXd ref = oracle_state(c, p);
    ASSERT_EQ(psi.size(), static_cast<std::size_t>(ref.size()));
    for (std::size_t i = 0; i < psi.size(); ++i) EXPECT_NEAR(psi[i], ref[i], 1e-13);
  }
}

TEST(Simulate, ZeroParametersGiveVacuum) {
  const CircuitSpec c = build_circuit(ladder(6), 2, 6);
  const Statevector psi = simulate(c, std::vector<double>(c.parameter_count, 0.0));
  EXPECT_EQ(psi.amplitudes[0], Complex(1.0, 0.0));
  EXPECT_NEAR(psi.norm(), 1.0, 1e-15);
}

TEST(Simulate, NormAndRealClosureForRandomParameters) {
  std::mt19937_64 rng(2);
  for (int n = 2; n <= 10; ++n) {
    const CircuitSpec c = build_circuit(random_entangler(n, n), 3, n);
    const Statevector psi = simulate(c, random_params(c.parameter_count, rng));
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    double im = 0.0;
    for (const auto& a : psi.amplitudes) im = std::max(im, std::abs(a.imag()));
    EXPECT_LT(im, 1e-14);
  }
}

TEST(Simulate, LengthMismatchIsRejected) {
  const CircuitSpec c = build_circuit(ladder(3), 1, 3);
  std::vector<double> psi;
  EXPECT_THROW(simulate_real(c, std::vector<double>(c.parameter_count + 1), psi), InputError);
}

TEST(Energy, VacuumGivesCoreEnergy) {
  const IntegralSet s = read_fcidump(test::data_path("h2_631g.fcidump"));
  const PauliHamiltonian h = build_hamiltonian(s);
  const CircuitSpec c = build_circuit(ladder(8), 1, 8);
  EXPECT_NEAR(energy(c, std::vector<double>(c.parameter_count, 0.0), h), s.core_energy(), 1e-12);
}

TEST(Energy, HartreeFockParameters) {
  for (const auto& name : test::all_fixtures()) {
    SCOPED_TRACE(name);
    const IntegralSet s = read_fcidump(test::data_path(name + ".fcidump"));
    const PauliHamiltonian h = build_hamiltonian(s);
    const int M = s.n_orb(), n = 2 * M;
    const CircuitSpec c = build_circuit(empty_block(n), 1, n);
    std::vector<double> p(c.parameter_count, 0.0);
    for (int k = 0; k < s.n_elec() / 2; ++k) p[k] = p[M + k] = pi;
    const Statevector hf = hf_statevector(n, s.n_elec());
    EXPECT_NEAR(std::abs(inner(hf, simulate(c, p))), 1.0, 1e-14);
    EXPECT_NEAR(energy(c, p, h), hf_energy(s), 1e-10);
  }
}

TEST(Energy, FlipOperatorAndPauliOverloadsAgreeAndRespectBound) {
  const IntegralSet s = read_fcidump(test::data_path("lih_sto3g.fcidump"));
  const PauliHamiltonian h = build_hamiltonian(s);
  const kernels::FlipOperator F = h.compile();
  const double e_fci = test::reference().at("lih_sto3g").at("e_fci").get<double>();
  std::mt19937_64 rng(3);
  // Without a particle-number constraint the bound is the full-space minimum.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense(), Eigen::EigenvaluesOnly);
  const double e_min = es.eigenvalues()[0];
  EXPECT_LE(e_min, e_fci + 1e-10);
  for (int trial = 0; trial < 20; ++trial) {
    const CircuitSpec c = build_circuit(random_entangler(h.n_qubits, trial), 2, h.n_qubits);
    const auto p = random_params(c.parameter_count, rng);
    const double e = energy(c, p, F);
    EXPECT_NEAR(e, energy(c, p, h), 1e-11);
    EXPECT_GE(e, e_min - 1e-10);
  }
}

TEST(Energy, DimensionMismatchIsRejected) {
  const PauliHamiltonian h = build_hamiltonian(read_fcidump(test::data_path("h2_sto3g.fcidump")));
  const CircuitSpec c = build_circuit(ladder(6), 1, 6);
  EXPECT_THROW(energy(c, std::vector<double>(c.parameter_count), h), InputError);
}

// Central differences with step 1e-5. The error is measured relative to
// max(|g|, 1) so that components near zero are judged on the O(1) scale of
// the Hamiltonian rather than on their own vanishing magnitude.
TEST(Gradient, AdjointMatchesCentralDifferences) {
  std::mt19937_64 rng(4);
  const double step = 1e-5;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 7;
    const PauliHamiltonian h = random_real_hamiltonian(n, 3 * n, rng);
    const CircuitSpec c = build_circuit(random_entangler(n, rng()), 1 + trial % 4, n,
                                        trial % 3 ? RotationPlacement::TouchedQubits
                                                  : RotationPlacement::AllQubits);
    auto p = random_params(c.parameter_count, rng);
    const std::vector<double> g = gradient(c, p, h);
    ASSERT_EQ(static_cast<int>(g.size()), c.parameter_count);
    for (int k = 0; k < c.parameter_count; ++k) {
      const double keep = p[k];
      p[k] = keep + step;
      const double ep = energy(c, p, h);
      p[k] = keep - step;
      const double em = energy(c, p, h);
      p[k] = keep;
      const double fd = (ep - em) / (2 * step);
      const double rel = std::abs(g[k] - fd) / std::max(std::abs(g[k]), 1.0);
      worst = std::max(worst, rel);
      EXPECT_LT(rel, 1e-6) << "trial " << trial << " param " << k;
    }
  }
  RecordProperty("worst_relative_error", std::to_string(worst));
}

TEST(Gradient, FlipOperatorPathMatchesPauliPath) {
  const PauliHamiltonian h = build_hamiltonian(read_fcidump(test::data_path("h2_631g.fcidump")));
  const kernels::FlipOperator F = h.compile();
  std::mt19937_64 rng(5);
  const CircuitSpec c = build_circuit(ladder(8), 2, 8);
  const auto p = random_params(c.parameter_count, rng);
  std::vector<double> g1;
  const double e = energy_and_gradient(c, p, F, g1);
  EXPECT_NEAR(e, energy(c, p, h), 1e-12);
  const auto g2 = gradient(c, p, h);
  for (std::size_t k = 0; k < g1.size(); ++k) EXPECT_NEAR(g1[k], g2[k], 1e-12);
}

TEST(Gradient, ZeroHamiltonianGivesZeroGradient) {
  PauliHamiltonian h;
  h.n_qubits = 4;
  std::mt19937_64 rng(6);
  const CircuitSpec c = build_circuit(ladder(4), 2, 4);
  for (double g : gradient(c, random_params(c.parameter_count, rng), h)) EXPECT_EQ(g, 0.0);
}

TEST(Minimize, SingleQubitZ) {
  PauliSum sum;
  sum.add(parse_pauli_word("Z"), 1.0);
  const PauliHamiltonian h = to_hamiltonian(sum, 1);
  const CircuitSpec c = build_circuit(empty_block(1), 1, 1);
  ASSERT_EQ(c.parameter_count, 1);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const VqeRun r = minimize(c, h, seed);
    EXPECT_NEAR(r.final_energy, -1.0, 1e-9);
    EXPECT_TRUE(r.converged);
    EXPECT_FALSE(r.failed);
    EXPECT_NEAR(std::abs(std::remainder(r.final_params[0], 2 * pi)), pi, 1e-4);
  }
}

TEST(Minimize, SeedDeterminesRun) {
  const PauliHamiltonian h = build_hamiltonian(read_fcidump(test::data_path("h2_631g.fcidump")));
  const CircuitSpec c = build_circuit(ladder(8), 1, 8);
  const VqeRun a = minimize(c, h, 11), b = minimize(c, h, 11), d = minimize(c, h, 12);
  EXPECT_EQ(a.initial_params, b.initial_params);
  EXPECT_EQ(a.final_params, b.final_params);
  EXPECT_EQ(a.final_energy, b.final_energy);
  EXPECT_EQ(a.energy_trace, b.energy_trace);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_NE(a.initial_params, d.initial_params);
  for (double x : a.initial_params) {
    EXPECT_GE(x, -pi);
    EXPECT_LT(x, pi);
  }
}

TEST(Minimize, ImprovesMonotonicallyAndRespectsBound) {
  const IntegralSet s = read_fcidump(test::data_path("h2_631g.fcidump"));
  const PauliHamiltonian h = build_hamiltonian(s);
  const double e_fci = test::reference().at("h2_631g").at("e_fci").get<double>();
  const CircuitSpec c = build_circuit(ladder(8), 2, 8);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const VqeRun r = minimize(c, h, seed);
    EXPECT_LE(r.final_energy, energy(c, r.initial_params, h) + 1e-14);
    for (std::size_t k = 1; k < r.energy_trace.size(); ++k)
      EXPECT_LE(r.energy_trace[k], r.energy_trace[k - 1] + 1e-14);
    EXPECT_NEAR(r.final_energy, energy(c, r.final_params, h), 1e-12);
    EXPECT_GE(r.final_energy, e_fci - 1e-7);
    if (r.converged) {
      double gmax = 0.0;
      for (double g : gradient(c, r.final_params, h)) gmax = std::max(gmax, std::abs(g));
      EXPECT_LT(gmax, 1e-3);
    }
  }
}

TEST(Minimize, GradientVanishesAtConvergedMinimum) {
  PauliSum sum;
  sum.add(parse_pauli_word("ZZ"), 0.5);
  sum.add(parse_pauli_word("XI"), -0.3);
  sum.add(parse_pauli_word("IX"), 0.2);
  const PauliHamiltonian h = to_hamiltonian(sum, 2);
  const CircuitSpec c = build_circuit(ladder(2), 2, 2);
  OptimizerOptions opts;
  opts.energy_tolerance = 0.0;  // stop on the gradient test only
  const VqeRun r = minimize(c, h, 3, opts);
  double gmax = 0.0;
  for (double g : gradient(c, r.final_params, h)) gmax = std::max(gmax, std::abs(g));
  EXPECT_LT(gmax, 1e-6);
}

TEST(Minimize, ParticleNumberIsRecorded) {
  const CircuitSpec c = build_circuit(empty_block(4), 1, 4);
  PauliHamiltonian h;
  h.n_qubits = 4;
  std::vector<double> psi;
  std::vector<double> p{pi, 0, pi, 0};
  simulate_real(c, p, psi);
  EXPECT_NEAR(particle_number(psi), 2.0, 1e-14);
  p = {pi / 2, 0, 0, 0};
  simulate_real(c, p, psi);
  EXPECT_NEAR(particle_number(psi), 0.5, 1e-14);
}

TEST(RunBatch, SeedsOrderAndWorkerCountIndependence) {
  const IntegralSet s = read_fcidump(test::data_path("h2_631g.fcidump"));
  const kernels::FlipOperator F = build_hamiltonian(s).compile();
  const double e_fci = test::reference().at("h2_631g").at("e_fci").get<double>();
  const CircuitSpec c = build_circuit(ladder(8), 1, 8);
  const auto one = run_batch(c, F, 4, 100, 1);
  const auto many = run_batch(c, F, 4, 100, 3);
  ASSERT_EQ(one.size(), 4u);
  for (std::size_t k = 0; k < one.size(); ++k) {
    EXPECT_EQ(one[k].seed, 100 + k);
    EXPECT_EQ(one[k].final_energy, many[k].final_energy);
    EXPECT_EQ(one[k].final_params, many[k].final_params);
    EXPECT_GE(one[k].final_energy, e_fci - 1e-7);
  }
  const VqeRun single = minimize(c, F, 100);
  EXPECT_EQ(run_batch(c, F, 1, 100)[0].final_energy, single.final_energy);
  EXPECT_THROW(run_batch(c, F, 0, 1), RangeError);
}

TEST(RunBatch, CsvSchema) {
  std::vector<VqeRun> runs(2);
  runs[0].seed = 7;
  runs[0].final_energy = -1.5;
  runs[0].iterations = 12;
  runs[0].converged = true;
  runs[0].n_expectation = 2.0;
  runs[1].seed = 8;
  runs[1].final_energy = -1.0;
  std::ostringstream out;
  write_runs_csv(runs, -1.0, -2.0, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "seed,final_energy,pct_corr,iterations,converged,n_expectation");
  std::getline(in, line);
  EXPECT_EQ(line, "7,-1.5,50,12,1,2");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 8), "8,-1,0,0");
}

// Ladder of depth 3 in the MP2 natural-orbital basis: the best of 300
// restarts is expected to recover at least 99% of the correlation energy.
TEST(Minimize, H2LadderDepthThreeReachesFullCorrelation) {
  const IntegralSet s = read_fcidump(test::data_path("h2_631g.fcidump"));
  const PreparedSystem sys = prepare_system(s, StateMode::MP2, BasisMode::NO);
  const kernels::FlipOperator F = sys.hamiltonian.compile();
  const double e_hf = sys.e_hf, e_fci = sys.e_fci;
  const CircuitSpec c = build_circuit(ladder(8), 3, 8);
  const auto runs = run_batch(c, F, 300, 1);
  double best = 0.0;
  for (const auto& r : runs) best = std::max(best, 100 * (r.final_energy - e_hf) / (e_fci - e_hf));
  RecordProperty("best_pct", std::to_string(best));
  EXPECT_GE(best, 99.0);
}

}  // namespace
}  // namespace qida
