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
#include <random>

#include <gtest/gtest.h>

#include "qida/encoding.hpp"
#include "qida/error.hpp"
#include "qida/kernels.hpp"
#include "qida/meanfield.hpp"
#include "qida/natorb.hpp"
#include "qida/states.hpp"
#include "test_support.hpp"

namespace qida {
namespace {

double expectation(const PauliHamiltonian& h, const Statevector& psi) {
  std::vector<Complex> out(psi.dim());
  kernels::serial::apply_pauli_terms(h.terms, psi.amplitudes, out);
  Complex e{};
  for (std::size_t i = 0; i < out.size(); ++i) e += std::conj(psi.amplitudes[i]) * out[i];
  return e.real();
}

OrbitalRotation random_rotation(int M, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd A(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) A(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  OrbitalRotation R;
  R.U = qr.householderQ();
  if (R.U.determinant() < 0) R.U.col(0) *= -1.0;
  return R;
}

TEST(Natorb, DiagonalRdmGivesIdentity) {
  Eigen::MatrixXd D(2, 2);
  D << 2, 0, 0, 0;
  const OrbitalRotation R = natural_orbitals(D);
  EXPECT_LT((R.U - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
  ASSERT_EQ(R.occupations.size(), 2u);
  EXPECT_NEAR(R.occupations[0], 2.0, 1e-15);
  EXPECT_NEAR(R.occupations[1], 0.0, 1e-15);
}

TEST(Natorb, FullyMixedPairRdm) {
  Eigen::MatrixXd D(2, 2);
  D << 1, 1, 1, 1;
  const OrbitalRotation R = natural_orbitals(D);
  EXPECT_NEAR(R.occupations[0], 2.0, 1e-14);
  EXPECT_NEAR(R.occupations[1], 0.0, 1e-14);
  EXPECT_LT((R.U.cwiseAbs().array() - 1.0 / std::sqrt(2.0)).abs().maxCoeff(), 1e-14);
  EXPECT_NEAR(R.U.determinant(), 1.0, 1e-14);
  EXPECT_LT((R.U.transpose() * D * R.U - Eigen::Vector2d(2, 0).asDiagonal().toDenseMatrix())
                .cwiseAbs()
                .maxCoeff(),
            1e-14);
}

TEST(Natorb, AsymmetricRdmIsRejected) {
  Eigen::MatrixXd D(2, 2);
  D << 1, 0.5, 0.1, 1;
  EXPECT_THROW(natural_orbitals(D), InputError);
  EXPECT_THROW(natural_orbitals(Eigen::MatrixXd::Zero(2, 3)), InputError);
}

TEST(Natorb, IdentityTransformLeavesIntegralsUnchanged) {
  std::mt19937_64 rng(1);
  const IntegralSet s = test::random_integrals(4, 2, rng);
  OrbitalRotation R;
  R.U = Eigen::MatrixXd::Identity(4, 4);
  const IntegralSet t = transform_integrals(s, R);
  EXPECT_LT((t.h() - s.h()).cwiseAbs().maxCoeff(), 1e-15);
  for (std::size_t k = 0; k < s.eri_packed().size(); ++k)
    EXPECT_NEAR(t.eri_packed()[k], s.eri_packed()[k], 1e-15);
  EXPECT_EQ(t.core_energy(), s.core_energy());
}

TEST(Natorb, PermutationTransformRelabelsOrbitals) {
  std::mt19937_64 rng(2);
  const IntegralSet s = test::random_integrals(3, 2, rng);
  const int perm[3] = {2, 0, 1};  // new orbital p is old orbital perm[p]
  OrbitalRotation R;
  R.U = Eigen::MatrixXd::Zero(3, 3);
  for (int p = 0; p < 3; ++p) R.U(perm[p], p) = 1.0;
  const IntegralSet t = transform_integrals(s, R);
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) {
      EXPECT_NEAR(t.h(p, q), s.h(perm[p], perm[q]), 1e-15);
      for (int r = 0; r < 3; ++r)
        for (int u = 0; u < 3; ++u)
          EXPECT_NEAR(t.eri(p, q, r, u), s.eri(perm[p], perm[q], perm[r], perm[u]), 1e-15);
    }
}

TEST(Natorb, MismatchedRotationIsRejected) {
  std::mt19937_64 rng(3);
  const IntegralSet s = test::random_integrals(3, 2, rng);
  OrbitalRotation R;
  R.U = Eigen::MatrixXd::Identity(2, 2);
  EXPECT_THROW(transform_integrals(s, R), InputError);
}

class NoFixture : public ::testing::TestWithParam<std::string> {};

TEST_P(NoFixture, FciEnergyIsInvariantUnderNaturalOrbitalTransform) {
  const IntegralSet s = read_fcidump(test::data_path(GetParam() + ".fcidump"));
  const Statevector mp2 = mp2_statevector(mp2_amplitudes(s));
  const OrbitalRotation R = natural_orbitals(one_body_rdm_spatial(mp2));
  const IntegralSet t = transform_integrals(s, R);
  const double e0 = fci_ground_state(build_hamiltonian(s), s.n_elec()).energy;
  const double e1 = fci_ground_state(build_hamiltonian(t), t.n_elec()).energy;
  EXPECT_NEAR(e1, e0, 1e-8);
  EXPECT_NEAR(e0, test::reference().at(GetParam()).at("e_fci").get<double>(), 1e-8);
}

TEST_P(NoFixture, RotatedStateKeepsEnergyNormAndParticleNumber) {
  const IntegralSet s = read_fcidump(test::data_path(GetParam() + ".fcidump"));
  const Statevector mp2 = mp2_statevector(mp2_amplitudes(s));
  const OrbitalRotation R = natural_orbitals(one_body_rdm_spatial(mp2));
  const Statevector rot = rotate_statevector(mp2, R);
  const PauliHamiltonian h0 = build_hamiltonian(s);
  const PauliHamiltonian h1 = build_hamiltonian(transform_integrals(s, R));
  EXPECT_NEAR(expectation(h1, rot), expectation(h0, mp2), 1e-9);
  EXPECT_NEAR(rot.norm(), 1.0, 1e-10);
  const Eigen::VectorXcd v = test::to_eigen(rot);
  const double n = (v.adjoint() * test::dense_number(rot.n_qubits).cast<Complex>() * v)(0).real();
  EXPECT_NEAR(n, s.n_elec(), 1e-9);
  // In its own natural orbitals the 1-RDM is diagonal with the occupations.
  const Eigen::MatrixXd D = one_body_rdm_spatial(rot);
  for (int p = 0; p < s.n_orb(); ++p) {
    EXPECT_NEAR(D(p, p), R.occupations[p], 1e-9);
    for (int q = 0; q < s.n_orb(); ++q)
      if (p != q) EXPECT_NEAR(D(p, q), 0.0, 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(SmallFixtures, NoFixture, ::testing::Values("h2_631g", "h2o_sto3g"));

TEST(Natorb, RandomRotationPreservesEnergyOfRandomState) {
  std::mt19937_64 rng(4);
  const IntegralSet s = test::random_integrals(3, 2, rng);
  const OrbitalRotation R = random_rotation(3, rng);
  const Statevector psi = test::random_state(6, rng, true);
  const Statevector rot = rotate_statevector(psi, R);
  EXPECT_NEAR(expectation(build_hamiltonian(transform_integrals(s, R)), rot),
              expectation(build_hamiltonian(s), psi), 1e-9);
}

TEST(Natorb, GivensRotationOfSingleElectron) {
  const double theta = 0.3, c = std::cos(theta), sn = std::sin(theta);
  OrbitalRotation R;
  R.U.resize(2, 2);
  R.U << c, -sn, sn, c;
  // One alpha electron in old orbital 0: a+_0 = U_00 a'+_0 + U_01 a'+_1.
  const Statevector rot = rotate_statevector(Statevector::basis_state(4, 0b0001), R);
  EXPECT_NEAR(rot.amplitudes[0b0001].real(), c, 1e-12);
  EXPECT_NEAR(rot.amplitudes[0b0010].real(), -sn, 1e-12);
  EXPECT_NEAR(rot.norm(), 1.0, 1e-12);
}

TEST(Natorb, ReflectionIsRejected) {
  OrbitalRotation R;
  R.U = Eigen::MatrixXd::Identity(2, 2);
  R.U(1, 1) = -1.0;
  EXPECT_THROW(rotate_statevector(Statevector::basis_state(4, 1), R), NumericalError);
}

TEST(Natorb, H2OccupationsAreOrderedAndSumToElectronCount) {
  const IntegralSet s = read_fcidump(test::data_path("h2_631g.fcidump"));
  const OrbitalRotation R =
      natural_orbitals(one_body_rdm_spatial(mp2_statevector(mp2_amplitudes(s))));
  double sum = 0.0;
  for (std::size_t k = 0; k < R.occupations.size(); ++k) {
    sum += R.occupations[k];
    EXPECT_GE(R.occupations[k], -1e-12);
    EXPECT_LE(R.occupations[k], 2.0 + 1e-12);
    if (k > 0) EXPECT_LE(R.occupations[k], R.occupations[k - 1]);
  }
  EXPECT_NEAR(sum, 2.0, 1e-10);
  EXPECT_GT(R.occupations[0], 1.9);
  EXPECT_LT((R.U.transpose() * R.U - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(),
            1e-12);
}

}  // namespace
}  // namespace qida
