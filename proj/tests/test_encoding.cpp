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

#include <random>

#include <gtest/gtest.h>

#include "qida/encoding.hpp"
#include "qida/error.hpp"
#include "qida/pauli.hpp"
#include "test_support.hpp"

namespace qida {
namespace {

TEST(Pauli, StringRoundTrip) {
  const PauliWord w = parse_pauli_word("XIZY");
  EXPECT_EQ(w.x, 0b1001u);
  EXPECT_EQ(w.z, 0b1100u);
  EXPECT_EQ(to_string(w, 4), "XIZY");
  EXPECT_THROW(parse_pauli_word("XQ"), ParseError);
}

TEST(Pauli, ProductMatchesDenseMatrices) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint64_t> bits(0, 7);
  for (int k = 0; k < 200; ++k) {
    const PauliWord a{bits(rng), bits(rng)}, b{bits(rng), bits(rng)};
    PauliSum pa, pb;
    pa.add(a, 1.0);
    pb.add(b, 1.0);
    const auto [phase, c] = multiply(a, b);
    PauliSum pc;
    pc.add(c, phase);
    const Eigen::MatrixXcd lhs = test::dense_pauli_sum(pa, 3) * test::dense_pauli_sum(pb, 3);
    EXPECT_LT((lhs - test::dense_pauli_sum(pc, 3)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(JordanWigner, MatchesOccupationNumberOracle) {
  for (int n = 1; n <= 5; ++n)
    for (int p = 0; p < n; ++p) {
      const Eigen::MatrixXcd a = test::dense_pauli_sum(jw_ladder_operator(p, n, false), n);
      const Eigen::MatrixXcd ad = test::dense_pauli_sum(jw_ladder_operator(p, n, true), n);
      const Eigen::MatrixXd ref = test::dense_annihilator(p, n);
      EXPECT_LT((a - ref.cast<Complex>()).cwiseAbs().maxCoeff(), 1e-15);
      EXPECT_LT((ad - ref.transpose().cast<Complex>()).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(JordanWigner, CanonicalAnticommutationUpToSixQubits) {
  for (int n = 1; n <= 6; ++n) {
    std::vector<Eigen::MatrixXcd> a(n), ad(n);
    for (int p = 0; p < n; ++p) {
      a[p] = test::dense_pauli_sum(jw_ladder_operator(p, n, false), n);
      ad[p] = test::dense_pauli_sum(jw_ladder_operator(p, n, true), n);
    }
    const Eigen::Index dim = a[0].rows();
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(dim, dim);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const Eigen::MatrixXcd acomm = a[p] * ad[q] + ad[q] * a[p];
        EXPECT_LT((acomm - (p == q ? I : Eigen::MatrixXcd::Zero(dim, dim))).cwiseAbs().maxCoeff(),
                  1e-14);
        EXPECT_LT((a[p] * a[q] + a[q] * a[p]).cwiseAbs().maxCoeff(), 1e-14);
        EXPECT_LT((ad[p] * ad[q] + ad[q] * ad[p]).cwiseAbs().maxCoeff(), 1e-14);
      }
  }
}

TEST(JordanWigner, OutOfRangeModeIsRejected) {
  EXPECT_THROW(jw_ladder_operator(4, 4, false), RangeError);
  EXPECT_THROW(jw_ladder_operator(-1, 4, true), RangeError);
}

class RandomHamiltonian : public ::testing::TestWithParam<int> {};

TEST_P(RandomHamiltonian, MatchesBruteForceSecondQuantization) {
  const int M = GetParam();
  std::mt19937_64 rng(100 + M);
  const IntegralSet s = test::random_integrals(M, std::min(2, 2 * M), rng);
  const PauliHamiltonian h = build_hamiltonian(s);
  const Eigen::MatrixXcd H = h.to_dense();
  const Eigen::MatrixXd ref = test::dense_hamiltonian(s);
  EXPECT_LT((H - ref.cast<Complex>()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST_P(RandomHamiltonian, IsHermitianAndConservesParticleNumber) {
  const int M = GetParam();
  std::mt19937_64 rng(200 + M);
  const IntegralSet s = test::random_integrals(M, 2, rng);
  const PauliHamiltonian h = build_hamiltonian(s);
  const Eigen::MatrixXcd H = h.to_dense();
  EXPECT_LT((H - H.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  const Eigen::MatrixXcd N = test::dense_number(2 * M).cast<Complex>();
  EXPECT_LT((H * N - N * H).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(h.constant(), H.trace().real() / H.rows(), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(UpToThreeOrbitals, RandomHamiltonian, ::testing::Values(1, 2, 3));

TEST(Encoding, H2Sto3gSpectrumContainsReferenceEnergies) {
  const IntegralSet s = read_fcidump(test::data_path("h2_sto3g.fcidump"));
  const PauliHamiltonian h = build_hamiltonian(s);
  EXPECT_EQ(h.n_qubits, 4);
  const Eigen::MatrixXcd H = h.to_dense();
  const std::size_t hf = (1u << 0) | (1u << 2);
  EXPECT_NEAR(H(hf, hf).real(), test::reference().at("h2_sto3g").at("e_hf").get<double>(), 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  EXPECT_NEAR(es.eigenvalues()[0], test::reference().at("h2_sto3g").at("e_fci").get<double>(),
              1e-10);
}

TEST(Encoding, TermsAreRealAndPrunedAndHaveEvenY) {
  const IntegralSet s = read_fcidump(test::data_path("lih_sto3g.fcidump"));
  const PauliHamiltonian h = build_hamiltonian(s);
  for (const auto& t : h.terms) {
    EXPECT_GT(std::abs(t.coeff), kPauliPruneTolerance);
    EXPECT_EQ(std::popcount(t.word.x & t.word.z) % 2, 0);
  }
}

TEST(Encoding, ImaginaryResidueIsRejected) {
  PauliSum sum;
  sum.add(parse_pauli_word("Y"), Complex(0.0, 1.0));
  EXPECT_THROW(to_hamiltonian(sum, 1), NumericalError);
}

TEST(Encoding, BlockedSpinOrder) {
  EXPECT_EQ(spin_orbital_qubit(2, 0, 5), 2);
  EXPECT_EQ(spin_orbital_qubit(2, 1, 5), 7);
  EXPECT_EQ(parse_spin_order("blocked"), SpinOrbitalOrder::Blocked);
  EXPECT_THROW(parse_spin_order("zigzag"), InputError);
}

TEST(Encoding, DeterminantPhases) {
  const std::vector<int> asc{0, 2, 3}, swapped{2, 0, 3};
  const auto a = determinant_state_index(asc, 4);
  const auto b = determinant_state_index(swapped, 4);
  EXPECT_EQ(a.index, 0b1101u);
  EXPECT_EQ(a.phase, 1);
  EXPECT_EQ(b.index, a.index);
  EXPECT_EQ(b.phase, -1);
  const std::vector<int> dup{1, 1}, out{4};
  EXPECT_THROW(determinant_state_index(dup, 4), InputError);
  EXPECT_THROW(determinant_state_index(out, 4), RangeError);
}

}  // namespace
}  // namespace qida
