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

#include "qida/natorb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>

#include <unsupported/Eigen/MatrixFunctions>

#include "qida/error.hpp"
#include "qida/kernels.hpp"

namespace qida {

namespace {

// y = K psi for the spin-summed one-body generator with matrix kappa.
void apply_one_body(const Eigen::MatrixXd& kappa, int n_orb, SpinOrbitalOrder order,
                    std::span<const Complex> in, std::span<Complex> out) {
  std::fill(out.begin(), out.end(), Complex{});
  for (int sigma = 0; sigma < 2; ++sigma)
    for (int p = 0; p < n_orb; ++p)
      for (int q = 0; q < n_orb; ++q) {
        const double k = kappa(p, q);
        if (k == 0.0) continue;
        kernels::hopping<Complex>(in, out, spin_orbital_qubit(p, sigma, n_orb, order),
                                  spin_orbital_qubit(q, sigma, n_orb, order), k);
      }
}

// exp(-K) psi over unit time by restarted Arnoldi with adaptive steps.
std::vector<Complex> krylov_exp(const Eigen::MatrixXd& kappa, int n_orb,
                                SpinOrbitalOrder order, std::vector<Complex> psi,
                                const KrylovOptions& opts) {
  const std::size_t dim = psi.size();
  double remaining = 1.0;
  double tau = 1.0;
  std::vector<Complex> w(dim);
  while (remaining > 0.0) {
    const double step = std::min(tau, remaining);
    const double beta =
        std::sqrt(std::real(kernels::dot<Complex>(psi, psi)));
    if (beta == 0.0) return psi;
    std::vector<std::vector<Complex>> V;
    V.emplace_back(psi);
    for (auto& v : V[0]) v /= beta;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(opts.max_dim + 1, opts.max_dim);
    bool done = false;
    Eigen::VectorXcd coeffs;
    for (int j = 0; j < opts.max_dim; ++j) {
      apply_one_body(kappa, n_orb, order, V[j], w);
      for (auto& x : w) x *= -step;
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i <= j; ++i) {
          const Complex h = kernels::dot<Complex>(V[i], w);
          H(i, j) += h;
          for (std::size_t k = 0; k < dim; ++k) w[k] -= h * V[i][k];
        }
      const double hnext = std::sqrt(std::real(kernels::dot<Complex>(w, w)));
      const int m = j + 1;
      Eigen::MatrixXcd E = H.topLeftCorner(m, m).exp();
      const double err = beta * hnext * std::abs(E(m - 1, 0));
      if (err < opts.tolerance || hnext < 1e-14) {
        coeffs = E.col(0);
        done = true;
        break;
      }
      H(m, j) = hnext;
      V.emplace_back(w);
      for (auto& v : V.back()) v /= hnext;
    }
    if (!done) {
      tau = step / 2;
      if (tau < 1e-6) throw NumericalError("Krylov exponential failed to converge");
      continue;
    }
    std::fill(psi.begin(), psi.end(), Complex{});
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
      const Complex c = beta * coeffs[i];
      for (std::size_t k = 0; k < dim; ++k) psi[k] += c * V[i][k];
    }
    remaining -= step;
  }
  return psi;
}

}  // namespace

Eigen::MatrixXd one_body_rdm_spatial(const Statevector& psi, SpinOrbitalOrder order) {
  if (psi.n_qubits % 2) throw InputError("spin-orbital register must have even size");
  const int M = psi.n_qubits / 2;
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(M, M);
  std::vector<Complex> scratch(psi.dim());
  for (int p = 0; p < M; ++p)
    for (int q = 0; q < M; ++q) {
      std::fill(scratch.begin(), scratch.end(), Complex{});
      for (int sigma = 0; sigma < 2; ++sigma)
        kernels::hopping<Complex>(psi.amplitudes, scratch,
                                  spin_orbital_qubit(p, sigma, M, order),
                                  spin_orbital_qubit(q, sigma, M, order), 1.0);
      D(p, q) = std::real(kernels::dot<Complex>(psi.amplitudes, scratch));
    }
  return D;
}

OrbitalRotation natural_orbitals(const Eigen::MatrixXd& D) {
  if (D.rows() != D.cols()) throw InputError("RDM must be square");
  if ((D - D.transpose()).cwiseAbs().maxCoeff() > 1e-8)
    throw InputError("RDM is not symmetric");
  const int M = static_cast<int>(D.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (D + D.transpose()));
  const Eigen::VectorXd& w = es.eigenvalues();
  Eigen::MatrixXd V = es.eigenvectors();

  std::vector<int> dominant(M);
  for (int k = 0; k < M; ++k) {
    Eigen::Index idx = 0;
    V.col(k).cwiseAbs().maxCoeff(&idx);
    dominant[k] = static_cast<int>(idx);
  }
  std::vector<int> perm(M);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
    if (std::abs(w[a] - w[b]) > 1e-10) return w[a] > w[b];
    return dominant[a] < dominant[b];
  });

  OrbitalRotation R;
  R.U.resize(M, M);
  for (int k = 0; k < M; ++k) {
    Eigen::VectorXd col = V.col(perm[k]);
    if (col[dominant[perm[k]]] < 0) col = -col;
    R.U.col(k) = col;
    R.occupations.push_back(w[perm[k]]);
  }
  if (M > 0 && R.U.determinant() < 0) R.U.col(M - 1) *= -1.0;
  return R;
}

IntegralSet transform_integrals(const IntegralSet& s, const OrbitalRotation& R) {
  const int M = s.n_orb();
  if (R.U.rows() != M || R.U.cols() != M)
    throw InputError("rotation dimension does not match the orbital count");
  const Eigen::MatrixXd& U = R.U;
  const std::size_t M4 = static_cast<std::size_t>(M) * M * M * M;
  auto at = [&](int a, int b, int c, int d) {
    return ((static_cast<std::size_t>(a) * M + b) * M + c) * M + d;
  };

  std::vector<double> g(M4), t(M4);
  for (int p = 0; p < M; ++p)
    for (int q = 0; q < M; ++q)
      for (int r = 0; r < M; ++r)
        for (int u = 0; u < M; ++u) g[at(p, q, r, u)] = s.eri(p, q, r, u);

  // One index per pass; the output slice of each new index is disjoint.
  for (int pass = 0; pass < 4; ++pass) {
#pragma omp parallel for schedule(static)
    for (int a = 0; a < M; ++a)
      for (int b = 0; b < M; ++b)
        for (int c = 0; c < M; ++c)
          for (int d = 0; d < M; ++d) {
            double acc = 0.0;
            for (int k = 0; k < M; ++k) {
              // Rotate the first slot and cycle the slots.
              acc += U(k, a) * g[at(k, b, c, d)];
            }
            t[at(b, c, d, a)] = acc;
          }
    std::swap(g, t);
  }

  IntegralSet out(M, s.n_elec(), s.ms2());
  out.set_core_energy(s.core_energy());
  out.orbsym.assign(M, 1);
  out.isym = s.isym;
  const Eigen::MatrixXd h = U.transpose() * s.h() * U;
  for (int p = 0; p < M; ++p)
    for (int q = 0; q <= p; ++q) out.set_h(p, q, 0.5 * (h(p, q) + h(q, p)));
  for (int p = 0; p < M; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r <= p; ++r)
        for (int u = 0; u <= r; ++u) out.set_eri(p, q, r, u, g[at(p, q, r, u)]);
  out.source_label = s.source_label.empty() ? "NO" : s.source_label + "; NO";
  return out;
}

Statevector rotate_statevector(const Statevector& psi, const OrbitalRotation& R,
                               SpinOrbitalOrder order, const KrylovOptions& opts) {
  if (psi.n_qubits % 2) throw InputError("spin-orbital register must have even size");
  const int M = psi.n_qubits / 2;
  const Eigen::MatrixXd& U = R.U;
  if (U.rows() != M || U.cols() != M)
    throw InputError("rotation dimension does not match the register");
  if ((U.transpose() * U - Eigen::MatrixXd::Identity(M, M)).cwiseAbs().maxCoeff() > 1e-8)
    throw NumericalError("orbital rotation is not orthogonal");
  if (U.determinant() < 0)
    throw NumericalError("orbital rotation has determinant -1; no real logarithm");
  const Eigen::MatrixXd kappa = U.log();
  if (!kappa.allFinite() || (kappa + kappa.transpose()).cwiseAbs().maxCoeff() > 1e-8 ||
      (kappa.exp() - U).cwiseAbs().maxCoeff() > 1e-8)
    throw NumericalError("log(U) is not a real antisymmetric generator of U");

  Statevector out(psi.n_qubits);
  out.amplitudes = krylov_exp(0.5 * (kappa - kappa.transpose()), M, order,
                              psi.amplitudes, opts);
  return out;
}

}  // namespace qida
