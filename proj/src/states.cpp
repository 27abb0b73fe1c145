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

#include "qida/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "qida/error.hpp"
#include "qida/kernels.hpp"

namespace qida {

namespace {

// Applies a_p (create=false) or a+_p to a basis index; nullopt when it
// annihilates the state.
std::optional<std::uint64_t> ladder(std::uint64_t state, int p, bool create, int& sign) {
  const std::uint64_t bit = std::uint64_t{1} << p;
  if (static_cast<bool>(state & bit) == create) return std::nullopt;
  if (std::popcount(state & (bit - 1)) & 1) sign = -sign;
  return state ^ bit;
}

std::uint64_t hf_index(int n_qubits, int n_elec) {
  const int M = n_qubits / 2;
  const int n_alpha = (n_elec + 1) / 2, n_beta = n_elec / 2;
  std::vector<int> occ;
  for (int p = 0; p < n_alpha; ++p) occ.push_back(spin_orbital_qubit(p, 0, M));
  for (int p = 0; p < n_beta; ++p) occ.push_back(spin_orbital_qubit(p, 1, M));
  return determinant_state_index(occ, n_qubits).index;
}

void add_doubles(const AmplitudeSet& a, Statevector& psi) {
  const std::uint64_t hf = hf_index(a.n_so, a.n_occ_so);
  for (const auto& x : a.t) {
    int sign = 1;
    std::optional<std::uint64_t> s = hf;
    s = ladder(*s, x.i, false, sign);
    if (s) s = ladder(*s, x.j, false, sign);
    if (s) s = ladder(*s, x.b, true, sign);
    if (s) s = ladder(*s, x.a, true, sign);
    if (!s) throw InputError("amplitude does not describe a double excitation of HF");
    psi.amplitudes[*s] += sign * x.t;
  }
}

double entropy_of_eigenvalues(const Eigen::VectorXd& w) {
  double s = 0.0;
  for (int k = 0; k < w.size(); ++k)
    if (w[k] > kEntropyEigenvalueFloor) s -= w[k] * std::log(w[k]);
  return s;
}

}  // namespace

QmiNormalization parse_qmi_normalization(const std::string& name) {
  if (name == "max") return QmiNormalization::MaxElement;
  if (name == "2ln2") return QmiNormalization::TwoLn2;
  throw InputError("unknown QMI normalization '" + name + "' (max|2ln2)");
}

std::string to_string(QmiNormalization mode) {
  return mode == QmiNormalization::MaxElement ? "max" : "2ln2";
}

Statevector hf_statevector(int n_qubits, int n_elec, SpinOrbitalOrder) {
  if (n_elec < 0 || n_elec > n_qubits) throw RangeError("electron count exceeds register");
  return Statevector::basis_state(n_qubits, hf_index(n_qubits, n_elec));
}

Statevector mp2_first_order(const AmplitudeSet& a, SpinOrbitalOrder) {
  Statevector psi(a.n_so);
  add_doubles(a, psi);
  return psi;
}

Statevector mp2_statevector(const AmplitudeSet& a, SpinOrbitalOrder order) {
  Statevector psi = hf_statevector(a.n_so, a.n_occ_so, order);
  add_doubles(a, psi);
  psi.normalize();
  return psi;
}

FciResult fci_ground_state(const PauliHamiltonian& h, int n_elec, int ms2,
                           SpinOrbitalOrder) {
  const int n = h.n_qubits;
  if (n > 16) throw InputError("FCI limited to 16 qubits");
  if (n % 2) throw InputError("spin-orbital register must have even size");
  const int M = n / 2;
  if ((n_elec + ms2) % 2) throw InputError("electron count and MS2 parity differ");
  const int n_alpha = (n_elec + ms2) / 2, n_beta = (n_elec - ms2) / 2;
  const std::uint64_t alpha_mask = (std::uint64_t{1} << M) - 1;

  std::vector<std::uint64_t> sector;
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < dim; ++s)
    if (std::popcount(s & alpha_mask) == n_alpha &&
        std::popcount(s >> M) == n_beta)
      sector.push_back(s);
  if (sector.empty())
    throw InputError("empty FCI sector for N=" + std::to_string(n_elec) +
                     ", MS2=" + std::to_string(ms2));

  const auto op = h.compile();
  std::vector<double> full_in(dim, 0.0), full_out(dim, 0.0);
  auto matvec = [&](const Eigen::VectorXd& x) {
    for (std::size_t k = 0; k < sector.size(); ++k) full_in[sector[k]] = x[k];
    op.apply<double>(full_in, full_out);
    Eigen::VectorXd y(sector.size());
    for (std::size_t k = 0; k < sector.size(); ++k) y[k] = full_out[sector[k]];
    return y;
  };

  const int D = static_cast<int>(sector.size());
  const int max_iter = std::min(D, 400);
  std::vector<Eigen::VectorXd> V;
  std::vector<double> alpha, beta;
  V.push_back(Eigen::VectorXd::Ones(D) / std::sqrt(static_cast<double>(D)));

  double energy = 0.0, residual = 0.0;
  Eigen::VectorXd ritz;
  int it = 0;
  for (; it < max_iter; ++it) {
    Eigen::VectorXd w = matvec(V[it]);
    alpha.push_back(V[it].dot(w));
    // Full reorthogonalization, applied twice.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& v : V) w -= v.dot(w) * v;
    const double b = w.norm();

    const int m = it + 1;
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
      T(k, k) = alpha[k];
      if (k + 1 < m) T(k, k + 1) = T(k + 1, k) = beta[k];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    energy = es.eigenvalues()[0];
    Eigen::VectorXd y = es.eigenvectors().col(0);
    residual = std::abs(b * y[m - 1]);
    if (residual < 1e-10 || b < 1e-14 || m == D) {
      ritz = Eigen::VectorXd::Zero(D);
      for (int k = 0; k < m; ++k) ritz += y[k] * V[k];
      ++it;
      break;
    }
    beta.push_back(b);
    V.push_back(w / b);
  }
  if (ritz.size() == 0) throw NumericalError("Lanczos did not converge");

  ritz.normalize();
  // Deterministic global sign: largest-magnitude amplitude positive.
  Eigen::Index imax = 0;
  ritz.cwiseAbs().maxCoeff(&imax);
  if (ritz[imax] < 0) ritz = -ritz;
  const Eigen::VectorXd hr = matvec(ritz);
  energy = ritz.dot(hr);

  FciResult out;
  out.energy = energy;
  out.sector_dim = sector.size();
  out.iterations = it;
  out.residual = (hr - energy * ritz).norm();
  out.state = Statevector(n);
  for (std::size_t k = 0; k < sector.size(); ++k)
    out.state.amplitudes[sector[k]] = ritz[k];
  return out;
}

Eigen::Matrix4cd two_qubit_rdm(const Statevector& psi, int i, int j) {
  const int n = psi.n_qubits;
  if (i < 0 || j < 0 || i >= n || j >= n) throw RangeError("qubit index out of range");
  if (i == j) throw RangeError("two-qubit RDM needs distinct qubits");
  const int lo = std::min(i, j), hi = std::max(i, j);
  const std::size_t bi = std::size_t{1} << i, bj = std::size_t{1} << j;
  const std::size_t offs[4] = {0, bj, bi, bi | bj};  // local index 2*b_i + b_j
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  const std::size_t rest = psi.dim() / 4;
  for (std::size_t r = 0; r < rest; ++r) {
    const std::size_t base =
        kernels::detail::insert_zero(kernels::detail::insert_zero(r, lo), hi);
    Complex a[4];
    for (int k = 0; k < 4; ++k) a[k] = psi.amplitudes[base | offs[k]];
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l) rho(k, l) += a[k] * std::conj(a[l]);
  }
  return rho;
}

Eigen::Matrix2cd one_qubit_rdm(const Statevector& psi, int i) {
  if (i < 0 || i >= psi.n_qubits) throw RangeError("qubit index out of range");
  const std::size_t bit = std::size_t{1} << i;
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  for (std::size_t r = 0; r < psi.dim() / 2; ++r) {
    const std::size_t i0 = kernels::detail::insert_zero(r, i);
    const Complex a0 = psi.amplitudes[i0], a1 = psi.amplitudes[i0 | bit];
    rho(0, 0) += a0 * std::conj(a0);
    rho(0, 1) += a0 * std::conj(a1);
    rho(1, 0) += a1 * std::conj(a0);
    rho(1, 1) += a1 * std::conj(a1);
  }
  return rho;
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols()) throw InputError("density matrix must be square");
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-8)
    throw InputError("density matrix trace " + std::to_string(tr) + " differs from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  return entropy_of_eigenvalues(es.eigenvalues());
}

void renormalize(QmiMatrix& q, QmiNormalization mode) {
  q.mode = mode;
  double scale = 0.0;
  if (mode == QmiNormalization::MaxElement) {
    for (int i = 0; i < q.n; ++i)
      for (int j = 0; j < q.n; ++j)
        if (i != j) scale = std::max(scale, q.raw(i, j));
  } else {
    scale = 2.0 * std::numbers::ln2;
  }
  q.normalized = Eigen::MatrixXd::Zero(q.n, q.n);
  if (scale > kQmiZeroFloor) q.normalized = q.raw / scale;
  q.normalized.diagonal().setZero();
}

QmiMatrix qmi_matrix(const Statevector& psi, QmiNormalization mode) {
  const int n = psi.n_qubits;
  QmiMatrix q;
  q.n = n;
  q.raw = Eigen::MatrixXd::Zero(n, n);

  std::vector<double> single(n);
  for (int i = 0; i < n; ++i) single[i] = von_neumann_entropy(one_qubit_rdm(psi, i));

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<double> value(pairs.size());
  const std::ptrdiff_t npairs = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(dynamic) if (psi.dim() >= kernels::kParallelThreshold)
  for (std::ptrdiff_t k = 0; k < npairs; ++k) {
    const auto [i, j] = pairs[k];
    value[k] = single[i] + single[j] - von_neumann_entropy(two_qubit_rdm(psi, i, j));
  }

  double min_seen = 0.0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    min_seen = std::min(min_seen, value[k]);
    const double v = std::max(0.0, value[k]);
    q.raw(i, j) = q.raw(j, i) = v;
  }
  q.min_unclamped = min_seen;
  renormalize(q, mode);
  return q;
}

void write_qmi_csv(const QmiMatrix& q, std::ostream& out) {
  out << "i,j,raw,normalized\n";
  char buf[128];
  for (int i = 0; i < q.n; ++i)
    for (int j = i + 1; j < q.n; ++j) {
      std::snprintf(buf, sizeof buf, "%d,%d,%.12g,%.12g\n", i, j, q.raw(i, j),
                    q.normalized(i, j));
      out << buf;
    }
}

QmiMatrix read_qmi_csv(std::istream& in) {
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line)) throw ParseError("empty QMI CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "i,j,raw,normalized")
    throw ParseError("unexpected QMI CSV header '" + line + "'", 1);
  struct Row { int i, j; double raw, norm; };
  std::vector<Row> rows;
  int n = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    Row r{};
    char tail = 0;
    if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf%c", &r.i, &r.j, &r.raw, &r.norm, &tail) < 4)
      throw ParseError("malformed QMI row", lineno);
    if (r.i < 0 || r.j <= r.i) throw RangeError("QMI row needs 0 <= i < j");
    n = std::max(n, r.j + 1);
    rows.push_back(r);
  }
  QmiMatrix q;
  q.n = n;
  q.raw = Eigen::MatrixXd::Zero(n, n);
  q.normalized = Eigen::MatrixXd::Zero(n, n);
  for (const auto& r : rows) {
    q.raw(r.i, r.j) = q.raw(r.j, r.i) = r.raw;
    q.normalized(r.i, r.j) = q.normalized(r.j, r.i) = r.norm;
  }
  return q;
}

QmiMatrix read_qmi_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open QMI CSV '" + path + "'");
  return read_qmi_csv(in);
}

int count_above(const QmiMatrix& q, double threshold) {
  int c = 0;
  for (int i = 0; i < q.n; ++i)
    for (int j = i + 1; j < q.n; ++j)
      if (q.normalized(i, j) > threshold) ++c;
  return c;
}

}  // namespace qida
