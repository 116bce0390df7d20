// Copyright 2026 The Dismagick Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dismagick/statevector.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "dismagick/clifford.hpp"

namespace dismagick {

Statevector::Statevector(int n) : n_(n) {
  if (n < 0 || n > kMaxQubits) throw TooManyQubits("statevector size out of range: " + std::to_string(n));
  amps_.assign(std::size_t{1} << n, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

Statevector Statevector::from_amplitudes(std::vector<cplx> amplitudes) {
  if (amplitudes.empty() || !std::has_single_bit(amplitudes.size()))
    throw Error("statevector length must be a power of two");
  Statevector s;
  s.n_ = std::countr_zero(amplitudes.size());
  if (s.n_ > kMaxQubits) throw TooManyQubits("statevector too large");
  s.amps_ = std::move(amplitudes);
  return s;
}

Statevector Statevector::basis(std::span<const int> bits) {
  Statevector s(static_cast<int>(bits.size()));
  std::size_t b = 0;
  for (int bit : bits) b = (b << 1) | static_cast<std::size_t>(bit & 1);
  s.amps_[0] = 0.0;
  s.amps_[b] = 1.0;
  return s;
}

double Statevector::norm() const {
  double s = 0.0;
  for (const cplx& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void Statevector::normalize() {
  const double nrm = norm();
  if (nrm == 0.0) throw NotNormalized("cannot normalize the zero vector");
  for (cplx& a : amps_) a /= nrm;
}

cplx Statevector::inner(const Statevector& other) const {
  if (other.n_ != n_) throw Error("inner product of states with different qubit counts");
  cplx s{0.0, 0.0};
  for (std::size_t b = 0; b < amps_.size(); ++b) s += std::conj(amps_[b]) * other.amps_[b];
  return s;
}

void Statevector::apply(const Mat4& g, int i, int j) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j)
    throw SiteOutOfRange("two-qubit gate sites (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") invalid for " + std::to_string(n_) + " qubits");
  const std::size_t bi = std::size_t{1} << (n_ - 1 - i);
  const std::size_t bj = std::size_t{1} << (n_ - 1 - j);
  const std::size_t idx[4] = {0, bj, bi, bi | bj};
  for (std::size_t b = 0; b < amps_.size(); ++b) {
    if (b & (bi | bj)) continue;
    cplx in[4], out[4];
    for (int k = 0; k < 4; ++k) in[k] = amps_[b | idx[k]];
    for (int r = 0; r < 4; ++r) {
      out[r] = g(r, 0) * in[0] + g(r, 1) * in[1] + g(r, 2) * in[2] + g(r, 3) * in[3];
    }
    for (int k = 0; k < 4; ++k) amps_[b | idx[k]] = out[k];
  }
}

void Statevector::apply(const Mat2& g, int q) {
  if (q < 0 || q >= n_) throw SiteOutOfRange("qubit " + std::to_string(q) + " out of range");
  const std::size_t bq = std::size_t{1} << (n_ - 1 - q);
  for (std::size_t b = 0; b < amps_.size(); ++b) {
    if (b & bq) continue;
    const cplx a0 = amps_[b], a1 = amps_[b | bq];
    amps_[b] = g(0, 0) * a0 + g(0, 1) * a1;
    amps_[b | bq] = g(1, 0) * a0 + g(1, 1) * a1;
  }
}

Statevector Statevector::tensor(const Statevector& other) const {
  std::vector<cplx> amps(amps_.size() * other.amps_.size());
  for (std::size_t a = 0; a < amps_.size(); ++a)
    for (std::size_t b = 0; b < other.amps_.size(); ++b) amps[a * other.amps_.size() + b] = amps_[a] * other.amps_[b];
  return from_amplitudes(std::move(amps));
}

Statevector apply_two_qubit_gate(Statevector psi, const TwoQubitGate& g, int i, int j) {
  if (!(0 <= i && i < j && j < psi.num_qubits()))
    throw SiteOutOfRange("gate sites must satisfy 0 <= i < j < n");
  psi.apply(g.matrix, i, j);
  return psi;
}

double fidelity(const Statevector& a, const Statevector& b) { return std::norm(a.inner(b)); }

Statevector ghz_state(int n) {
  Statevector s(n);
  s.amplitudes()[0] = 1.0 / std::sqrt(2.0);
  s.amplitudes()[s.dim() - 1] = 1.0 / std::sqrt(2.0);
  return s;
}

Statevector t_product_state(int n) {
  const cplx one{1.0 / std::sqrt(2.0), 0.0};
  const cplx phase = std::polar(1.0 / std::sqrt(2.0), M_PI / 4);
  std::vector<cplx> amps(std::size_t{1} << n);
  for (std::size_t b = 0; b < amps.size(); ++b) {
    cplx a{1.0, 0.0};
    for (int q = 0; q < n; ++q) a *= ((b >> q) & 1u) ? phase : one;
    amps[b] = a;
  }
  return Statevector::from_amplitudes(std::move(amps));
}

TwoQubitGate haar_random_two_qubit(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat4 z;
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < 4; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(r, c) = cplx{re, im};
    }
  Eigen::HouseholderQR<Mat4> qr(z);
  Mat4 q = qr.householderQ();
  const Mat4 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < 4; ++k) {
    const double mag = std::abs(r(k, k));
    const cplx phase = mag > 0 ? r(k, k) / mag : cplx{1.0, 0.0};
    q.col(k) *= phase;
  }
  return TwoQubitGate{q, GateKind::Haar, std::nullopt};
}

TwoQubitGate haar_random_two_qubit(std::uint64_t seed) {
  Rng rng(seed);
  return haar_random_two_qubit(rng);
}

std::vector<int> brickwork_bonds(int n, int layer) {
  std::vector<int> bonds;
  for (int i = layer % 2; i + 1 < n; i += 2) bonds.push_back(i);
  return bonds;
}

Statevector prepare_benchmark_state(int n, int clifford_depth, int haar_layers, std::uint64_t seed) {
  Rng rng(seed);
  Statevector psi(n);
  int layer = 0;
  for (int d = 0; d < clifford_depth; ++d, ++layer) {
    for (int i : brickwork_bonds(n, layer)) psi.apply(random_clifford(rng).matrix, i, i + 1);
  }
  for (int d = 0; d < haar_layers; ++d, ++layer) {
    for (int i : brickwork_bonds(n, layer)) psi.apply(haar_random_two_qubit(rng).matrix, i, i + 1);
  }
  return psi;
}

double entanglement_entropy(const Statevector& psi, int cut) {
  const int n = psi.num_qubits();
  if (cut < 1 || cut > n - 1) throw SiteOutOfRange("entanglement cut must lie in [1, n-1]");
  const Eigen::Index cols = Eigen::Index{1} << (n - cut);
  const Eigen::Index rows = Eigen::Index{1} << cut;
  // Row-major reshape: row = leading `cut` qubits.
  Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      psi.amplitudes().data(), rows, cols);
  const auto probs = schmidt_probabilities(m);
  return von_neumann_entropy_bits(probs);
}

std::vector<double> entanglement_profile(const Statevector& psi) {
  std::vector<double> out;
  for (int cut = 1; cut < psi.num_qubits(); ++cut) out.push_back(entanglement_entropy(psi, cut));
  return out;
}

}  // namespace dismagick
