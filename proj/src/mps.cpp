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

#include "dismagick/mps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dismagick {

namespace {

MatrixXcd thin_q(const Eigen::HouseholderQR<MatrixXcd>& qr, Eigen::Index cols) {
  return qr.householderQ() * MatrixXcd::Identity(qr.rows(), cols);
}

}  // namespace

MatrixXcd TwoSiteTensor::matrix() const {
  const auto dl = left_dim(), dr = right_dim();
  MatrixXcd m(2 * dl, 2 * dr);
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2) m.block(s1 * dl, s2 * dr, dl, dr) = blocks[2 * s1 + s2];
  return m;
}

TwoSiteTensor TwoSiteTensor::applied(const Mat4& g) const {
  TwoSiteTensor out;
  for (int r = 0; r < 4; ++r) {
    out.blocks[r] = g(r, 0) * blocks[0];
    for (int c = 1; c < 4; ++c) out.blocks[r] += g(r, c) * blocks[c];
  }
  return out;
}

double TwoSiteTensor::norm() const {
  double s = 0.0;
  for (const auto& b : blocks) s += b.squaredNorm();
  return std::sqrt(s);
}

Mps Mps::product_state(std::span<const int> bits) {
  Mps m;
  for (int b : bits) {
    SiteTensor t{MatrixXcd::Zero(1, 1), MatrixXcd::Zero(1, 1)};
    t[b & 1](0, 0) = 1.0;
    m.sites_.push_back(std::move(t));
  }
  m.center_ = 0;
  return m;
}

Mps Mps::zero_state(int length) {
  std::vector<int> bits(length, 0);
  return product_state(bits);
}

Mps Mps::from_statevector(const Statevector& psi, const TruncationConfig& trunc) {
  const int n = psi.num_qubits();
  if (n < 1) throw Error("cannot build an MPS of zero sites");
  Mps m;
  // rest(a, c): remaining coefficient, column c enumerates sites j..n-1 big-endian.
  MatrixXcd rest = Eigen::Map<const Eigen::Matrix<cplx, 1, Eigen::Dynamic>>(psi.amplitudes().data(), psi.dim());
  for (int j = 0; j < n - 1; ++j) {
    const Eigen::Index dl = rest.rows();
    const Eigen::Index tail = rest.cols() / 2;
    MatrixXcd mat(2 * dl, tail);
    for (int s = 0; s < 2; ++s) mat.middleRows(s * dl, dl) = rest.middleCols(s * tail, tail);
    Eigen::BDCSVD<MatrixXcd> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double floor = std::max(trunc.svd_cutoff, kSvdNoiseFloor) * sv[0];
    Eigen::Index keep = 0;
    while (keep < sv.size() && keep < trunc.max_bond && sv[keep] > floor) ++keep;
    keep = std::max<Eigen::Index>(keep, 1);
    SiteTensor t;
    for (int s = 0; s < 2; ++s) t[s] = svd.matrixU().block(s * dl, 0, dl, keep);
    m.sites_.push_back(std::move(t));
    rest = sv.head(keep).asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
  }
  SiteTensor last{rest.col(0), rest.col(1)};
  m.sites_.push_back(std::move(last));
  m.center_ = n - 1;
  m.normalize();
  return m;
}

Mps Mps::random(int length, int max_bond, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  auto bond = [&](int k) {
    // k counts sites to the left of the bond.
    const int left = std::min(k, 30), right = std::min(length - k, 30);
    return static_cast<Eigen::Index>(std::min<long>({static_cast<long>(max_bond), 1L << left, 1L << right}));
  };
  Mps m;
  for (int i = 0; i < length; ++i) {
    SiteTensor t;
    for (int s = 0; s < 2; ++s) {
      t[s] = MatrixXcd(bond(i), bond(i + 1));
      for (Eigen::Index c = 0; c < t[s].cols(); ++c)
        for (Eigen::Index r = 0; r < t[s].rows(); ++r) {
          const double re = normal(rng);
          const double im = normal(rng);
          t[s](r, c) = cplx{re, im};
        }
    }
    m.sites_.push_back(std::move(t));
  }
  m.move_center(0);
  m.normalize();
  return m;
}

int Mps::bond_dim(int k) const {
  check_bond(k);
  return static_cast<int>(sites_[k][0].cols());
}

std::vector<int> Mps::bond_dims() const {
  std::vector<int> out{1};
  for (const auto& t : sites_) out.push_back(static_cast<int>(t[0].cols()));
  return out;
}

int Mps::max_bond_dim() const {
  const auto dims = bond_dims();
  return *std::max_element(dims.begin(), dims.end());
}

void Mps::set_site(int i, SiteTensor tensor) {
  sites_.at(i) = std::move(tensor);
  center_.reset();
}

void Mps::check_bond(int k) const {
  if (k < 0 || k > length() - 2)
    throw BondOutOfRange("bond " + std::to_string(k) + " out of range for length " + std::to_string(length()));
}

void Mps::shift_right(int i) {
  auto& a = sites_[i];
  const Eigen::Index dl = a[0].rows(), dr = a[0].cols();
  MatrixXcd stacked(2 * dl, dr);
  stacked << a[0], a[1];
  Eigen::HouseholderQR<MatrixXcd> qr(stacked);
  const Eigen::Index r = std::min(2 * dl, dr);
  const MatrixXcd q = thin_q(qr, r);
  const MatrixXcd rmat = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  a[0] = q.topRows(dl);
  a[1] = q.bottomRows(dl);
  for (auto& b : sites_[i + 1]) b = rmat * b;
}

void Mps::shift_left(int i) {
  auto& a = sites_[i];
  const Eigen::Index dl = a[0].rows(), dr = a[0].cols();
  MatrixXcd wide(dl, 2 * dr);
  wide << a[0], a[1];
  const MatrixXcd tall = wide.adjoint();
  Eigen::HouseholderQR<MatrixXcd> qr(tall);
  const Eigen::Index r = std::min(dl, 2 * dr);
  const MatrixXcd q = thin_q(qr, r);
  const MatrixXcd rmat = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  const MatrixXcd qa = q.adjoint();  // r x 2dr
  a[0] = qa.leftCols(dr);
  a[1] = qa.rightCols(dr);
  const MatrixXcd l = rmat.adjoint();  // dl x r
  for (auto& b : sites_[i - 1]) b = b * l;
}

void Mps::move_center(int c) {
  if (c < 0 || c >= length()) throw SiteOutOfRange("center " + std::to_string(c) + " out of range");
  if (!center_) {
    for (int i = 0; i < c; ++i) shift_right(i);
    for (int i = length() - 1; i > c; --i) shift_left(i);
  } else {
    for (int i = *center_; i < c; ++i) shift_right(i);
    for (int i = *center_; i > c; --i) shift_left(i);
  }
  center_ = c;
}

double Mps::norm() const {
  if (center_) {
    const auto& a = sites_[*center_];
    return std::sqrt(a[0].squaredNorm() + a[1].squaredNorm());
  }
  MatrixXcd env = MatrixXcd::Identity(1, 1);
  for (const auto& a : sites_) env = a[0].adjoint() * env * a[0] + a[1].adjoint() * env * a[1];
  return std::sqrt(std::abs(env(0, 0)));
}

void Mps::normalize() {
  if (!center_) move_center(0);
  const double nrm = norm();
  if (nrm == 0.0) throw NotNormalized("cannot normalize a zero MPS");
  for (auto& b : sites_[*center_]) b /= nrm;
}

TwoSiteTensor Mps::two_site_tensor(int k) {
  check_bond(k);
  if (!center_ || (*center_ != k && *center_ != k + 1)) move_center(k);
  TwoSiteTensor theta;
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2) theta.blocks[2 * s1 + s2] = sites_[k][s1] * sites_[k + 1][s2];
  return theta;
}

double Mps::set_two_site_tensor(int k, const TwoSiteTensor& theta, const TruncationConfig& trunc,
                                SweepDirection dir) {
  check_bond(k);
  const Eigen::Index dl = theta.left_dim(), dr = theta.right_dim();
  const MatrixXcd mat = theta.matrix();
  Eigen::BDCSVD<MatrixXcd> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double total = sv.squaredNorm();
  if (total == 0.0) throw NotNormalized("two-site tensor vanished");
  const double floor = std::max(trunc.svd_cutoff, kSvdNoiseFloor) * sv[0];
  Eigen::Index keep = 0;
  while (keep < sv.size() && keep < trunc.max_bond && sv[keep] > floor) ++keep;
  keep = std::max<Eigen::Index>(keep, 1);
  const double kept = sv.head(keep).squaredNorm();
  const double discarded = std::max(0.0, (total - kept) / total);
  const Eigen::VectorXd s = sv.head(keep) / std::sqrt(kept);

  MatrixXcd left = svd.matrixU().leftCols(keep);
  MatrixXcd right = svd.matrixV().leftCols(keep).adjoint();
  if (dir == SweepDirection::LeftToRight) {
    right = s.asDiagonal() * right;
  } else {
    left = left * s.asDiagonal();
  }
  for (int s1 = 0; s1 < 2; ++s1) sites_[k][s1] = left.middleRows(s1 * dl, dl);
  for (int s2 = 0; s2 < 2; ++s2) sites_[k + 1][s2] = right.middleCols(s2 * dr, dr);
  center_ = dir == SweepDirection::LeftToRight ? k + 1 : k;
  return discarded;
}

double Mps::apply_two_site_gate(const Mat4& g, int k, const TruncationConfig& trunc, SweepDirection dir) {
  const TwoSiteTensor theta = two_site_tensor(k);
  return set_two_site_tensor(k, theta.applied(g), trunc, dir);
}

std::vector<double> Mps::bond_spectrum(int k) {
  check_bond(k);
  move_center(k);
  const auto& a = sites_[k];
  MatrixXcd stacked(2 * a[0].rows(), a[0].cols());
  stacked << a[0], a[1];
  auto probs = schmidt_probabilities(stacked);
  double total = 0.0;
  for (double p : probs) total += p;
  for (double& p : probs) p /= total;
  return probs;
}

std::vector<double> Mps::bond_entropies() {
  std::vector<double> out;
  for (int k = 0; k + 1 < length(); ++k) out.push_back(von_neumann_entropy_bits(bond_spectrum(k)));
  return out;
}

Statevector Mps::to_statevector() const {
  if (length() > 14) throw TooLarge("to_statevector is limited to 14 sites");
  MatrixXcd acc = MatrixXcd::Identity(1, 1);  // rows: basis prefix, cols: bond
  for (const auto& a : sites_) {
    MatrixXcd next(acc.rows() * 2, a[0].cols());
    for (Eigen::Index r = 0; r < acc.rows(); ++r)
      for (int s = 0; s < 2; ++s) next.row(2 * r + s) = acc.row(r) * a[s];
    acc = std::move(next);
  }
  std::vector<cplx> amps(acc.data(), acc.data() + acc.size());
  return Statevector::from_amplitudes(std::move(amps));
}

cplx Mps::overlap(const Mps& other) const {
  if (other.length() != length()) throw Error("overlap of MPS with different lengths");
  MatrixXcd env = MatrixXcd::Identity(1, 1);
  for (int i = 0; i < length(); ++i) {
    const auto& a = sites_[i];
    const auto& b = other.sites_[i];
    env = a[0].adjoint() * env * b[0] + a[1].adjoint() * env * b[1];
  }
  return env(0, 0);
}

double bond_entropy(const Mps& mps, int k) {
  Mps copy = mps;
  return von_neumann_entropy_bits(copy.bond_spectrum(k));
}

std::pair<Mps, double> apply_two_site_gate(Mps mps, const TwoQubitGate& g, int k, const TruncationConfig& trunc) {
  const double w = mps.apply_two_site_gate(g.matrix, k, trunc);
  return {std::move(mps), w};
}

double fidelity(const Mps& a, const Mps& b) { return std::norm(a.overlap(b)); }

}  // namespace dismagick
