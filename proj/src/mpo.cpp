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

#include "dismagick/mpo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dismagick {

namespace {

bool is_zero(const cplx& c) { return c.real() == 0.0 && c.imag() == 0.0; }

Eigen::Index keep_count(const Eigen::VectorXd& sv, double cutoff, int max_bond, bool& cap_hit) {
  const double floor = std::max(cutoff, kSvdNoiseFloor) * sv[0];
  Eigen::Index keep = 0;
  while (keep < sv.size() && sv[keep] > floor) ++keep;
  keep = std::max<Eigen::Index>(keep, 1);
  if (keep > max_bond) {
    cap_hit = true;
    keep = max_bond;
  }
  return keep;
}

}  // namespace

Mpo::Mpo(std::vector<MpoSite> sites) : sites_(std::move(sites)) {
  if (sites_.empty()) throw Error("an MPO needs at least one site");
  for (std::size_t j = 0; j + 1 < sites_.size(); ++j) {
    if (sites_[j][0][0].cols() != sites_[j + 1][0][0].rows()) throw Error("MPO bond mismatch at " + std::to_string(j));
  }
  if (sites_.front()[0][0].rows() != 1 || sites_.back()[0][0].cols() != 1)
    throw Error("MPO boundary bonds must be trivial");
}

int Mpo::bond_dim(int k) const {
  if (k < 0 || k > length() - 2) throw BondOutOfRange("MPO bond " + std::to_string(k) + " out of range");
  return static_cast<int>(sites_[k][0][0].cols());
}

std::vector<int> Mpo::bond_dims() const {
  std::vector<int> out{1};
  for (const auto& w : sites_) out.push_back(static_cast<int>(w[0][0].cols()));
  return out;
}

int Mpo::max_bond_dim() const {
  const auto d = bond_dims();
  return *std::max_element(d.begin(), d.end());
}

MatrixXcd Mpo::to_dense() const {
  if (length() > 12) throw TooLarge("to_dense is limited to 12 sites");
  std::vector<MatrixXcd> acc{MatrixXcd::Identity(1, 1)};
  for (const auto& w : sites_) {
    const Eigen::Index dim = acc[0].rows();
    const Eigen::Index wr = w[0][0].cols();
    std::vector<MatrixXcd> next(wr, MatrixXcd::Zero(2 * dim, 2 * dim));
    for (Eigen::Index a = 0; a < static_cast<Eigen::Index>(acc.size()); ++a)
      for (Eigen::Index b = 0; b < wr; ++b)
        for (int o = 0; o < 2; ++o)
          for (int i = 0; i < 2; ++i) {
            const cplx c = w[o][i](a, b);
            if (is_zero(c)) continue;
            for (Eigen::Index col = 0; col < dim; ++col)
              for (Eigen::Index row = 0; row < dim; ++row) next[b](2 * row + o, 2 * col + i) += c * acc[a](row, col);
          }
    acc = std::move(next);
  }
  return acc[0];
}

Mpo heisenberg_mpo(int length) {
  if (length < 2) throw Error("heisenberg_mpo needs at least two sites");
  Mat2 id = Mat2::Identity(), sp = Mat2::Zero(), sm = Mat2::Zero(), sz = Mat2::Zero();
  sp(0, 1) = 1.0;
  sm(1, 0) = 1.0;
  sz(0, 0) = 0.5;
  sz(1, 1) = -0.5;
  // Operator-valued 5x5 bulk matrix.
  std::array<std::array<Mat2, 5>, 5> bulk;
  for (auto& row : bulk) row.fill(Mat2::Zero());
  bulk[0][0] = id;
  bulk[0][1] = sp;
  bulk[0][2] = sm;
  bulk[0][3] = sz;
  bulk[1][4] = 0.5 * sm;
  bulk[2][4] = 0.5 * sp;
  bulk[3][4] = sz;
  bulk[4][4] = id;

  auto make = [&](int r0, int r1, int c0, int c1) {
    MpoSite w;
    for (int o = 0; o < 2; ++o)
      for (int i = 0; i < 2; ++i) {
        w[o][i] = MatrixXcd::Zero(r1 - r0, c1 - c0);
        for (int r = r0; r < r1; ++r)
          for (int c = c0; c < c1; ++c) w[o][i](r - r0, c - c0) = bulk[r][c](o, i);
      }
    return w;
  };
  std::vector<MpoSite> sites;
  sites.push_back(make(0, 1, 0, 5));
  for (int j = 1; j + 1 < length; ++j) sites.push_back(make(0, 5, 0, 5));
  sites.push_back(make(0, 5, 4, 5));
  return Mpo(std::move(sites));
}

MpoEnv trivial_env() { return {MatrixXcd::Identity(1, 1)}; }

MpoEnv extend_left(const MpoEnv& env, const SiteTensor& bra, const MpoSite& w, const SiteTensor& ket) {
  const Eigen::Index wl = w[0][0].rows(), wr = w[0][0].cols();
  MpoEnv out(wr, MatrixXcd::Zero(bra[0].cols(), ket[0].cols()));
  MatrixXcd x, y;
  for (Eigen::Index a = 0; a < wl; ++a)
    for (int i = 0; i < 2; ++i) {
      bool any = false;
      for (int o = 0; o < 2 && !any; ++o)
        for (Eigen::Index b = 0; b < wr; ++b) any = any || !is_zero(w[o][i](a, b));
      if (!any) continue;
      x.noalias() = env[a] * ket[i];
      for (int o = 0; o < 2; ++o) {
        bool used = false;
        for (Eigen::Index b = 0; b < wr; ++b) used = used || !is_zero(w[o][i](a, b));
        if (!used) continue;
        y.noalias() = bra[o].adjoint() * x;
        for (Eigen::Index b = 0; b < wr; ++b) {
          const cplx c = w[o][i](a, b);
          if (!is_zero(c)) out[b] += c * y;
        }
      }
    }
  return out;
}

MpoEnv extend_right(const MpoEnv& env, const SiteTensor& bra, const MpoSite& w, const SiteTensor& ket) {
  const Eigen::Index wl = w[0][0].rows(), wr = w[0][0].cols();
  MpoEnv out(wl, MatrixXcd::Zero(bra[0].rows(), ket[0].rows()));
  MatrixXcd x, y;
  for (Eigen::Index b = 0; b < wr; ++b)
    for (int i = 0; i < 2; ++i) {
      bool any = false;
      for (int o = 0; o < 2 && !any; ++o)
        for (Eigen::Index a = 0; a < wl; ++a) any = any || !is_zero(w[o][i](a, b));
      if (!any) continue;
      x.noalias() = env[b] * ket[i].transpose();  // bra bond x ket left bond
      for (int o = 0; o < 2; ++o) {
        bool used = false;
        for (Eigen::Index a = 0; a < wl; ++a) used = used || !is_zero(w[o][i](a, b));
        if (!used) continue;
        y.noalias() = bra[o].conjugate() * x;
        for (Eigen::Index a = 0; a < wl; ++a) {
          const cplx c = w[o][i](a, b);
          if (!is_zero(c)) out[a] += c * y;
        }
      }
    }
  return out;
}

cplx matrix_element(const Mps& bra, const Mpo& h, const Mps& ket) {
  if (bra.length() != h.length() || ket.length() != h.length()) throw Error("length mismatch in matrix_element");
  MpoEnv env = trivial_env();
  for (int j = 0; j < h.length(); ++j) env = extend_left(env, bra.site(j), h.site(j), ket.site(j));
  return env[0](0, 0);
}

double energy(const Mps& psi, const Mpo& h) {
  const double nrm2 = std::real(psi.overlap(psi));
  return std::real(matrix_element(psi, h, psi)) / nrm2;
}

MpoCompressionReport compress_mpo(Mpo& h, const MpoCompressionConfig& cfg) {
  const int n = h.length();
  for (int j = 0; j + 1 < n; ++j) {
    auto& w = h.site(j);
    const Eigen::Index wl = w[0][0].rows(), wr = w[0][0].cols();
    MatrixXcd stacked(4 * wl, wr);
    for (int o = 0; o < 2; ++o)
      for (int i = 0; i < 2; ++i) stacked.middleRows((2 * o + i) * wl, wl) = w[o][i];
    Eigen::HouseholderQR<MatrixXcd> qr(stacked);
    const Eigen::Index r = std::min(4 * wl, wr);
    const MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(4 * wl, r);
    const MatrixXcd rmat = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
    for (int o = 0; o < 2; ++o)
      for (int i = 0; i < 2; ++i) w[o][i] = q.middleRows((2 * o + i) * wl, wl);
    for (auto& row : h.site(j + 1))
      for (auto& m : row) m = rmat * m;
  }
  MpoCompressionReport report;
  for (int j = n - 1; j > 0; --j) {
    auto& w = h.site(j);
    const Eigen::Index wl = w[0][0].rows(), wr = w[0][0].cols();
    MatrixXcd wide(wl, 4 * wr);
    for (int o = 0; o < 2; ++o)
      for (int i = 0; i < 2; ++i) wide.middleCols((2 * o + i) * wr, wr) = w[o][i];
    Eigen::BDCSVD<MatrixXcd> svd(wide, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd sv = svd.singularValues();
    const Eigen::Index keep = keep_count(sv, cfg.cutoff, cfg.max_bond, report.cap_hit);
    const double total = sv.squaredNorm();
    if (total > 0.0)
      report.discarded_weight = std::max(report.discarded_weight, (total - sv.head(keep).squaredNorm()) / total);
    const MatrixXcd vh = svd.matrixV().leftCols(keep).adjoint();
    const MatrixXcd us = svd.matrixU().leftCols(keep) * sv.head(keep).asDiagonal();
    for (int o = 0; o < 2; ++o)
      for (int i = 0; i < 2; ++i) w[o][i] = vh.middleCols((2 * o + i) * wr, wr);
    for (auto& row : h.site(j - 1))
      for (auto& m : row) m = m * us;
  }
  report.max_bond = h.max_bond_dim();
  return report;
}

Mpo conjugate_mpo(const Mpo& h, const TwoQubitGate& g, int bond, double compress_cutoff, int max_bond,
                  MpoCompressionReport* report) {
  if (bond < 0 || bond > h.length() - 2) throw BondOutOfRange("MPO bond " + std::to_string(bond) + " out of range");
  const MpoSite& w1 = h.site(bond);
  const MpoSite& w2 = h.site(bond + 1);
  const Eigen::Index wl = w1[0][0].rows(), wr = w2[0][0].cols();

  // merged[O][I] with O = 2*o1 + o2, I = 2*i1 + i2
  std::array<std::array<MatrixXcd, 4>, 4> merged;
  for (int o1 = 0; o1 < 2; ++o1)
    for (int o2 = 0; o2 < 2; ++o2)
      for (int i1 = 0; i1 < 2; ++i1)
        for (int i2 = 0; i2 < 2; ++i2) merged[2 * o1 + o2][2 * i1 + i2] = w1[o1][i1] * w2[o2][i2];

  const Mat4& u = g.matrix;
  std::array<std::array<MatrixXcd, 4>, 4> tmp, conj;
  for (int o = 0; o < 4; ++o)
    for (int i = 0; i < 4; ++i) {
      tmp[o][i] = MatrixXcd::Zero(wl, wr);
      for (int p = 0; p < 4; ++p)
        if (!is_zero(u(o, p))) tmp[o][i] += u(o, p) * merged[p][i];
    }
  for (int o = 0; o < 4; ++o)
    for (int i = 0; i < 4; ++i) {
      conj[o][i] = MatrixXcd::Zero(wl, wr);
      for (int p = 0; p < 4; ++p)
        if (!is_zero(u(i, p))) conj[o][i] += std::conj(u(i, p)) * tmp[o][p];
    }

  MatrixXcd mat(4 * wl, 4 * wr);
  for (int o1 = 0; o1 < 2; ++o1)
    for (int i1 = 0; i1 < 2; ++i1)
      for (int o2 = 0; o2 < 2; ++o2)
        for (int i2 = 0; i2 < 2; ++i2)
          mat.block((2 * o1 + i1) * wl, (2 * o2 + i2) * wr, wl, wr) = conj[2 * o1 + o2][2 * i1 + i2];
  Eigen::BDCSVD<MatrixXcd> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  bool unused = false;
  const Eigen::Index keep =
      sv[0] == 0.0 ? 1 : keep_count(sv, 0.0, std::numeric_limits<int>::max(), unused);
  const Eigen::VectorXd root = sv.head(keep).cwiseSqrt();
  const MatrixXcd left = svd.matrixU().leftCols(keep) * root.asDiagonal();
  const MatrixXcd right = root.asDiagonal() * svd.matrixV().leftCols(keep).adjoint();

  Mpo out = h;
  for (int o = 0; o < 2; ++o)
    for (int i = 0; i < 2; ++i) {
      out.site(bond)[o][i] = left.middleRows((2 * o + i) * wl, wl);
      out.site(bond + 1)[o][i] = right.middleCols((2 * o + i) * wr, wr);
    }
  MpoCompressionReport rep;
  if (compress_cutoff > 0.0) {
    rep = compress_mpo(out, {compress_cutoff, max_bond});
  } else {
    rep.max_bond = out.max_bond_dim();
  }
  if (report) *report = rep;
  return out;
}

}  // namespace dismagick
