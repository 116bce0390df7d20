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

#include "dismagick/dmrg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dismagick {

LanczosResult lanczos_ground_state(const std::function<VectorXcd(const VectorXcd&)>& apply, const VectorXcd& start,
                                   int max_iters, double tol) {
  const Eigen::Index dim = start.size();
  const int kmax = static_cast<int>(std::min<Eigen::Index>(std::max(max_iters, 1), dim));
  std::vector<VectorXcd> basis;
  std::vector<double> alpha, beta;
  basis.push_back(start / start.norm());

  LanczosResult res;
  Eigen::VectorXd ritz;
  for (int j = 0; j < kmax; ++j) {
    VectorXcd w = apply(basis[j]);
    alpha.push_back(std::real(basis[j].dot(w)));
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& v : basis) w -= v * v.dot(w);
    const double b = w.norm();

    const int m = j + 1;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd off = m > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1)) : Eigen::VectorXd();
    eig.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    ritz = eig.eigenvectors().col(0);
    res.eigenvalue = eig.eigenvalues()[0];
    res.residual = b * std::abs(ritz[m - 1]);
    res.iterations = m;
    if (res.residual < tol || b < 1e-14 || m == kmax) break;
    beta.push_back(b);
    basis.push_back(w / b);
  }
  res.eigenvector = VectorXcd::Zero(dim);
  for (int i = 0; i < res.iterations; ++i) res.eigenvector += ritz[i] * basis[i];
  res.eigenvector.normalize();
  return res;
}

namespace {

/// Two-site effective Hamiltonian between environments.
class EffectiveHamiltonian {
 public:
  EffectiveHamiltonian(const MpoEnv& left, const MpoSite& w1, const MpoSite& w2, const MpoEnv& right, Eigen::Index dl,
                       Eigen::Index dr)
      : left_(left), w1_(w1), w2_(w2), right_(right), dl_(dl), dr_(dr) {}

  Eigen::Index dim() const { return 4 * dl_ * dr_; }

  VectorXcd flatten(const TwoSiteTensor& t) const {
    VectorXcd v(dim());
    for (int p = 0; p < 4; ++p) v.segment(p * dl_ * dr_, dl_ * dr_) = t.blocks[p].reshaped();
    return v;
  }

  TwoSiteTensor unflatten(const VectorXcd& v) const {
    TwoSiteTensor t;
    for (int p = 0; p < 4; ++p) t.blocks[p] = v.segment(p * dl_ * dr_, dl_ * dr_).reshaped(dl_, dr_);
    return t;
  }

  VectorXcd operator()(const VectorXcd& v) const {
    const Eigen::Index w0 = w1_[0][0].rows(), wm = w1_[0][0].cols(), w3 = w2_[0][0].cols();
    const Eigen::Index blk = dl_ * dr_;
    // x[a][p] = L[a] * theta[p]
    std::vector<std::array<MatrixXcd, 4>> x(w0);
    for (Eigen::Index a = 0; a < w0; ++a)
      for (int p = 0; p < 4; ++p) x[a][p].noalias() = left_[a] * v.segment(p * blk, blk).reshaped(dl_, dr_);
    // y[m][o1][i2] = sum_{a,i1} W1[o1][i1](a,m) x[a][2 i1 + i2]
    std::vector<std::array<MatrixXcd, 4>> y(wm);
    for (Eigen::Index m = 0; m < wm; ++m)
      for (int o1 = 0; o1 < 2; ++o1)
        for (int i2 = 0; i2 < 2; ++i2) {
          MatrixXcd& acc = y[m][2 * o1 + i2];
          acc = MatrixXcd::Zero(dl_, dr_);
          for (Eigen::Index a = 0; a < w0; ++a)
            for (int i1 = 0; i1 < 2; ++i1) {
              const cplx c = w1_[o1][i1](a, m);
              if (c != cplx{}) acc += c * x[a][2 * i1 + i2];
            }
        }
    // z[b][o1][o2] = sum_{m,i2} W2[o2][i2](m,b) y[m][o1][i2]
    VectorXcd out = VectorXcd::Zero(dim());
    MatrixXcd z(dl_, dr_);
    for (Eigen::Index b = 0; b < w3; ++b)
      for (int o1 = 0; o1 < 2; ++o1)
        for (int o2 = 0; o2 < 2; ++o2) {
          z.setZero();
          bool any = false;
          for (Eigen::Index m = 0; m < wm; ++m)
            for (int i2 = 0; i2 < 2; ++i2) {
              const cplx c = w2_[o2][i2](m, b);
              if (c != cplx{}) {
                z += c * y[m][2 * o1 + i2];
                any = true;
              }
            }
          if (!any) continue;
          out.segment((2 * o1 + o2) * blk, blk).reshaped(dl_, dr_) += z * right_[b].transpose();
        }
    return out;
  }

 private:
  const MpoEnv& left_;
  const MpoSite& w1_;
  const MpoSite& w2_;
  const MpoEnv& right_;
  Eigen::Index dl_, dr_;
};

}  // namespace

DmrgResult two_site_dmrg(const Mpo& h, const DmrgConfig& cfg, std::optional<Mps> initial) {
  if (cfg.max_bond < 1) throw Error("DMRG bond dimension must be at least 1");
  if (cfg.sweeps < 1) throw Error("DMRG needs at least one sweep");
  const int n = h.length();
  if (n < 2) throw Error("DMRG needs at least two sites");
  Mps psi;
  if (initial) {
    psi = std::move(*initial);
    if (psi.length() != n) throw Error("initial state length does not match the MPO");
  } else {
    Rng rng(cfg.seed);
    psi = Mps::random(n, cfg.max_bond, rng);
  }
  psi.move_center(0);
  psi.normalize();

  const TruncationConfig trunc{cfg.max_bond, cfg.svd_cutoff};
  std::vector<MpoEnv> left(n + 1), right(n + 1);
  left[0] = trivial_env();
  right[n] = trivial_env();
  for (int j = n - 1; j >= 1; --j) right[j] = extend_right(right[j + 1], psi.site(j), h.site(j), psi.site(j));

  auto optimize = [&](int k, SweepDirection dir) {
    const TwoSiteTensor theta = psi.two_site_tensor(k);
    EffectiveHamiltonian heff(left[k], h.site(k), h.site(k + 1), right[k + 2], theta.left_dim(), theta.right_dim());
    const auto res = lanczos_ground_state([&](const VectorXcd& v) { return heff(v); }, heff.flatten(theta),
                                          cfg.lanczos_iters, cfg.lanczos_tol);
    psi.set_two_site_tensor(k, heff.unflatten(res.eigenvector), trunc, dir);
  };

  DmrgResult out;
  double previous = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
    for (int k = 0; k + 1 < n; ++k) {
      optimize(k, SweepDirection::LeftToRight);
      if (k + 2 < n) left[k + 1] = extend_left(left[k], psi.site(k), h.site(k), psi.site(k));
    }
    for (int k = n - 2; k >= 0; --k) {
      optimize(k, SweepDirection::RightToLeft);
      right[k + 1] = extend_right(right[k + 2], psi.site(k + 1), h.site(k + 1), psi.site(k + 1));
    }
    // Energy of the truncated state, not the local eigenvalue.
    const double e = energy(psi, h);
    out.sweep_energies.push_back(e);
    if (std::abs(previous - e) < cfg.energy_tol) {
      out.converged = true;
      break;
    }
    previous = e;
  }
  psi.normalize();
  out.energy = energy(psi, h);
  out.state = std::move(psi);
  return out;
}

DmrgResult two_site_dmrg(const Mpo& h, int max_bond, int sweeps, std::uint64_t seed) {
  DmrgConfig cfg;
  cfg.max_bond = max_bond;
  cfg.sweeps = sweeps;
  cfg.seed = seed;
  return two_site_dmrg(h, cfg);
}

double relative_error(double e, double e_ref) {
  if (e_ref == 0.0) throw DivisionByZero("relative error against a zero reference");
  return std::abs(e - e_ref) / std::abs(e_ref);
}

}  // namespace dismagick
