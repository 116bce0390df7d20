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

#include "dismagick/exact_diag.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "dismagick/linalg.hpp"

namespace dismagick {

namespace {

class SectorHamiltonian {
 public:
  explicit SectorHamiltonian(int length) : length_(length), index_(std::size_t{1} << length, -1) {
    const int ups = (length + 1) / 2;
    for (std::uint32_t s = 0; s < (1u << length); ++s) {
      if (std::popcount(s) != ups) continue;
      index_[s] = static_cast<std::int32_t>(states_.size());
      states_.push_back(s);
    }
  }

  std::size_t dim() const { return states_.size(); }

  void apply(const std::vector<double>& in, std::vector<double>& out) const {
    for (std::size_t r = 0; r < states_.size(); ++r) {
      const std::uint32_t s = states_[r];
      double diag = 0.0;
      double acc = 0.0;
      for (int i = 0; i + 1 < length_; ++i) {
        const std::uint32_t pair = (1u << i) | (1u << (i + 1));
        const std::uint32_t bits = s & pair;
        if (bits == 0 || bits == pair) {
          diag += 0.25;
        } else {
          diag -= 0.25;
          acc += 0.5 * in[index_[s ^ pair]];
        }
      }
      out[r] = diag * in[r] + acc;
    }
  }

 private:
  int length_;
  std::vector<std::int32_t> index_;
  std::vector<std::uint32_t> states_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double heisenberg_ground_energy_exact(int length) {
  if (length < 2 || length > 26) throw Error("exact Heisenberg reference supports 2 <= L <= 26");
  const SectorHamiltonian h(length);
  const std::size_t dim = h.dim();

  std::vector<double> v(dim), w(dim), prev(dim, 0.0);
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> normal;
  for (double& x : v) x = normal(rng);
  const double n0 = std::sqrt(dot(v, v));
  for (double& x : v) x /= n0;

  // Plain three-term Lanczos for the eigenvalue only; ghost copies do not
  // disturb the lowest Ritz value.
  std::vector<double> alpha, beta;
  double last = std::numeric_limits<double>::infinity();
  const int max_iters = std::min<int>(400, static_cast<int>(dim));
  double b_prev = 0.0;
  double estimate = 0.0;
  for (int j = 0; j < max_iters; ++j) {
    h.apply(v, w);
    const double a = dot(v, w);
    for (std::size_t i = 0; i < dim; ++i) w[i] -= a * v[i] + b_prev * prev[i];
    const double b = std::sqrt(dot(w, w));
    alpha.push_back(a);

    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), static_cast<Eigen::Index>(alpha.size()));
    Eigen::VectorXd off = Eigen::Map<Eigen::VectorXd>(beta.data(), static_cast<Eigen::Index>(beta.size()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    eig.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    estimate = eig.eigenvalues()[0];
    if (std::abs(estimate - last) < 1e-13 * std::abs(estimate) && j > 10) break;
    last = estimate;
    if (b < 1e-13) break;
    beta.push_back(b);
    prev.swap(v);
    for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / b;
    b_prev = b;
  }
  return estimate;
}

}  // namespace dismagick
