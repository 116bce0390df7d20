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

#include "dismagick/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace dismagick {

namespace {

std::vector<double> normalized(std::span<const double> p) {
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  std::vector<double> out(p.begin(), p.end());
  if (total > 0.0) {
    for (double& v : out) v /= total;
  }
  return out;
}

}  // namespace

double von_neumann_entropy_bits(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : normalized(probabilities)) {
    if (p > kEntropyEigenFloor) s -= p * std::log2(p);
  }
  return std::max(s, 0.0);
}

double renyi2_entropy_bits(std::span<const double> probabilities) {
  double purity = 0.0;
  for (double p : normalized(probabilities)) {
    if (p > kEntropyEigenFloor) purity += p * p;
  }
  if (purity <= 0.0) return 0.0;
  return std::max(-std::log2(purity), 0.0);
}

std::vector<double> schmidt_probabilities(const MatrixXcd& m) {
  // The Gram matrix on the smaller side is enough for the spectrum.
  MatrixXcd gram = m.rows() <= m.cols() ? MatrixXcd(m * m.adjoint()) : MatrixXcd(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  std::vector<double> out(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) out[i] = std::max(ev[ev.size() - 1 - i], 0.0);
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

double unitarity_defect(const MatrixXcd& u) {
  MatrixXcd d = u.adjoint() * u - MatrixXcd::Identity(u.cols(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace dismagick
