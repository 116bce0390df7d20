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

#include <gtest/gtest.h>

#include <cmath>

#include "dismagick/mps.hpp"
#include "oracles.hpp"

using namespace dismagick;

namespace {

Eigen::VectorXcd as_vector(const Statevector& psi) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(psi.dim()));
  for (std::size_t i = 0; i < psi.dim(); ++i) v(static_cast<Eigen::Index>(i)) = psi[i];
  return v;
}

Statevector from_vector(const Eigen::VectorXcd& v) {
  return Statevector::from_amplitudes(std::vector<cplx>(v.data(), v.data() + v.size()));
}

/// Max deviation of sum_s A^s† A^s (left) or sum_s A^s A^s† (right) from 1.
double isometry_defect(const SiteTensor& a, bool left) {
  if (left) {
    const MatrixXcd m = a[0].adjoint() * a[0] + a[1].adjoint() * a[1];
    return (m - MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
  }
  const MatrixXcd m = a[0] * a[0].adjoint() + a[1] * a[1].adjoint();
  return (m - MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

void expect_canonical(const Mps& m) {
  ASSERT_TRUE(m.center().has_value());
  for (int i = 0; i < *m.center(); ++i) EXPECT_LT(isometry_defect(m.site(i), true), 1e-10) << i;
  for (int i = *m.center() + 1; i < m.length(); ++i) EXPECT_LT(isometry_defect(m.site(i), false), 1e-10) << i;
}

}  // namespace

TEST(Mps, ZeroStateRoundTrip) {
  const Mps m = Mps::zero_state(5);
  const Statevector psi = m.to_statevector();
  EXPECT_NEAR(std::abs(psi[0]), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(Mps::from_statevector(psi), m), 1.0, 1e-12);
}

TEST(Mps, RandomStateRoundTrip) {
  std::mt19937_64 rng(1);
  const Eigen::VectorXcd v = oracle::random_state(8, rng);
  const Mps m = Mps::from_statevector(from_vector(v));
  EXPECT_GE(std::norm(v.dot(as_vector(m.to_statevector()))), 1.0 - 1e-10);
  EXPECT_EQ(m.bond_dims(), (std::vector<int>{1, 2, 4, 8, 16, 8, 4, 2, 1}));
  expect_canonical(m);
}

TEST(Mps, GhzHasBondDimensionTwo) {
  const Mps m = Mps::from_statevector(ghz_state(6));
  for (int k = 0; k < 5; ++k) EXPECT_EQ(m.bond_dim(k), 2);
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(bond_entropy(m, k), 1.0, 1e-12);
}

TEST(Mps, ProductStateHasZeroEntropy) {
  const int bits[] = {0, 1, 1, 0, 1};
  Mps m = Mps::product_state(bits);
  for (double e : m.bond_entropies()) EXPECT_NEAR(e, 0.0, 1e-12);
}

TEST(Mps, ToStatevectorLimit) { EXPECT_THROW(Mps::zero_state(15).to_statevector(), TooLarge); }

TEST(Mps, CanonicalFormsAfterCenterMoves) {
  Rng rng(2);
  Mps m = Mps::random(8, 4, rng);
  EXPECT_NEAR(m.norm(), 1.0, 1e-12);
  for (int c : {0, 7, 3, 5, 1}) {
    m.move_center(c);
    expect_canonical(m);
  }
}

TEST(Mps, GaugeInvariance) {
  Rng rng(3);
  Mps m = Mps::random(8, 4, rng);
  const Mps ref = m;
  const auto e0 = Mps(m).bond_entropies();
  for (int c : {7, 2, 4}) {
    m.move_center(c);
    EXPECT_NEAR(fidelity(m, ref), 1.0, 1e-10);
    const auto e = Mps(m).bond_entropies();
    for (std::size_t k = 0; k < e.size(); ++k) EXPECT_NEAR(e[k], e0[k], 1e-10);
  }
}

TEST(Mps, BellPairAcrossBondZero) {
  Mps m = Mps::zero_state(3);
  const Mat4 g = gates::cnot() * kron(gates::hadamard(), Mat2::Identity());
  TruncationConfig trunc{2, 0.0};
  const auto [out, w] = apply_two_site_gate(m, TwoQubitGate{g, GateKind::Clifford, {}}, 0, trunc);
  EXPECT_NEAR(w, 0.0, 1e-15);
  EXPECT_NEAR(bond_entropy(out, 0), 1.0, 1e-12);
}

TEST(Mps, IdentityGateIsLossless) {
  Rng rng(4);
  const Mps m = Mps::random(6, 4, rng);
  for (int k = 0; k < 5; ++k) {
    const auto [out, w] = apply_two_site_gate(m, TwoQubitGate::identity(), k, TruncationConfig{4, 0.0});
    EXPECT_NEAR(w, 0.0, 1e-14);
    EXPECT_NEAR(fidelity(out, m), 1.0, 1e-10);
  }
}

TEST(Mps, DiscardedWeightMatchesInfidelity) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const Mps m = Mps::random(8, 4, rng);
    const auto g = haar_random_two_qubit(rng);
    for (int k = 0; k < 7; ++k) {
      const auto [out, w] = apply_two_site_gate(m, g, k, TruncationConfig{4, 0.0});
      Statevector exact = m.to_statevector();
      exact.apply(g.matrix, k, k + 1);
      const double f = fidelity(out.to_statevector(), exact);
      EXPECT_NEAR(1.0 - f, w, 1e-9);
    }
  }
}

TEST(Mps, DiscardedWeightMonotoneInBond) {
  Rng rng(5);
  const Mps m = Mps::random(8, 8, rng);
  const auto g = haar_random_two_qubit(rng);
  double prev = 2.0;
  for (int d = 1; d <= 16; ++d) {
    const auto [out, w] = apply_two_site_gate(m, g, 3, TruncationConfig{d, 0.0});
    EXPECT_LE(w, prev + 1e-15);
    prev = w;
  }
  EXPECT_NEAR(prev, 0.0, 1e-14);
}

TEST(Mps, BondEntropyMatchesDense) {
  Rng rng(6);
  const Mps m = Mps::random(8, 8, rng);
  const Eigen::VectorXcd v = as_vector(m.to_statevector());
  for (int k = 0; k < 7; ++k) EXPECT_NEAR(bond_entropy(m, k), oracle::entropy_dense(v, k + 1), 1e-8);
}

TEST(Mps, SweepMatchesDenseSimulation) {
  const int n = 8;
  Rng rng(7);
  std::mt19937_64 vr(7);
  const Eigen::VectorXcd v0 = oracle::random_state(n, vr);
  Mps m = Mps::from_statevector(from_vector(v0));
  Eigen::VectorXcd v = v0;
  const TruncationConfig trunc{1 << (n / 2), 0.0};
  for (int sweep = 0; sweep < 2; ++sweep) {
    for (int k = 0; k + 1 < n; ++k) {
      const auto g = haar_random_two_qubit(rng);
      m.apply_two_site_gate(g.matrix, k, trunc);
      v = oracle::embed(g.matrix, n, k) * v;
    }
    for (int k = n - 2; k >= 0; --k) {
      const auto g = haar_random_two_qubit(rng);
      m.apply_two_site_gate(g.matrix, k, trunc, SweepDirection::RightToLeft);
      v = oracle::embed(g.matrix, n, k) * v;
    }
  }
  EXPECT_GE(std::norm(v.dot(as_vector(m.to_statevector()))), 1.0 - 1e-8);
}

TEST(Mps, BondErrors) {
  Mps m = Mps::zero_state(4);
  EXPECT_THROW(m.apply_two_site_gate(Mat4::Identity(), 3, {}), BondOutOfRange);
  EXPECT_THROW(m.apply_two_site_gate(Mat4::Identity(), -1, {}), BondOutOfRange);
}

TEST(Mps, CenterAfterSplit) {
  Rng rng(8);
  Mps m = Mps::random(6, 4, rng);
  m.apply_two_site_gate(Mat4::Identity(), 2, {}, SweepDirection::LeftToRight);
  EXPECT_EQ(m.center(), 3);
  m.apply_two_site_gate(Mat4::Identity(), 2, {}, SweepDirection::RightToLeft);
  EXPECT_EQ(m.center(), 2);
  expect_canonical(m);
}

TEST(Mps, CutoffTruncation) {
  // Schmidt values sqrt(0.9) and sqrt(0.1): a relative cutoff of 0.5 drops the second.
  Statevector psi = Statevector::from_amplitudes({std::sqrt(0.9), 0.0, 0.0, std::sqrt(0.1)});
  const Mps m = Mps::from_statevector(psi, TruncationConfig{4, 0.5});
  EXPECT_EQ(m.bond_dim(0), 1);
  EXPECT_NEAR(m.norm(), 1.0, 1e-12);
}
