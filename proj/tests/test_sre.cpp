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
#include <map>
#include <numbers>

#include "dismagick/clifford.hpp"
#include "dismagick/mps.hpp"
#include "dismagick/sre.hpp"
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

const double kT = std::log2(4.0 / 3.0);

}  // namespace

TEST(ExactM2, KnownValues) {
  for (int n = 1; n <= 6; ++n) EXPECT_NEAR(exact_m2(Statevector(n)), 0.0, 1e-12);
  EXPECT_NEAR(exact_m2(t_product_state(1)), 0.41503749927884381, 1e-12);
  EXPECT_NEAR(exact_m2(t_product_state(2)), 0.83007499855768763, 1e-12);
  EXPECT_NEAR(exact_m2(ghz_state(6)), 0.0, 1e-12);
}

TEST(ExactM2, MatchesBruteForcePauliSum) {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 5; ++n)
    for (int t = 0; t < 3; ++t) {
      const Eigen::VectorXcd v = oracle::random_state(n, rng);
      EXPECT_NEAR(exact_m2(from_vector(v)), oracle::m2_bruteforce(v), 1e-10);
    }
  for (int k = 1; k <= 4; ++k) EXPECT_NEAR(oracle::m2_bruteforce(as_vector(t_product_state(k))), k * kT, 1e-12);
}

TEST(ExactM2, PauliExpectationsMatchDense) {
  std::mt19937_64 rng(2);
  const Eigen::VectorXcd v = oracle::random_state(3, rng);
  const auto psi = from_vector(v);
  for (const auto& letters : oracle::all_pauli_letters(3)) {
    const cplx e = pauli_expectation(psi, PauliString::parse(letters));
    const cplx d = v.dot(oracle::pauli(letters) * v);
    EXPECT_LT(std::abs(e - d), 1e-12) << letters;
  }
}

TEST(ExactM2, Additivity) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    const auto a = from_vector(oracle::random_state(2, rng));
    const auto b = from_vector(oracle::random_state(3, rng));
    EXPECT_NEAR(exact_m2(a.tensor(b)), exact_m2(a) + exact_m2(b), 1e-9);
  }
}

TEST(ExactM2, CliffordInvariance) {
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    Statevector psi = prepare_benchmark_state(6, 2, 2, rng());
    const double before = exact_m2(psi);
    for (int q : brickwork_bonds(6, t)) psi.apply(random_clifford(rng).matrix, q, q + 1);
    EXPECT_LT(std::abs(exact_m2(psi) - before), 1e-10);
  }
}

TEST(ExactM2, Guards) {
  EXPECT_THROW(exact_m2(Statevector(13)), TooManyQubits);
  Statevector unnormalized = Statevector::from_amplitudes({1.0, 1.0});
  EXPECT_THROW(exact_m2(unnormalized), NotNormalized);
}

TEST(SampledM2, ProductStateIsExactlyZero) {
  const Mps m = Mps::zero_state(6);
  const auto samples = sample_paulis(m, 500, 1);
  for (const auto& s : samples) {
    EXPECT_EQ(s.pauli.x_mask, 0u);
    EXPECT_NEAR(s.expectation_sq, 1.0, 1e-12);
  }
  const auto est = sampled_m2(m, 1000, 2);
  EXPECT_NEAR(est.value, 0.0, 1e-9);
  EXPECT_EQ(est.method, SreMethod::PauliSampled);
  EXPECT_EQ(est.shots, 1000);
}

TEST(SampledM2, SampledExpectationsAreExact) {
  Rng rng(5);
  const Mps m = Mps::random(5, 4, rng);
  const Eigen::VectorXcd v = as_vector(m.to_statevector());
  for (const auto& s : sample_paulis(m, 200, 6)) {
    const double e = std::real(v.dot(s.pauli.to_matrix() * v));
    EXPECT_NEAR(s.expectation_sq, e * e, 1e-10);
  }
}

TEST(SampledM2, BellMarginalsMatchBruteForce) {
  Statevector bell(2);
  bell.apply(gates::hadamard(), 0);
  bell.apply(gates::cnot(), 0, 1);
  const Mps m = Mps::from_statevector(bell);
  const Eigen::VectorXcd v = as_vector(bell);
  // Brute-force Pi(P) = <P>^2 / 4 and the site-0 marginal.
  std::map<char, double> marginal;
  for (const auto& letters : oracle::all_pauli_letters(2)) {
    const double e = std::real(v.dot(oracle::pauli(letters) * v));
    marginal[letters[0]] += e * e / 4.0;
  }
  const long shots = 100000;
  std::map<char, long> counts;
  for (const auto& s : sample_paulis(m, shots, 7)) ++counts[s.pauli.letter(0)];
  for (char c : std::string("IXYZ")) {
    const double p = marginal[c];
    const double sigma = std::sqrt(shots * p * (1 - p));
    EXPECT_NEAR(static_cast<double>(counts[c]), shots * p, 5 * sigma + 1e-9) << c;
  }
}

TEST(SampledM2, FullDistributionChiSquare) {
  Rng rng(8);
  const Mps m = Mps::random(3, 4, rng);
  const Eigen::VectorXcd v = as_vector(m.to_statevector());
  std::map<std::string, double> prob;
  for (const auto& letters : oracle::all_pauli_letters(3)) {
    const double e = std::real(v.dot(oracle::pauli(letters) * v));
    prob[letters] = e * e / 8.0;
  }
  const long shots = 64000;
  std::map<std::string, long> counts;
  for (const auto& s : sample_paulis(m, shots, 9)) ++counts[s.pauli.to_string()];
  double chi2 = 0.0;
  int bins = 0;
  for (const auto& [k, p] : prob) {
    if (p * shots < 5) continue;
    const double exp = p * shots;
    chi2 += (counts[k] - exp) * (counts[k] - exp) / exp;
    ++bins;
  }
  EXPECT_LT(chi2, bins + 5 * std::sqrt(2.0 * bins));
}

TEST(SampledM2, UnbiasedBeforeLog) {
  const int n = 6;
  Rng rng(10);
  const Mps m = Mps::random(n, 4, rng);
  const double target = std::pow(2.0, -exact_m2(m.to_statevector()));
  std::vector<double> means;
  for (int rep = 0; rep < 200; ++rep) {
    double s = 0.0;
    const auto samples = sample_paulis(m, 1000, 100 + rep);
    for (const auto& x : samples) s += x.expectation_sq;
    means.push_back(s / static_cast<double>(samples.size()));
  }
  double mu = 0.0, var = 0.0;
  for (double x : means) mu += x;
  mu /= means.size();
  for (double x : means) var += (x - mu) * (x - mu);
  var /= (means.size() - 1);
  EXPECT_NEAR(mu, target, 3 * std::sqrt(var / means.size()));
}

TEST(SampledM2, AgreesWithExactAtEightSites) {
  const auto psi = prepare_benchmark_state(8, 4, 2, 11);
  const Mps m = Mps::from_statevector(psi);
  const auto est = sampled_m2(m, 10000, 12);
  EXPECT_GT(est.std_error, 0.0);
  EXPECT_NEAR(est.value, exact_m2(psi), 4 * est.std_error);
}

TEST(SampledM2, DeterministicForSeed) {
  Rng rng(13);
  const Mps m = Mps::random(6, 4, rng);
  const auto a = sampled_m2(m, 300, 5), b = sampled_m2(m, 300, 5);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(SampledM2, RejectsUnnormalized) {
  Mps m = Mps::zero_state(3);
  SiteTensor t = m.site(1);
  t[0] *= 2.0;
  m.set_site(1, t);
  EXPECT_THROW(sampled_m2(m, 10, 1), NotNormalized);
}

TEST(FidelityBound, KnownValues) {
  EXPECT_NEAR(stab_fidelity_lower_bound(0.0), 1.0, 1e-15);
  EXPECT_NEAR(stab_fidelity_lower_bound(std::log(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(stab_fidelity_lower_bound_bits(kT), 0.5, 1e-12);
  EXPECT_LT(stab_fidelity_lower_bound(5.0), 0.0);
}

TEST(FidelityBound, StabilizerEnumerationSizes) {
  EXPECT_EQ(oracle::stabilizer_states(1).size(), 6u);
  EXPECT_EQ(oracle::stabilizer_states(2).size(), 60u);
}

TEST(FidelityBound, TStateFidelity) {
  const auto stabs = oracle::stabilizer_states(1);
  const double f = oracle::stabilizer_fidelity(as_vector(t_product_state(1)), stabs);
  EXPECT_NEAR(f, (2 + std::sqrt(2.0)) / 4, 1e-12);
  EXPECT_GE(f, stab_fidelity_lower_bound_bits(exact_m2(t_product_state(1))));
}

TEST(FidelityBound, HoldsForRandomTwoQubitStates) {
  const auto stabs = oracle::stabilizer_states(2);
  std::mt19937_64 rng(14);
  for (int t = 0; t < 30; ++t) {
    const Eigen::VectorXcd v = oracle::random_state(2, rng);
    EXPECT_GE(oracle::stabilizer_fidelity(v, stabs) + 1e-12, stab_fidelity_lower_bound_bits(exact_m2(from_vector(v))));
  }
}
