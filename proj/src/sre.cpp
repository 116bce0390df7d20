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

#include "dismagick/sre.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace dismagick {

namespace {

/// Maps qubit-indexed masks to basis-index masks (qubit 0 = MSB).
std::uint64_t index_mask(std::uint64_t qubit_mask, int n) {
  std::uint64_t out = 0;
  for (int q = 0; q < n; ++q)
    if ((qubit_mask >> q) & 1u) out |= std::uint64_t{1} << (n - 1 - q);
  return out;
}

void walsh_hadamard(std::vector<cplx>& f) {
  const std::size_t n = f.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const cplx a = f[j], b = f[j + h];
        f[j] = a + b;
        f[j + h] = a - b;
      }
    }
  }
}

}  // namespace

std::string_view to_string(SreMethod m) { return m == SreMethod::Exact ? "exact" : "pauli_sampled"; }

cplx pauli_expectation(const Statevector& psi, const PauliString& p) {
  const int n = psi.num_qubits();
  if (p.n != n) throw Error("Pauli string and state have different qubit counts");
  const std::uint64_t xi = index_mask(p.x_mask, n);
  const std::uint64_t zi = index_mask(p.z_mask, n);
  // P|b> = i^phase (-1)^{|b & z|} |b ^ x>
  cplx acc{0.0, 0.0};
  const auto amps = psi.amplitudes();
  for (std::uint64_t b = 0; b < amps.size(); ++b) {
    const double sign = (std::popcount(b & zi) & 1) ? -1.0 : 1.0;
    acc += std::conj(amps[b ^ xi]) * amps[b] * sign;
  }
  static const std::array<cplx, 4> kPhase{cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};
  return kPhase[p.phase_exp & 3] * acc;
}

double pauli_fourth_moment(const Statevector& psi) {
  const int n = psi.num_qubits();
  if (n > kExactM2MaxQubits)
    throw TooManyQubits("exact M2 is limited to " + std::to_string(kExactM2MaxQubits) + " qubits");
  const auto amps = psi.amplitudes();
  const std::size_t dim = amps.size();
  // For a fixed X mask, <X^x Z^z> over all z is one Walsh-Hadamard transform
  // of f(b) = conj(a_{b^x}) a_b.
  std::vector<cplx> f(dim);
  double total = 0.0;
  for (std::size_t x = 0; x < dim; ++x) {
    for (std::size_t b = 0; b < dim; ++b) f[b] = std::conj(amps[b ^ x]) * amps[b];
    walsh_hadamard(f);
    for (const cplx& v : f) {
      const double m = std::norm(v);
      total += m * m;
    }
  }
  return total;
}

double exact_m2(const Statevector& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-8) throw NotNormalized("exact M2 requires a normalized state");
  const double moment = pauli_fourth_moment(psi);
  const double dim = static_cast<double>(psi.dim());
  return -std::log2(moment / dim);
}

PauliSampler::PauliSampler(const Mps& mps) {
  Mps copy = mps;
  copy.move_center(0);
  const double nrm = copy.norm();
  if (std::abs(nrm - 1.0) > 1e-8) throw NotNormalized("Pauli sampling requires a normalized MPS");
  const int n = copy.length();
  sites_.reserve(n);
  for (int i = 0; i < n; ++i) sites_.push_back(copy.site(i));
  work_.resize(n);
  env_.resize(n + 1);
  env_[0] = MatrixXcd::Identity(1, 1);
  for (int i = 0; i < n; ++i) {
    const auto dl = sites_[i][0].rows(), dr = sites_[i][0].cols();
    auto& w = work_[i];
    w.c0.resize(dl, dr);
    w.c1.resize(dl, dr);
    for (MatrixXcd* m : {&w.t00, &w.t11, &w.t01, &w.t10}) m->resize(dr, dr);
    for (auto& m : w.next) m.resize(dr, dr);
    env_[i + 1].resize(dr, dr);
  }
}

double PauliSampler::draw(Rng& rng, std::vector<int>& letters) {
  static const cplx kI{0.0, 1.0};
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const int n = length();
  letters.resize(n);
  double weight = 1.0;
  for (int i = 0; i < n; ++i) {
    auto& w = work_[i];
    const MatrixXcd& env = env_[i];
    const auto& b = sites_[i];
    w.c0.noalias() = env * b[0];
    w.c1.noalias() = env * b[1];
    w.t00.noalias() = b[0].adjoint() * w.c0;
    w.t11.noalias() = b[1].adjoint() * w.c1;
    w.t01.noalias() = b[0].adjoint() * w.c1;
    w.t10.noalias() = b[1].adjoint() * w.c0;
    w.next[0] = w.t00 + w.t11;
    w.next[1] = w.t01 + w.t10;
    w.next[2] = kI * (w.t10 - w.t01);
    w.next[3] = w.t00 - w.t11;
    std::array<double, 4> p{};
    double total = 0.0;
    for (int a = 0; a < 4; ++a) {
      p[a] = w.next[a].squaredNorm();
      total += p[a];
    }
    const double u = uniform(rng) * total;
    int pick = 3;
    double acc = 0.0;
    for (int a = 0; a < 4; ++a) {
      acc += p[a];
      if (u < acc) {
        pick = a;
        break;
      }
    }
    while (p[pick] == 0.0) --pick;  // u landed on the closed upper edge
    letters[i] = pick;
    weight *= 2.0 * p[pick] / total;
    env_[i + 1] = w.next[pick] / std::sqrt(p[pick]);
  }
  return weight;
}

std::vector<PauliSample> sample_paulis(const Mps& mps, long shots, std::uint64_t seed) {
  PauliSampler sampler(mps);
  Rng rng(seed);
  std::vector<int> letters;
  std::vector<PauliSample> out;
  out.reserve(shots);
  const int n = sampler.length();
  if (n > 64) throw TooManyQubits("Pauli string masks are limited to 64 qubits");
  for (long s = 0; s < shots; ++s) {
    const double w = sampler.draw(rng, letters);
    std::uint64_t index = 0;
    for (int q = 0; q < n; ++q) index = (index << 2) | static_cast<std::uint64_t>(letters[q]);
    out.push_back(PauliSample{PauliString::from_letters(n, index), w});
  }
  return out;
}

SreEstimate sampled_m2(const Mps& mps, long shots, std::uint64_t seed) {
  if (shots <= 0) throw Error("sampled_m2 needs a positive shot count");
  PauliSampler sampler(mps);
  Rng rng(seed);
  std::vector<int> letters;
  // Welford accumulation of <P_s>^2.
  double mean = 0.0, m2acc = 0.0;
  for (long s = 0; s < shots; ++s) {
    const double x = sampler.draw(rng, letters);
    const double delta = x - mean;
    mean += delta / static_cast<double>(s + 1);
    m2acc += delta * (x - mean);
  }
  const double var = shots > 1 ? m2acc / static_cast<double>(shots - 1) : 0.0;
  const double sem = std::sqrt(var / static_cast<double>(shots));
  SreEstimate est;
  est.value = -std::log2(mean);
  est.std_error = sem / (mean * std::numbers::ln2);
  est.shots = shots;
  est.method = SreMethod::PauliSampled;
  return est;
}

double stab_fidelity_lower_bound(double m2_nats) { return 2.0 * std::exp(-m2_nats) - 1.0; }

double stab_fidelity_lower_bound_bits(double m2_bits) {
  return stab_fidelity_lower_bound(m2_bits * std::numbers::ln2);
}

}  // namespace dismagick
