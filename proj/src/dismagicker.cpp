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

#include "dismagick/dismagicker.hpp"

#include <cmath>
#include <string>
#include <thread>

namespace dismagick {

TwoQubitGate generator_to_unitary(const GeneratorParams& params) {
  Mat4 v = Mat4::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const double t = params.theta[4 * a + b];
      if (t != 0.0) v += t * kron(pauli_matrix(a), pauli_matrix(b));
    }
  Eigen::SelfAdjointEigenSolver<Mat4> es(v);
  const Eigen::Vector4cd phases = (cplx{0.0, 1.0} * es.eigenvalues().cast<cplx>()).array().exp();
  const Mat4 u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return TwoQubitGate{u, GateKind::ParamGenerator, std::nullopt};
}

ContinuousDismagickResult optimize_dismagicker_continuous(const Statevector& state, int bond,
                                                          const NelderMeadConfig& cfg, std::uint64_t seed) {
  if (bond < 0 || bond + 1 >= state.num_qubits()) throw BondOutOfRange("bond " + std::to_string(bond) + " out of range");
  if (state.num_qubits() > kExactM2MaxQubits) throw TooManyQubits("continuous dismagicker needs the exact M2 regime");

  Statevector work = state;
  auto cost = [&](std::span<const double> x) {
    GeneratorParams p;
    std::copy(x.begin(), x.end(), p.theta.begin());
    const TwoQubitGate g = generator_to_unitary(p);
    std::copy(state.amplitudes().begin(), state.amplitudes().end(), work.amplitudes().begin());
    work.apply(g.matrix, bond, bond + 1);
    return exact_m2(work);
  };

  const std::array<double, 16> zero{};
  const NelderMeadResult nm = nelder_mead(cost, zero, cfg, seed);

  ContinuousDismagickResult out;
  std::copy(nm.x.begin(), nm.x.end(), out.params.theta.begin());
  out.gate = generator_to_unitary(out.params);
  out.m2_before = cost(zero);
  out.m2_after = nm.f;
  out.converged = nm.converged;
  out.evaluations = nm.evaluations;
  out.trace = nm.trace;
  return out;
}

DiscreteDismagickResult optimize_dismagicker_discrete(const Mps& mps, int bond, const DiscreteDismagickConfig& cfg,
                                                      std::uint64_t seed) {
  if (bond < 0 || bond + 1 >= mps.length()) throw BondOutOfRange("bond " + std::to_string(bond) + " out of range");
  Mps base = mps;
  base.move_center(bond);

  std::vector<TwoQubitGate> pool{TwoQubitGate::identity()};
  Rng rng(derive_seed(seed, 0));
  for (int c = 0; c < cfg.candidates; ++c) pool.push_back(random_clifford_rz_candidate(rng, cfg.theta));

  std::vector<SreEstimate> estimates(pool.size());
  auto evaluate = [&](std::size_t c) {
    Mps trial = base;
    trial.apply_two_site_gate(pool[c].matrix, bond, cfg.eval_trunc);
    estimates[c] = sampled_m2(trial, cfg.shots, derive_seed(seed, c + 1));
  };
  const int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(pool.size())));
  if (jobs == 1) {
    for (std::size_t c = 0; c < pool.size(); ++c) evaluate(c);
  } else {
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t c = w; c < pool.size(); c += jobs) evaluate(c);
      });
    }
    for (auto& t : workers) t.join();
  }

  std::size_t best = 0;
  for (std::size_t c = 1; c < pool.size(); ++c)
    if (estimates[c].value < estimates[best].value) best = c;

  DiscreteDismagickResult out;
  out.gate = pool[best];
  out.estimate = estimates[best];
  out.chosen_index = static_cast<int>(best);
  out.estimates = std::move(estimates);
  return out;
}

}  // namespace dismagick
