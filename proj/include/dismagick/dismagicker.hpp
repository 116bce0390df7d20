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

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dismagick/clifford.hpp"
#include "dismagick/mps.hpp"
#include "dismagick/nelder_mead.hpp"
#include "dismagick/sre.hpp"
#include "dismagick/statevector.hpp"

namespace dismagick {

/// Coefficients of the Hermitian generator V over the two-qubit Pauli basis.
/// Index 4*a + b multiplies sigma_a (x) sigma_b, letters 0=I,1=X,2=Y,3=Z, the
/// first factor acting on the gate's first qubit. theta[0] (II) only sets a
/// global phase.
struct GeneratorParams {
  std::array<double, 16> theta{};
};

/// exp(i V(theta)) via Hermitian eigendecomposition of V.
TwoQubitGate generator_to_unitary(const GeneratorParams& params);

struct ContinuousDismagickResult {
  TwoQubitGate gate;
  GeneratorParams params;
  double m2_before = 0.0;
  double m2_after = 0.0;
  bool converged = false;
  int evaluations = 0;
  std::vector<NelderMeadTracePoint> trace;
};

/// Minimizes exact_m2(e^{iV(theta)} on sites (bond, bond+1) |state>) with
/// Nelder-Mead started from theta = 0, so m2_after <= m2_before.
ContinuousDismagickResult optimize_dismagicker_continuous(const Statevector& state, int bond,
                                                          const NelderMeadConfig& cfg, std::uint64_t seed);

struct DiscreteDismagickConfig {
  int candidates = 200;
  long shots = 10000;
  ThetaDistribution theta;
  /// Truncation used when a candidate is applied before its M2 is sampled.
  /// The default keeps every singular value above the noise floor.
  TruncationConfig eval_trunc;
  /// Parallel workers for candidate evaluation.
  int jobs = 1;
};

struct DiscreteDismagickResult {
  TwoQubitGate gate;
  SreEstimate estimate;
  /// 0 is the identity; 1..candidates are the random Clifford+Rz draws.
  int chosen_index = 0;
  std::vector<SreEstimate> estimates;
};

/// Best of the identity and `candidates` random Clifford+Rz gates on bond
/// (bond, bond+1), ranked by sampled M2 with fresh shots per candidate. Ties
/// go to the lower candidate index.
DiscreteDismagickResult optimize_dismagicker_discrete(const Mps& mps, int bond, const DiscreteDismagickConfig& cfg,
                                                      std::uint64_t seed);

}  // namespace dismagick
