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

#include <cstddef>
#include <string_view>

#include "dismagick/clifford.hpp"
#include "dismagick/mps.hpp"
#include "dismagick/statevector.hpp"

namespace dismagick {

enum class EntanglementCost { VonNeumann, Renyi2, TruncationError };

std::string_view to_string(EntanglementCost c);
EntanglementCost parse_entanglement_cost(std::string_view s);

struct DisentanglerConfig {
  EntanglementCost cost = EntanglementCost::VonNeumann;
  /// Bond cap used by the TruncationError cost.
  TruncationConfig trunc;
  /// Scan all 11520 gates instead of one representative per local coset.
  bool exhaustive = false;
};

struct DisentanglerResult {
  TwoQubitGate gate;
  std::size_t clifford_index = 0;
  double cost_after = 0.0;
  double cost_identity = 0.0;
  /// Von Neumann entropy (bits) across the central cut after the gate.
  double ee_after = 0.0;
  double ee_identity = 0.0;
  std::size_t evaluated = 0;
};

/// Entanglement cost of theta across its central cut.
double central_cut_cost(const TwoSiteTensor& theta, EntanglementCost cost, const TruncationConfig& trunc = {});

/// Two-qubit Clifford minimizing the cost across the central cut of theta.
///
/// Gates differing by a local Clifford on the output side give the same cost,
/// so by default only the lowest-index member of each of the 20 local cosets
/// is evaluated; the exhaustive scan returns the same gate. Ties within 1e-12
/// go to the lowest enumeration index.
DisentanglerResult best_clifford_disentangler(const TwoSiteTensor& theta, const DisentanglerConfig& cfg = {});

/// Two-site tensor on qubits (bond, bond+1) of a statevector with the left
/// and right remainders compressed to isometric environments.
TwoSiteTensor two_site_tensor(const Statevector& psi, int bond);

}  // namespace dismagick
