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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dismagick/dismagicker.hpp"
#include "dismagick/disentangler.hpp"
#include "dismagick/mps.hpp"
#include "dismagick/nelder_mead.hpp"
#include "dismagick/sre.hpp"
#include "dismagick/statevector.hpp"

namespace dismagick {

enum class StrategyKind { CliffordOnly, Sequential, Joint };

/// CliffordOnly runs phase1 + phase2 disentangler sweeps. Sequential runs
/// phase1 dismagicker-only sweeps, then phase2 disentangler sweeps. Joint runs
/// phase1 sweeps of dismagicker followed by disentangler at each bond, then
/// phase2 disentangler sweeps.
struct SweepStrategy {
  StrategyKind kind = StrategyKind::Joint;
  int phase1_sweeps = 6;
  int phase2_sweeps = 4;

  static SweepStrategy clifford_only(int phase1, int phase2) { return {StrategyKind::CliffordOnly, phase1, phase2}; }
  static SweepStrategy sequential(int phase1, int phase2) { return {StrategyKind::Sequential, phase1, phase2}; }
  static SweepStrategy joint(int phase1, int phase2) { return {StrategyKind::Joint, phase1, phase2}; }

  int total_sweeps() const { return phase1_sweeps + phase2_sweeps; }
};

std::string_view to_string(StrategyKind k);
StrategyKind parse_strategy(std::string_view s);

/// What happens at each bond during one sweep.
struct SweepPhase {
  bool dismagick = false;
  bool disentangle = false;
};

/// Phase of sweep `sweep` (1-based); sweep phase1_sweeps is the last of the
/// first phase.
SweepPhase phase_for(const SweepStrategy& strategy, int sweep);

enum class GateRole { Dismagicker, Disentangler };

struct AppliedGate {
  int sweep = 0;
  int bond = 0;
  GateRole role = GateRole::Disentangler;
  TwoQubitGate gate;
};

struct TrajectoryRecord {
  int sweep = 0;
  /// -1 for an end-of-sweep record, otherwise the bond just processed.
  int bond = -1;
  SreEstimate m2;
  double ee_half = 0.0;  // cut after site floor(n/2) - 1
  double ee_mean = 0.0;  // mean over internal bonds
  std::vector<double> ee_profile;
  double wall_ms = 0.0;
  int gates_applied = 0;
};

struct SweepConfig {
  NelderMeadConfig nelder_mead;
  DisentanglerConfig disentangler;
  DiscreteDismagickConfig discrete;
  /// Bond cap applied after each bond update in the MPS regime.
  TruncationConfig trunc;
  /// Shots for the sampled M2 written into MPS trajectory records.
  long record_shots = 10000;
  /// Follow each left-to-right pass with a right-to-left pass.
  bool return_sweep = false;
  bool per_bond_records = false;
  bool record_timing = false;
};

template <typename State>
struct SweepResult {
  State final_state;
  std::vector<AppliedGate> circuit;
  std::vector<TrajectoryRecord> trajectory;
};

/// Bond visiting order for one sweep over n sites.
std::vector<std::pair<int, SweepDirection>> sweep_bonds(int n, bool return_sweep);

TrajectoryRecord measure(const Statevector& psi, int sweep);
TrajectoryRecord measure(const Mps& mps, int sweep, long shots, std::uint64_t seed);

/// One sweep over a statevector with the continuous dismagicker and the
/// exhaustive Clifford disentangler. Appends the applied gates to `circuit`.
void sweep_once(Statevector& psi, SweepPhase phase, const SweepConfig& cfg, std::uint64_t seed, int sweep_index,
                std::vector<AppliedGate>& circuit, std::vector<TrajectoryRecord>* per_bond = nullptr);

/// One sweep over an MPS with the discrete dismagicker and the Clifford
/// disentangler, one SVD per bond.
void sweep_once(Mps& mps, SweepPhase phase, const SweepConfig& cfg, std::uint64_t seed, int sweep_index,
                std::vector<AppliedGate>& circuit, std::vector<TrajectoryRecord>* per_bond = nullptr);

/// Baseline record plus one record per completed sweep.
SweepResult<Statevector> run_sweeps(const Statevector& psi, const SweepStrategy& strategy, const SweepConfig& cfg,
                                    std::uint64_t seed);
SweepResult<Mps> run_sweeps(const Mps& mps, const SweepStrategy& strategy, const SweepConfig& cfg, std::uint64_t seed);

/// Applies a logged circuit in order.
Statevector apply_circuit(Statevector psi, std::span<const AppliedGate> circuit);

}  // namespace dismagick
