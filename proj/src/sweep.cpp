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

#include "dismagick/sweep.hpp"

#include <chrono>
#include <numeric>

namespace dismagick {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::string_view to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::CliffordOnly: return "clifford_only";
    case StrategyKind::Sequential: return "sequential";
    case StrategyKind::Joint: return "joint";
  }
  return "joint";
}

StrategyKind parse_strategy(std::string_view s) {
  if (s == "clifford_only") return StrategyKind::CliffordOnly;
  if (s == "sequential") return StrategyKind::Sequential;
  if (s == "joint") return StrategyKind::Joint;
  throw Error("unknown strategy '" + std::string(s) + "'");
}

SweepPhase phase_for(const SweepStrategy& strategy, int sweep) {
  const bool first = sweep <= strategy.phase1_sweeps;
  switch (strategy.kind) {
    case StrategyKind::CliffordOnly: return {false, true};
    case StrategyKind::Sequential: return first ? SweepPhase{true, false} : SweepPhase{false, true};
    case StrategyKind::Joint: return first ? SweepPhase{true, true} : SweepPhase{false, true};
  }
  return {};
}

std::vector<std::pair<int, SweepDirection>> sweep_bonds(int n, bool return_sweep) {
  std::vector<std::pair<int, SweepDirection>> out;
  for (int k = 0; k + 1 < n; ++k) out.emplace_back(k, SweepDirection::LeftToRight);
  if (return_sweep) {
    for (int k = n - 3; k >= 0; --k) out.emplace_back(k, SweepDirection::RightToLeft);
  }
  return out;
}

TrajectoryRecord measure(const Statevector& psi, int sweep) {
  TrajectoryRecord r;
  r.sweep = sweep;
  r.m2 = SreEstimate{exact_m2(psi), 0.0, 0, SreMethod::Exact};
  if (psi.num_qubits() >= 2) {
    r.ee_profile = entanglement_profile(psi);
    r.ee_half = r.ee_profile[psi.num_qubits() / 2 - 1];
    r.ee_mean = mean_of(r.ee_profile);
  }
  return r;
}

TrajectoryRecord measure(const Mps& mps, int sweep, long shots, std::uint64_t seed) {
  TrajectoryRecord r;
  r.sweep = sweep;
  r.m2 = sampled_m2(mps, shots, seed);
  if (mps.length() >= 2) {
    Mps copy = mps;
    r.ee_profile = copy.bond_entropies();
    r.ee_half = r.ee_profile[mps.length() / 2 - 1];
    r.ee_mean = mean_of(r.ee_profile);
  }
  return r;
}

void sweep_once(Statevector& psi, SweepPhase phase, const SweepConfig& cfg, std::uint64_t seed, int sweep_index,
                std::vector<AppliedGate>& circuit, std::vector<TrajectoryRecord>* per_bond) {
  std::uint64_t step = 0;
  for (const auto& [k, dir] : sweep_bonds(psi.num_qubits(), cfg.return_sweep)) {
    (void)dir;
    if (phase.dismagick) {
      const auto r = optimize_dismagicker_continuous(psi, k, cfg.nelder_mead, derive_seed(seed, step++));
      psi.apply(r.gate.matrix, k, k + 1);
      circuit.push_back({sweep_index, k, GateRole::Dismagicker, r.gate});
    }
    if (phase.disentangle) {
      const auto r = best_clifford_disentangler(two_site_tensor(psi, k), cfg.disentangler);
      psi.apply(r.gate.matrix, k, k + 1);
      circuit.push_back({sweep_index, k, GateRole::Disentangler, r.gate});
    }
    if (per_bond) {
      TrajectoryRecord rec = measure(psi, sweep_index);
      rec.bond = k;
      rec.gates_applied = static_cast<int>(circuit.size());
      per_bond->push_back(std::move(rec));
    }
  }
}

void sweep_once(Mps& mps, SweepPhase phase, const SweepConfig& cfg, std::uint64_t seed, int sweep_index,
                std::vector<AppliedGate>& circuit, std::vector<TrajectoryRecord>* per_bond) {
  std::uint64_t step = 0;
  for (const auto& [k, dir] : sweep_bonds(mps.length(), cfg.return_sweep)) {
    Mat4 combined = Mat4::Identity();
    if (phase.dismagick) {
      const auto r = optimize_dismagicker_discrete(mps, k, cfg.discrete, derive_seed(seed, step++));
      combined = r.gate.matrix;
      circuit.push_back({sweep_index, k, GateRole::Dismagicker, r.gate});
    }
    TwoSiteTensor theta = mps.two_site_tensor(k);
    if (phase.dismagick) theta = theta.applied(combined);
    if (phase.disentangle) {
      const auto r = best_clifford_disentangler(theta, cfg.disentangler);
      theta = theta.applied(r.gate.matrix);
      circuit.push_back({sweep_index, k, GateRole::Disentangler, r.gate});
    }
    mps.set_two_site_tensor(k, theta, cfg.trunc, dir);
    if (per_bond) {
      TrajectoryRecord rec = measure(mps, sweep_index, cfg.record_shots, derive_seed(seed, 1000000 + step++));
      rec.bond = k;
      rec.gates_applied = static_cast<int>(circuit.size());
      per_bond->push_back(std::move(rec));
    }
  }
}

namespace {

template <typename State, typename Measure>
SweepResult<State> run_sweeps_impl(const State& initial, const SweepStrategy& strategy, const SweepConfig& cfg,
                                   std::uint64_t seed, Measure measure_fn) {
  SweepResult<State> res{initial, {}, {}};
  const auto start = Clock::now();
  res.trajectory.push_back(measure_fn(res.final_state, 0));
  if (cfg.record_timing) res.trajectory.back().wall_ms = elapsed_ms(start);
  for (int s = 1; s <= strategy.total_sweeps(); ++s) {
    std::vector<TrajectoryRecord>* per_bond = cfg.per_bond_records ? &res.trajectory : nullptr;
    sweep_once(res.final_state, phase_for(strategy, s), cfg, derive_seed(seed, static_cast<std::uint64_t>(s)), s,
               res.circuit, per_bond);
    TrajectoryRecord rec = measure_fn(res.final_state, s);
    rec.gates_applied = static_cast<int>(res.circuit.size());
    if (cfg.record_timing) rec.wall_ms = elapsed_ms(start);
    res.trajectory.push_back(std::move(rec));
  }
  return res;
}

}  // namespace

SweepResult<Statevector> run_sweeps(const Statevector& psi, const SweepStrategy& strategy, const SweepConfig& cfg,
                                    std::uint64_t seed) {
  return run_sweeps_impl(psi, strategy, cfg, seed, [](const Statevector& s, int sweep) { return measure(s, sweep); });
}

SweepResult<Mps> run_sweeps(const Mps& mps, const SweepStrategy& strategy, const SweepConfig& cfg, std::uint64_t seed) {
  return run_sweeps_impl(mps, strategy, cfg, seed, [&](const Mps& s, int sweep) {
    return measure(s, sweep, cfg.record_shots, derive_seed(seed, 0xfeed0000ull + static_cast<std::uint64_t>(sweep)));
  });
}

Statevector apply_circuit(Statevector psi, std::span<const AppliedGate> circuit) {
  for (const auto& g : circuit) psi.apply(g.gate.matrix, g.bond, g.bond + 1);
  return psi;
}

}  // namespace dismagick
