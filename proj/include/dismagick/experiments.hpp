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
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dismagick/dmrg.hpp"
#include "dismagick/sweep.hpp"

namespace dismagick {

/// Raised when a realization fails numerically; carries its seed.
class RealizationFailure : public Error {
 public:
  RealizationFailure(const std::string& what, std::uint64_t seed) : Error(what), seed_(seed) {}
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

inline constexpr const char* kCsvHeaderComment = "# dismagick-csv v1";

// Random-state benchmark -----------------------------------------------------

struct RandomBenchConfig {
  int n = 6;
  int realizations = 100;
  int clifford_depth = 6;
  int haar_layers = 3;
  int phase1_sweeps = 6;
  int phase2_sweeps = 4;
  std::uint64_t seed = 7;
  int jobs = 1;
  std::vector<StrategyKind> strategies{StrategyKind::CliffordOnly, StrategyKind::Sequential, StrategyKind::Joint};
  NelderMeadConfig nelder_mead;
  EntanglementCost cost = EntanglementCost::VonNeumann;
  bool return_sweep = false;
  bool timing = false;
};

struct RealizationRow {
  int realization = 0;
  std::uint64_t seed = 0;
  StrategyKind strategy = StrategyKind::Joint;
  int sweep = 0;
  double m2 = 0.0;
  double m2_stderr = 0.0;
  double ee = 0.0;  // half-chain cut
  double wall_ms = 0.0;
};

struct AggregateRow {
  StrategyKind strategy = StrategyKind::Joint;
  int sweep = 0;
  double m2_mean = 0.0;
  double m2_std = 0.0;
  double ee_mean = 0.0;
  double ee_std = 0.0;
  int count = 0;
};

/// Seed of realization r.
std::uint64_t realization_seed(std::uint64_t master, int r);

/// All strategies on one prepared state; rows are ordered by strategy, then
/// sweep.
std::vector<RealizationRow> run_realization(const RandomBenchConfig& cfg, int r);

/// Rows ordered by realization, strategy, sweep. `progress` is called after
/// each finished realization with the number done so far.
std::vector<RealizationRow> run_random_bench(const RandomBenchConfig& cfg,
                                             const std::function<void(int)>& progress = {});

/// Mean and sample standard deviation (n - 1 denominator; 0 for a single
/// value) per (strategy, sweep), in first-appearance order.
std::vector<AggregateRow> aggregate(const std::vector<RealizationRow>& rows);

void write_realization_csv(std::ostream& os, const std::vector<RealizationRow>& rows, bool with_timing);
void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows);

// Heisenberg pipeline ---------------------------------------------------------

struct HeisenbergConfig {
  int length = 20;
  int bond = 4;
  int sweeps = 5;
  std::uint64_t seed = 3;
  int dmrg_sweeps = 10;
  DiscreteDismagickConfig discrete;
  EntanglementCost cost = EntanglementCost::VonNeumann;
  long record_shots = 10000;
  MpoCompressionConfig compression;
  /// Continue sweeping from the DMRG ground state of the transformed
  /// Hamiltonian rather than from the transformed state itself.
  bool restart_from_dmrg = true;
  /// Dense cross-checks; defaults to on for L <= 10.
  std::optional<bool> dense_check;
  /// Known reference energy; otherwise computed (and cached when
  /// cache_file is set).
  std::optional<double> reference_energy;
  /// Use a DMRG run at this bond dimension as the reference instead of
  /// exact diagonalization.
  std::optional<int> reference_bond;
  std::optional<std::filesystem::path> cache_file;
  bool timing = false;
};

struct HeisenbergRow {
  int sweep = 0;
  double energy = 0.0;
  double relative_error = 0.0;
  SreEstimate m2;
  double ee_mean = 0.0;
  double ee_half = 0.0;
  int mpo_max_bond = 0;
  bool mpo_cap_hit = false;
  bool dmrg_converged = false;
  /// |E_DMRG(H') - <U^dag phi|H|U^dag phi>| (dense check only).
  std::optional<double> coherence_error;
  /// max_i |eig_i(H' before compression) - eig_i(H)| (dense check only).
  std::optional<double> spectrum_error;
  double wall_ms = 0.0;
};

struct HeisenbergResult {
  double reference_energy = 0.0;
  std::string reference_method;
  std::vector<HeisenbergRow> rows;
  std::vector<AppliedGate> circuit;
  /// True when every dense check ran and stayed within tolerance.
  std::optional<bool> dense_checks_passed;
};

inline constexpr double kCoherenceTolerance = 1e-6;
inline constexpr double kSpectrumTolerance = 1e-8;

/// Reference ground energy for the open chain, honoring the cache.
double heisenberg_reference_energy(const HeisenbergConfig& cfg, std::string* method = nullptr);

HeisenbergResult run_heisenberg(const HeisenbergConfig& cfg, const std::function<void(const HeisenbergRow&)>& on_row = {});

void write_heisenberg_csv(std::ostream& os, const HeisenbergResult& result, bool with_timing);

/// Shortest round-trip form of a double (17 significant digits).
std::string format_double(double v);

}  // namespace dismagick
