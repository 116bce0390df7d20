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
#include <optional>
#include <vector>

#include "dismagick/mpo.hpp"

namespace dismagick {

struct LanczosResult {
  double eigenvalue = 0.0;
  VectorXcd eigenvector;
  int iterations = 0;
  double residual = 0.0;
};

/// Lowest eigenpair of a Hermitian operator given as a matrix-vector product,
/// with full reorthogonalization. Stops when the Ritz residual drops below
/// `tol` or after `max_iters` Krylov vectors.
LanczosResult lanczos_ground_state(const std::function<VectorXcd(const VectorXcd&)>& apply, const VectorXcd& start,
                                   int max_iters, double tol);

struct DmrgConfig {
  int max_bond = 4;
  int sweeps = 10;
  int lanczos_iters = 20;
  double lanczos_tol = 1e-10;
  /// Sweeping stops early once two consecutive sweep energies differ by less.
  double energy_tol = 1e-10;
  double svd_cutoff = 0.0;
  std::uint64_t seed = 0;
};

struct DmrgResult {
  /// <psi|H|psi> of the returned normalized state.
  double energy = 0.0;
  Mps state;
  /// <psi|H|psi> of the truncated state after each full (right and back) sweep.
  std::vector<double> sweep_energies;
  /// False when the sweep budget ran out before energy_tol was met.
  bool converged = false;
};

/// Two-site DMRG. Without an initial state a seeded Gaussian random MPS at
/// bond dimension max_bond is used.
DmrgResult two_site_dmrg(const Mpo& h, const DmrgConfig& cfg, std::optional<Mps> initial = std::nullopt);

/// Convenience overload.
DmrgResult two_site_dmrg(const Mpo& h, int max_bond, int sweeps, std::uint64_t seed);

/// |e - e_ref| / |e_ref|.
double relative_error(double e, double e_ref);

}  // namespace dismagick
