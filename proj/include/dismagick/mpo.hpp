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
#include <vector>

#include "dismagick/mps.hpp"
#include "dismagick/pauli.hpp"

namespace dismagick {

/// One MPO site: w[o][i] is a (left bond) x (right bond) matrix, o the output
/// (bra) and i the input (ket) physical index.
using MpoSite = std::array<std::array<MatrixXcd, 2>, 2>;

class Mpo {
 public:
  Mpo() = default;
  explicit Mpo(std::vector<MpoSite> sites);

  int length() const { return static_cast<int>(sites_.size()); }
  const MpoSite& site(int i) const { return sites_.at(i); }
  MpoSite& site(int i) { return sites_.at(i); }
  /// Bond between sites k and k+1.
  int bond_dim(int k) const;
  /// All L+1 bond dimensions including the trivial ends.
  std::vector<int> bond_dims() const;
  int max_bond_dim() const;

  /// Dense 2^L x 2^L matrix with qubit 0 most significant; L <= 12.
  MatrixXcd to_dense() const;

 private:
  std::vector<MpoSite> sites_;
};

/// Open spin-1/2 Heisenberg chain sum_i S_i . S_{i+1} with S = sigma/2.
Mpo heisenberg_mpo(int length);

/// Environment of an MPO sandwiched between two MPS: one (bra bond) x (ket
/// bond) matrix per MPO bond index.
using MpoEnv = std::vector<MatrixXcd>;

MpoEnv trivial_env();
/// Absorbs one site into a left environment.
MpoEnv extend_left(const MpoEnv& env, const SiteTensor& bra, const MpoSite& w, const SiteTensor& ket);
/// Absorbs one site into a right environment.
MpoEnv extend_right(const MpoEnv& env, const SiteTensor& bra, const MpoSite& w, const SiteTensor& ket);

/// <bra|H|ket>.
cplx matrix_element(const Mps& bra, const Mpo& h, const Mps& ket);
/// <psi|H|psi> / <psi|psi>, real part.
double energy(const Mps& psi, const Mpo& h);

struct MpoCompressionConfig {
  /// Discard singular values below cutoff * (largest) at each bond.
  double cutoff = 1e-12;
  int max_bond = 64;
};

struct MpoCompressionReport {
  int max_bond = 0;
  bool cap_hit = false;
  /// Largest relative squared weight dropped at any bond.
  double discarded_weight = 0.0;
};

/// QR sweep to the right, then SVD truncation sweep to the left.
MpoCompressionReport compress_mpo(Mpo& h, const MpoCompressionConfig& cfg = {});

/// U H U^dagger for U = g on sites (k, k+1). The two sites are merged,
/// conjugated and split again exactly. With compress_cutoff > 0 the result is
/// then compressed with that relative cutoff and `max_bond`.
Mpo conjugate_mpo(const Mpo& h, const TwoQubitGate& g, int bond, double compress_cutoff, int max_bond = 64,
                  MpoCompressionReport* report = nullptr);

}  // namespace dismagick
