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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "dismagick/pauli.hpp"

namespace dismagick {

/// Size of the two-qubit Clifford group modulo global phase.
inline constexpr std::size_t kTwoQubitCliffordCount = 11520;

/// Phase-canonical form of a 4x4 matrix: divided by its first entry of
/// non-negligible magnitude, then each real/imaginary part rounded to a 1e-8
/// grid. Two matrices equal up to global phase share the same key.
struct CanonicalKey {
  std::array<std::int64_t, 32> entries{};
  bool operator==(const CanonicalKey&) const = default;
  std::uint64_t hash() const;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const { return static_cast<std::size_t>(k.hash()); }
};

CanonicalKey canonical_key(const Mat4& m);

/// Breadth-first closure of {H x I, I x H, S x I, I x S, CNOT} with
/// phase-canonical deduplication. Element 0 is the identity; order is
/// deterministic.
std::vector<TwoQubitGate> enumerate_two_qubit_cliffords();

/// The enumerated group plus lookup tables, built once and shared read-only.
class CliffordGroup {
 public:
  static const CliffordGroup& instance();

  std::size_t size() const { return gates_.size(); }
  const TwoQubitGate& operator[](std::size_t i) const { return gates_[i]; }
  std::span<const TwoQubitGate> gates() const { return gates_; }

  /// Index of the element equal to `m` up to global phase, if it is Clifford.
  std::optional<std::size_t> index_of(const Mat4& m) const;

  /// Left cosets (a x b) g of the local subgroup C1 x C1. Entanglement across
  /// the two qubits is constant on each coset. Representatives are the
  /// lowest-index member of each coset, in increasing order.
  std::span<const std::size_t> coset_representatives() const { return coset_reps_; }
  std::size_t coset_of(std::size_t i) const { return coset_id_[i]; }

 private:
  CliffordGroup();

  std::vector<TwoQubitGate> gates_;
  std::unordered_map<CanonicalKey, std::size_t, CanonicalKeyHash> index_;
  std::vector<std::size_t> coset_reps_;
  std::vector<std::size_t> coset_id_;
};

/// Single-qubit Clifford group modulo phase (24 elements, identity first).
std::vector<Mat2> enumerate_single_qubit_cliffords();

/// Returns p' with g p g^dagger = p' (phase carried in p'.phase_exp).
/// Throws NonCliffordGate if the conjugate is not a single Pauli within 1e-10.
PauliString conjugate_pauli(const TwoQubitGate& g, const PauliString& p);

/// True when conjugation maps each of the 15 non-identity two-qubit Paulis to
/// a Hermitian Pauli string (sign +1 or -1).
bool is_clifford(const Mat4& m);

/// Uniform draw from the enumerated group.
TwoQubitGate random_clifford(Rng& rng);
TwoQubitGate random_clifford(std::uint64_t seed);

/// Distribution of the Rz angle in Clifford+Rz candidates: uniform on
/// [lo, hi) unless `fixed` is set.
struct ThetaDistribution {
  double lo = 0.0;
  double hi = 6.283185307179586;
  std::optional<double> fixed;

  double draw(Rng& rng) const;
};

/// outer * (Rz(theta) on `qubit`) * inner, tagged CliffordRz.
TwoQubitGate clifford_rz_gate(const Mat4& outer, int qubit, double theta, const Mat4& inner);

/// outer and inner independent uniform Cliffords, qubit uniform in {0, 1},
/// theta from `theta_dist`.
TwoQubitGate random_clifford_rz_candidate(Rng& rng, const ThetaDistribution& theta_dist = {});

}  // namespace dismagick
