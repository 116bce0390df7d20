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
#include <span>
#include <vector>

#include "dismagick/pauli.hpp"

namespace dismagick {

/// Dense pure state of n qubits. Basis index b = sum_q s_q 2^(n-1-q), so
/// qubit 0 is the most significant bit (the leftmost site of a chain).
class Statevector {
 public:
  static constexpr int kMaxQubits = 24;

  /// |0...0>.
  explicit Statevector(int n);
  /// Takes amplitudes as given; the length must be a power of two.
  static Statevector from_amplitudes(std::vector<cplx> amplitudes);
  /// |s_0 s_1 ... s_{n-1}> for a bit list.
  static Statevector basis(std::span<const int> bits);

  int num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const cplx> amplitudes() const { return amps_; }
  std::span<cplx> amplitudes() { return amps_; }
  cplx operator[](std::size_t b) const { return amps_[b]; }

  double norm() const;
  void normalize();
  cplx inner(const Statevector& other) const;  // <this|other>

  /// In-place application of a 4x4 gate on qubits (i, j); i is the gate's
  /// first qubit. Requires i != j, both in range.
  void apply(const Mat4& g, int i, int j);
  /// In-place single-qubit gate.
  void apply(const Mat2& g, int q);

  /// Kronecker product; `this` occupies the leading qubits.
  Statevector tensor(const Statevector& other) const;

 private:
  Statevector() = default;

  int n_ = 0;
  std::vector<cplx> amps_;
};

/// Returns g applied on sites (i, j). Requires 0 <= i < j < n.
Statevector apply_two_qubit_gate(Statevector psi, const TwoQubitGate& g, int i, int j);

/// |<a|b>|^2.
double fidelity(const Statevector& a, const Statevector& b);

/// (|0..0> + |1..1>)/sqrt(2).
Statevector ghz_state(int n);
/// (|0> + e^{i pi/4}|1>)/sqrt(2) on every qubit.
Statevector t_product_state(int n);

/// Haar-distributed U(4) element via QR of a complex Ginibre matrix with the
/// diagonal phases of R absorbed into Q.
TwoQubitGate haar_random_two_qubit(Rng& rng);
TwoQubitGate haar_random_two_qubit(std::uint64_t seed);

/// Bonds (i, i+1) of one brickwork layer; even layers start at 0, odd at 1.
std::vector<int> brickwork_bonds(int n, int layer);

/// |0>^n evolved by `clifford_depth` brickwork layers of uniform random
/// two-qubit Cliffords, then `haar_layers` brickwork layers of Haar gates.
/// Layer parity continues across the two stages.
Statevector prepare_benchmark_state(int n, int clifford_depth, int haar_layers, std::uint64_t seed);

/// Von Neumann entropy (bits) between qubits [0, cut) and [cut, n).
/// Requires 1 <= cut <= n-1.
double entanglement_entropy(const Statevector& psi, int cut);

/// entanglement_entropy at cuts 1..n-1.
std::vector<double> entanglement_profile(const Statevector& psi);

}  // namespace dismagick
