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
#include <optional>
#include <string>
#include <string_view>

#include "dismagick/linalg.hpp"

namespace dismagick {

/// n-qubit Pauli operator i^phase_exp * prod_q X_q^{x_q} Z_q^{z_q}.
///
/// Bit q of each mask refers to qubit q. With this encoding a Y on a qubit
/// reads x=z=1 and contributes one factor of i to the phase, so the
/// Hermitian string "Y" is {x=1, z=1, phase_exp=1}.
struct PauliString {
  int n = 0;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  int phase_exp = 0;

  static PauliString identity(int n);
  /// Parses letters from {I, X, Y, Z}; the first character is qubit 0. An
  /// optional leading sign ("+", "-", "i", "-i") sets the phase.
  static PauliString parse(std::string_view text);
  /// Hermitian string with letters given by base-4 digits (0=I,1=X,2=Y,3=Z),
  /// qubit 0 in the most significant digit.
  static PauliString from_letters(int n, std::uint64_t letter_index);

  /// Letter on qubit q: 'I', 'X', 'Y' or 'Z'.
  char letter(int q) const;
  /// Phase relative to the Hermitian string with the same letters, as an
  /// exponent of i.
  int hermitian_phase() const;
  std::string to_string() const;
  int weight() const;

  /// Dense 2^n x 2^n matrix; qubit 0 is the most significant tensor factor.
  MatrixXcd to_matrix() const;

  bool operator==(const PauliString&) const = default;
};

/// Single-qubit Pauli matrices indexed 0=I, 1=X, 2=Y, 3=Z.
const Mat2& pauli_matrix(int letter);

enum class GateKind { Clifford, Haar, ParamGenerator, CliffordRz, Generic };

std::string_view to_string(GateKind kind);

/// Dense two-qubit unitary. Row/column index is 2*s0 + s1, where s0 is the
/// state of the first (left) qubit the gate acts on.
struct TwoQubitGate {
  Mat4 matrix = Mat4::Identity();
  GateKind kind = GateKind::Generic;
  std::optional<std::uint64_t> canonical_key;

  static TwoQubitGate identity();
};

namespace gates {
Mat2 hadamard();
Mat2 phase_s();
Mat2 rz(double theta);
Mat4 cnot();  // control on the first qubit
Mat4 swap();
}  // namespace gates

}  // namespace dismagick
