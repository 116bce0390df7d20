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

#include "dismagick/pauli.hpp"

#include <array>
#include <bit>
#include <cmath>

namespace dismagick {

namespace {

const cplx kI{0.0, 1.0};

cplx i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

PauliString PauliString::identity(int n) { return PauliString{n, 0, 0, 0}; }

PauliString PauliString::parse(std::string_view text) {
  PauliString p;
  int phase = 0;
  if (text.starts_with("+")) {
    text.remove_prefix(1);
  } else if (text.starts_with("-i")) {
    phase = 3;
    text.remove_prefix(2);
  } else if (text.starts_with("-")) {
    phase = 2;
    text.remove_prefix(1);
  } else if (text.starts_with("i")) {
    phase = 1;
    text.remove_prefix(1);
  }
  if (text.size() > 64) throw TooManyQubits("Pauli strings are limited to 64 qubits");
  p.n = static_cast<int>(text.size());
  for (int q = 0; q < p.n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (text[q]) {
      case 'I': break;
      case 'X': p.x_mask |= bit; break;
      case 'Z': p.z_mask |= bit; break;
      case 'Y':
        p.x_mask |= bit;
        p.z_mask |= bit;
        phase += 1;
        break;
      default: throw FormatError("invalid Pauli letter '" + std::string(1, text[q]) + "'");
    }
  }
  p.phase_exp = phase % 4;
  return p;
}

PauliString PauliString::from_letters(int n, std::uint64_t letter_index) {
  PauliString p{n, 0, 0, 0};
  int ys = 0;
  for (int q = n - 1; q >= 0; --q) {
    const int letter = static_cast<int>(letter_index & 3u);
    letter_index >>= 2;
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (letter == 1 || letter == 2) p.x_mask |= bit;
    if (letter == 2 || letter == 3) p.z_mask |= bit;
    if (letter == 2) ++ys;
  }
  p.phase_exp = ys % 4;
  return p;
}

char PauliString::letter(int q) const {
  const bool x = (x_mask >> q) & 1u;
  const bool z = (z_mask >> q) & 1u;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

int PauliString::hermitian_phase() const {
  return ((phase_exp - std::popcount(x_mask & z_mask)) % 4 + 4) % 4;
}

std::string PauliString::to_string() const {
  static constexpr std::array<const char*, 4> kSign{"", "i", "-", "-i"};
  std::string out = kSign[hermitian_phase()];
  for (int q = 0; q < n; ++q) out.push_back(letter(q));
  return out;
}

int PauliString::weight() const { return std::popcount(x_mask | z_mask); }

MatrixXcd PauliString::to_matrix() const {
  if (n > 12) throw TooManyQubits("dense Pauli matrix limited to 12 qubits");
  const std::uint64_t dim = std::uint64_t{1} << n;
  // Convert qubit-indexed masks to basis-index masks (qubit 0 is the MSB).
  std::uint64_t xi = 0, zi = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    if ((x_mask >> q) & 1u) xi |= bit;
    if ((z_mask >> q) & 1u) zi |= bit;
  }
  // (X^x Z^z)|b> = (-1)^{popcount(b & z)} |b ^ x>
  MatrixXcd m = MatrixXcd::Zero(dim, dim);
  const cplx phase = i_power(phase_exp);
  for (std::uint64_t b = 0; b < dim; ++b) {
    const double sign = (std::popcount(b & zi) & 1) ? -1.0 : 1.0;
    m(b ^ xi, b) = phase * sign;
  }
  return m;
}

const Mat2& pauli_matrix(int letter) {
  static const std::array<Mat2, 4> kPaulis = [] {
    std::array<Mat2, 4> p;
    p[0] << 1, 0, 0, 1;
    p[1] << 0, 1, 1, 0;
    p[2] << 0, -kI, kI, 0;
    p[3] << 1, 0, 0, -1;
    return p;
  }();
  return kPaulis.at(letter);
}

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::Clifford: return "clifford";
    case GateKind::Haar: return "haar";
    case GateKind::ParamGenerator: return "param";
    case GateKind::CliffordRz: return "clifford_rz";
    case GateKind::Generic: return "generic";
  }
  return "generic";
}

TwoQubitGate TwoQubitGate::identity() { return TwoQubitGate{Mat4::Identity(), GateKind::Clifford, std::nullopt}; }

namespace gates {

Mat2 hadamard() {
  Mat2 h;
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

Mat2 phase_s() {
  Mat2 s;
  s << 1, 0, 0, kI;
  return s;
}

Mat2 rz(double theta) {
  Mat2 r = Mat2::Zero();
  r(0, 0) = std::exp(-kI * (theta / 2));
  r(1, 1) = std::exp(kI * (theta / 2));
  return r;
}

Mat4 cnot() {
  Mat4 c = Mat4::Zero();
  c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1.0;
  return c;
}

Mat4 swap() {
  Mat4 s = Mat4::Zero();
  s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1.0;
  return s;
}

}  // namespace gates

}  // namespace dismagick
