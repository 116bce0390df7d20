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

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dismagick {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

/// Engine used everywhere randomness enters. All public entry points take
/// either an engine reference or a 64-bit seed from which one is built.
using Rng = std::mt19937_64;

/// Base class of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SiteOutOfRange : public Error {
 public:
  using Error::Error;
};
class BondOutOfRange : public Error {
 public:
  using Error::Error;
};
class NonCliffordGate : public Error {
 public:
  using Error::Error;
};
class TooManyQubits : public Error {
 public:
  using Error::Error;
};
class TooLarge : public Error {
 public:
  using Error::Error;
};
class NotNormalized : public Error {
 public:
  using Error::Error;
};
class DivisionByZero : public Error {
 public:
  using Error::Error;
};
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Eigenvalues of a density matrix (or squared Schmidt values) at or below
/// this threshold are dropped from entropy sums.
inline constexpr double kEntropyEigenFloor = 1e-12;

/// Von Neumann entropy, in bits, of a probability vector. The input need not
/// be normalized; it is rescaled to unit sum first.
double von_neumann_entropy_bits(std::span<const double> probabilities);

/// Renyi-2 entropy, in bits, of a probability vector (rescaled to unit sum).
double renyi2_entropy_bits(std::span<const double> probabilities);

/// Squared singular values of a matrix, descending.
std::vector<double> schmidt_probabilities(const MatrixXcd& m);

/// Deterministic child seed: stream `index` of `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// max_ij |(U^dagger U - 1)_ij|.
double unitarity_defect(const MatrixXcd& u);

/// Kronecker product of two 2x2 matrices; `a` acts on the first qubit.
Mat4 kron(const Mat2& a, const Mat2& b);

}  // namespace dismagick
