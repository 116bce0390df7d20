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
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "dismagick/statevector.hpp"

namespace dismagick {

/// Singular values at or below this fraction of the largest are always
/// discarded, independent of the configured bond cap.
inline constexpr double kSvdNoiseFloor = 1e-14;

struct TruncationConfig {
  int max_bond = std::numeric_limits<int>::max();
  /// Discard singular values below svd_cutoff * (largest singular value).
  double svd_cutoff = 0.0;
};

/// Site tensor as two matrices A[s] of shape (left bond) x (right bond).
using SiteTensor = std::array<MatrixXcd, 2>;

/// Two-site wavefunction theta[2*s1 + s2], each block (left bond) x (right bond).
struct TwoSiteTensor {
  std::array<MatrixXcd, 4> blocks;

  Eigen::Index left_dim() const { return blocks[0].rows(); }
  Eigen::Index right_dim() const { return blocks[0].cols(); }

  /// Matrix across the central cut: row s1*Dl + a, column s2*Dr + b.
  MatrixXcd matrix() const;
  /// Returns g acting on the two physical legs.
  TwoSiteTensor applied(const Mat4& g) const;
  double norm() const;
};

enum class SweepDirection { LeftToRight, RightToLeft };

/// Open-boundary matrix product state of spin-1/2 sites.
///
/// `center()` is the orthogonality center when the chain is in mixed
/// canonical form: sites left of it are left isometries and sites right of it
/// are right isometries. Directly editing a site clears the center.
class Mps {
 public:
  static Mps product_state(std::span<const int> bits);
  static Mps zero_state(int length);
  /// Exact (up to the noise floor) SVD chain; the result has center L-1.
  static Mps from_statevector(const Statevector& psi, const TruncationConfig& trunc = {});
  /// Gaussian random tensors with bonds min(D, 2^k, 2^(L-k)), canonical at
  /// site 0 and normalized.
  static Mps random(int length, int max_bond, Rng& rng);

  int length() const { return static_cast<int>(sites_.size()); }
  /// Dimension of bond k, the bond between sites k and k+1 (0 <= k <= L-2).
  int bond_dim(int k) const;
  /// All L+1 bond dimensions including the trivial ends.
  std::vector<int> bond_dims() const;
  int max_bond_dim() const;

  std::optional<int> center() const { return center_; }
  const SiteTensor& site(int i) const { return sites_.at(i); }
  void set_site(int i, SiteTensor tensor);

  /// Brings the chain into mixed canonical form with center c.
  void move_center(int c);
  double norm() const;
  void normalize();

  /// Two-site wavefunction on sites (k, k+1) with isometric environments;
  /// moves the center to k unless it is already at k or k+1.
  TwoSiteTensor two_site_tensor(int k);

  /// Replaces sites (k, k+1) by an SVD split of theta, truncated per `trunc`
  /// and renormalized. Returns the discarded weight. The new center is k+1
  /// for LeftToRight and k for RightToLeft.
  double set_two_site_tensor(int k, const TwoSiteTensor& theta, const TruncationConfig& trunc,
                             SweepDirection dir = SweepDirection::LeftToRight);

  /// Applies g on sites (k, k+1); see set_two_site_tensor.
  double apply_two_site_gate(const Mat4& g, int k, const TruncationConfig& trunc,
                             SweepDirection dir = SweepDirection::LeftToRight);

  /// Squared Schmidt values across bond k, descending; moves the center to k.
  std::vector<double> bond_spectrum(int k);
  /// Von Neumann entropies (bits) of every internal bond 0..L-2.
  std::vector<double> bond_entropies();

  Statevector to_statevector() const;
  cplx overlap(const Mps& other) const;  // <this|other>

 private:
  void check_bond(int k) const;
  void shift_right(int i);  // QR at site i, pushes R into i+1
  void shift_left(int i);   // LQ at site i, pushes L into i-1

  std::vector<SiteTensor> sites_;
  std::optional<int> center_;
};

/// Von Neumann entropy (bits) across bond k; works on a copy.
double bond_entropy(const Mps& mps, int k);

/// Value-returning gate application.
std::pair<Mps, double> apply_two_site_gate(Mps mps, const TwoQubitGate& g, int k, const TruncationConfig& trunc);

/// |<a|b>|^2 for normalized inputs.
double fidelity(const Mps& a, const Mps& b);

}  // namespace dismagick
