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
#include <string_view>
#include <vector>

#include "dismagick/mps.hpp"
#include "dismagick/statevector.hpp"

namespace dismagick {

/// Largest qubit count accepted by exact_m2 (cost n * 4^n).
inline constexpr int kExactM2MaxQubits = 12;

enum class SreMethod { Exact, PauliSampled };
std::string_view to_string(SreMethod m);

/// Stabilizer Renyi-2 entropy in bits, with its statistical error.
struct SreEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long shots = 0;
  SreMethod method = SreMethod::Exact;
};

/// <psi|P|psi> using bit-mask action of P on the amplitudes.
cplx pauli_expectation(const Statevector& psi, const PauliString& p);

/// -log2( sum_P <psi|P|psi>^4 / 2^n ) over all 4^n Pauli strings. The state
/// must be normalized; throws TooManyQubits above kExactM2MaxQubits.
double exact_m2(const Statevector& psi);

/// Sum over Pauli strings of |<P>|^4, i.e. 2^n * 2^{-M2}. Exposed for tests.
double pauli_fourth_moment(const Statevector& psi);

/// One draw from Pi(P) = <P>^2 / 2^n.
struct PauliSample {
  PauliString pauli;
  double expectation_sq = 0.0;  // <P>^2 = 2^n Pi(P)
};

/// Perfect sampling of Pauli strings from an MPS, one site at a time,
/// left to right, using the chain brought into right-canonical form.
class PauliSampler {
 public:
  /// Throws NotNormalized if |norm - 1| > 1e-8.
  explicit PauliSampler(const Mps& mps);

  int length() const { return static_cast<int>(sites_.size()); }
  /// Draws one string; `letters` receives 0=I,1=X,2=Y,3=Z per site.
  /// Returns <P>^2.
  double draw(Rng& rng, std::vector<int>& letters);

 private:
  struct Workspace {
    MatrixXcd c0, c1, t00, t11, t01, t10;
    std::array<MatrixXcd, 4> next;
  };
  std::vector<SiteTensor> sites_;
  std::vector<Workspace> work_;
  std::vector<MatrixXcd> env_;
};

std::vector<PauliSample> sample_paulis(const Mps& mps, long shots, std::uint64_t seed);

/// Plug-in estimator -log2(mean_s <P_s>^2) with the standard error of the
/// mean propagated through the logarithm.
SreEstimate sampled_m2(const Mps& mps, long shots, std::uint64_t seed);

/// Stabilizer-fidelity lower bound 2 exp(-m2) - 1 with m2 in nats. The value
/// may be negative and is returned as is.
double stab_fidelity_lower_bound(double m2_nats);

/// Same bound for an M2 reported in bits: the exponent is M2 * ln 2.
double stab_fidelity_lower_bound_bits(double m2_bits);

}  // namespace dismagick
