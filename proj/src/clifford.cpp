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

#include "dismagick/clifford.hpp"

#include <cmath>
#include <deque>
#include <unordered_set>

namespace dismagick {

namespace {

constexpr double kGrid = 1e8;
constexpr double kPivotFloor = 1e-6;

cplx i_power(int k) {
  static const std::array<cplx, 4> kPowers{cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};
  return kPowers[((k % 4) + 4) % 4];
}

std::vector<Mat4> clifford_generators() {
  const Mat2 id = Mat2::Identity();
  return {kron(gates::hadamard(), id), kron(id, gates::hadamard()), kron(gates::phase_s(), id),
          kron(id, gates::phase_s()), gates::cnot()};
}

}  // namespace

std::uint64_t CanonicalKey::hash() const {
  // FNV-1a over the rounded entries.
  std::uint64_t h = 1469598103934665603ull;
  for (std::int64_t v : entries) {
    auto u = static_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
      h ^= (u >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

CanonicalKey canonical_key(const Mat4& m) {
  cplx pivot{1.0, 0.0};
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    if (std::abs(m(k)) > kPivotFloor) {
      pivot = m(k);
      break;
    }
  }
  CanonicalKey key;
  int k = 0;
  for (int c = 0; c < 4; ++c) {
    for (int r = 0; r < 4; ++r) {
      const cplx v = m(r, c) / pivot;
      key.entries[k++] = std::llround(v.real() * kGrid);
      key.entries[k++] = std::llround(v.imag() * kGrid);
    }
  }
  return key;
}

std::vector<TwoQubitGate> enumerate_two_qubit_cliffords() {
  const auto generators = clifford_generators();
  std::vector<TwoQubitGate> out;
  out.reserve(kTwoQubitCliffordCount);
  std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
  std::deque<std::size_t> queue;

  auto push = [&](const Mat4& m) {
    CanonicalKey key = canonical_key(m);
    if (!seen.insert(key).second) return;
    out.push_back(TwoQubitGate{m, GateKind::Clifford, key.hash()});
    queue.push_back(out.size() - 1);
  };

  push(Mat4::Identity());
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (const Mat4& g : generators) {
      const Mat4 next = g * out[i].matrix;
      push(next);
    }
  }
  return out;
}

std::vector<Mat2> enumerate_single_qubit_cliffords() {
  const std::array<Mat2, 2> generators{gates::hadamard(), gates::phase_s()};
  std::vector<Mat2> out{Mat2::Identity()};
  std::unordered_set<CanonicalKey, CanonicalKeyHash> seen{canonical_key(kron(Mat2::Identity(), Mat2::Identity()))};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const Mat2& g : generators) {
      const Mat2 next = g * out[i];
      // Reuse the 4x4 key by padding with an identity factor.
      if (seen.insert(canonical_key(kron(next, Mat2::Identity()))).second) out.push_back(next);
    }
  }
  return out;
}

const CliffordGroup& CliffordGroup::instance() {
  static const CliffordGroup group;
  return group;
}

CliffordGroup::CliffordGroup() : gates_(enumerate_two_qubit_cliffords()) {
  index_.reserve(gates_.size());
  for (std::size_t i = 0; i < gates_.size(); ++i) index_.emplace(canonical_key(gates_[i].matrix), i);

  const auto locals = enumerate_single_qubit_cliffords();
  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  coset_id_.assign(gates_.size(), kUnassigned);
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    if (coset_id_[i] != kUnassigned) continue;
    const std::size_t id = coset_reps_.size();
    coset_reps_.push_back(i);
    for (const Mat2& a : locals) {
      for (const Mat2& b : locals) {
        const auto j = index_of(kron(a, b) * gates_[i].matrix);
        if (!j) throw Error("Clifford enumeration is not closed under local Cliffords");
        coset_id_[*j] = id;
      }
    }
  }
}

std::optional<std::size_t> CliffordGroup::index_of(const Mat4& m) const {
  auto it = index_.find(canonical_key(m));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

PauliString conjugate_pauli(const TwoQubitGate& g, const PauliString& p) {
  if (p.n != 2) throw Error("conjugate_pauli expects a two-qubit Pauli string");
  const Mat4 pm = p.to_matrix();
  const Mat4 conj = g.matrix * pm * g.matrix.adjoint();
  for (std::uint64_t x = 0; x < 4; ++x) {
    for (std::uint64_t z = 0; z < 4; ++z) {
      PauliString base{2, x, z, 0};
      const Mat4 bm = base.to_matrix();
      const cplx c = (bm.adjoint() * conj).trace() / 4.0;
      if (std::abs(std::abs(c) - 1.0) > 1e-10) continue;
      if ((conj - c * bm).cwiseAbs().maxCoeff() > 1e-10) continue;
      for (int k = 0; k < 4; ++k) {
        if (std::abs(c - i_power(k)) < 1e-10) {
          base.phase_exp = k;
          return base;
        }
      }
      throw NonCliffordGate("conjugated Pauli has a non-quarter-turn phase");
    }
  }
  throw NonCliffordGate("gate does not map " + p.to_string() + " to a single Pauli string");
}

bool is_clifford(const Mat4& m) {
  const TwoQubitGate g{m, GateKind::Generic, std::nullopt};
  for (std::uint64_t letters = 1; letters < 16; ++letters) {
    const PauliString p = PauliString::from_letters(2, letters);
    try {
      const PauliString q = conjugate_pauli(g, p);
      const int sign = q.hermitian_phase();
      if (sign != 0 && sign != 2) return false;
    } catch (const NonCliffordGate&) {
      return false;
    }
  }
  return true;
}

TwoQubitGate random_clifford(Rng& rng) {
  const auto& group = CliffordGroup::instance();
  std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
  return group[pick(rng)];
}

TwoQubitGate random_clifford(std::uint64_t seed) {
  Rng rng(seed);
  return random_clifford(rng);
}

double ThetaDistribution::draw(Rng& rng) const {
  if (fixed) return *fixed;
  std::uniform_real_distribution<double> u(lo, hi);
  return u(rng);
}

TwoQubitGate clifford_rz_gate(const Mat4& outer, int qubit, double theta, const Mat4& inner) {
  if (qubit != 0 && qubit != 1) throw SiteOutOfRange("Rz qubit must be 0 or 1");
  const Mat2 id = Mat2::Identity();
  const Mat4 rz = qubit == 0 ? kron(gates::rz(theta), id) : kron(id, gates::rz(theta));
  return TwoQubitGate{outer * rz * inner, GateKind::CliffordRz, std::nullopt};
}

TwoQubitGate random_clifford_rz_candidate(Rng& rng, const ThetaDistribution& theta_dist) {
  const auto& group = CliffordGroup::instance();
  std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  const std::size_t outer = pick(rng);
  const std::size_t inner = pick(rng);
  const int qubit = coin(rng);
  const double theta = theta_dist.draw(rng);
  return clifford_rz_gate(group[outer].matrix, qubit, theta, group[inner].matrix);
}

}  // namespace dismagick
