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

#include "dismagick/disentangler.hpp"

#include <string>

namespace dismagick {

namespace {

constexpr double kTieTolerance = 1e-12;

}  // namespace

std::string_view to_string(EntanglementCost c) {
  switch (c) {
    case EntanglementCost::VonNeumann: return "von_neumann";
    case EntanglementCost::Renyi2: return "renyi2";
    case EntanglementCost::TruncationError: return "truncation_error";
  }
  return "von_neumann";
}

EntanglementCost parse_entanglement_cost(std::string_view s) {
  if (s == "von_neumann") return EntanglementCost::VonNeumann;
  if (s == "renyi2") return EntanglementCost::Renyi2;
  if (s == "truncation_error") return EntanglementCost::TruncationError;
  throw Error("unknown entanglement cost '" + std::string(s) + "'");
}

double central_cut_cost(const TwoSiteTensor& theta, EntanglementCost cost, const TruncationConfig& trunc) {
  const auto probs = schmidt_probabilities(theta.matrix());
  switch (cost) {
    case EntanglementCost::VonNeumann: return von_neumann_entropy_bits(probs);
    case EntanglementCost::Renyi2: return renyi2_entropy_bits(probs);
    case EntanglementCost::TruncationError: {
      double total = 0.0;
      for (double p : probs) total += p;
      if (total <= 0.0) return 0.0;
      const double floor = trunc.svd_cutoff * trunc.svd_cutoff * probs.front();
      double dropped = 0.0;
      for (std::size_t i = 0; i < probs.size(); ++i) {
        if (static_cast<long>(i) >= trunc.max_bond || probs[i] < floor) dropped += probs[i];
      }
      return dropped / total;
    }
  }
  return 0.0;
}

DisentanglerResult best_clifford_disentangler(const TwoSiteTensor& theta, const DisentanglerConfig& cfg) {
  const auto& group = CliffordGroup::instance();
  DisentanglerResult out;
  out.cost_identity = central_cut_cost(theta, cfg.cost, cfg.trunc);
  out.ee_identity = central_cut_cost(theta, EntanglementCost::VonNeumann);

  double best_cost = out.cost_identity;
  std::size_t best = 0;
  auto consider = [&](std::size_t i) {
    ++out.evaluated;
    if (i == 0) return;
    const double c = central_cut_cost(theta.applied(group[i].matrix), cfg.cost, cfg.trunc);
    if (c < best_cost - kTieTolerance) {
      best_cost = c;
      best = i;
    }
  };
  if (cfg.exhaustive) {
    for (std::size_t i = 0; i < group.size(); ++i) consider(i);
  } else {
    for (std::size_t i : group.coset_representatives()) consider(i);
  }

  out.gate = group[best];
  out.clifford_index = best;
  out.cost_after = best_cost;
  out.ee_after = best == 0 ? out.ee_identity
                           : central_cut_cost(theta.applied(group[best].matrix), EntanglementCost::VonNeumann);
  return out;
}

TwoSiteTensor two_site_tensor(const Statevector& psi, int bond) {
  const int n = psi.num_qubits();
  if (bond < 0 || bond + 1 >= n) throw BondOutOfRange("bond " + std::to_string(bond) + " out of range");
  const Eigen::Index left = Eigen::Index{1} << bond;
  const Eigen::Index right = Eigen::Index{1} << (n - bond - 2);
  const auto amps = psi.amplitudes();

  // psi(l, p, r) with p = 2*s1 + s2; amplitude index (l * 4 + p) * right + r.
  MatrixXcd m(left, 4 * right);
  for (Eigen::Index l = 0; l < left; ++l)
    for (Eigen::Index c = 0; c < 4 * right; ++c) m(l, c) = amps[l * 4 * right + c];

  // Left environment: m = Q R with Q an isometry; keep R.
  Eigen::HouseholderQR<MatrixXcd> qr_left(m);
  const Eigen::Index dl = std::min(left, 4 * right);
  const MatrixXcd r_left = qr_left.matrixQR().topRows(dl).triangularView<Eigen::Upper>();

  // Right environment on the (dl*4) x right matrix: n = L Q^dagger.
  MatrixXcd mid(4 * dl, right);
  for (Eigen::Index a = 0; a < dl; ++a)
    for (int p = 0; p < 4; ++p) mid.row(a * 4 + p) = r_left.block(a, p * right, 1, right);
  Eigen::HouseholderQR<MatrixXcd> qr_right(MatrixXcd(mid.adjoint()));
  const Eigen::Index dr = std::min(right, 4 * dl);
  const MatrixXcd reduced = MatrixXcd(qr_right.matrixQR().topRows(dr).triangularView<Eigen::Upper>()).adjoint();

  TwoSiteTensor theta;
  for (int p = 0; p < 4; ++p) {
    theta.blocks[p].resize(dl, dr);
    for (Eigen::Index a = 0; a < dl; ++a) theta.blocks[p].row(a) = reduced.row(a * 4 + p);
  }
  return theta;
}

}  // namespace dismagick
