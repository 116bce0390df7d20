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

#include "dismagick/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <mutex>
#include <ostream>
#include <thread>

#include "dismagick/exact_diag.hpp"
#include "dismagick/serialization.hpp"

namespace dismagick {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t realization_seed(std::uint64_t master, int r) {
  return derive_seed(master, static_cast<std::uint64_t>(r));
}

std::vector<RealizationRow> run_realization(const RandomBenchConfig& cfg, int r) {
  const std::uint64_t seed = realization_seed(cfg.seed, r);
  std::vector<RealizationRow> rows;
  try {
    const Statevector psi = prepare_benchmark_state(cfg.n, cfg.clifford_depth, cfg.haar_layers, derive_seed(seed, 0));
    SweepConfig sc;
    sc.nelder_mead = cfg.nelder_mead;
    sc.disentangler.cost = cfg.cost;
    sc.return_sweep = cfg.return_sweep;
    sc.record_timing = cfg.timing;
    for (StrategyKind kind : cfg.strategies) {
      const SweepStrategy strategy{kind, cfg.phase1_sweeps, cfg.phase2_sweeps};
      const auto res = run_sweeps(psi, strategy, sc, derive_seed(seed, 1 + static_cast<std::uint64_t>(kind)));
      for (const auto& rec : res.trajectory) {
        if (rec.bond != -1) continue;
        if (!std::isfinite(rec.m2.value) || !std::isfinite(rec.ee_half))
          throw RealizationFailure("non-finite result in realization " + std::to_string(r), seed);
        rows.push_back({r, seed, kind, rec.sweep, rec.m2.value, rec.m2.std_error, rec.ee_half, rec.wall_ms});
      }
    }
  } catch (const RealizationFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw RealizationFailure("realization " + std::to_string(r) + " failed: " + e.what(), seed);
  }
  return rows;
}

std::vector<RealizationRow> run_random_bench(const RandomBenchConfig& cfg, const std::function<void(int)>& progress) {
  if (cfg.n < 2) throw Error("random bench needs n >= 2");
  if (cfg.realizations < 0) throw Error("negative realization count");
  std::vector<std::vector<RealizationRow>> per(cfg.realizations);
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr failure;
  std::mutex mu;
  int done = 0;

  auto worker = [&] {
    while (!failed) {
      const int r = next++;
      if (r >= cfg.realizations) return;
      try {
        per[r] = run_realization(cfg, r);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        failed = true;
        return;
      }
      std::lock_guard lock(mu);
      ++done;
      if (progress) progress(done);
    }
  };
  const int jobs = std::max(1, std::min(cfg.jobs, cfg.realizations));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<RealizationRow> rows;
  for (auto& v : per) rows.insert(rows.end(), v.begin(), v.end());
  return rows;
}

std::vector<AggregateRow> aggregate(const std::vector<RealizationRow>& rows) {
  struct Acc {
    StrategyKind strategy;
    int sweep;
    std::vector<double> m2, ee;
  };
  std::vector<Acc> groups;
  for (const auto& r : rows) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Acc& a) { return a.strategy == r.strategy && a.sweep == r.sweep; });
    if (it == groups.end()) {
      groups.push_back({r.strategy, r.sweep, {}, {}});
      it = groups.end() - 1;
    }
    it->m2.push_back(r.m2);
    it->ee.push_back(r.ee);
  }
  auto stats = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    return std::pair{mean, sd};
  };
  std::vector<AggregateRow> out;
  for (const auto& g : groups) {
    const auto [m2m, m2s] = stats(g.m2);
    const auto [eem, ees] = stats(g.ee);
    out.push_back({g.strategy, g.sweep, m2m, m2s, eem, ees, static_cast<int>(g.m2.size())});
  }
  return out;
}

void write_realization_csv(std::ostream& os, const std::vector<RealizationRow>& rows, bool with_timing) {
  os << kCsvHeaderComment << '\n' << "realization,seed,strategy,sweep,m2,m2_stderr,ee,wall_ms\n";
  for (const auto& r : rows) {
    os << r.realization << ',' << r.seed << ',' << to_string(r.strategy) << ',' << r.sweep << ',' << format_double(r.m2)
       << ',' << format_double(r.m2_stderr) << ',' << format_double(r.ee) << ','
       << (with_timing ? format_double(r.wall_ms) : std::string{}) << '\n';
  }
}

void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows) {
  os << kCsvHeaderComment << '\n' << "strategy,sweep,m2_mean,m2_std,ee_mean,ee_std,count\n";
  for (const auto& r : rows) {
    os << to_string(r.strategy) << ',' << r.sweep << ',' << format_double(r.m2_mean) << ',' << format_double(r.m2_std)
       << ',' << format_double(r.ee_mean) << ',' << format_double(r.ee_std) << ',' << r.count << '\n';
  }
}

double heisenberg_reference_energy(const HeisenbergConfig& cfg, std::string* method) {
  if (cfg.reference_energy) {
    if (method) *method = "given";
    return *cfg.reference_energy;
  }
  ReferenceKey key{cfg.length, 0, 0, 0};
  std::function<double()> compute;
  if (cfg.reference_bond) {
    key.bond = *cfg.reference_bond;
    key.sweeps = 20;
    if (method) *method = "dmrg-D" + std::to_string(*cfg.reference_bond);
    compute = [&] {
      DmrgConfig dc;
      dc.max_bond = *cfg.reference_bond;
      dc.sweeps = 20;
      dc.energy_tol = 1e-10;
      dc.seed = 0;
      return two_site_dmrg(heisenberg_mpo(cfg.length), dc).energy;
    };
  } else {
    if (method) *method = "exact-diagonalization";
    compute = [&] { return heisenberg_ground_energy_exact(cfg.length); };
  }
  if (!cfg.cache_file) return compute();
  ReferenceCache cache(*cfg.cache_file);
  return cache.get_or_compute(key, compute);
}

namespace {

double max_spectrum_difference(const MatrixXcd& a, const Eigen::VectorXd& reference) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(a, Eigen::EigenvaluesOnly);
  return (eig.eigenvalues() - reference).cwiseAbs().maxCoeff();
}

}  // namespace

HeisenbergResult run_heisenberg(const HeisenbergConfig& cfg, const std::function<void(const HeisenbergRow&)>& on_row) {
  if (cfg.length < 2) throw Error("the chain needs at least two sites");
  if (cfg.bond < 1) throw Error("bond dimension must be positive");
  if (cfg.sweeps < 0) throw Error("negative sweep count");
  const bool dense = cfg.dense_check.value_or(cfg.length <= 10);
  if (dense && cfg.length > 12) throw TooLarge("dense checks are limited to L <= 12");

  HeisenbergResult result;
  result.reference_energy = heisenberg_reference_energy(cfg, &result.reference_method);

  const Mpo h = heisenberg_mpo(cfg.length);
  Mpo h_cur = h;
  Mpo h_exact = h;
  MatrixXcd h_dense;
  Eigen::VectorXd spectrum;
  if (dense) {
    h_dense = h.to_dense();
    spectrum = Eigen::SelfAdjointEigenSolver<MatrixXcd>(h_dense, Eigen::EigenvaluesOnly).eigenvalues();
    result.dense_checks_passed = true;
  }

  DmrgConfig dc;
  dc.max_bond = cfg.bond;
  dc.sweeps = cfg.dmrg_sweeps;
  dc.seed = derive_seed(cfg.seed, 0);
  const auto start = Clock::now();

  auto record = [&](int sweep, const DmrgResult& d, const MpoCompressionReport& rep) {
    HeisenbergRow row;
    row.sweep = sweep;
    row.energy = d.energy;
    row.relative_error = relative_error(d.energy, result.reference_energy);
    row.m2 = sampled_m2(d.state, cfg.record_shots, derive_seed(cfg.seed, 0xb0000ull + static_cast<std::uint64_t>(sweep)));
    Mps copy = d.state;
    const auto profile = copy.bond_entropies();
    row.ee_half = profile[cfg.length / 2 - 1];
    double sum = 0.0;
    for (double e : profile) sum += e;
    row.ee_mean = sum / static_cast<double>(profile.size());
    row.mpo_max_bond = h_cur.max_bond_dim();
    row.mpo_cap_hit = rep.cap_hit;
    row.dmrg_converged = d.converged;
    if (dense) {
      Statevector phi = d.state.to_statevector();
      phi.normalize();
      for (auto it = result.circuit.rbegin(); it != result.circuit.rend(); ++it)
        phi.apply(Mat4(it->gate.matrix.adjoint()), it->bond, it->bond + 1);
      const Eigen::Map<const VectorXcd> v(phi.amplitudes().data(), static_cast<Eigen::Index>(phi.dim()));
      const double direct = std::real(v.dot(h_dense * v));
      row.coherence_error = std::abs(d.energy - direct);
      row.spectrum_error = max_spectrum_difference(h_exact.to_dense(), spectrum);
      if (*row.coherence_error > kCoherenceTolerance || *row.spectrum_error > kSpectrumTolerance)
        result.dense_checks_passed = false;
    }
    if (cfg.timing) row.wall_ms = elapsed_ms(start);
    result.rows.push_back(row);
    if (on_row) on_row(row);
  };

  DmrgResult current = two_site_dmrg(h, dc);
  record(0, current, MpoCompressionReport{h.max_bond_dim(), false, 0.0});
  Mps working = current.state;

  SweepConfig sc;
  sc.discrete = cfg.discrete;
  sc.disentangler.cost = cfg.cost;
  sc.trunc.max_bond = cfg.bond;
  for (int s = 1; s <= cfg.sweeps; ++s) {
    std::vector<AppliedGate> gates;
    sweep_once(working, SweepPhase{true, true}, sc, derive_seed(cfg.seed, 1000 + static_cast<std::uint64_t>(s)), s,
               gates);
    MpoCompressionReport sweep_rep;
    for (const auto& g : gates) {
      MpoCompressionReport rep;
      h_cur = conjugate_mpo(h_cur, g.gate, g.bond, cfg.compression.cutoff, cfg.compression.max_bond, &rep);
      sweep_rep.cap_hit = sweep_rep.cap_hit || rep.cap_hit;
      sweep_rep.discarded_weight = std::max(sweep_rep.discarded_weight, rep.discarded_weight);
      if (dense) h_exact = conjugate_mpo(h_exact, g.gate, g.bond, 0.0);
    }
    if (sweep_rep.cap_hit)
      std::cerr << "warning: MPO bond cap " << cfg.compression.max_bond << " reached in sweep " << s
                << " (largest discarded weight " << sweep_rep.discarded_weight << ")\n";
    result.circuit.insert(result.circuit.end(), gates.begin(), gates.end());

    dc.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(s));
    current = two_site_dmrg(h_cur, dc, working);
    if (cfg.restart_from_dmrg) working = current.state;
    record(s, current, sweep_rep);
  }
  return result;
}

void write_heisenberg_csv(std::ostream& os, const HeisenbergResult& result, bool with_timing) {
  os << kCsvHeaderComment << '\n';
  os << "# reference_energy=" << format_double(result.reference_energy) << " method=" << result.reference_method
     << '\n';
  os << "sweep,energy,relative_error,m2,m2_stderr,ee_mean,ee_half,mpo_max_bond,mpo_cap_hit,dmrg_converged,"
        "coherence_error,spectrum_error,wall_ms\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; };
  for (const auto& r : result.rows) {
    os << r.sweep << ',' << format_double(r.energy) << ',' << format_double(r.relative_error) << ','
       << format_double(r.m2.value) << ',' << format_double(r.m2.std_error) << ',' << format_double(r.ee_mean) << ','
       << format_double(r.ee_half) << ',' << r.mpo_max_bond << ',' << (r.mpo_cap_hit ? 1 : 0) << ','
       << (r.dmrg_converged ? 1 : 0) << ',' << opt(r.coherence_error) << ',' << opt(r.spectrum_error) << ','
       << (with_timing ? format_double(r.wall_ms) : std::string{}) << '\n';
  }
}

}  // namespace dismagick
