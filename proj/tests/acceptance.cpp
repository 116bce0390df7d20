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

// Acceptance checks. Each criterion prints one PASS/FAIL line and the
// process exits non-zero if any selected criterion fails.
//
//   dismagick_acceptance [criterion...] [--cli PATH]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dismagick/clifford.hpp"
#include "dismagick/experiments.hpp"
#include "dismagick/mps.hpp"
#include "dismagick/serialization.hpp"
#include "dismagick/sre.hpp"
#include "dismagick/statevector.hpp"
#include "oracles.hpp"

namespace {

using namespace dismagick;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Eigen::VectorXcd as_vector(const Statevector& psi) {
  const auto a = psi.amplitudes();
  return Eigen::Map<const Eigen::VectorXcd>(a.data(), static_cast<Eigen::Index>(a.size()));
}

Statevector from_vector(const Eigen::VectorXcd& v) {
  return Statevector::from_amplitudes(std::vector<cplx>(v.data(), v.data() + v.size()));
}

// 1. M2 is invariant under Clifford circuits.
Outcome clifford_invariance() {
  Rng rng(101);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    Statevector psi = prepare_benchmark_state(6, 6, 3, rng());
    const double before = exact_m2(psi);
    for (int layer = 0; layer < 6; ++layer)
      for (int q : brickwork_bonds(6, layer)) psi.apply(random_clifford(rng).matrix, q, q + 1);
    worst = std::max(worst, std::abs(exact_m2(psi) - before));
  }
  return {worst < 1e-10, "max |dM2| = " + fmt(worst) + " over 100 states (tol 1e-10)"};
}

// 2. Exact M2 against fixtures and brute-force Pauli enumeration.
Outcome exact_m2_values() {
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n) {
    worst = std::max(worst, std::abs(exact_m2(Statevector(n))));
    if (n >= 2) worst = std::max(worst, std::abs(exact_m2(ghz_state(n))));
  }
  for (int k = 1; k <= 4; ++k) {
    const auto t = t_product_state(k);
    const double expected = k * std::log2(4.0 / 3.0);
    worst = std::max(worst, std::abs(exact_m2(t) - expected));
    worst = std::max(worst, std::abs(oracle::m2_bruteforce(as_vector(t)) - expected));
  }
  return {worst < 1e-9, "max deviation " + fmt(worst) + " (tol 1e-9)"};
}

// 3. Two-qubit Clifford group size and closure.
Outcome clifford_cardinality() {
  // Independent BFS over dense generators, keyed modulo global phase.
  Eigen::MatrixXcd h(2, 2), s(2, 2), cx = Eigen::MatrixXcd::Zero(4, 4);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  s << 1, 0, 0, cplx{0, 1};
  cx(0, 0) = cx(1, 1) = cx(2, 3) = cx(3, 2) = 1.0;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  const std::vector<Eigen::MatrixXcd> gens{oracle::kron(h, id), oracle::kron(id, h), oracle::kron(s, id),
                                           oracle::kron(id, s), cx};
  auto key = [](const Eigen::MatrixXcd& m) { return oracle::state_key(m.reshaped()); };
  std::set<std::vector<long long>> seen{key(Eigen::MatrixXcd::Identity(4, 4))};
  std::vector<Eigen::MatrixXcd> elems{Eigen::MatrixXcd::Identity(4, 4)};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      Eigen::MatrixXcd next = g * elems[i];
      if (seen.insert(key(next)).second) elems.push_back(next);
    }

  const auto& group = CliffordGroup::instance();
  bool ok = group.size() == 11520 && elems.size() == 11520;
  int missing = 0;
  for (const auto& e : elems)
    if (!group.index_of(Mat4(e))) ++missing;

  Rng rng(103);
  std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
  int not_closed = 0;
  for (int t = 0; t < 1000; ++t) {
    const Mat4 prod = group[pick(rng)].matrix * group[pick(rng)].matrix;
    if (!group.index_of(prod)) ++not_closed;
  }
  ok = ok && missing == 0 && not_closed == 0;
  return {ok, "library " + std::to_string(group.size()) + ", BFS oracle " + std::to_string(elems.size()) +
                  ", oracle elements missing " + std::to_string(missing) + ", non-closed pairs " +
                  std::to_string(not_closed) + "/1000"};
}

// 4. Sampled M2 at L=8 within 3 standard errors of the exact value.
Outcome sampling_validity() {
  const auto psi = prepare_benchmark_state(8, 4, 2, 104);
  const double exact = exact_m2(psi);
  const Mps m = Mps::from_statevector(psi);
  int hits = 0;
  for (int r = 0; r < 100; ++r) {
    const auto est = sampled_m2(m, 10000, derive_seed(104, r));
    if (std::abs(est.value - exact) <= 3.0 * est.std_error) ++hits;
  }
  return {hits >= 95, std::to_string(hits) + "/100 repetitions within 3 sigma (need 95), exact M2 = " + fmt(exact)};
}

// 5. Random-state benchmark, three strategies.
Outcome random_bench() {
  RandomBenchConfig cfg;
  cfg.n = 6;
  cfg.realizations = 100;
  cfg.phase1_sweeps = 6;
  cfg.phase2_sweeps = 4;
  cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
  const auto rows = run_random_bench(cfg);
  const auto agg = aggregate(rows);
  const int last = cfg.phase1_sweeps + cfg.phase2_sweeps;

  // (a) per realization: CliffordOnly M2 flat, EE non-increasing.
  double m2_drift = 0.0, ee_rise = 0.0;
  std::vector<const RealizationRow*> prev(cfg.realizations, nullptr);
  for (const auto& r : rows) {
    if (r.strategy != StrategyKind::CliffordOnly) continue;
    const auto* p = prev[r.realization];
    if (p) {
      m2_drift = std::max(m2_drift, std::abs(r.m2 - p->m2));
      ee_rise = std::max(ee_rise, r.ee - p->ee);
    }
    prev[r.realization] = &r;
  }
  auto mean_at = [&](StrategyKind k, int sweep, bool ee) {
    for (const auto& a : agg)
      if (a.strategy == k && a.sweep == sweep) return ee ? a.ee_mean : a.m2_mean;
    return std::nan("");
  };
  const double m2_init = mean_at(StrategyKind::Joint, 0, false);
  const double m2_seq = mean_at(StrategyKind::Sequential, last, false);
  const double m2_joint = mean_at(StrategyKind::Joint, last, false);
  const double ee_cl = mean_at(StrategyKind::CliffordOnly, last, true);
  const double ee_seq = mean_at(StrategyKind::Sequential, last, true);
  const double ee_joint = mean_at(StrategyKind::Joint, last, true);

  const bool a = m2_drift < 1e-10 && ee_rise <= 1e-12;
  const bool b = m2_joint < m2_seq && m2_seq < m2_init;
  const bool c = ee_joint <= ee_seq && ee_seq <= ee_cl;
  const bool d = m2_joint > 0.0 && m2_seq > 0.0;
  return {a && b && c && d,
          std::string("(a) ") + (a ? "ok" : "no") + " M2 drift " + fmt(m2_drift) + ", EE max rise " + fmt(ee_rise) +
              "; (b) " + (b ? "ok" : "no") + " M2 joint " + fmt(m2_joint) + " < seq " + fmt(m2_seq) + " < init " +
              fmt(m2_init) + "; (c) " + (c ? "ok" : "no") + " EE joint " + fmt(ee_joint) + " <= seq " + fmt(ee_seq) +
              " <= clifford " + fmt(ee_cl) + "; (d) " + (d ? "ok" : "no") + " residual M2 > 0"};
}

// 6. Heisenberg pipeline coherence at L=8 against dense matrices.
Outcome heisenberg_small() {
  HeisenbergConfig cfg;
  cfg.length = 8;
  cfg.bond = 2;
  cfg.sweeps = 3;
  cfg.dense_check = true;
  const auto res = run_heisenberg(cfg);
  double coh = 0.0, spec = 0.0;
  for (const auto& r : res.rows) {
    coh = std::max(coh, r.coherence_error.value_or(INFINITY));
    spec = std::max(spec, r.spectrum_error.value_or(INFINITY));
  }
  const bool ok = coh <= kCoherenceTolerance && spec <= kSpectrumTolerance;
  return {ok, "max coherence error " + fmt(coh) + " (tol 1e-6), max spectrum error " + fmt(spec) + " (tol 1e-8)"};
}

// 7. Heisenberg chain L=20, D=4, five joint sweeps.
Outcome heisenberg_large() {
  HeisenbergConfig cfg;
  cfg.length = 20;
  cfg.bond = 4;
  cfg.sweeps = 5;
  const auto res = run_heisenberg(cfg, [](const HeisenbergRow& r) {
    std::cerr << "  sweep " << r.sweep << " rel.err " << fmt(r.relative_error) << " m2 " << fmt(r.m2.value)
              << " ee " << fmt(r.ee_mean) << '\n';
  });
  const auto& rows = res.rows;
  const auto& base = rows.front();
  const auto& fin = rows.back();
  bool magic_down = true, ee_down = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    magic_down = magic_down && rows[i].m2.value < base.m2.value;
    ee_down = ee_down && rows[i].ee_mean < base.ee_mean;
  }
  // Least-squares slope of the relative error over sweeps.
  const double ns = static_cast<double>(rows.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    sx += r.sweep;
    sy += r.relative_error;
    sxx += double(r.sweep) * r.sweep;
    sxy += r.sweep * r.relative_error;
  }
  const double slope = (ns * sxy - sx * sy) / (ns * sxx - sx * sx);
  const double factor = base.relative_error / fin.relative_error;
  const auto best = std::min_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.relative_error < b.relative_error;
  });
  const bool ok = magic_down && ee_down && slope < 0.0 && factor >= 5.0;
  return {ok, std::string("M2 ") + fmt(base.m2.value) + " -> " + fmt(fin.m2.value) + (magic_down ? "" : " (not below baseline every sweep)") +
                  ", mean EE " + fmt(base.ee_mean) + " -> " + fmt(fin.ee_mean) + (ee_down ? "" : " (not below baseline every sweep)") +
                  ", rel. error " + fmt(base.relative_error) + " -> " + fmt(fin.relative_error) + " (factor " +
                  fmt(factor) + ", need 5; best " + fmt(base.relative_error / best->relative_error) + " at sweep " +
                  std::to_string(best->sweep) + "), slope " + fmt(slope) + ", reference " + res.reference_method};
}

// 8. Stabilizer fidelity bound against exhaustive enumeration.
Outcome fidelity_bound() {
  std::vector<std::vector<Eigen::VectorXcd>> stabs;
  for (int n = 1; n <= 3; ++n) stabs.push_back(oracle::stabilizer_states(n));
  const bool sizes = stabs[0].size() == 6 && stabs[1].size() == 60 && stabs[2].size() == 1080;
  std::mt19937_64 rng(108);
  double worst_margin = INFINITY;
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 3;
    const Eigen::VectorXcd v = oracle::random_state(n, rng);
    const double f = oracle::stabilizer_fidelity(v, stabs[n - 1]);
    const double bound = stab_fidelity_lower_bound_bits(exact_m2(from_vector(v)));
    worst_margin = std::min(worst_margin, f - bound);
  }
  return {sizes && worst_margin >= -1e-12,
          "stabilizer sets " + std::to_string(stabs[0].size()) + "/" + std::to_string(stabs[1].size()) + "/" +
              std::to_string(stabs[2].size()) + ", min F_stab - bound = " + fmt(worst_margin)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// 9. CLI runs are byte-identical under a fixed seed.
Outcome cli_determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no CLI path given (--cli)"};
  const auto dir = std::filesystem::temp_directory_path() / "dismagick_acceptance_cli";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  write_state_file(dir / "state.mps", Mps::from_statevector(prepare_benchmark_state(6, 4, 2, 109)));

  struct Run {
    std::string name, args;
    std::vector<std::string> files;
  };
  const std::string out = (dir / "out").string();
  const std::vector<Run> runs{
      {"random-bench",
       "random-bench --n 4 --realizations 3 --sweeps 1+1 --seed 5 --jobs 2 --nm-max-iters 200 --out " + out,
       {"random_bench_realizations.csv", "random_bench_aggregate.csv"}},
      {"heisenberg",
       "heisenberg --L 6 --D 2 --sweeps 2 --candidates 10 --shots 500 --record-shots 500 --seed 9 --no-cache --out " +
           out,
       {"heisenberg_L6_D2.csv"}},
      {"m2 fixture", "m2 --fixture t-product --n 3", {}},
      {"m2 state", "m2 --state " + (dir / "state.mps").string() + " --shots 2000 --seed 4", {}},
  };
  std::string report;
  bool ok = true;
  for (const auto& run : runs) {
    std::vector<std::string> outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto stdout_path = dir / ("stdout" + std::to_string(rep));
      const std::string cmd = "\"" + cli + "\" " + run.args + " > \"" + stdout_path.string() + "\" 2>/dev/null";
      if (std::system(cmd.c_str()) != 0) {
        ok = false;
        report += run.name + ": exit non-zero; ";
        break;
      }
      outputs[rep].push_back(slurp(stdout_path));
      for (const auto& f : run.files) outputs[rep].push_back(slurp(dir / "out" / f));
    }
    const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
    ok = ok && same;
    report += run.name + (same ? " identical; " : " DIFFERS; ");
  }
  std::filesystem::remove_all(dir);
  return {ok, report};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--cli" && i + 1 < argc) {
      cli = argv[++i];
    } else {
      selected.push_back(std::atoi(a.c_str()));
    }
  }
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9};

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Clifford invariance of M2", clifford_invariance},
      {"exact M2 oracle values", exact_m2_values},
      {"Clifford group cardinality and closure", clifford_cardinality},
      {"sampled M2 validity at L=8", sampling_validity},
      {"random-state benchmark, R=100, n=6, 6+4 sweeps", random_bench},
      {"Heisenberg pipeline coherence, L=8, D=2, 3 sweeps", heisenberg_small},
      {"Heisenberg chain, L=20, D=4, 5 sweeps", heisenberg_large},
      {"stabilizer fidelity bound, n<=3", fidelity_bound},
      {"CLI determinism", [&] { return cli_determinism(cli); }},
  };

  int failures = 0;
  for (int c : selected) {
    if (c < 1 || c > static_cast<int>(criteria.size())) {
      std::cerr << "unknown criterion " << c << '\n';
      return 2;
    }
    const auto& [name, fn] = criteria[c - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c << ": " << name << " -- " << o.detail << " ["
              << fmt(secs) << " s]" << std::endl;
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
