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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dismagick/experiments.hpp"
#include "dismagick/serialization.hpp"

using namespace dismagick;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("dismagick_test_" + name);
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Serialization, StatevectorRoundTrip) {
  const auto psi = prepare_benchmark_state(5, 3, 2, 1);
  std::stringstream ss;
  write_statevector(ss, psi);
  const auto back = read_statevector(ss);
  for (std::size_t i = 0; i < psi.dim(); ++i) EXPECT_EQ(psi[i], back[i]);
}

TEST(Serialization, MpsRoundTripAndLayout) {
  Rng rng(2);
  const Mps m = Mps::random(6, 3, rng);
  std::stringstream ss;
  write_mps(ss, m);
  const std::string raw = ss.str();
  const auto header = raw.substr(0, raw.find('\n'));
  EXPECT_NE(header.find("\"format\":\"dismagick-mps\""), std::string::npos);
  const Mps back = read_mps(ss);
  EXPECT_EQ(back.bond_dims(), m.bond_dims());
  EXPECT_NEAR(fidelity(back, m), 1.0, 1e-14);
  // First data value is site 0, left 0, phys 0, right 0.
  cplx first;
  std::memcpy(&first, raw.data() + header.size() + 1, sizeof first);
  EXPECT_EQ(first, m.site(0)[0](0, 0));
}

TEST(Serialization, MpoRoundTrip) {
  const auto h = heisenberg_mpo(5);
  std::stringstream ss;
  write_mpo(ss, h);
  const auto back = read_mpo(ss);
  EXPECT_LT((back.to_dense() - h.to_dense()).cwiseAbs().maxCoeff(), 0.0 + 1e-300);
}

TEST(Serialization, StateFileDispatch) {
  const auto path = temp_path("state.mps");
  write_state_file(path, Mps::from_statevector(ghz_state(4)));
  const auto s = read_state_file(path);
  ASSERT_TRUE(std::holds_alternative<Mps>(s));
  EXPECT_EQ(std::get<Mps>(s).length(), 4);
  std::filesystem::remove(path);
}

TEST(Serialization, Errors) {
  std::stringstream bad("{\"format\":\"dismagick-mps\",\"version\":1,\"length\":2,\"bond_dims\":[1,1,1]}\n\x01");
  EXPECT_THROW(read_mps(bad), FormatError);
  std::stringstream wrong("{\"format\":\"other\",\"version\":1}\n");
  EXPECT_THROW(read_mps(wrong), FormatError);
  std::stringstream junk("not json\n");
  EXPECT_THROW(read_statevector(junk), FormatError);
  EXPECT_THROW(read_state_file(temp_path("does_not_exist")), FormatError);
}

TEST(ReferenceCache, StoresAndReloads) {
  const auto path = temp_path("cache.json");
  std::filesystem::remove(path);
  ReferenceCache cache(path);
  int calls = 0;
  const ReferenceKey key{8, 0, 0, 0};
  EXPECT_EQ(cache.get_or_compute(key, [&] { ++calls; return -3.5; }), -3.5);
  EXPECT_EQ(ReferenceCache(path).get_or_compute(key, [&] { ++calls; return 0.0; }), -3.5);
  EXPECT_EQ(calls, 1);
  EXPECT_FALSE(cache.lookup(ReferenceKey{8, 4, 0, 0}).has_value());
  std::filesystem::remove(path);
}

TEST(RandomBench, BaselineOnlyMatchesExactM2) {
  RandomBenchConfig cfg;
  cfg.realizations = 1;
  cfg.phase1_sweeps = 0;
  cfg.phase2_sweeps = 0;
  const auto rows = run_random_bench(cfg);
  ASSERT_EQ(rows.size(), 3u);
  const auto psi = prepare_benchmark_state(6, 6, 3, derive_seed(realization_seed(7, 0), 0));
  for (const auto& r : rows) {
    EXPECT_EQ(r.sweep, 0);
    EXPECT_NEAR(r.m2, exact_m2(psi), 1e-14);
  }
}

TEST(RandomBench, ThreadCountDoesNotChangeResults) {
  RandomBenchConfig cfg;
  cfg.n = 4;
  cfg.realizations = 4;
  cfg.phase1_sweeps = 1;
  cfg.phase2_sweeps = 1;
  cfg.nelder_mead.max_iters = 100;
  const auto a = run_random_bench(cfg);
  cfg.jobs = 3;
  const auto b = run_random_bench(cfg);
  std::ostringstream sa, sb;
  write_realization_csv(sa, a, false);
  write_realization_csv(sb, b, false);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(RandomBench, AggregateMatchesRecomputation) {
  RandomBenchConfig cfg;
  cfg.n = 4;
  cfg.realizations = 5;
  cfg.phase1_sweeps = 1;
  cfg.phase2_sweeps = 1;
  cfg.nelder_mead.max_iters = 100;
  const auto rows = run_random_bench(cfg);
  const auto agg = aggregate(rows);
  ASSERT_EQ(agg.size(), 9u);  // 3 strategies x sweeps 0..2
  for (const auto& a : agg) {
    std::vector<double> m2;
    for (const auto& r : rows)
      if (r.strategy == a.strategy && r.sweep == a.sweep) m2.push_back(r.m2);
    ASSERT_EQ(static_cast<int>(m2.size()), a.count);
    double mean = 0.0;
    for (double x : m2) mean += x;
    mean /= m2.size();
    double var = 0.0;
    for (double x : m2) var += (x - mean) * (x - mean);
    EXPECT_NEAR(a.m2_mean, mean, 1e-12);
    EXPECT_NEAR(a.m2_std, std::sqrt(var / (m2.size() - 1)), 1e-12);
  }
  std::ostringstream os;
  write_aggregate_csv(os, agg);
  const auto ls = lines(os.str());
  EXPECT_EQ(ls[0], "# dismagick-csv v1");
  EXPECT_EQ(ls[1], "strategy,sweep,m2_mean,m2_std,ee_mean,ee_std,count");
  EXPECT_EQ(ls.size(), 11u);
}

TEST(Heisenberg, TwoSitesZeroSweeps) {
  HeisenbergConfig cfg;
  cfg.length = 2;
  cfg.bond = 2;
  cfg.sweeps = 0;
  cfg.record_shots = 100;
  const auto res = run_heisenberg(cfg);
  ASSERT_EQ(res.rows.size(), 1u);
  EXPECT_NEAR(res.rows[0].energy, -0.75, 1e-9);
  EXPECT_NEAR(res.rows[0].relative_error, 0.0, 1e-9);
  EXPECT_EQ(res.reference_method, "exact-diagonalization");
}

TEST(Heisenberg, SmallPipelineDenseChecks) {
  HeisenbergConfig cfg;
  cfg.length = 6;
  cfg.bond = 2;
  cfg.sweeps = 2;
  cfg.discrete.candidates = 5;
  cfg.discrete.shots = 300;
  cfg.record_shots = 300;
  const auto res = run_heisenberg(cfg);
  ASSERT_EQ(res.rows.size(), 3u);
  ASSERT_TRUE(res.dense_checks_passed.has_value());
  EXPECT_TRUE(*res.dense_checks_passed);
  for (const auto& r : res.rows) {
    EXPECT_LT(*r.coherence_error, kCoherenceTolerance);
    EXPECT_LT(*r.spectrum_error, kSpectrumTolerance);
    EXPECT_GE(r.energy, res.reference_energy - 1e-9);
  }
  std::ostringstream os;
  write_heisenberg_csv(os, res, false);
  EXPECT_EQ(lines(os.str()).size(), 6u);
}
