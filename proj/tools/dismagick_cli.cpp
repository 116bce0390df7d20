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

// Command-line driver: random-state benchmark, Heisenberg pipeline and M2
// utility.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "dismagick/experiments.hpp"
#include "dismagick/serialization.hpp"
#include "dismagick/sre.hpp"

namespace {

using namespace dismagick;
using nlohmann::json;

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

/// Reads JSON config files. Top-level objects name subcommands, so
/// {"heisenberg": {"L": 8}} sets --L of `heisenberg`.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    json j = json::object();
    for (const CLI::Option* opt : app->get_options({})) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const std::string name = opt->get_lnames()[0];
      if (opt->count() > 0) {
        const auto& res = opt->results();
        j[name] = res.size() == 1 ? json(res[0]) : json(res);
      } else if (default_also && !opt->get_default_str().empty()) {
        j[name] = opt->get_default_str();
      }
    }
    return j.dump(2);
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      j = json::parse(input);
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    std::vector<CLI::ConfigItem> items;
    collect(j, {}, items);
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void collect(const json& j, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        auto p = parents;
        p.push_back(key);
        collect(value, p, out);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      out.push_back(std::move(item));
    }
  }
};

std::pair<int, int> parse_sweeps(const std::string& s) {
  const auto plus = s.find('+');
  try {
    std::size_t used = 0;
    if (plus == std::string::npos) {
      const int a = std::stoi(s, &used);
      if (used != s.size() || a < 0) throw std::invalid_argument(s);
      return {a, 0};
    }
    const std::string a_str = s.substr(0, plus), b_str = s.substr(plus + 1);
    const int a = std::stoi(a_str, &used);
    if (used != a_str.size()) throw std::invalid_argument(s);
    const int b = std::stoi(b_str, &used);
    if (used != b_str.size() || a < 0 || b < 0) throw std::invalid_argument(s);
    return {a, b};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--sweeps", "expected N or N+M with non-negative integers, got '" + s + "'");
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << content;
}

struct RandomBenchArgs {
  RandomBenchConfig cfg;
  std::string sweeps = "6+4";
  std::vector<std::string> strategies{"clifford_only", "sequential", "joint"};
  std::string cost = "von_neumann";
  std::string out_dir;
  bool progress = false;
};

int run_random_bench_cmd(RandomBenchArgs& a) {
  auto& cfg = a.cfg;
  std::tie(cfg.phase1_sweeps, cfg.phase2_sweeps) = parse_sweeps(a.sweeps);
  cfg.strategies.clear();
  for (const auto& s : a.strategies) cfg.strategies.push_back(parse_strategy(s));
  cfg.cost = parse_entanglement_cost(a.cost);
  if (cfg.n > kExactM2MaxQubits) throw CLI::ValidationError("--n", "exact M2 is limited to 12 qubits");
  const std::filesystem::path dir = a.out_dir.empty() ? default_data_dir() : std::filesystem::path(a.out_dir);

  std::function<void(int)> progress;
  if (a.progress) progress = [&](int done) { std::cerr << "\rrealizations " << done << '/' << cfg.realizations << std::flush; };
  const auto rows = run_random_bench(cfg, progress);
  if (a.progress) std::cerr << '\n';
  const auto agg = aggregate(rows);

  std::ostringstream per, summary;
  write_realization_csv(per, rows, cfg.timing);
  write_aggregate_csv(summary, agg);
  const auto per_path = dir / "random_bench_realizations.csv";
  const auto agg_path = dir / "random_bench_aggregate.csv";
  write_file(per_path, per.str());
  write_file(agg_path, summary.str());
  std::cout << json{{"realizations_csv", per_path.string()}, {"aggregate_csv", agg_path.string()},
                    {"rows", rows.size()}}
                   .dump()
            << '\n';
  return 0;
}

struct HeisenbergArgs {
  HeisenbergConfig cfg;
  std::string cost = "von_neumann";
  std::string out_dir;
  std::string out_file;
  std::optional<int> ref_bond;
  std::optional<double> reference_energy;
  bool no_cache = false;
  bool dense = false;
  bool no_dense = false;
  bool progress = false;
  double theta_lo = 0.0, theta_hi = 6.283185307179586;
};

int run_heisenberg_cmd(HeisenbergArgs& a) {
  auto& cfg = a.cfg;
  cfg.cost = parse_entanglement_cost(a.cost);
  cfg.reference_bond = a.ref_bond;
  cfg.reference_energy = a.reference_energy;
  cfg.discrete.theta.lo = a.theta_lo;
  cfg.discrete.theta.hi = a.theta_hi;
  if (a.dense) cfg.dense_check = true;
  if (a.no_dense) cfg.dense_check = false;
  const std::filesystem::path dir = a.out_dir.empty() ? default_data_dir() : std::filesystem::path(a.out_dir);
  if (!a.no_cache) cfg.cache_file = default_data_dir() / "reference_energies.json";

  std::function<void(const HeisenbergRow&)> on_row;
  if (a.progress) {
    on_row = [](const HeisenbergRow& r) {
      std::cerr << "sweep " << r.sweep << " energy " << format_double(r.energy) << " rel.err "
                << format_double(r.relative_error) << " m2 " << format_double(r.m2.value) << " ee "
                << format_double(r.ee_mean) << '\n';
    };
  }
  const auto res = run_heisenberg(cfg, on_row);
  std::ostringstream os;
  write_heisenberg_csv(os, res, cfg.timing);
  const auto path = a.out_file.empty()
                        ? dir / ("heisenberg_L" + std::to_string(cfg.length) + "_D" + std::to_string(cfg.bond) + ".csv")
                        : std::filesystem::path(a.out_file);
  write_file(path, os.str());

  json summary{{"csv", path.string()},
               {"reference_energy", res.reference_energy},
               {"reference_method", res.reference_method},
               {"baseline_relative_error", res.rows.front().relative_error},
               {"final_relative_error", res.rows.back().relative_error}};
  summary["dense_checks_passed"] = res.dense_checks_passed ? json(*res.dense_checks_passed) : json(nullptr);
  std::cout << summary.dump() << '\n';
  if (res.dense_checks_passed && !*res.dense_checks_passed) {
    std::cerr << "error: dense cross-validation failed (seed " << cfg.seed << ")\n";
    return kExitNumerical;
  }
  return 0;
}

struct M2Args {
  std::string fixture;
  int n = 1;
  std::string state;
  long shots = 10000;
  std::uint64_t seed = 0;
  bool exact = false;
};

int run_m2_cmd(M2Args& a) {
  if (a.fixture.empty() == a.state.empty()) throw CLI::ValidationError("m2", "give exactly one of --fixture or --state");
  StateVariant state = Statevector(1);
  if (!a.fixture.empty()) {
    if (a.n < 1 || a.n > kExactM2MaxQubits) throw CLI::ValidationError("--n", "fixtures need 1 <= n <= 12");
    if (a.fixture == "ghz") {
      state = ghz_state(a.n);
    } else if (a.fixture == "t-product") {
      state = t_product_state(a.n);
    } else if (a.fixture == "zero") {
      state = Statevector(a.n);
    } else {
      throw CLI::ValidationError("--fixture", "unknown fixture '" + a.fixture + "'");
    }
  } else {
    try {
      state = read_state_file(a.state);
    } catch (const FormatError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitInvalid;
    }
  }

  SreEstimate est;
  double ee = 0.0;
  int n = 0;
  if (auto* mps = std::get_if<Mps>(&state)) {
    n = mps->length();
    mps->normalize();
    if (a.exact) {
      est = SreEstimate{exact_m2(mps->to_statevector()), 0.0, 0, SreMethod::Exact};
    } else {
      est = sampled_m2(*mps, a.shots, a.seed);
    }
    if (n >= 2) ee = bond_entropy(*mps, n / 2 - 1);
  } else {
    auto& psi = std::get<Statevector>(state);
    n = psi.num_qubits();
    psi.normalize();
    est = SreEstimate{exact_m2(psi), 0.0, 0, SreMethod::Exact};
    if (n >= 2) ee = entanglement_entropy(psi, n / 2);
  }
  json out{{"n", n},
           {"m2", est.value},
           {"std_error", est.std_error},
           {"method", std::string(to_string(est.method))},
           {"shots", est.shots},
           {"ee", ee},
           {"stab_fidelity_bound", stab_fidelity_lower_bound(est.value)},
           {"stab_fidelity_bound_ln2", stab_fidelity_lower_bound_bits(est.value)}};
  std::cout << out.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Magic and entanglement reduction for statevectors and MPS"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file supplying any flag, keyed by subcommand");
  app.require_subcommand(1);

  RandomBenchArgs rb;
  auto* bench = app.add_subcommand("random-bench", "Three sweep strategies on random n-qubit states");
  bench->add_option("--n", rb.cfg.n, "Qubits")->capture_default_str()->check(CLI::Range(2, 12));
  bench->add_option("--realizations", rb.cfg.realizations, "Random initial states")->capture_default_str()->check(CLI::NonNegativeNumber);
  bench->add_option("--clifford-depth", rb.cfg.clifford_depth, "Brickwork Clifford layers")->capture_default_str()->check(CLI::NonNegativeNumber);
  bench->add_option("--haar-layers", rb.cfg.haar_layers, "Brickwork Haar layers")->capture_default_str()->check(CLI::NonNegativeNumber);
  bench->add_option("--sweeps", rb.sweeps, "Phase lengths N+M (dismagicker or joint, then Clifford only)")->capture_default_str();
  bench->add_option("--seed", rb.cfg.seed, "Master seed")->capture_default_str();
  bench->add_option("--jobs", rb.cfg.jobs, "Worker threads across realizations")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--strategies", rb.strategies, "Subset of clifford_only, sequential, joint")->capture_default_str();
  bench->add_option("--cost", rb.cost, "Disentangler cost: von_neumann, renyi2, truncation_error")->capture_default_str();
  bench->add_option("--nm-max-iters", rb.cfg.nelder_mead.max_iters, "Nelder-Mead iterations per run")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--nm-restarts", rb.cfg.nelder_mead.restart_count, "Nelder-Mead restarts")->capture_default_str()->check(CLI::NonNegativeNumber);
  bench->add_option("--nm-step", rb.cfg.nelder_mead.initial_step, "Initial simplex step")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_flag("--return-sweep", rb.cfg.return_sweep, "Add a right-to-left pass to every sweep");
  bench->add_flag("--timing", rb.cfg.timing, "Fill the wall_ms column");
  bench->add_flag("--progress", rb.progress, "Report progress on stderr");
  bench->add_option("--out", rb.out_dir, "Output directory (default: $DISMAGICK_DATA_DIR or ./data)");

  HeisenbergArgs hb;
  auto* heis = app.add_subcommand("heisenberg", "Joint sweeps on a DMRG ground state of the open Heisenberg chain");
  heis->add_option("--L", hb.cfg.length, "Chain length")->capture_default_str()->check(CLI::Range(2, 64));
  heis->add_option("--D", hb.cfg.bond, "MPS bond dimension")->capture_default_str()->check(CLI::PositiveNumber);
  heis->add_option("--sweeps", hb.cfg.sweeps, "Joint sweeps")->capture_default_str()->check(CLI::NonNegativeNumber);
  heis->add_option("--candidates", hb.cfg.discrete.candidates, "Clifford+Rz candidates per bond")->capture_default_str()->check(CLI::NonNegativeNumber);
  heis->add_option("--shots", hb.cfg.discrete.shots, "Pauli samples per candidate")->capture_default_str()->check(CLI::PositiveNumber);
  heis->add_option("--record-shots", hb.cfg.record_shots, "Pauli samples for the recorded M2")->capture_default_str()->check(CLI::PositiveNumber);
  heis->add_option("--seed", hb.cfg.seed, "Seed")->capture_default_str();
  heis->add_option("--dmrg-sweeps", hb.cfg.dmrg_sweeps, "DMRG sweeps per run")->capture_default_str()->check(CLI::PositiveNumber);
  heis->add_option("--mpo-cutoff", hb.cfg.compression.cutoff, "Relative MPO compression cutoff")->capture_default_str();
  heis->add_option("--mpo-max-bond", hb.cfg.compression.max_bond, "MPO bond cap")->capture_default_str()->check(CLI::PositiveNumber);
  heis->add_option("--theta-min", hb.theta_lo, "Lower end of the Rz angle range")->capture_default_str();
  heis->add_option("--theta-max", hb.theta_hi, "Upper end of the Rz angle range")->capture_default_str();
  heis->add_option("--cost", hb.cost, "Disentangler cost")->capture_default_str();
  heis->add_option("--jobs", hb.cfg.discrete.jobs, "Worker threads across candidates")->capture_default_str()->check(CLI::PositiveNumber);
  heis->add_option("--ref-bond", hb.ref_bond, "Use a DMRG reference at this bond instead of exact diagonalization");
  heis->add_option("--reference-energy", hb.reference_energy, "Known reference energy");
  heis->add_flag("--no-cache", hb.no_cache, "Do not read or write the reference-energy cache");
  heis->add_flag("--dense-check", hb.dense, "Force dense cross-validation");
  heis->add_flag("--no-dense-check", hb.no_dense, "Disable dense cross-validation");
  heis->add_flag("!--keep-transformed", hb.cfg.restart_from_dmrg,
                 "Continue sweeping from the transformed state instead of the new DMRG ground state");
  heis->add_flag("--timing", hb.cfg.timing, "Fill the wall_ms column");
  heis->add_flag("--progress", hb.progress, "Report each sweep on stderr");
  heis->add_option("--out", hb.out_dir, "Output directory (default: $DISMAGICK_DATA_DIR or ./data)");
  heis->add_option("--output", hb.out_file, "Explicit CSV path");

  M2Args m2a;
  auto* m2 = app.add_subcommand("m2", "Stabilizer Renyi-2 entropy and half-chain entanglement of a state");
  m2->add_option("--fixture", m2a.fixture, "ghz, t-product or zero");
  m2->add_option("--n", m2a.n, "Qubits for fixtures")->capture_default_str();
  m2->add_option("--state", m2a.state, "Statevector or MPS file");
  m2->add_option("--shots", m2a.shots, "Pauli samples for MPS input")->capture_default_str()->check(CLI::PositiveNumber);
  m2->add_option("--seed", m2a.seed, "Sampling seed")->capture_default_str();
  m2->add_flag("--exact", m2a.exact, "Exact M2 for MPS input (at most 12 sites)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  std::uint64_t seed = 0;
  try {
    if (*bench) {
      seed = rb.cfg.seed;
      return run_random_bench_cmd(rb);
    }
    if (*heis) {
      seed = hb.cfg.seed;
      return run_heisenberg_cmd(hb);
    }
    seed = m2a.seed;
    return run_m2_cmd(m2a);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const RealizationFailure& e) {
    std::cerr << "error: " << e.what() << " (seed " << e.seed() << ")\n";
    return kExitNumerical;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    const std::string what = e.what();
    // Unknown enum names from the library are flag errors.
    if (what.rfind("unknown ", 0) == 0) {
      std::cerr << "error: " << what << '\n';
      return kExitInvalid;
    }
    std::cerr << "error: " << what << " (seed " << seed << ")\n";
    return kExitNumerical;
  }
}
