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
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "dismagick/mpo.hpp"
#include "dismagick/mps.hpp"
#include "dismagick/statevector.hpp"

namespace dismagick {

// State files are one JSON header line followed by raw little-endian
// complex128 data. MPS sites are stored (left, phys, right) row-major, MPO
// sites (left, out, in, right) row-major.

void write_statevector(std::ostream& os, const Statevector& psi);
void write_mps(std::ostream& os, const Mps& mps);
void write_mpo(std::ostream& os, const Mpo& h);

Statevector read_statevector(std::istream& is);
Mps read_mps(std::istream& is);
Mpo read_mpo(std::istream& is);

using StateVariant = std::variant<Statevector, Mps>;

/// Reads a statevector or MPS file, dispatching on the header's format.
StateVariant read_state_file(const std::filesystem::path& path);
void write_state_file(const std::filesystem::path& path, const StateVariant& state);

/// $DISMAGICK_DATA_DIR if set, otherwise ./data.
std::filesystem::path default_data_dir();

struct ReferenceKey {
  int length = 0;
  /// 0 for exact diagonalization.
  int bond = 0;
  std::uint64_t seed = 0;
  int sweeps = 0;

  std::string to_string() const;
};

/// Reference energies stored as a JSON object keyed by ReferenceKey strings.
class ReferenceCache {
 public:
  explicit ReferenceCache(std::filesystem::path file);

  std::optional<double> lookup(const ReferenceKey& key) const;
  void store(const ReferenceKey& key, double energy);
  /// Returns the cached value or computes, stores and returns it.
  double get_or_compute(const ReferenceKey& key, const std::function<double()>& compute);

 private:
  std::filesystem::path file_;
};

}  // namespace dismagick
