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

#include "dismagick/serialization.hpp"

#include <bit>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace dismagick {

static_assert(std::endian::native == std::endian::little, "state files assume a little-endian host");

namespace {

using nlohmann::json;

void write_header(std::ostream& os, const json& header) { os << header.dump() << '\n'; }

json read_header(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("missing header line");
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad header: ") + e.what());
  }
}

void expect_format(const json& header, const std::string& format) {
  if (header.value("format", std::string{}) != format)
    throw FormatError("expected format " + format + ", got '" + header.value("format", std::string{}) + "'");
  if (header.value("version", 0) != 1) throw FormatError("unsupported version");
}

void write_values(std::ostream& os, const cplx* data, std::size_t count) {
  os.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * sizeof(cplx)));
}

void read_values(std::istream& is, cplx* data, std::size_t count) {
  is.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(count * sizeof(cplx)));
  if (static_cast<std::size_t>(is.gcount()) != count * sizeof(cplx)) throw FormatError("truncated data section");
}

std::vector<int> read_bonds(const json& header, int length) {
  auto bonds = header.at("bond_dims").get<std::vector<int>>();
  if (static_cast<int>(bonds.size()) != length + 1 || bonds.front() != 1 || bonds.back() != 1)
    throw FormatError("bond_dims must have length+1 entries with trivial ends");
  for (int b : bonds)
    if (b < 1) throw FormatError("bond dimensions must be positive");
  return bonds;
}

}  // namespace

void write_statevector(std::ostream& os, const Statevector& psi) {
  write_header(os, {{"format", "dismagick-statevector"}, {"version", 1}, {"num_qubits", psi.num_qubits()},
                    {"dtype", "complex128-le"}});
  write_values(os, psi.amplitudes().data(), psi.dim());
}

void write_mps(std::ostream& os, const Mps& mps) {
  json header{{"format", "dismagick-mps"}, {"version", 1}, {"length", mps.length()},
              {"bond_dims", mps.bond_dims()}, {"dtype", "complex128-le"}};
  header["center"] = mps.center() ? json(*mps.center()) : json(nullptr);
  write_header(os, header);
  std::vector<cplx> buf;
  for (int j = 0; j < mps.length(); ++j) {
    const auto& a = mps.site(j);
    buf.clear();
    for (Eigen::Index l = 0; l < a[0].rows(); ++l)
      for (int s = 0; s < 2; ++s)
        for (Eigen::Index r = 0; r < a[0].cols(); ++r) buf.push_back(a[s](l, r));
    write_values(os, buf.data(), buf.size());
  }
}

void write_mpo(std::ostream& os, const Mpo& h) {
  write_header(os, {{"format", "dismagick-mpo"}, {"version", 1}, {"length", h.length()},
                    {"bond_dims", h.bond_dims()}, {"dtype", "complex128-le"}});
  std::vector<cplx> buf;
  for (int j = 0; j < h.length(); ++j) {
    const auto& w = h.site(j);
    buf.clear();
    for (Eigen::Index l = 0; l < w[0][0].rows(); ++l)
      for (int o = 0; o < 2; ++o)
        for (int i = 0; i < 2; ++i)
          for (Eigen::Index r = 0; r < w[0][0].cols(); ++r) buf.push_back(w[o][i](l, r));
    write_values(os, buf.data(), buf.size());
  }
}

namespace {

Statevector read_statevector_body(std::istream& is, const json& header) {
  const int n = header.at("num_qubits").get<int>();
  if (n < 0 || n > Statevector::kMaxQubits) throw FormatError("num_qubits out of range");
  std::vector<cplx> amps(std::size_t{1} << n);
  read_values(is, amps.data(), amps.size());
  return Statevector::from_amplitudes(std::move(amps));
}

Mps read_mps_body(std::istream& is, const json& header) {
  const int length = header.at("length").get<int>();
  if (length < 1) throw FormatError("length must be positive");
  const auto bonds = read_bonds(header, length);
  // Build from a product state so that the site vector has the right size.
  Mps mps = Mps::zero_state(length);
  std::vector<cplx> buf;
  for (int j = 0; j < length; ++j) {
    const Eigen::Index dl = bonds[j], dr = bonds[j + 1];
    buf.resize(static_cast<std::size_t>(2 * dl * dr));
    read_values(is, buf.data(), buf.size());
    SiteTensor a{MatrixXcd(dl, dr), MatrixXcd(dl, dr)};
    std::size_t idx = 0;
    for (Eigen::Index l = 0; l < dl; ++l)
      for (int s = 0; s < 2; ++s)
        for (Eigen::Index r = 0; r < dr; ++r) a[s](l, r) = buf[idx++];
    mps.set_site(j, std::move(a));
  }
  return mps;
}

}  // namespace

Statevector read_statevector(std::istream& is) {
  const json header = read_header(is);
  expect_format(header, "dismagick-statevector");
  return read_statevector_body(is, header);
}

Mps read_mps(std::istream& is) {
  const json header = read_header(is);
  expect_format(header, "dismagick-mps");
  return read_mps_body(is, header);
}

Mpo read_mpo(std::istream& is) {
  const json header = read_header(is);
  expect_format(header, "dismagick-mpo");
  const int length = header.at("length").get<int>();
  if (length < 1) throw FormatError("length must be positive");
  const auto bonds = read_bonds(header, length);
  std::vector<MpoSite> sites;
  std::vector<cplx> buf;
  for (int j = 0; j < length; ++j) {
    const Eigen::Index dl = bonds[j], dr = bonds[j + 1];
    buf.resize(static_cast<std::size_t>(4 * dl * dr));
    read_values(is, buf.data(), buf.size());
    MpoSite w;
    for (auto& row : w)
      for (auto& m : row) m = MatrixXcd(dl, dr);
    std::size_t idx = 0;
    for (Eigen::Index l = 0; l < dl; ++l)
      for (int o = 0; o < 2; ++o)
        for (int i = 0; i < 2; ++i)
          for (Eigen::Index r = 0; r < dr; ++r) w[o][i](l, r) = buf[idx++];
    sites.push_back(std::move(w));
  }
  return Mpo(std::move(sites));
}

StateVariant read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  const json header = read_header(in);
  const std::string format = header.value("format", std::string{});
  if (format == "dismagick-statevector") {
    expect_format(header, format);
    return read_statevector_body(in, header);
  }
  if (format == "dismagick-mps") {
    expect_format(header, format);
    return read_mps_body(in, header);
  }
  throw FormatError("unknown state format '" + format + "'");
}

void write_state_file(const std::filesystem::path& path, const StateVariant& state) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  std::visit(
      [&](const auto& s) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Statevector>) {
          write_statevector(out, s);
        } else {
          write_mps(out, s);
        }
      },
      state);
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("DISMAGICK_DATA_DIR"); env && *env) return env;
  return "data";
}

std::string ReferenceKey::to_string() const {
  std::ostringstream os;
  os << "L=" << length << ",D=" << bond << ",seed=" << seed << ",sweeps=" << sweeps;
  return os.str();
}

ReferenceCache::ReferenceCache(std::filesystem::path file) : file_(std::move(file)) {}

std::optional<double> ReferenceCache::lookup(const ReferenceKey& key) const {
  std::ifstream in(file_);
  if (!in) return std::nullopt;
  try {
    const json j = json::parse(in);
    const auto it = j.find(key.to_string());
    if (it == j.end()) return std::nullopt;
    return it->get<double>();
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

void ReferenceCache::store(const ReferenceKey& key, double energy) {
  json j = json::object();
  {
    std::ifstream in(file_);
    if (in) {
      try {
        j = json::parse(in);
      } catch (const json::exception&) {
        j = json::object();
      }
    }
  }
  j[key.to_string()] = energy;
  if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());
  const auto tmp = file_.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out.precision(17);
    out << j.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, file_);
}

double ReferenceCache::get_or_compute(const ReferenceKey& key, const std::function<double()>& compute) {
  if (auto v = lookup(key)) return *v;
  const double e = compute();
  store(key, e);
  return e;
}

}  // namespace dismagick
