// Copyright 2026 The casimir-sphere Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "casimir/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "casimir/errors.hpp"
#include "casimir/extraction.hpp"

namespace casimir {

namespace fs = std::filesystem;

namespace {

const char* const kMagic = "# casimir-sphere stress-jump cache";
const char* const kColumns = "delta,value,err_estimate,l_max,delta_hex,value_hex,err_hex";

std::string hex(Real v) {
  std::ostringstream os;
  os << std::hexfloat << v;
  return os.str();
}

std::string dec(Real v) {
  std::ostringstream os;
  os.precision(21);
  os << v;
  return os.str();
}

bool header_value(const std::string& line, const std::string& key, std::string& out) {
  const std::string prefix = "# " + key + ": ";
  if (line.rfind(prefix, 0) != 0) return false;
  out = line.substr(prefix.size());
  return true;
}

Real parse_hex(const std::string& s) {
  char* end = nullptr;
  const Real v = std::strtold(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw std::invalid_argument("bad number " + s);
  return v;
}

}  // namespace

std::string CacheKey::file_name() const {
  return hash_hex(media_hash) + "-" + hash_hex(protocol_hash) + ".csv";
}

std::optional<CachedCurve> read_cache(const std::string& dir, const CacheKey& key) {
  const fs::path path = fs::path(dir) / key.file_name();
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != kMagic) return std::nullopt;
  CachedCurve curve;
  bool version_ok = false, media_ok = false, protocol_ok = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string v;
      if (header_value(line, "format_version", v)) version_ok = v == std::to_string(kCacheFormatVersion);
      if (header_value(line, "media", v)) media_ok = v == key.media;
      if (header_value(line, "protocol", v)) protocol_ok = v == key.protocol;
      if (line.rfind("# fit.", 0) == 0) curve.fit_lines.push_back(line.substr(2));
      continue;
    }
    if (line == kColumns) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) return std::nullopt;
    try {
      StressSample s;
      s.delta = parse_hex(cells[4]);
      s.value = parse_hex(cells[5]);
      s.err_estimate = parse_hex(cells[6]);
      s.l_max = std::stoi(cells[3]);
      curve.samples.push_back(s);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  if (!version_ok || !media_ok || !protocol_ok) return std::nullopt;
  return curve;
}

void write_cache(const std::string& dir, const CacheKey& key, const CachedCurve& curve) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create cache directory " + dir + ": " + ec.message());
  const fs::path path = fs::path(dir) / key.file_name();
  const fs::path tmp = path.string() + "." + std::to_string(::getpid()) + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot write cache file " + tmp.string());
    out << kMagic << "\n";
    out << "# format_version: " << kCacheFormatVersion << "\n";
    out << "# media: " << key.media << "\n";
    out << "# media_hash: " << hash_hex(key.media_hash) << "\n";
    out << "# protocol: " << key.protocol << "\n";
    out << "# protocol_hash: " << hash_hex(key.protocol_hash) << "\n";
    out << "# units: hbar c / a^2\n";
    for (const auto& f : curve.fit_lines) out << "# " << f << "\n";
    out << kColumns << "\n";
    for (const auto& s : curve.samples) {
      out << dec(s.delta) << "," << dec(s.value) << "," << dec(s.err_estimate) << "," << s.l_max
          << "," << hex(s.delta) << "," << hex(s.value) << "," << hex(s.err_estimate) << "\n";
    }
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move cache file into place: " + ec.message());
}

}  // namespace casimir
