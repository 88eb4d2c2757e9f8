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

#pragma once

// On-disk cache of sampled stress-jump curves.
//
// One file per (media, sampling protocol) named <media_hash>-<protocol_hash>.csv:
//
//   # casimir-sphere stress-jump cache
//   # format_version: 1
//   # media: <canonical media>
//   # media_hash: <16 hex>
//   # protocol: <canonical sampling protocol>
//   # protocol_hash: <16 hex>
//   # units: hbar c / a^2
//   # fit.N<k>: f_m=<...> stderr=<...> condition=<...>     (zero or more)
//   delta,value,err_estimate,l_max,delta_hex,value_hex,err_hex
//   <one row per sample>
//
// The hex columns hold exact long double values and are what the reader
// uses; the decimal columns are for people.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "casimir/stress.hpp"

namespace casimir {

inline constexpr int kCacheFormatVersion = 1;
inline constexpr const char* kCacheEnvVar = "CASIMIR_CACHE_DIR";

struct CacheKey {
  std::string media;
  std::string protocol;
  std::uint64_t media_hash = 0;
  std::uint64_t protocol_hash = 0;
  std::string file_name() const;
};

struct CachedCurve {
  std::vector<StressSample> samples;
  std::vector<std::string> fit_lines;
};

// nullopt when absent or when the header does not match the key.
std::optional<CachedCurve> read_cache(const std::string& dir, const CacheKey& key);

// Atomic write (temporary file plus rename). Throws IoError.
void write_cache(const std::string& dir, const CacheKey& key, const CachedCurve& curve);

}  // namespace casimir
