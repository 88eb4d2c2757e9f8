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

// Run configuration: a plain key = value file, one key per line, '#' starts
// a comment. Keys:
//
//   conductor          true | false
//   eps_in mu_in eps_out mu_out   positive reals; unset ones default to 1
//   grid               min:max:step, fractions allowed (1/1000:1/100:1/5000)
//   fit_order          N >= 0 (4)
//   asymptotic_order   order of the uniform Bessel expansion (6)
//   crossover_nu       smallest order that uses the uniform expansion (10)
//   alpha              expansion-variable rescale in [0.25, 4] (1)
//   tolerance          accuracy target for F_m in hbar c / a^2 (1e-3)
//   quad_rel_tol       per-panel quadrature tolerance (1e-16)
//   tail_tol           l-sum tail tolerance (1e-16)
//   order_ladder       repeat with asymptotic order - 1 (true)
//   cache_dir          sample cache directory (unset: no cache)
//   output             csv | json-lines (csv)
//   threads            OpenMP threads, 0 for the runtime default (0)
//
// Precedence: command-line flags, then CASIMIR_CACHE_DIR (cache_dir only),
// then the file, then defaults.

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "casimir/extraction.hpp"

namespace casimir {

enum class OutputFormat { Csv, JsonLines };

struct RunConfig {
  std::optional<bool> conductor;
  std::optional<Real> eps_in, mu_in, eps_out, mu_out;
  SampleGrid grid;
  int fit_order = 4;
  int asymptotic_order = 6;
  Real crossover_nu = 10;
  Real alpha = 1;
  Real tolerance = 1e-3L;
  Real quad_rel_tol = 1e-16L;
  Real tail_tol = 1e-16L;
  bool order_ladder = true;
  std::string cache_dir;
  OutputFormat output = OutputFormat::Csv;
  int threads = 0;

  bool has_media() const;
  // Throws DomainError when no media is set or the settings conflict.
  MediaConfig media() const;
  ExtractionProtocol protocol() const;
  StressOptions stress_options() const;

  // Throws DomainError naming the offending key.
  void validate() const;

  // Sorted key=value lines of everything that affects results; cache_dir
  // and threads are excluded.
  std::string canonical() const;
  std::uint64_t hash() const;
};

// Applies one key. Throws DomainError("<where>: <key>: ...").
void set_config_key(RunConfig& cfg, const std::string& key, const std::string& value,
                    const std::string& where);

RunConfig parse_config_text(const std::string& text, const std::string& source = "<config>");

// Throws IoError if the file cannot be read, DomainError on schema errors.
RunConfig load_config(const std::string& path);

const char* to_string(OutputFormat f);
OutputFormat parse_output_format(const std::string& s);

struct ProvenanceStamp {
  std::string version;
  std::string config_hash;
  std::string timestamp;  // UTC, ISO 8601
  std::map<std::string, std::string> tolerances;
};

ProvenanceStamp make_provenance(const RunConfig& cfg);

}  // namespace casimir
