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

#include "casimir/config.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "casimir/debye.hpp"
#include "casimir/errors.hpp"
#include "casimir/version.hpp"

namespace casimir {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string short_fmt(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10Lg", v);
  return buf;
}

std::string fmt(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", v);
  return buf;
}

Real parse_real(const std::string& key, const std::string& v, const std::string& where) {
  try {
    std::size_t pos = 0;
    const Real r = std::stold(v, &pos);
    if (pos != v.size() || !std::isfinite(r)) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw DomainError(where + ": " + key + ": expected a finite number, got '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v, const std::string& where) {
  try {
    std::size_t pos = 0;
    const int r = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw DomainError(where + ": " + key + ": expected an integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v, const std::string& where) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw DomainError(where + ": " + key + ": expected true or false, got '" + v + "'");
}

}  // namespace

const char* to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json-lines"; }

OutputFormat parse_output_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json-lines") return OutputFormat::JsonLines;
  throw DomainError("output: expected csv or json-lines, got '" + s + "'");
}

void set_config_key(RunConfig& cfg, const std::string& key, const std::string& value,
                    const std::string& where) {
  if (key == "conductor") {
    cfg.conductor = parse_bool(key, value, where);
  } else if (key == "eps_in") {
    cfg.eps_in = parse_real(key, value, where);
  } else if (key == "mu_in") {
    cfg.mu_in = parse_real(key, value, where);
  } else if (key == "eps_out") {
    cfg.eps_out = parse_real(key, value, where);
  } else if (key == "mu_out") {
    cfg.mu_out = parse_real(key, value, where);
  } else if (key == "grid") {
    try {
      cfg.grid = SampleGrid::parse(value);
    } catch (const DomainError& e) {
      throw DomainError(where + ": grid: " + e.what());
    }
  } else if (key == "fit_order") {
    cfg.fit_order = parse_int(key, value, where);
  } else if (key == "asymptotic_order") {
    cfg.asymptotic_order = parse_int(key, value, where);
  } else if (key == "crossover_nu") {
    cfg.crossover_nu = parse_real(key, value, where);
  } else if (key == "alpha") {
    cfg.alpha = parse_real(key, value, where);
  } else if (key == "tolerance") {
    cfg.tolerance = parse_real(key, value, where);
  } else if (key == "quad_rel_tol") {
    cfg.quad_rel_tol = parse_real(key, value, where);
  } else if (key == "tail_tol") {
    cfg.tail_tol = parse_real(key, value, where);
  } else if (key == "order_ladder") {
    cfg.order_ladder = parse_bool(key, value, where);
  } else if (key == "cache_dir") {
    cfg.cache_dir = value;
  } else if (key == "output") {
    try {
      cfg.output = parse_output_format(value);
    } catch (const DomainError& e) {
      throw DomainError(where + ": " + e.what());
    }
  } else if (key == "threads") {
    cfg.threads = parse_int(key, value, where);
  } else {
    throw DomainError(where + ": unknown key '" + key + "'");
  }
}

RunConfig parse_config_text(const std::string& text, const std::string& source) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(n);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError(where + ": expected key = value");
    set_config_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), where);
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading config file '" + path + "'");
  return parse_config_text(ss.str(), path);
}

bool RunConfig::has_media() const {
  return conductor.value_or(false) || eps_in || mu_in || eps_out || mu_out;
}

MediaConfig RunConfig::media() const {
  const bool any_dielectric = eps_in || mu_in || eps_out || mu_out;
  if (conductor.value_or(false)) {
    if (any_dielectric) {
      throw DomainError("media: conductor conflicts with explicit eps/mu values");
    }
    return MediaConfig::perfect_conductor();
  }
  if (!any_dielectric) {
    throw DomainError("media: no media given; set conductor or eps_in/mu_in/eps_out/mu_out");
  }
  return MediaConfig::dielectric(eps_in.value_or(1), mu_in.value_or(1), eps_out.value_or(1),
                                 mu_out.value_or(1));
}

StressOptions RunConfig::stress_options() const {
  StressOptions s;
  s.quad.rel_tol = quad_rel_tol;
  s.trunc.tail_tol = tail_tol;
  s.bessel.asymptotic_order = asymptotic_order;
  s.bessel.crossover_nu = crossover_nu;
  return s;
}

ExtractionProtocol RunConfig::protocol() const {
  ExtractionProtocol p;
  p.grid = grid;
  p.fit_order = fit_order;
  p.alpha = alpha;
  p.stress = stress_options();
  p.order_ladder = order_ladder;
  p.accuracy_target = tolerance;
  p.cache_dir = cache_dir;
  return p;
}

void RunConfig::validate() const {
  for (const auto& [name, v] : {std::pair{"eps_in", eps_in}, std::pair{"mu_in", mu_in},
                                std::pair{"eps_out", eps_out}, std::pair{"mu_out", mu_out}}) {
    if (v && !(*v > 0)) throw DomainError(std::string(name) + ": must be positive");
  }
  if (conductor.value_or(false) && (eps_in || mu_in || eps_out || mu_out)) {
    throw DomainError("media: conductor conflicts with explicit eps/mu values");
  }
  grid.validate();
  if (fit_order < 0 || fit_order > 12) throw DomainError("fit_order: must lie in [0, 12]");
  if (asymptotic_order < 1 || asymptotic_order > kMaxDebyeOrder - 1) {
    throw DomainError("asymptotic_order: must lie in [1, " + std::to_string(kMaxDebyeOrder - 1) +
                      "]");
  }
  if (!(crossover_nu >= 0)) throw DomainError("crossover_nu: must be non-negative");
  if (!(alpha >= Real(0.25) && alpha <= 4)) throw DomainError("alpha: must lie in [0.25, 4]");
  if (!(tolerance > 0)) throw DomainError("tolerance: must be positive");
  if (!(quad_rel_tol > 0 && quad_rel_tol < 1)) throw DomainError("quad_rel_tol: must lie in (0, 1)");
  if (!(tail_tol > 0 && tail_tol < 1)) throw DomainError("tail_tol: must lie in (0, 1)");
  if (threads < 0) throw DomainError("threads: must be non-negative");
}

std::string RunConfig::canonical() const {
  std::map<std::string, std::string> kv;
  if (conductor) kv["conductor"] = *conductor ? "true" : "false";
  if (eps_in) kv["eps_in"] = fmt(*eps_in);
  if (mu_in) kv["mu_in"] = fmt(*mu_in);
  if (eps_out) kv["eps_out"] = fmt(*eps_out);
  if (mu_out) kv["mu_out"] = fmt(*mu_out);
  kv["grid"] = grid.canonical();
  kv["fit_order"] = std::to_string(fit_order);
  kv["asymptotic_order"] = std::to_string(asymptotic_order);
  kv["crossover_nu"] = fmt(crossover_nu);
  kv["alpha"] = fmt(alpha);
  kv["tolerance"] = fmt(tolerance);
  kv["quad_rel_tol"] = fmt(quad_rel_tol);
  kv["tail_tol"] = fmt(tail_tol);
  kv["order_ladder"] = order_ladder ? "true" : "false";
  kv["output"] = to_string(output);
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

std::uint64_t RunConfig::hash() const { return stable_hash(canonical()); }

ProvenanceStamp make_provenance(const RunConfig& cfg) {
  ProvenanceStamp p;
  p.version = kVersion;
  p.config_hash = hash_hex(cfg.hash());
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  p.timestamp = buf;
  p.tolerances["quad_rel_tol"] = short_fmt(cfg.quad_rel_tol);
  p.tolerances["tail_tol"] = short_fmt(cfg.tail_tol);
  p.tolerances["asymptotic_order"] = std::to_string(cfg.asymptotic_order);
  p.tolerances["accuracy_target"] = short_fmt(cfg.tolerance);
  return p;
}

}  // namespace casimir
