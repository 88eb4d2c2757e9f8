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

#include "casimir/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <variant>

#include "casimir/cache.hpp"
#include "casimir/config.hpp"
#include "casimir/errors.hpp"
#include "casimir/experiments.hpp"
#include "casimir/version.hpp"

namespace casimir {

namespace {

using Cell = std::variant<std::string, Real, long long>;

struct Table {
  std::string units;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> notes;
  // Merged into the provenance stamp as achieved.<key>.
  std::map<std::string, Real> achieved;
};

void note_achieved(Table& t, const std::string& key, Real v) {
  auto [it, fresh] = t.achieved.emplace(key, v);
  if (!fresh) it->second = std::max(it->second, v);
}

void note_force(Table& t, const ForceResult& r) {
  note_achieved(t, "max_sample_error", r.max_sample_error);
  note_achieved(t, "f_m_uncertainty", r.uncertainty);
}

std::string format_real(Real v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json to_json(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  const Real v = std::get<Real>(c);
  if (!std::isfinite(v)) return nullptr;
  return static_cast<double>(v);
}

std::string render(const std::string& command, const Table& t, const ProvenanceStamp& p,
                   OutputFormat fmt) {
  std::ostringstream o;
  if (fmt == OutputFormat::Csv) {
    o << "# casimir-sphere " << p.version << " " << command << "\n";
    o << "# format: csv 1\n";
    o << "# config_hash: " << p.config_hash << "\n";
    o << "# timestamp: " << p.timestamp << "\n";
    for (const auto& [k, v] : p.tolerances) o << "# tolerance." << k << ": " << v << "\n";
    o << "# units: " << t.units << "\n";
    for (const auto& n : t.notes) o << "# " << n << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) o << (i ? "," : "") << t.columns[i];
    o << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) o << ',';
        const Cell& c = row[i];
        if (const auto* s = std::get_if<std::string>(&c)) {
          o << csv_escape(*s);
        } else if (const auto* n = std::get_if<long long>(&c)) {
          o << *n;
        } else {
          o << format_real(std::get<Real>(c));
        }
      }
      o << "\n";
    }
    return o.str();
  }
  nlohmann::json head = {{"type", "provenance"},
                         {"command", command},
                         {"version", p.version},
                         {"format", "json-lines 1"},
                         {"config_hash", p.config_hash},
                         {"timestamp", p.timestamp},
                         {"tolerances", p.tolerances},
                         {"units", t.units},
                         {"notes", t.notes}};
  o << head.dump() << "\n";
  for (const auto& row : t.rows) {
    nlohmann::json j = {{"type", "row"}};
    for (std::size_t i = 0; i < row.size(); ++i) j[t.columns[i]] = to_json(row[i]);
    o << j.dump() << "\n";
  }
  return o.str();
}

void write_file_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + tmp + "' for writing");
    f << text;
    f.flush();
    if (!f) throw IoError("error writing '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
}

std::vector<Real> parse_list(const std::vector<std::string>& items, const std::string& flag) {
  std::vector<Real> out;
  for (const auto& s : items) {
    try {
      std::size_t pos = 0;
      const Real v = std::stold(s, &pos);
      if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
      out.push_back(v);
    } catch (const std::exception&) {
      throw DomainError(flag + ": expected a number, got '" + s + "'");
    }
  }
  return out;
}

// Flags shared by the subcommands; each maps onto a config key.
struct Flags {
  std::string config;
  std::string out;
  bool conductor = false;
  std::map<std::string, std::string> values;  // config key -> flag text
  bool no_order_ladder = false;
};

void add_option(CLI::App* app, Flags& f, const std::string& flag, const std::string& key,
                const std::string& help) {
  app->add_option_function<std::string>(
      flag, [&f, key](const std::string& v) { f.values[key] = v; }, help);
}

void add_media_flags(CLI::App* app, Flags& f) {
  add_option(app, f, "--eps-in", "eps_in", "permittivity inside the sphere");
  add_option(app, f, "--mu-in", "mu_in", "permeability inside the sphere");
  add_option(app, f, "--eps-out", "eps_out", "permittivity outside the sphere");
  add_option(app, f, "--mu-out", "mu_out", "permeability outside the sphere");
  app->add_flag("--conductor", f.conductor, "perfectly conducting shell");
}

void add_numeric_flags(CLI::App* app, Flags& f) {
  add_option(app, f, "--asymptotic-order", "asymptotic_order", "uniform Bessel expansion order");
  add_option(app, f, "--crossover-nu", "crossover_nu", "smallest order using the uniform expansion");
  add_option(app, f, "--quad-tol", "quad_rel_tol", "per-panel quadrature tolerance");
  add_option(app, f, "--tail-tol", "tail_tol", "l-sum tail tolerance");
  add_option(app, f, "--threads", "threads", "OpenMP threads (0: runtime default)");
}

void add_extraction_flags(CLI::App* app, Flags& f) {
  add_option(app, f, "--grid", "grid", "sample grid min:max:step");
  add_option(app, f, "--fit-order", "fit_order", "highest power N in the fit");
  add_option(app, f, "--alpha", "alpha", "expansion-variable rescale");
  add_option(app, f, "--tolerance", "tolerance", "accuracy target for F_m");
  add_option(app, f, "--cache-dir", "cache_dir", "sample cache directory");
  app->add_flag("--no-order-ladder", f.no_order_ladder, "skip the asymptotic-order repeat");
}

void add_io_flags(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "key = value configuration file");
  add_option(app, f, "--output", "output", "csv or json-lines");
  app->add_option("--out", f.out, "write to this file instead of stdout");
}

RunConfig build_config(const Flags& f) {
  RunConfig cfg = f.config.empty() ? RunConfig{} : load_config(f.config);
  static const char* media_keys[] = {"eps_in", "mu_in", "eps_out", "mu_out"};
  bool media_flag = f.conductor;
  for (const char* k : media_keys) media_flag = media_flag || f.values.count(k);
  if (media_flag) {
    // Media flags replace the file's media as a whole.
    cfg.conductor.reset();
    cfg.eps_in.reset();
    cfg.mu_in.reset();
    cfg.eps_out.reset();
    cfg.mu_out.reset();
  }
  if (f.conductor) cfg.conductor = true;
  for (const auto& [key, value] : f.values) {
    set_config_key(cfg, key, value, "--" + key);
  }
  if (f.no_order_ladder) cfg.order_ladder = false;
  if (!f.values.count("cache_dir")) {
    if (const char* env = std::getenv(kCacheEnvVar); env && *env) cfg.cache_dir = env;
  }
  cfg.validate();
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  return cfg;
}

Table force_table(const std::vector<std::pair<MediaConfig, ForceResult>>& results) {
  Table t;
  t.units = "f_m, uncertainty and coefficients in hbar c / a^2";
  t.columns = {"media",     "f_m",  "uncertainty", "fit_uncertainty", "order_spread",
               "a_m3",      "a_m2", "a_m1",        "b0",              "condition",
               "max_sample_error", "media_hash", "protocol_hash"};
  for (const auto& [m, r] : results) {
    t.rows.push_back({m.canonical(), r.f_m, r.uncertainty, r.fit_uncertainty, r.order_spread,
                      r.divergent.delta_m3, r.divergent.delta_m2, r.divergent.delta_m1,
                      r.divergent.log, r.fit.condition, r.max_sample_error,
                      hash_hex(r.media_hash), hash_hex(r.protocol_hash)});
    note_force(t, r);
    for (const auto& e : r.ladder) {
      t.notes.push_back("ladder N=" + std::to_string(e.N) + " f_m=" + format_real(e.f_m) +
                        (e.ok ? " stderr=" + format_real(e.f_stderr) : " failed: " + e.failure));
    }
    if (r.f_m_lower_order) {
      t.notes.push_back("lower asymptotic order f_m=" + format_real(*r.f_m_lower_order));
    }
  }
  return t;
}

Table cmd_bessel_check(const RunConfig& cfg, Real nu_min, Real nu_max, Real nu_step, Real x_min,
                       Real x_max, int points, const std::string& path) {
  if (!(nu_min > 0 && nu_max >= nu_min && nu_step > 0)) throw DomainError("invalid nu range");
  if (!(x_min > 0 && x_max >= x_min) || points < 1) throw DomainError("invalid x range");
  Table t;
  t.units = "value_I = exp(-x) I_nu(x), value_K = exp(x) K_nu(x)";
  t.columns = {"nu", "x", "path", "value_I", "value_K", "wronskian_residual", "rel_err_estimate"};
  BesselPolicy policy = cfg.stress_options().bessel;
  for (Real nu = nu_min; nu <= nu_max * (1 + 1e-15L); nu += nu_step) {
    for (int i = 0; i < points; ++i) {
      const Real x = points == 1 ? x_min
                                 : x_min * std::pow(x_max / x_min, static_cast<Real>(i) /
                                                                        (points - 1));
      BesselPath p;
      if (path == "auto") {
        p = choose_path(nu, x, policy);
      } else if (path == "uniform") {
        p = BesselPath::Uniform;
      } else if (path == "direct") {
        p = BesselPath::Direct;
      } else {
        throw DomainError("--path: expected auto, uniform or direct");
      }
      const BesselCore c = bessel_core(nu, x, p, policy.asymptotic_order);
      const BesselBundle b = to_bundle(c);
      const Real w = wronskian_residual(c);
      t.rows.push_back({nu, x, std::string(to_string(b.path)), b.I_scaled, b.K_scaled, w,
                        b.rel_err_estimate});
      note_achieved(t, "max_wronskian_residual", std::fabs(w));
      note_achieved(t, "max_rel_err_estimate", b.rel_err_estimate);
    }
  }
  return t;
}

Table cmd_stress_profile(const RunConfig& cfg, const std::vector<Real>& deltas) {
  const MediaConfig media = cfg.media();
  Table t;
  t.units = "rho^2 times stress in hbar c / a^4, i.e. hbar c / a^2 at rho = 1";
  t.columns = {"delta", "side", "s_rr", "s_tt", "err_estimate"};
  t.notes.push_back("media: " + media.canonical());
  const StressOptions opt = cfg.stress_options();
  for (Real d : deltas) {
    if (!(d > 0 && d < 1)) throw DomainError("stress-profile: delta must lie in (0, 1)");
    for (const char* side : {"in", "out"}) {
      const Real rho = side[0] == 'i' ? 1 - d : 1 + d;
      const StressValue v = radial_stress(media, rho, opt);
      t.rows.push_back({d, std::string(side), v.s_rr, v.s_tt, v.err_estimate});
      note_achieved(t, "max_err_estimate", v.err_estimate);
    }
  }
  return t;
}

Table cmd_table1(const RunConfig& cfg) {
  const auto rows = reproduce_table1(cfg.protocol());
  Table t;
  t.units = "f_m, published and reference in hbar c / a^2; band relative";
  t.columns = {"row",       "media", "f_m",          "uncertainty", "published",
               "published_uncertainty", "reference", "band", "within_band", "protocol_hash",
               "failure"};
  long long i = 1;
  for (const auto& r : rows) {
    const Real nan = std::numeric_limits<Real>::quiet_NaN();
    t.rows.push_back({i++, r.media.canonical(), r.result ? r.result->f_m : nan,
                      r.result ? r.result->uncertainty : nan, r.published,
                      r.published_uncertainty, r.reference, r.band,
                      std::string(r.within_band ? "yes" : "no"),
                      r.result ? hash_hex(r.result->protocol_hash) : std::string(), r.failure});
    if (r.result) note_force(t, *r.result);
    if (!r.within_band) t.notes.push_back("row " + std::to_string(i - 1) + " outside band");
  }
  return t;
}

Table cmd_sweep(const RunConfig& cfg, const std::string& kind, const std::vector<Real>& eps) {
  SweepSpec spec;
  spec.kind = parse_sweep_case(kind);
  if (!eps.empty()) spec.epsilon_values = eps;
  spec.protocol = cfg.protocol();
  const auto points = sweep_epsilon(spec);
  Table t;
  t.units = "f_m and uncertainty in hbar c / a^2";
  t.columns = {"epsilon", "f_m", "uncertainty", "protocol_hash"};
  t.notes.push_back("case: " + kind);
  const Real nan = std::numeric_limits<Real>::quiet_NaN();
  for (const auto& p : points) {
    if (p.result) {
      t.rows.push_back({p.epsilon, p.result->f_m, p.result->uncertainty,
                        hash_hex(p.result->protocol_hash)});
      note_force(t, *p.result);
    } else {
      t.rows.push_back({p.epsilon, nan, nan, std::string()});
      t.notes.push_back("failure at epsilon=" + format_real(p.epsilon) + ": " + p.failure);
    }
  }
  return t;
}

Table cmd_conductor_sum(const RunConfig& cfg, const std::vector<Real>& eps) {
  const auto rep = conductor_composition(eps, cfg.protocol());
  Table t;
  t.units = "hbar c / a^2";
  t.columns = {"epsilon", "f_sphere", "f_cavity", "sum", "deviation", "uncertainty"};
  for (const auto& r : rep.rows) {
    t.rows.push_back({r.epsilon, r.f_sphere, r.f_cavity, r.sum, r.deviation, r.uncertainty});
  }
  t.notes.push_back("conductor value: " + format_real(kConductorForce));
  t.notes.push_back(std::string("deviation decreasing: ") +
                    (rep.deviation_decreasing ? "yes" : "no"));
  return t;
}

Table cmd_dilute_scan(const RunConfig& cfg, const std::vector<Real>& h) {
  const auto rep = dilute_scan(h, cfg.protocol());
  Table t;
  t.units = "f_m and uncertainty in hbar c / a^2; h = eps - 1";
  t.columns = {"h", "f_m", "uncertainty", "f_over_h", "halving_ratio"};
  for (const auto& r : rep.rows) {
    Real ratio = std::numeric_limits<Real>::quiet_NaN();
    for (const auto& hr : rep.halving) {
      if (hr.h == r.h) ratio = hr.ratio;
    }
    t.rows.push_back({r.h, r.f_m, r.uncertainty, r.f_over_h, ratio});
  }
  t.notes.push_back("c1: " + format_real(rep.c1));
  t.notes.push_back("c2: " + format_real(rep.c2));
  t.notes.push_back(std::string("linear term dominates: ") +
                    (rep.linear_dominates ? "yes" : "no"));
  return t;
}

Table cmd_surface_tension(const RunConfig& cfg, Real radius_nm, std::optional<Real> f_m) {
  if (!f_m) {
    if (!cfg.has_media()) throw DomainError("surface-tension needs --f-m or media flags");
    f_m = extract_macroscopic_force(cfg.media(), cfg.protocol()).f_m;
  }
  const SurfaceTension s = surface_tension_estimate(*f_m, radius_nm);
  Table t;
  t.units = "radius_nm in nm; f_m in hbar c / a^2; gamma_si in N/m; gamma_dyn_cm in dyn/cm";
  t.columns = {"radius_nm", "f_m", "gamma_si", "gamma_dyn_cm"};
  t.rows.push_back({s.radius_nm, s.f_m, s.gamma_si, s.gamma_dyn_cm});
  return t;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const IllConditioned*>(&e)) {
    return kExitDomain;
  }
  return kExitConvergence;
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Casimir self-stress of a dielectric sphere", "casimir-sphere"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Flags f;
  std::function<Table(const RunConfig&)> run;
  std::string command;

  auto* bc = app.add_subcommand("bessel-check", "accuracy map of the Bessel evaluation paths");
  double nu_min = 10.5, nu_max = 60.5, nu_step = 5, x_min = 5, x_max = 500;
  int points = 12;
  std::string path = "auto";
  bc->add_option("--nu-min", nu_min, "smallest order")->capture_default_str();
  bc->add_option("--nu-max", nu_max, "largest order")->capture_default_str();
  bc->add_option("--nu-step", nu_step, "order step")->capture_default_str();
  bc->add_option("--x-min", x_min, "smallest argument")->capture_default_str();
  bc->add_option("--x-max", x_max, "largest argument")->capture_default_str();
  bc->add_option("--points", points, "arguments per order, log spaced")->capture_default_str();
  bc->add_option("--path", path, "auto, uniform or direct")->capture_default_str();
  add_numeric_flags(bc, f);
  add_io_flags(bc, f);
  bc->callback([&] {
    command = "bessel-check";
    run = [&](const RunConfig& cfg) {
      return cmd_bessel_check(cfg, nu_min, nu_max, nu_step, x_min, x_max, points, path);
    };
  });

  auto* sp = app.add_subcommand("stress-profile", "radial and tangential stress near the surface");
  std::vector<std::string> deltas;
  sp->add_option("--delta", deltas, "distances from the surface (default: the grid)")
      ->delimiter(',');
  add_option(sp, f, "--grid", "grid", "sample grid min:max:step");
  add_media_flags(sp, f);
  add_numeric_flags(sp, f);
  add_io_flags(sp, f);
  sp->callback([&] {
    command = "stress-profile";
    run = [&](const RunConfig& cfg) {
      return cmd_stress_profile(cfg, deltas.empty() ? cfg.grid.deltas()
                                                    : parse_list(deltas, "--delta"));
    };
  });

  auto* ef = app.add_subcommand("extract-force", "macroscopic force F_m for one media");
  add_media_flags(ef, f);
  add_extraction_flags(ef, f);
  add_numeric_flags(ef, f);
  add_io_flags(ef, f);
  ef->callback([&] {
    command = "extract-force";
    run = [&](const RunConfig& cfg) {
      const MediaConfig m = cfg.media();
      return force_table({{m, extract_macroscopic_force(m, cfg.protocol())}});
    };
  });

  auto* t1 = app.add_subcommand("table1", "reproduce the three published benchmark values");
  add_extraction_flags(t1, f);
  add_numeric_flags(t1, f);
  add_io_flags(t1, f);
  t1->callback([&] {
    command = "table1";
    run = [&](const RunConfig& cfg) { return cmd_table1(cfg); };
  });

  auto* sw = app.add_subcommand("sweep", "F_m as a function of epsilon");
  std::string sweep_case;
  std::vector<std::string> eps;
  sw->add_option("--case", sweep_case, "sphere or cavity")->required();
  sw->add_option("--eps", eps, "epsilon values, sorted")->delimiter(',');
  add_extraction_flags(sw, f);
  add_numeric_flags(sw, f);
  add_io_flags(sw, f);
  sw->callback([&] {
    command = "sweep";
    run = [&](const RunConfig& cfg) {
      return cmd_sweep(cfg, sweep_case, parse_list(eps, "--eps"));
    };
  });

  auto* cs = app.add_subcommand("conductor-sum", "sphere plus cavity against the conductor value");
  std::vector<std::string> cs_eps;
  cs->add_option("--eps", cs_eps, "epsilon values (default 100,1000,10000)")->delimiter(',');
  add_extraction_flags(cs, f);
  add_numeric_flags(cs, f);
  add_io_flags(cs, f);
  cs->callback([&] {
    command = "conductor-sum";
    run = [&](const RunConfig& cfg) {
      auto v = parse_list(cs_eps, "--eps");
      if (v.empty()) v = {100, 1000, 10000};
      return cmd_conductor_sum(cfg, v);
    };
  });

  auto* ds = app.add_subcommand("dilute-scan", "F_m for eps = 1 + h, small h");
  std::vector<std::string> hs;
  ds->add_option("--h-values", hs, "values of eps - 1 (default 0.01,0.02,0.04,0.08)")->delimiter(',');
  add_extraction_flags(ds, f);
  add_numeric_flags(ds, f);
  add_io_flags(ds, f);
  ds->callback([&] {
    command = "dilute-scan";
    run = [&](const RunConfig& cfg) {
      auto v = parse_list(hs, "--h-values");
      if (v.empty()) v = {Real(0.01), Real(0.02), Real(0.04), Real(0.08)};
      return cmd_dilute_scan(cfg, v);
    };
  });

  auto* st = app.add_subcommand("surface-tension", "surface-tension correction for radius a");
  std::string radius, f_m_text;
  st->add_option("--radius-nm", radius, "sphere radius in nm")->required();
  st->add_option("--f-m", f_m_text, "dimensionless force; computed from the media if absent");
  add_media_flags(st, f);
  add_extraction_flags(st, f);
  add_numeric_flags(st, f);
  add_io_flags(st, f);
  st->callback([&] {
    command = "surface-tension";
    run = [&](const RunConfig& cfg) {
      std::optional<Real> fm;
      if (!f_m_text.empty()) fm = parse_list({f_m_text}, "--f-m").front();
      return cmd_surface_tension(cfg, parse_list({radius}, "--radius-nm").front(), fm);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitDomain;
  } catch (const Error& e) {
    // Thrown from callbacks while parsing.
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }

  try {
    const RunConfig cfg = build_config(f);
    Table t = run(cfg);
    ProvenanceStamp stamp = make_provenance(cfg);
    for (const auto& [k, v] : t.achieved) stamp.tolerances["achieved." + k] = format_real(v);
    const std::string text = render(command, t, stamp, cfg.output);
    if (f.out.empty()) {
      out << text;
      out.flush();
      if (!out) throw IoError("error writing output");
    } else {
      write_file_atomic(f.out, text);
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitConvergence;
  }
}

}  // namespace casimir
