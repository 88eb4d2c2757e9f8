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

#include <optional>
#include <string>
#include <vector>

#include "casimir/extraction.hpp"

namespace casimir {

// hbar c in J m.
inline constexpr Real kHbarC = 3.16152677e-26L;
// F_m of the perfectly conducting shell, units hbar c / a^2.
inline constexpr Real kConductorForce = 0.04618L;

struct Table1Row {
  std::string label;
  MediaConfig media;
  Real published = 0;
  Real published_uncertainty = 0;
  Real reference = 0;  // earlier independent result
  Real band = 0;       // relative acceptance band
  std::optional<ForceResult> result;
  std::string failure;
  bool within_band = false;
};

std::vector<Table1Row> reproduce_table1(const ExtractionProtocol& protocol);

enum class SweepCase { Sphere, Cavity };

// Sphere: eps_in = eps, the rest 1. Cavity: eps_out = eps, the rest 1.
MediaConfig sweep_media(SweepCase c, Real epsilon);
SweepCase parse_sweep_case(const std::string& s);

struct SweepSpec {
  SweepCase kind = SweepCase::Sphere;
  std::vector<Real> epsilon_values{Real(1.1), Real(1.5), 2, 3, 5, 10, 100, 1000, 10000};
  ExtractionProtocol protocol;
};

struct SweepPoint {
  Real epsilon = 0;
  std::optional<ForceResult> result;
  std::string failure;
};

// Failures are recorded per point and the sweep continues.
std::vector<SweepPoint> sweep_epsilon(const SweepSpec& spec);

struct CompositionRow {
  Real epsilon = 0;
  Real f_sphere = 0;
  Real f_cavity = 0;
  Real sum = 0;
  Real deviation = 0;  // |sum - kConductorForce|
  Real uncertainty = 0;
};

struct CompositionReport {
  std::vector<CompositionRow> rows;
  bool deviation_decreasing = false;
};

CompositionReport conductor_composition(const std::vector<Real>& epsilon_values,
                                        const ExtractionProtocol& protocol);

struct DiluteRow {
  Real h = 0;  // eps - 1
  Real f_m = 0;
  Real uncertainty = 0;
  Real f_over_h = 0;
};

struct HalvingRatio {
  Real h = 0;
  Real ratio = 0;  // F(h) / F(h/2)
};

struct DiluteReport {
  std::vector<DiluteRow> rows;
  std::vector<HalvingRatio> halving;
  Real c1 = 0;  // F ~ c1 h + c2 h^2
  Real c2 = 0;
  bool linear_dominates = false;  // |c1 h| > |c2 h^2| at the smallest h
};

// Sphere case with eps = 1 + h, each h in (0, 0.2]. Throws NoiseDominated
// if the uncertainty at the smallest h exceeds |F_m| there.
DiluteReport dilute_scan(const std::vector<Real>& h_values, const ExtractionProtocol& protocol);

struct SurfaceTension {
  Real f_m = 0;
  Real radius_nm = 0;
  Real gamma_si = 0;      // N/m
  Real gamma_dyn_cm = 0;  // dyn/cm
};

// gamma = F_m hbar c / (8 pi a^3).
SurfaceTension surface_tension_estimate(Real f_m, Real radius_nm);
SurfaceTension surface_tension_estimate(const ForceResult& force, Real radius_nm);
// Inverse of the above.
Real force_from_surface_tension(Real gamma_dyn_cm, Real radius_nm);

}  // namespace casimir
