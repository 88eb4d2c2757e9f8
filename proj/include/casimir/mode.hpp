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

// Renormalized mode coefficients C_i, C_o of a sphere (medium 1, radius a)
// in a background (medium 2), summed over both polarizations, and the
// scalar mode function g_l(y, rho, rho').
//
// C_i carries a factor K(y1)/I(y1) and C_o a factor I(y2)/K(y2), which
// under- and overflow for large l. Coefficients are therefore returned as
// a "reduced" part of order one times exp(log_scale).

#include <string>

#include "casimir/bessel.hpp"
#include "casimir/numeric.hpp"

namespace casimir {

class MediaConfig {
 public:
  // Vacuum everywhere.
  MediaConfig() = default;

  static MediaConfig dielectric(Real eps_in, Real mu_in, Real eps_out, Real mu_out);
  static MediaConfig perfect_conductor();

  Real eps_in() const { return eps_in_; }
  Real mu_in() const { return mu_in_; }
  Real eps_out() const { return eps_out_; }
  Real mu_out() const { return mu_out_; }
  bool is_conductor() const { return conductor_; }

  // refractive indices sqrt(eps mu)
  Real n_in() const;
  Real n_out() const;

  bool identical_media() const;

  // Canonical text used for hashing and file headers.
  std::string canonical() const;

  friend bool operator==(const MediaConfig&, const MediaConfig&) = default;

 private:
  Real eps_in_ = 1, mu_in_ = 1, eps_out_ = 1, mu_out_ = 1;
  bool conductor_ = false;
};

struct ModePoint {
  ModePoint(int l_index, Real y_value);
  int l;
  Real y;
  Real nu() const { return static_cast<Real>(l) + Real(0.5); }
};

struct ModeCoefficients {
  Real reduced_in = 0;
  Real reduced_out = 0;
  Real log_scale_in = 0;   // ln(K(y1)/I(y1))
  Real log_scale_out = 0;  // ln(I(y2)/K(y2))
  // Polarization parts of the reduced values. For the conductor the
  // "mu" part is the -K/I (-I/K) term and the "eps" part the derivative term.
  Real eps_part_in = 0, mu_part_in = 0;
  Real eps_part_out = 0, mu_part_out = 0;

  Real c_in() const;
  Real c_out() const;
};

ModeCoefficients mode_coefficients(const MediaConfig& media, const ModePoint& point,
                                   const BesselPolicy& policy = {});

ModeCoefficients conductor_coefficients(const ModePoint& point, const BesselPolicy& policy = {});

// g_l(y, rho, rho'). Throws SideMismatch unless both radii lie on the same
// side of the surface, SurfaceSingularity if either equals 1.
Real mode_function(const MediaConfig& media, const ModePoint& point, Real rho, Real rho_prime,
                   const BesselPolicy& policy = {});

namespace detail {

// Everything at the surface needed by the stress integrand for one (l, y).
struct SurfaceState {
  BesselCore in;   // at y1
  BesselCore out;  // at y2
  Real p_in = 0;   // I(y1) K(y1)
  Real p_out = 0;  // I(y2) K(y2)
  ModeCoefficients coeff;  // log scales left at zero
};

SurfaceState surface_state(const MediaConfig& media, Real nu, Real y, BesselPath path, int order);

}  // namespace detail

}  // namespace casimir
