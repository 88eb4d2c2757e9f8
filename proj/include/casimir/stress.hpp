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

// Renormalized radial and tangential stress around the sphere in units of
// hbar c / a^2, multiplied by rho^2:
//
//   s_rr(rho) = 1/(8 pi^2) sum_l (2l+1) int_0^inf C B^2/rho (l(l+1) + x^2 - Q^2) dy
//   s_tt(rho) = -1/(8 pi^2) sum_l (2l+1) l(l+1) int_0^inf C B^2/rho dy
//
// with x = y_i rho, B = I inside and K outside, Q = 1/2 + x B'/B.

#include <cstdint>
#include <limits>
#include <optional>

#include "casimir/bessel.hpp"
#include "casimir/mode.hpp"

namespace casimir {

struct QuadratureSpec {
  Real rel_tol = 1e-16L;
  // The y-range stops where the slowest exponential factor exp(-2 n y delta')
  // has fallen below exp(-decay_cutoff).
  Real decay_cutoff = 48;
  // First panel ends at first_panel * min(nu, 1/delta') / n_max.
  Real first_panel = Real(0.25);
  int max_bisections = 40;
};

struct TruncationPolicy {
  int l_start = 1;
  Real tail_tol = 1e-16L;
  // hard cap l <= l_cap_factor / delta'
  Real l_cap_factor = 50;
};

struct StressOptions {
  QuadratureSpec quad;
  TruncationPolicy trunc;
  BesselPolicy bessel;
  bool parallel = true;
};

struct StressValue {
  Real rho = 0;
  Real s_rr = 0;
  Real s_tt = 0;
  Real err_estimate = 0;
  int l_max = 0;
};

struct StressSample {
  Real delta = 0;
  Real value = 0;  // s_rr(1+delta) - s_rr(1-delta)
  Real err_estimate = 0;
  int l_max = 0;
};

// Throws SurfaceSingularity if |rho - 1| < 1e-6, ConvergenceFailure when a
// cap is hit.
StressValue radial_stress(const MediaConfig& media, Real rho, const StressOptions& opt = {});
StressValue tangential_stress(const MediaConfig& media, Real rho, const StressOptions& opt = {});

// Requires 1e-4 <= delta <= 0.5.
StressSample stress_jump(const MediaConfig& media, Real delta, const StressOptions& opt = {});

struct DivergenceResidual {
  Real residual = 0;
  Real scale = 0;
  Real relative() const { return scale == 0 ? 0 : residual / scale; }
};

// Per-mode residual of d/drho (rho^2 s_rr) - 2 rho s_tt for one (l, y).
DivergenceResidual divergence_residual(const MediaConfig& media, int l, Real y, Real rho,
                                       const BesselPolicy& policy = {});

// Per-mode integrand of s_rr and s_tt at one (l, y, rho), without the
// 1/(8 pi^2) prefactor but including (2l+1).
struct ModeIntegrand {
  Real rr = 0;
  Real tt = 0;
};
ModeIntegrand mode_integrand(const MediaConfig& media, int l, Real y, Real rho,
                             const BesselPolicy& policy = {});

namespace detail {

// Probe pair for the kernel; either side may be absent.
struct Probes {
  std::optional<Real> delta_in;   // rho = 1 - delta_in
  std::optional<Real> delta_out;  // rho = 1 + delta_out
};

// Components: rr_in, tt_in, rr_out, tt_out, jump = rr_out - rr_in.
inline constexpr int kComponents = 5;

struct LTerm {
  Real value[kComponents] = {};
  Real err[kComponents] = {};
  Real scale[kComponents] = {};
  std::int64_t evaluations = 0;
};

LTerm integrate_l(const MediaConfig& media, const Probes& probes, int l, const StressOptions& opt);

struct KernelResult {
  Real value[kComponents] = {};
  Real err[kComponents] = {};
  int l_max = 0;
  std::int64_t evaluations = 0;
};

// Mode sum with compensated accumulation in increasing l. The parallel
// variant computes blocks of l concurrently and reduces them in the same
// order, so both return bit-identical results.
KernelResult stress_kernel_serial(const MediaConfig& media, const Probes& probes,
                                  const StressOptions& opt);
KernelResult stress_kernel_parallel(const MediaConfig& media, const Probes& probes,
                                    const StressOptions& opt);

}  // namespace detail

}  // namespace casimir
