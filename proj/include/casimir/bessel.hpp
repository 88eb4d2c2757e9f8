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

// Half-integer order modified Bessel functions I_nu, K_nu for real x > 0.
//
// Two evaluation paths:
//   uniform  large-order (Debye) expansion in t = sqrt(nu^2 + x^2),
//            each term of the form A_k(p^2) / t^k, p = nu / t;
//   direct   closed forms for K_{1/2}, K_{3/2}, upward recurrence for K,
//            continued fraction for I_{nu+1}/I_nu, Wronskian for I.
//
// The stress kernel never forms I or K themselves. It works with
//   eps_I = Q_I - t,  eps_K = Q_K + t,  Q_B = 1/2 + x B'(x)/B(x),
// the product I*K, and same-order ratios B(x1)/B(x2). These stay
// representable for any order and argument, where I and K alone overflow.

#include <limits>

#include "casimir/numeric.hpp"

namespace casimir {

struct HalfOrder {
  int l;
  explicit HalfOrder(int l_index);
  Real nu() const { return static_cast<Real>(l) + Real(0.5); }
};

enum class BesselPath { Uniform, Direct };

const char* to_string(BesselPath path);

struct BesselBundle {
  Real nu = 0;
  Real x = 0;
  Real I_scaled = 0;   // I_nu(x) e^{-x}
  Real K_scaled = 0;   // K_nu(x) e^{+x}
  Real dI_scaled = 0;  // I_nu'(x) e^{-x}
  Real dK_scaled = 0;  // K_nu'(x) e^{+x}
  Real rel_err_estimate = 0;
  BesselPath path = BesselPath::Direct;
};

struct BesselPolicy {
  int asymptotic_order = 6;
  // Orders below this use the direct path unless the argument is large
  // enough that the uniform series is exact to working precision.
  Real crossover_nu = 10;
  // Uniform path also requires the first omitted term to be below this.
  Real uniform_tolerance = std::numeric_limits<Real>::infinity();
};

// Scaled I, K and derivatives at x = nu * z from the uniform expansion
// truncated after U_order. Throws DomainError for z <= 0 or a bad order,
// AccuracyError if the first omitted term exceeds tol.
BesselBundle bessel_uniform(Real nu, Real z, int order,
                            Real tol = std::numeric_limits<Real>::infinity());

// Throws DomainError for x <= 0 or nu not a positive half-integer.
BesselBundle bessel_direct(Real nu, Real x);

// Path chosen by the policy.
BesselBundle bessel_bundle(Real nu, Real x, const BesselPolicy& policy = {});

// x (I K' - I' K) + 1, formed from the scaled values.
Real wronskian_residual(const BesselBundle& b);

// Lean per-point state used by the mode and stress layers.
struct BesselCore {
  BesselPath path = BesselPath::Direct;
  Real nu = 0, x = 0, t = 0;
  Real eps_i = 0, eps_k = 0;
  // uniform: sums of U_k / nu^k with signs + and -
  Real su_plus = 1, su_minus = 1;
  // direct: I e^{-x} = i_mant 2^exp2, K e^{x} = k_mant 2^-exp2
  Real i_mant = 0, k_mant = 0;
  long exp2 = 0;
  Real err = 0;
};

BesselPath choose_path(Real nu, Real x_min, const BesselPolicy& policy);

BesselCore bessel_core(Real nu, Real x, BesselPath path, int order);

// First omitted term of the uniform series at (nu, x) for the given order.
Real uniform_truncation_estimate(Real nu, Real x, int order);

// I(a.x) * K(a.x)
Real product_ik(const BesselCore& a);
// I(a.x) / I(b.x) and K(a.x) / K(b.x), same order, same path;
// dx = a.x - b.x supplied by the caller to avoid cancellation.
Real ratio_i(const BesselCore& a, const BesselCore& b, Real dx);
Real ratio_k(const BesselCore& a, const BesselCore& b, Real dx);
// ln(K(x) / I(x))
Real log_k_over_i(const BesselCore& a);
// x (I K' - I' K) + 1 from I K and the log-derivatives; finite wherever
// the core is, including where I or K alone over- or underflows.
Real wronskian_residual(const BesselCore& c);

BesselBundle to_bundle(const BesselCore& c);

}  // namespace casimir
