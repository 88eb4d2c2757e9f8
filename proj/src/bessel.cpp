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

#include "casimir/bessel.hpp"

#include <cmath>
#include <string>

#include "casimir/debye.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr Real kEps = std::numeric_limits<Real>::epsilon();
constexpr int kMaxCfIterations = 200000;
constexpr int kRescaleExponent = 4096;

int half_integer_index(Real nu) {
  const Real l = nu - Real(0.5);
  if (!(l >= 0) || l != std::floor(l) || l > 1e7L) {
    throw DomainError("direct Bessel path needs a half-integer order >= 1/2, got " +
                      std::to_string(static_cast<double>(nu)));
  }
  return static_cast<int>(l);
}

void check_order(int order) {
  const int max = DebyeTable::instance().max_order;
  if (order < 0 || order > max) {
    throw DomainError("asymptotic order must lie in [0, " + std::to_string(max) + "], got " +
                      std::to_string(order));
  }
}

// nu*eta - x, written so that neither piece cancels.
Real nu_eta_minus_x(Real nu, Real x, Real t) {
  return nu * nu / (t + x) + nu * std::log(x / (nu + t));
}

BesselCore uniform_core(Real nu, Real x, int order) {
  const DebyeTable& tab = DebyeTable::instance();
  BesselCore c;
  c.path = BesselPath::Uniform;
  c.nu = nu;
  c.x = x;
  c.t = std::hypot(nu, x);
  const Real p = nu / c.t;
  const Real s = p * p;
  const Real inv_t = 1 / c.t;
  Real su_p = 0, su_m = 0, se_p = 0, se_m = 0;
  Real pw = 1;
  for (int k = 0; k <= order; ++k) {
    const auto& e = tab.entries[k];
    const Real u = eval_even(e.u, s) * pw;
    const Real v = eval_even(e.e, s) * pw;
    if (k % 2 == 0) {
      su_p += u, su_m += u, se_p += v, se_m += v;
    } else {
      su_p += u, su_m -= u, se_p += v, se_m -= v;
    }
    pw *= inv_t;
  }
  c.su_plus = su_p;
  c.su_minus = su_m;
  c.eps_i = se_p / (2 * su_p);
  c.eps_k = se_m / (2 * su_m);
  c.err = uniform_truncation_estimate(nu, x, order);
  return c;
}

BesselCore direct_core(Real nu, Real x) {
  const int l = half_integer_index(nu);
  BesselCore c;
  c.path = BesselPath::Direct;
  c.nu = nu;
  c.x = x;
  c.t = std::hypot(nu, x);

  // K_mu e^x, upward from the closed forms; exponent carried in e2.
  Real k_lo = std::sqrt(kPi / (2 * x));
  Real k_hi = k_lo * (1 + 1 / x);
  long e2 = 0;
  for (int j = 1; j <= l; ++j) {
    const Real mu = static_cast<Real>(j) + Real(0.5);
    const Real next = k_lo + (2 * mu / x) * k_hi;
    k_lo = k_hi;
    k_hi = next;
    int ex = 0;
    std::frexp(k_hi, &ex);
    if (ex > kRescaleExponent) {
      k_lo = std::ldexp(k_lo, -ex);
      k_hi = std::ldexp(k_hi, -ex);
      e2 += ex;
    }
  }

  // I_{nu+1}/I_nu by continued fraction (modified Lentz).
  constexpr Real tiny = 1e-4000L;
  Real f = tiny, cc = f, d = 0;
  int it = 1;
  for (;; ++it) {
    const Real b = 2 * (nu + it) / x;
    d = b + d;
    if (d == 0) d = tiny;
    cc = b + 1 / cc;
    if (cc == 0) cc = tiny;
    d = 1 / d;
    const Real delta = cc * d;
    f *= delta;
    if (std::fabs(delta - 1) < kEps) break;
    if (it > kMaxCfIterations) {
      throw ConvergenceFailure("continued fraction for I ratio did not converge at nu=" +
                               std::to_string(static_cast<double>(nu)) +
                               ", x=" + std::to_string(static_cast<double>(x)));
    }
  }
  const Real r = f;

  c.k_mant = k_lo;
  c.i_mant = 1 / (x * (k_hi + r * k_lo));
  c.exp2 = -e2;
  c.eps_i = Real(0.5) + x * (r - x / (nu + c.t));
  c.eps_k = Real(0.5) + nu + c.t - x * (k_hi / k_lo);
  c.err = (it + l + 16) * kEps;
  return c;
}

}  // namespace

HalfOrder::HalfOrder(int l_index) : l(l_index) {
  if (l_index < 1) throw DomainError("mode index l must be >= 1, got " + std::to_string(l_index));
}

const char* to_string(BesselPath path) {
  return path == BesselPath::Uniform ? "uniform" : "direct";
}

Real uniform_truncation_estimate(Real nu, Real x, int order) {
  check_order(order);
  const DebyeTable& tab = DebyeTable::instance();
  const int k = std::min(order + 1, tab.max_order);
  const Real t = std::hypot(nu, x);
  const Real s = (nu / t) * (nu / t);
  const auto& e = tab.entries[k];
  const Real mag = std::max(std::fabs(eval_even(e.u, s)), std::fabs(eval_even(e.e, s)));
  return mag * std::pow(t, static_cast<Real>(-k));
}

BesselPath choose_path(Real nu, Real x_min, const BesselPolicy& policy) {
  if (nu >= policy.crossover_nu && std::isinf(policy.uniform_tolerance)) return BesselPath::Uniform;
  const Real est = uniform_truncation_estimate(nu, x_min, policy.asymptotic_order);
  if (nu >= policy.crossover_nu) {
    return est <= policy.uniform_tolerance ? BesselPath::Uniform : BesselPath::Direct;
  }
  return est <= 4 * kEps ? BesselPath::Uniform : BesselPath::Direct;
}

BesselCore bessel_core(Real nu, Real x, BesselPath path, int order) {
  if (!(x > 0) || !std::isfinite(x)) {
    throw DomainError("Bessel argument must be positive and finite, got " +
                      std::to_string(static_cast<double>(x)));
  }
  if (path == BesselPath::Uniform) {
    check_order(order);
    return uniform_core(nu, x, order);
  }
  return direct_core(nu, x);
}

Real product_ik(const BesselCore& a) {
  if (a.path == BesselPath::Uniform) return a.su_plus * a.su_minus / (2 * a.t);
  return a.i_mant * a.k_mant;
}

namespace {
Real delta_nu_eta(const BesselCore& a, const BesselCore& b, Real dx) {
  const Real dt = dx * (a.x + b.x) / (a.t + b.t);
  return dt + a.nu * (std::log1p(dx / b.x) - std::log1p(dt / (a.nu + b.t)));
}
}  // namespace

Real ratio_i(const BesselCore& a, const BesselCore& b, Real dx) {
  if (a.path != b.path) throw DomainError("Bessel ratio across evaluation paths");
  if (a.path == BesselPath::Uniform) {
    return std::exp(delta_nu_eta(a, b, dx)) * std::sqrt(b.t / a.t) * (a.su_plus / b.su_plus);
  }
  return std::ldexp(a.i_mant / b.i_mant, static_cast<int>(a.exp2 - b.exp2)) * std::exp(dx);
}

Real ratio_k(const BesselCore& a, const BesselCore& b, Real dx) {
  if (a.path != b.path) throw DomainError("Bessel ratio across evaluation paths");
  if (a.path == BesselPath::Uniform) {
    return std::exp(-delta_nu_eta(a, b, dx)) * std::sqrt(b.t / a.t) * (a.su_minus / b.su_minus);
  }
  return std::ldexp(a.k_mant / b.k_mant, static_cast<int>(b.exp2 - a.exp2)) * std::exp(-dx);
}

Real log_k_over_i(const BesselCore& a) {
  if (a.path == BesselPath::Uniform) {
    const Real nu_eta = a.t + a.nu * std::log(a.x / (a.nu + a.t));
    return std::log(kPi) - 2 * nu_eta + std::log(a.su_minus / a.su_plus);
  }
  return std::log(a.k_mant / a.i_mant) - 2 * static_cast<Real>(a.exp2) * std::numbers::ln2_v<Real> -
         2 * a.x;
}

BesselBundle to_bundle(const BesselCore& c) {
  BesselBundle b;
  b.nu = c.nu;
  b.x = c.x;
  b.path = c.path;
  b.rel_err_estimate = c.err;
  if (c.path == BesselPath::Uniform) {
    const Real g = nu_eta_minus_x(c.nu, c.x, c.t);
    b.I_scaled = std::exp(g) / std::sqrt(2 * kPi * c.t) * c.su_plus;
    b.K_scaled = std::exp(-g) * std::sqrt(kPi / (2 * c.t)) * c.su_minus;
  } else {
    b.I_scaled = std::ldexp(c.i_mant, static_cast<int>(c.exp2));
    b.K_scaled = std::ldexp(c.k_mant, static_cast<int>(-c.exp2));
  }
  const Real q_i = c.t + c.eps_i;
  const Real q_k = c.eps_k - c.t;
  b.dI_scaled = b.I_scaled * (q_i - Real(0.5)) / c.x;
  b.dK_scaled = b.K_scaled * (q_k - Real(0.5)) / c.x;
  return b;
}

BesselBundle bessel_uniform(Real nu, Real z, int order, Real tol) {
  if (!(z > 0)) {
    throw DomainError("uniform expansion needs z > 0, got " + std::to_string(static_cast<double>(z)));
  }
  if (!(nu > 0)) throw DomainError("uniform expansion needs nu > 0");
  check_order(order);
  const BesselCore c = bessel_core(nu, nu * z, BesselPath::Uniform, order);
  if (c.err > tol) {
    throw AccuracyError("uniform expansion truncation estimate " +
                        std::to_string(static_cast<double>(c.err)) + " exceeds tolerance at nu=" +
                        std::to_string(static_cast<double>(nu)));
  }
  return to_bundle(c);
}

BesselBundle bessel_direct(Real nu, Real x) {
  return to_bundle(bessel_core(nu, x, BesselPath::Direct, 0));
}

BesselBundle bessel_bundle(Real nu, Real x, const BesselPolicy& policy) {
  if (!(x > 0)) throw DomainError("Bessel argument must be positive");
  return to_bundle(bessel_core(nu, x, choose_path(nu, x, policy), policy.asymptotic_order));
}

Real wronskian_residual(const BesselCore& c) {
  // x I K (K'/K - I'/I) = I K (Q_K - Q_I)
  return product_ik(c) * (c.eps_k - c.eps_i - 2 * c.t) + 1;
}

Real wronskian_residual(const BesselBundle& b) {
  return b.x * (b.I_scaled * b.dK_scaled - b.dI_scaled * b.K_scaled) + 1;
}

}  // namespace casimir
