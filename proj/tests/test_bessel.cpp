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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "casimir/bessel.hpp"
#include "casimir/errors.hpp"
#include "oracle.hpp"

using namespace casimir;
using oracle::Big;

namespace {

struct Ref {
  Real i_scaled, k_scaled, di_scaled, dk_scaled;
};

Ref reference(int l, Real x_real) {
  const Big x(x_real);
  const Big nu = Big(l) + Big(1) / 2;
  const Big ex = exp(x);
  return {oracle::to_real(oracle::bessel_i(nu, x) / ex),
          oracle::to_real(oracle::bessel_k_half(l, x) * ex),
          oracle::to_real(oracle::bessel_i_prime(nu, x) / ex),
          oracle::to_real(oracle::bessel_k_half_prime(l, x) * ex)};
}

Real rel(Real a, Real b) { return std::fabs(a - b) / std::fabs(b); }

std::vector<Real> log_grid(Real lo, Real hi, int n) {
  std::vector<Real> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, Real(i) / (n - 1)));
  return out;
}

Real worst_uniform_error(int order) {
  Real worst = 0;
  for (int l = 10; l <= 60; l += 5) {
    const Real nu = l + Real(0.5);
    for (Real x : log_grid(5, 500, 9)) {
      const BesselBundle b = bessel_uniform(nu, x / nu, order);
      const Ref r = reference(l, x);
      worst = std::max({worst, rel(b.I_scaled, r.i_scaled), rel(b.K_scaled, r.k_scaled),
                        rel(b.dI_scaled, r.di_scaled), rel(b.dK_scaled, r.dk_scaled)});
    }
  }
  return worst;
}

}  // namespace

TEST(Bessel, UniformOrderEightMatchesOracle) { EXPECT_LE(worst_uniform_error(8), 1e-9L); }

TEST(Bessel, UniformOrderSixMeasuredError) {
  // Regression pin for the default order; the worst point sits at nu = 10.5.
  const Real e = worst_uniform_error(6);
  EXPECT_LE(e, 1e-8L);
  EXPECT_GE(e, 1e-10L);
}

TEST(Bessel, UniformNonHalfIntegerOrderMatchesSeries) {
  for (Real nu : {Real(10), Real(23.25), Real(60)}) {
    for (Real x : log_grid(5, 300, 5)) {
      const BesselBundle b = bessel_uniform(nu, x / nu, 10);
      const Real ref = oracle::to_real(oracle::bessel_i(Big(nu), Big(x)) / exp(Big(x)));
      EXPECT_LE(rel(b.I_scaled, ref), 1e-10L) << nu << " " << x;
    }
  }
}

TEST(Bessel, LargeOrderExample) {
  const BesselBundle b = bessel_uniform(Real(50.5), 2, 6);
  const Ref r = reference(50, Real(101));
  EXPECT_LE(rel(b.I_scaled, r.i_scaled), 1e-10L);
  EXPECT_LE(rel(b.K_scaled, r.k_scaled), 1e-10L);
}

TEST(Bessel, DirectPathMatchesOracle) {
  for (int l = 0; l <= 30; l += 3) {
    for (Real x : log_grid(1e-3L, 300, 9)) {
      const BesselBundle b = bessel_direct(l + Real(0.5), x);
      const Ref r = reference(l, x);
      EXPECT_LE(rel(b.I_scaled, r.i_scaled), 1e-15L) << l << " " << x;
      EXPECT_LE(rel(b.K_scaled, r.k_scaled), 1e-15L) << l << " " << x;
      EXPECT_LE(rel(b.dI_scaled, r.di_scaled), 1e-14L) << l << " " << x;
      EXPECT_LE(rel(b.dK_scaled, r.dk_scaled), 1e-14L) << l << " " << x;
    }
  }
}

TEST(Bessel, WronskianEverywhere) {
  const BesselPolicy policy;
  for (int l = 1; l <= 2000; l = l < 40 ? l + 1 : l * 3 / 2) {
    const Real nu = l + Real(0.5);
    for (Real x : log_grid(1e-4L, 1e4L, 17)) {
      const BesselCore c = bessel_core(nu, x, choose_path(nu, x, policy), policy.asymptotic_order);
      EXPECT_LE(std::fabs(wronskian_residual(c)), 1e-10L) << l << " " << x;
      const BesselCore d = bessel_core(nu, x, BesselPath::Direct, 0);
      EXPECT_LE(std::fabs(wronskian_residual(d)), 1e-14L) << l << " " << x;
      // The unscaled bundle agrees wherever its values are representable.
      const BesselBundle b = to_bundle(c);
      if (std::isfinite(b.K_scaled) && b.I_scaled > 0 && std::isfinite(b.dK_scaled)) {
        EXPECT_LE(std::fabs(wronskian_residual(b)), 1e-10L) << l << " " << x;
      }
    }
  }
}

TEST(Bessel, RatiosAndProductMatchOracle) {
  for (BesselPath path : {BesselPath::Direct, BesselPath::Uniform}) {
    for (int l : {12, 40}) {
      const Real nu = l + Real(0.5);
      const Real xa = 7, xb = Real(7.35);
      const BesselCore a = bessel_core(nu, xa, path, 10);
      const BesselCore b = bessel_core(nu, xb, path, 10);
      const Big ia = oracle::bessel_i(Big(nu), Big(xa)), ib = oracle::bessel_i(Big(nu), Big(xb));
      const Big ka = oracle::bessel_k_half(l, Big(xa)), kb = oracle::bessel_k_half(l, Big(xb));
      EXPECT_LE(rel(ratio_i(a, b, xa - xb), oracle::to_real(ia / ib)), 1e-12L);
      EXPECT_LE(rel(ratio_k(a, b, xa - xb), oracle::to_real(ka / kb)), 1e-12L);
      EXPECT_LE(rel(product_ik(a), oracle::to_real(ia * ka)), 1e-12L);
      EXPECT_LE(std::fabs(log_k_over_i(a) - oracle::to_real(log(ka / ia))), 1e-10L);
    }
  }
}

TEST(Bessel, MonotoneInArgumentAndOrder) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0.01, 200.0);
  std::uniform_int_distribution<int> ul(1, 80);
  for (int trial = 0; trial < 200; ++trial) {
    const int l = ul(rng);
    Real x1 = ux(rng), x2 = ux(rng);
    if (x1 > x2) std::swap(x1, x2);
    const BesselBundle a = bessel_bundle(l + Real(0.5), x1);
    const BesselBundle b = bessel_bundle(l + Real(0.5), x2);
    // I increases and K decreases in x; compare the unscaled logs.
    EXPECT_LE(std::log(a.I_scaled) + x1, std::log(b.I_scaled) + x2);
    EXPECT_GE(std::log(a.K_scaled) - x1, std::log(b.K_scaled) - x2);
    const BesselBundle c = bessel_bundle(l + Real(1.5), x1);
    EXPECT_LT(c.I_scaled, a.I_scaled);
    EXPECT_GT(c.K_scaled, a.K_scaled);
  }
}

TEST(Bessel, DomainErrors) {
  EXPECT_THROW(HalfOrder(0), DomainError);
  EXPECT_EQ(HalfOrder(3).nu(), Real(3.5));
  EXPECT_THROW(bessel_uniform(10, 0, 6), DomainError);
  EXPECT_THROW(bessel_uniform(10, -1, 6), DomainError);
  EXPECT_THROW(bessel_uniform(10, 1, 99), DomainError);
  EXPECT_THROW(bessel_uniform(Real(10.5), Real(0.5), 2, 1e-30L), AccuracyError);
  EXPECT_THROW(bessel_direct(Real(3.25), 1), DomainError);
  EXPECT_THROW(bessel_direct(Real(3.5), 0), DomainError);
  EXPECT_THROW(bessel_bundle(Real(3.5), -2), DomainError);
}

TEST(Bessel, PathChoice) {
  BesselPolicy p;
  EXPECT_EQ(choose_path(Real(10.5), 1, p), BesselPath::Uniform);
  EXPECT_EQ(choose_path(Real(3.5), 1, p), BesselPath::Direct);
  EXPECT_EQ(choose_path(Real(3.5), 1e6L, p), BesselPath::Uniform);
  p.uniform_tolerance = 1e-18L;
  EXPECT_EQ(choose_path(Real(10.5), 1, p), BesselPath::Direct);
}
