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

#include "casimir/errors.hpp"
#include "casimir/mode.hpp"
#include "oracle.hpp"

using namespace casimir;
using oracle::Big;

namespace {

oracle::Media to_oracle(const MediaConfig& m) {
  return {Big(m.eps_in()), Big(m.mu_in()), Big(m.eps_out()), Big(m.mu_out()), m.is_conductor()};
}

Real rel(Real a, Real b) { return std::fabs(a - b) / std::fabs(b); }

BesselPolicy high_order() {
  BesselPolicy p;
  p.asymptotic_order = 12;
  return p;
}

// Worst relative deviation of the default sixth-order evaluation.
constexpr Real kDefaultOrderTol = 2e-8L;

const MediaConfig kMedia[] = {
    MediaConfig::perfect_conductor(),
    MediaConfig::dielectric(1, Real(1.5), Real(1.5), 1),
    MediaConfig::dielectric(2, 1, 1, 2),
    MediaConfig::dielectric(5, 1, 1, 1),
    MediaConfig::dielectric(1, 1, 3, 1),
};

}  // namespace

TEST(Media, Validation) {
  EXPECT_THROW(MediaConfig::dielectric(-2, 1, 1, 1), DomainError);
  EXPECT_THROW(MediaConfig::dielectric(1, 0, 1, 1), DomainError);
  EXPECT_THROW(MediaConfig::dielectric(1, 1, NAN, 1), DomainError);
  EXPECT_THROW(MediaConfig::dielectric(1, 1, 1, INFINITY), DomainError);
  EXPECT_TRUE(MediaConfig::dielectric(2, 3, 2, 3).identical_media());
  EXPECT_FALSE(MediaConfig::perfect_conductor().identical_media());
  EXPECT_EQ(MediaConfig::perfect_conductor().canonical(), "conductor");
  EXPECT_NE(MediaConfig::dielectric(2, 1, 1, 1).canonical(),
            MediaConfig::dielectric(1, 1, 2, 1).canonical());
}

TEST(Mode, PointValidation) {
  EXPECT_THROW(ModePoint(0, 1), DomainError);
  EXPECT_THROW(ModePoint(1, 0), DomainError);
  EXPECT_THROW(ModePoint(1, -1), DomainError);
  EXPECT_NO_THROW(ModePoint(1, 1e-9L));
}

TEST(Mode, CoefficientsMatchOracle) {
  for (const MediaConfig& m : kMedia) {
    for (int l : {1, 4, 15, 40}) {
      for (Real y : {Real(0.05), Real(0.7), Real(3), Real(20)}) {
        const ModeCoefficients c = mode_coefficients(m, ModePoint(l, y), high_order());
        const ModeCoefficients d = mode_coefficients(m, ModePoint(l, y));
        const oracle::Coefficients r = oracle::coefficients(to_oracle(m), l, Big(y));
        const Real ri = oracle::to_real(r.c_in), ro = oracle::to_real(r.c_out);
        EXPECT_LE(rel(c.c_in(), ri), 1e-11L) << m.canonical() << " l=" << l << " y=" << y;
        EXPECT_LE(rel(c.c_out(), ro), 1e-11L) << m.canonical() << " l=" << l << " y=" << y;
        EXPECT_LE(rel(d.c_in(), ri), kDefaultOrderTol) << m.canonical() << " l=" << l;
        EXPECT_LE(rel(d.c_out(), ro), kDefaultOrderTol) << m.canonical() << " l=" << l;
      }
    }
  }
}

TEST(Mode, ModeFunctionMatchesOracle) {
  for (const MediaConfig& m : kMedia) {
    for (int l : {1, 7, 30}) {
      for (Real y : {Real(0.3), Real(4)}) {
        for (auto [a, b] : {std::pair{Real(0.6), Real(0.9)}, std::pair{Real(1.1), Real(1.8)}}) {
          const Real g = mode_function(m, ModePoint(l, y), a, b, high_order());
          const Real r = oracle::to_real(oracle::mode_function(to_oracle(m), l, Big(y), Big(a), Big(b)));
          EXPECT_LE(rel(g, r), 1e-11L) << m.canonical() << " l=" << l << " y=" << y << " " << a;
        }
      }
    }
  }
}

TEST(Mode, NullMediaVanish) {
  const MediaConfig m = MediaConfig::dielectric(Real(2.5), Real(1.5), Real(2.5), Real(1.5));
  for (int l : {1, 10, 100}) {
    for (Real y : {Real(0.01), Real(1), Real(50)}) {
      const ModeCoefficients c = mode_coefficients(m, ModePoint(l, y));
      EXPECT_LE(std::fabs(c.c_in()), 1e-14L);
      EXPECT_LE(std::fabs(c.c_out()), 1e-14L);
      EXPECT_LE(std::fabs(mode_function(m, ModePoint(l, y), Real(0.5), Real(0.7))), 1e-14L);
      EXPECT_LE(std::fabs(mode_function(m, ModePoint(l, y), Real(1.5), Real(1.2))), 1e-14L);
    }
  }
}

TEST(Mode, PolarizationDuality) {
  // Swapping eps and mu on both sides exchanges the polarizations and
  // leaves their sum unchanged.
  const MediaConfig a = MediaConfig::dielectric(2, Real(1.3), Real(1.7), 3);
  const MediaConfig b = MediaConfig::dielectric(Real(1.3), 2, 3, Real(1.7));
  for (int l : {1, 9, 60}) {
    for (Real y : {Real(0.1), Real(2), Real(30)}) {
      const ModeCoefficients ca = mode_coefficients(a, ModePoint(l, y));
      const ModeCoefficients cb = mode_coefficients(b, ModePoint(l, y));
      EXPECT_LE(rel(ca.c_in(), cb.c_in()), 1e-14L);
      EXPECT_LE(rel(ca.c_out(), cb.c_out()), 1e-14L);
    }
  }
}

TEST(Mode, ConductorMatchesConductorCoefficients) {
  for (int l : {1, 5, 25}) {
    for (Real y : {Real(0.2), Real(5)}) {
      const ModeCoefficients a = mode_coefficients(MediaConfig::perfect_conductor(), ModePoint(l, y));
      const ModeCoefficients b = conductor_coefficients(ModePoint(l, y));
      EXPECT_EQ(a.c_in(), b.c_in());
      EXPECT_EQ(a.c_out(), b.c_out());
    }
  }
}

TEST(Mode, LargeOrderStaysFinite) {
  const MediaConfig m = MediaConfig::dielectric(2, 1, 1, 2);
  for (int l : {500, 5000, 50000}) {
    const ModeCoefficients c = mode_coefficients(m, ModePoint(l, Real(0.01)));
    EXPECT_TRUE(std::isfinite(c.reduced_in));
    EXPECT_TRUE(std::isfinite(c.reduced_out));
    EXPECT_GT(c.log_scale_in, 0);
  }
}

TEST(Mode, SideAndSurfaceErrors) {
  const MediaConfig m = MediaConfig::dielectric(2, 1, 1, 1);
  EXPECT_THROW(mode_function(m, ModePoint(2, 1), Real(0.9), Real(1.1)), SideMismatch);
  EXPECT_THROW(mode_function(m, ModePoint(2, 1), 1, Real(0.9)), SurfaceSingularity);
  EXPECT_THROW(mode_function(m, ModePoint(2, 1), -1, Real(0.9)), DomainError);
}
