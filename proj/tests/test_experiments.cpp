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
#include "casimir/experiments.hpp"

using namespace casimir;

TEST(SurfaceTension, OrderOfMagnitudeAnchor) {
  const SurfaceTension s = surface_tension_estimate(Real(0.01), 1);
  EXPECT_GT(s.gamma_dyn_cm, 5);
  EXPECT_LT(s.gamma_dyn_cm, 20);
  EXPECT_NEAR(static_cast<double>(s.gamma_si * 1000), static_cast<double>(s.gamma_dyn_cm), 1e-12);
}

TEST(SurfaceTension, ScalingAndZero) {
  EXPECT_EQ(surface_tension_estimate(0, 1).gamma_dyn_cm, 0);
  const Real g1 = surface_tension_estimate(Real(0.03), 1).gamma_dyn_cm;
  const Real g10 = surface_tension_estimate(Real(0.03), 10).gamma_dyn_cm;
  EXPECT_NEAR(static_cast<double>(g1 / g10), 1000.0, 1e-9);
  EXPECT_THROW(surface_tension_estimate(Real(0.01), 0), DomainError);
  EXPECT_THROW(force_from_surface_tension(1, -1), DomainError);
}

TEST(SurfaceTension, ConversionsAreInverse) {
  for (Real f : {Real(-0.02), Real(1e-5), Real(0.0461)}) {
    for (Real a : {Real(0.5), Real(3), Real(100)}) {
      const Real back = force_from_surface_tension(surface_tension_estimate(f, a).gamma_dyn_cm, a);
      EXPECT_LE(std::fabs(back - f), 1e-12L * std::fabs(f));
    }
  }
}

TEST(Sweep, MediaMapping) {
  EXPECT_EQ(sweep_media(SweepCase::Sphere, 3), MediaConfig::dielectric(3, 1, 1, 1));
  EXPECT_EQ(sweep_media(SweepCase::Cavity, 3), MediaConfig::dielectric(1, 1, 3, 1));
  EXPECT_EQ(parse_sweep_case("sphere"), SweepCase::Sphere);
  EXPECT_EQ(parse_sweep_case("cavity"), SweepCase::Cavity);
  EXPECT_THROW(parse_sweep_case("shell"), DomainError);
}

TEST(Sweep, ValidatesAndRecordsFailures) {
  SweepSpec spec;
  spec.epsilon_values = {2, 1};
  EXPECT_THROW(sweep_epsilon(spec), DomainError);
  spec.epsilon_values = {-1};
  EXPECT_THROW(sweep_epsilon(spec), DomainError);

  // eps = 1 is vacuum: F_m = 0 at the uncertainty floor, which an
  // impossible accuracy target turns into a recorded per-point failure.
  spec.epsilon_values = {1, 1};
  spec.protocol.accuracy_target = 1e-30L;
  const auto pts = sweep_epsilon(spec);
  ASSERT_EQ(pts.size(), 2u);
  for (const auto& p : pts) {
    EXPECT_FALSE(p.result.has_value());
    EXPECT_NE(p.failure.find("uncertainty"), std::string::npos);
  }
  spec.protocol.accuracy_target = 1e-3L;
  const auto ok = sweep_epsilon(spec);
  ASSERT_TRUE(ok[0].result.has_value());
  EXPECT_EQ(ok[0].result->f_m, 0);
}

TEST(Dilute, Validation) {
  EXPECT_THROW(dilute_scan({}, ExtractionProtocol{}), DomainError);
  EXPECT_THROW(dilute_scan({0}, ExtractionProtocol{}), DomainError);
  EXPECT_THROW(dilute_scan({Real(0.3)}, ExtractionProtocol{}), DomainError);
  EXPECT_THROW(conductor_composition({-5}, ExtractionProtocol{}), DomainError);
}
