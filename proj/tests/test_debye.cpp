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

#include "casimir/debye.hpp"
#include "casimir/errors.hpp"

using namespace casimir;

namespace {

RationalPolynomial poly(std::initializer_list<Rational> c) { return RationalPolynomial(c); }

}  // namespace

TEST(Debye, FirstPolynomialsExact) {
  const DebyeExpansion d = generate_u_polynomials(3);
  EXPECT_EQ(d.u[0], poly({1}));
  EXPECT_EQ(d.u[1], poly({0, Rational(1, 8), 0, Rational(-5, 24)}));
  EXPECT_EQ(d.u[2], poly({0, 0, Rational(9, 128), 0, Rational(-77, 192), 0, Rational(385, 1152)}));
  EXPECT_EQ(d.u[3], poly({0, 0, 0, Rational(75, 1024), 0, Rational(-4563, 5120), 0,
                          Rational(17017, 9216), 0, Rational(-85085, 82944)}));
  EXPECT_EQ(d.v[1], poly({0, Rational(-3, 8), 0, Rational(7, 24)}));
  EXPECT_EQ(d.v[2], poly({0, 0, Rational(-15, 128), 0, Rational(33, 64), 0, Rational(-455, 1152)}));
}

TEST(Debye, RecurrenceHoldsToMaxOrder) {
  const DebyeExpansion d = generate_u_polynomials(kMaxDebyeOrder);
  ASSERT_EQ(static_cast<int>(d.u.size()), kMaxDebyeOrder + 1);
  const RationalPolynomial p2q = poly({0, 0, Rational(1, 2), 0, Rational(-1, 2)});
  const RationalPolynomial w = poly({Rational(1, 8), 0, Rational(-5, 8)});
  for (int k = 0; k < kMaxDebyeOrder; ++k) {
    const RationalPolynomial next = p2q * d.u[k].derivative() + (w * d.u[k]).integral();
    EXPECT_EQ(next, d.u[k + 1]) << "k=" << k;
    EXPECT_EQ(d.u[k + 1].degree(), 3 * (k + 1));
  }
}

TEST(Debye, SumRuleAtPEqualsOne) {
  // U_k(1) are the coefficients of Stirling-like series for 1/Gamma;
  // the first few are 1, -1/12, 1/288, 139/51840.
  const DebyeExpansion d = generate_u_polynomials(4);
  EXPECT_EQ(d.u[1](Rational(1)), Rational(-1, 12));
  EXPECT_EQ(d.u[2](Rational(1)), Rational(1, 288));
  EXPECT_EQ(d.u[3](Rational(1)), Rational(139, 51840));
  EXPECT_EQ(d.u[4](Rational(1)), Rational(-571, 2488320));
}

TEST(Debye, RejectsOrderOutsideRange) {
  EXPECT_THROW(generate_u_polynomials(-1), DomainError);
  EXPECT_THROW(generate_u_polynomials(kMaxDebyeOrder + 1), DomainError);
}

TEST(Debye, EmbeddedTableMatchesGenerator) {
  const DebyeExpansion d = generate_u_polynomials(kMaxDebyeOrder);
  const DebyeTable& t = DebyeTable::instance();
  ASSERT_EQ(t.max_order, kMaxDebyeOrder);
  for (int k = 0; k <= kMaxDebyeOrder; ++k) {
    const auto u = even_part_after_shift(d.u[k], k);
    ASSERT_EQ(u.size(), t.entries[k].u.size());
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_EQ(to_real(u[i]), t.entries[k].u[i]);
    const auto e = even_part_after_shift(d.e[k], k);
    ASSERT_EQ(e.size(), t.entries[k].e.size());
    for (std::size_t i = 0; i < e.size(); ++i) EXPECT_EQ(to_real(e[i]), t.entries[k].e[i]);
  }
}

TEST(Debye, ParityShiftRejectsWrongParity) {
  EXPECT_THROW(even_part_after_shift(poly({1, 1}), 0), DomainError);
}
