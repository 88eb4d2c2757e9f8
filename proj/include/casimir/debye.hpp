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

// Polynomials of the uniform large-order (Debye) expansion of the modified
// Bessel functions:
//
//   I_nu(nu z) ~ e^{nu eta} / sqrt(2 pi nu) / (1+z^2)^{1/4} sum_k U_k(p)/nu^k
//   K_nu(nu z) ~ sqrt(pi/(2 nu)) e^{-nu eta} / (1+z^2)^{1/4}
//                sum_k (-1)^k U_k(p)/nu^k
//
// with p = (1+z^2)^{-1/2} and
//   U_{k+1}(p) = p^2 (1-p^2) U_k'(p) / 2 + 1/8 int_0^p (1-5t^2) U_k(t) dt.
//
// Two derived families are generated alongside:
//   V_k  term-wise derivative series,  I'_nu(nu z) ~ ... sum_k V_k(p)/nu^k,
//        V_k = U_k - p(1-p^2) (U_{k-1}/2 + p U'_{k-1});
//   E_k  = p^2 U_k - 2 p (1-p^2) U_k', which gives the Riccati
//        log-derivative offset without cancellation (see bessel.hpp).
//
// All three have the parity p^k * (polynomial in p^2).

#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "casimir/numeric.hpp"

namespace casimir {

using Rational = boost::multiprecision::cpp_rational;

// Highest order the exact generator and the embedded table support.
inline constexpr int kMaxDebyeOrder = 20;

class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coeffs);

  // coefficient of p^i; zero beyond the stored degree
  const Rational& operator[](std::size_t i) const;
  std::size_t size() const { return coeffs_.size(); }
  int degree() const;

  RationalPolynomial derivative() const;
  // Antiderivative vanishing at 0.
  RationalPolynomial integral() const;

  Rational operator()(const Rational& p) const;

  friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator*(const Rational& s, const RationalPolynomial& a);
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b);

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct DebyeExpansion {
  int max_k = 0;
  std::vector<RationalPolynomial> u;  // U_0 .. U_max_k
  std::vector<RationalPolynomial> v;  // V_0 .. V_max_k
  std::vector<RationalPolynomial> e;  // E_0 .. E_max_k
};

// Exact generation from the recurrence. Throws DomainError unless
// 0 <= max_k <= kMaxDebyeOrder.
DebyeExpansion generate_u_polynomials(int max_k);

// Nearest-ish long double to an exact rational (via 100-digit binary float).
// Shared by the table generator and its consistency test.
Real to_real(const Rational& r);

// Coefficients of q(s) where P(p) = p^k q(p^2); throws if P lacks that parity.
std::vector<Rational> even_part_after_shift(const RationalPolynomial& poly, int k);

// Embedded long double table built at compile time from generate_u_polynomials.
// Each entry stores the p^2-polynomial left after factoring out p^k.
struct DebyeTable {
  struct Entry {
    std::span<const Real> u, v, e;
  };
  int max_order;
  std::span<const Entry> entries;

  static const DebyeTable& instance();
};

// Horner evaluation in s = p^2.
inline Real eval_even(std::span<const Real> c, Real s) {
  Real acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * s + c[i];
  return acc;
}

}  // namespace casimir
