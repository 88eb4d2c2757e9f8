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

#include "casimir/debye.hpp"

#include <sstream>
#include <utility>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "casimir/errors.hpp"

namespace casimir {

namespace {
const Rational kZero{0};
}

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Rational& RationalPolynomial::operator[](std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : kZero;
}

int RationalPolynomial::degree() const { return static_cast<int>(coeffs_.size()) - 1; }

RationalPolynomial RationalPolynomial::derivative() const {
  if (coeffs_.size() < 2) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<int>(i);
  return RationalPolynomial(std::move(d));
}

RationalPolynomial RationalPolynomial::integral() const {
  std::vector<Rational> r(coeffs_.size() + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i + 1] = coeffs_[i] / static_cast<int>(i + 1);
  return RationalPolynomial(std::move(r));
}

Rational RationalPolynomial::operator()(const Rational& p) const {
  Rational acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * p + coeffs_[i];
  return acc;
}

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
  std::vector<Rational> r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
  return RationalPolynomial(std::move(r));
}

RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
  std::vector<Rational> r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
  return RationalPolynomial(std::move(r));
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.size() == 0 || b.size() == 0) return {};
  std::vector<Rational> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return RationalPolynomial(std::move(r));
}

RationalPolynomial operator*(const Rational& s, const RationalPolynomial& a) {
  std::vector<Rational> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return RationalPolynomial(std::move(r));
}

bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
  return a.coeffs_ == b.coeffs_;
}

std::string RationalPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    os << "(" << coeffs_[i] << ")";
    if (i > 0) os << "*p^" << i;
    first = false;
  }
  return os.str();
}

DebyeExpansion generate_u_polynomials(int max_k) {
  if (max_k < 0 || max_k > kMaxDebyeOrder) {
    throw DomainError("generate_u_polynomials: max_k must lie in [0, " +
                      std::to_string(kMaxDebyeOrder) + "], got " + std::to_string(max_k));
  }
  const RationalPolynomial one({Rational(1)});
  const RationalPolynomial p({Rational(0), Rational(1)});
  const RationalPolynomial p2 = p * p;
  const RationalPolynomial one_minus_p2 = one - p2;
  const RationalPolynomial one_minus_5p2({Rational(1), Rational(0), Rational(-5)});
  const Rational half(1, 2);
  const Rational eighth(1, 8);

  DebyeExpansion out;
  out.max_k = max_k;
  out.u.push_back(one);
  for (int k = 0; k < max_k; ++k) {
    const RationalPolynomial& uk = out.u.back();
    RationalPolynomial next = half * (p2 * one_minus_p2 * uk.derivative()) +
                              eighth * (one_minus_5p2 * uk).integral();
    out.u.push_back(std::move(next));
  }
  for (int k = 0; k <= max_k; ++k) {
    const RationalPolynomial& uk = out.u[k];
    if (k == 0) {
      out.v.push_back(one);
    } else {
      const RationalPolynomial& prev = out.u[k - 1];
      out.v.push_back(uk - p * one_minus_p2 * (half * prev + p * prev.derivative()));
    }
    out.e.push_back(p2 * uk - Rational(2) * (p * one_minus_p2 * uk.derivative()));
  }
  return out;
}

Real to_real(const Rational& r) {
  using Big = boost::multiprecision::cpp_bin_float_100;
  const Big num(boost::multiprecision::numerator(r));
  const Big den(boost::multiprecision::denominator(r));
  return static_cast<Real>(num / den);
}

std::vector<Rational> even_part_after_shift(const RationalPolynomial& poly, int k) {
  std::vector<Rational> q;
  for (int i = 0; i <= poly.degree(); ++i) {
    const bool on_lattice = i >= k && (i - k) % 2 == 0;
    if (!on_lattice) {
      if (poly[i] != 0) throw DomainError("polynomial lacks p^k * even parity");
      continue;
    }
    q.push_back(poly[i]);
  }
  return q;
}

}  // namespace casimir
