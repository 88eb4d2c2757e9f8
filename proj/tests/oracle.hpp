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

// 50-digit reference values: I from the ascending series, K_{l+1/2} from
// its terminating closed form, and the mode coefficients built from them
// exactly as written (no rescaling, no cancellation control).

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "casimir/numeric.hpp"

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_50;

inline Big bessel_i(const Big& nu, const Big& x) {
  using boost::multiprecision::tgamma;
  const Big h = x / 2;
  Big term = pow(h, nu) / tgamma(nu + 1);
  Big sum = term;
  const Big q = h * h;
  for (int k = 1; k < 100000; ++k) {
    term *= q / (Big(k) * (nu + k));
    sum += term;
    if (term < sum * Big("1e-55") && k > x) break;
  }
  return sum;
}

// Half-integer order only.
inline Big bessel_k_half(int l, const Big& x) {
  const Big pi = boost::math::constants::pi<Big>();
  Big sum = 0;
  Big c = 1;  // (l+k)! / (k! (l-k)!) / (2x)^k
  for (int k = 0; k <= l; ++k) {
    if (k > 0) c *= Big((l + k) * (l - k + 1)) / (Big(k) * 2 * x);
    sum += c;
  }
  return sqrt(pi / (2 * x)) * exp(-x) * sum;
}

inline Big bessel_i_prime(const Big& nu, const Big& x) {
  return bessel_i(nu + 1, x) + nu / x * bessel_i(nu, x);
}

inline Big bessel_k_half_prime(int l, const Big& x) {
  const Big nu = Big(l) + Big(1) / 2;
  return -bessel_k_half(l + 1, x) + nu / x * bessel_k_half(l, x);
}

struct Media {
  Big e1, m1, e2, m2;
  bool conductor = false;
};

struct Coefficients {
  Big c_in, c_out;
};

// (sqrt(y) F(y))'
inline Big sqrt_deriv(const Big& f, const Big& fp, const Big& y) {
  return f / (2 * sqrt(y)) + sqrt(y) * fp;
}

inline Coefficients coefficients(const Media& m, int l, const Big& y) {
  const Big nu = Big(l) + Big(1) / 2;
  if (m.conductor) {
    const Big i = bessel_i(nu, y), k = bessel_k_half(l, y);
    const Big di = sqrt_deriv(i, bessel_i_prime(nu, y), y);
    const Big dk = sqrt_deriv(k, bessel_k_half_prime(l, y), y);
    return {-k / i - dk / di, -i / k - di / dk};
  }
  const Big y1 = y * sqrt(m.e1 * m.m1), y2 = y * sqrt(m.e2 * m.m2);
  const Big i1 = bessel_i(nu, y1), i2 = bessel_i(nu, y2);
  const Big k1 = bessel_k_half(l, y1), k2 = bessel_k_half(l, y2);
  const Big di1 = sqrt_deriv(i1, bessel_i_prime(nu, y1), y1);
  const Big di2 = sqrt_deriv(i2, bessel_i_prime(nu, y2), y2);
  const Big dk1 = sqrt_deriv(k1, bessel_k_half_prime(l, y1), y1);
  const Big dk2 = sqrt_deriv(k2, bessel_k_half_prime(l, y2), y2);
  Coefficients c{0, 0};
  for (int pol = 0; pol < 2; ++pol) {
    const Big v1 = pol == 0 ? m.e1 : m.m1;
    const Big v2 = pol == 0 ? m.e2 : m.m2;
    const Big den = v2 / sqrt(y2) * k2 * di1 - v1 / sqrt(y1) * i1 * dk2;
    c.c_in += (v1 / sqrt(y1) * k1 * dk2 - v2 / sqrt(y2) * k2 * dk1) / den;
    c.c_out += (v1 / sqrt(y1) * i1 * di2 - v2 / sqrt(y2) * i2 * di1) / den;
  }
  return c;
}

inline Big scaled_y(const Media& m, const Big& y, bool inside) {
  if (m.conductor) return y;
  return inside ? y * sqrt(m.e1 * m.m1) : y * sqrt(m.e2 * m.m2);
}

// g_l(y, rho, rho') on one side of the surface.
inline Big mode_function(const Media& m, int l, const Big& y, const Big& rho, const Big& rho_p) {
  const bool inside = rho < 1;
  const Coefficients c = coefficients(m, l, y);
  const Big ys = scaled_y(m, y, inside);
  const Big nu = Big(l) + Big(1) / 2;
  if (inside) {
    return c.c_in * bessel_i(nu, rho * ys) * bessel_i(nu, rho_p * ys) / sqrt(rho * rho_p);
  }
  return c.c_out * bessel_k_half(l, rho * ys) * bessel_k_half(l, rho_p * ys) / sqrt(rho * rho_p);
}

struct Integrand {
  Big rr, tt;
};

// (2l+1) [(l(l+1) + x^2) g - d/drho rho d/drho' rho' g] and -(2l+1) l(l+1) g
// at rho' = rho, with the rho-derivatives taken analytically.
inline Integrand integrand(const Media& m, int l, const Big& y, const Big& rho) {
  const bool inside = rho < 1;
  const Coefficients c = coefficients(m, l, y);
  const Big ys = scaled_y(m, y, inside);
  const Big nu = Big(l) + Big(1) / 2;
  const Big x = rho * ys;
  const Big cc = inside ? c.c_in : c.c_out;
  const Big b = inside ? bessel_i(nu, x) : bessel_k_half(l, x);
  const Big bp = inside ? bessel_i_prime(nu, x) : bessel_k_half_prime(l, x);
  const Big g = cc * b * b / rho;
  const Big h = b / (2 * sqrt(rho)) + sqrt(rho) * ys * bp;  // d/drho sqrt(rho) B(rho ys)
  const Big lam = Big(l) * (l + 1);
  const Big w = 2 * Big(l) + 1;
  return {w * ((lam + x * x) * g - cc * h * h), -w * lam * g};
}

inline casimir::Real to_real(const Big& b) { return b.convert_to<casimir::Real>(); }

}  // namespace oracle
