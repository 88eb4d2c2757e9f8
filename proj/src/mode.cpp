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

#include "casimir/mode.hpp"

#include <cmath>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

void require_positive(Real v, const char* name) {
  if (!(v > 0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << name << " must be positive and finite, got " << static_cast<double>(v);
    throw DomainError(os.str());
  }
}

void fill_dielectric(const MediaConfig& m, Real nu, const BesselCore& c1, const BesselCore& c2,
                     ModeCoefficients& out) {
  const Real e1 = m.eps_in(), m1 = m.mu_in(), e2 = m.eps_out(), m2 = m.mu_out();
  const Real t1 = c1.t, t2 = c2.t;
  const Real ei1 = c1.eps_i, ek1 = c1.eps_k, ei2 = c2.eps_i, ek2 = c2.eps_k;
  const Real a = t1 + ei1;  // Q_I(y1)
  const Real c = ek1 - t1;  // Q_K(y1)
  const Real b = ek2 - t2;  // Q_K(y2)
  const Real d = t2 + ei2;  // Q_I(y2)
  const Real den_e = e2 * a - e1 * b;
  const Real den_m = m2 * a - m1 * b;
  if (!(den_e > 0) || !(den_m > 0)) {
    throw DegenerateDenominator("mode coefficient denominator vanished at nu=" +
                                std::to_string(static_cast<double>(nu)));
  }
  out.eps_part_in = (e1 * b - e2 * c) / den_e;
  out.mu_part_in = (m1 * b - m2 * c) / den_m;
  out.eps_part_out = (e1 * d - e2 * a) / den_e;
  out.mu_part_out = (m1 * d - m2 * a) / den_m;

  // Both polarizations over a common denominator; the large pieces
  // nu^2 + y_i^2 are cancelled analytically.
  const Real s = e1 * m2 + e2 * m1;
  const Real n1 = e1 * m1, n2 = e2 * m2;
  const Real nu2 = nu * nu;
  const Real num_in =
      s * b * (ei1 + ek1) -
      2 * (nu2 * (n1 - n2) - 2 * n1 * t2 * ek2 + n1 * ek2 * ek2 + n2 * t1 * (ek1 - ei1) +
           n2 * ei1 * ek1);
  const Real num_out =
      s * a * (ei2 + ek2) -
      2 * (nu2 * (n2 - n1) + n1 * (t2 * (ek2 - ei2) + ek2 * ei2) + n2 * (2 * t1 * ei1 + ei1 * ei1));
  out.reduced_in = num_in / (den_e * den_m);
  out.reduced_out = num_out / (den_e * den_m);
}

void fill_conductor(const BesselCore& c1, ModeCoefficients& out) {
  const Real a = c1.t + c1.eps_i;
  const Real c = c1.eps_k - c1.t;
  const Real sum = c1.eps_i + c1.eps_k;  // a + c
  out.reduced_in = -sum / a;
  out.mu_part_in = -1;
  out.eps_part_in = -c / a;
  out.reduced_out = -sum / c;
  out.mu_part_out = -1;
  out.eps_part_out = -a / c;
}

}  // namespace

MediaConfig MediaConfig::dielectric(Real eps_in, Real mu_in, Real eps_out, Real mu_out) {
  require_positive(eps_in, "eps_in");
  require_positive(mu_in, "mu_in");
  require_positive(eps_out, "eps_out");
  require_positive(mu_out, "mu_out");
  MediaConfig m;
  m.eps_in_ = eps_in;
  m.mu_in_ = mu_in;
  m.eps_out_ = eps_out;
  m.mu_out_ = mu_out;
  return m;
}

MediaConfig MediaConfig::perfect_conductor() {
  MediaConfig m;
  m.conductor_ = true;
  return m;
}

Real MediaConfig::n_in() const { return std::sqrt(eps_in_ * mu_in_); }
Real MediaConfig::n_out() const { return std::sqrt(eps_out_ * mu_out_); }

bool MediaConfig::identical_media() const {
  return !conductor_ && eps_in_ == eps_out_ && mu_in_ == mu_out_;
}

std::string MediaConfig::canonical() const {
  if (conductor_) return "conductor";
  std::ostringstream os;
  os.precision(21);
  os << "eps_in=" << eps_in_ << ";mu_in=" << mu_in_ << ";eps_out=" << eps_out_
     << ";mu_out=" << mu_out_;
  return os.str();
}

ModePoint::ModePoint(int l_index, Real y_value) : l(l_index), y(y_value) {
  if (l_index < 1) throw DomainError("mode index l must be >= 1, got " + std::to_string(l_index));
  require_positive(y_value, "y");
}

Real ModeCoefficients::c_in() const { return reduced_in == 0 ? 0 : reduced_in * std::exp(log_scale_in); }
Real ModeCoefficients::c_out() const {
  return reduced_out == 0 ? 0 : reduced_out * std::exp(log_scale_out);
}

namespace detail {

SurfaceState surface_state(const MediaConfig& media, Real nu, Real y, BesselPath path, int order) {
  SurfaceState s;
  const Real y1 = media.is_conductor() ? y : y * media.n_in();
  const Real y2 = media.is_conductor() ? y : y * media.n_out();
  s.in = bessel_core(nu, y1, path, order);
  s.out = (y2 == y1) ? s.in : bessel_core(nu, y2, path, order);
  s.p_in = product_ik(s.in);
  s.p_out = product_ik(s.out);
  if (media.identical_media()) return s;
  if (media.is_conductor()) {
    fill_conductor(s.in, s.coeff);
  } else {
    fill_dielectric(media, nu, s.in, s.out, s.coeff);
  }
  return s;
}

}  // namespace detail

ModeCoefficients mode_coefficients(const MediaConfig& media, const ModePoint& point,
                                   const BesselPolicy& policy) {
  const Real nu = point.nu();
  const Real y1 = media.is_conductor() ? point.y : point.y * media.n_in();
  const Real y2 = media.is_conductor() ? point.y : point.y * media.n_out();
  const BesselPath path = choose_path(nu, std::min(y1, y2), policy);
  const auto s = detail::surface_state(media, nu, point.y, path, policy.asymptotic_order);
  ModeCoefficients c = s.coeff;
  if (!media.identical_media()) {
    c.log_scale_in = log_k_over_i(s.in);
    c.log_scale_out = -log_k_over_i(s.out);
  }
  return c;
}

ModeCoefficients conductor_coefficients(const ModePoint& point, const BesselPolicy& policy) {
  return mode_coefficients(MediaConfig::perfect_conductor(), point, policy);
}

Real mode_function(const MediaConfig& media, const ModePoint& point, Real rho, Real rho_prime,
                   const BesselPolicy& policy) {
  require_positive(rho, "rho");
  require_positive(rho_prime, "rho_prime");
  if (rho == 1 || rho_prime == 1) throw SurfaceSingularity("mode function evaluated on the surface");
  const bool inside = rho < 1;
  if (inside != (rho_prime < 1)) throw SideMismatch("rho and rho' lie on opposite sides of the surface");
  if (media.identical_media()) return 0;

  const Real nu = point.nu();
  const Real y1 = media.is_conductor() ? point.y : point.y * media.n_in();
  const Real y2 = media.is_conductor() ? point.y : point.y * media.n_out();
  const Real ys = inside ? y1 : y2;
  const Real x_min = std::min({y1, y2, ys * std::min(rho, rho_prime)});
  const BesselPath path = choose_path(nu, x_min, policy);
  const int order = policy.asymptotic_order;
  const auto s = detail::surface_state(media, nu, point.y, path, order);
  const BesselCore& c0 = inside ? s.in : s.out;
  const BesselCore ca = bessel_core(nu, ys * rho, path, order);
  const BesselCore cb = bessel_core(nu, ys * rho_prime, path, order);
  const Real dxa = ys * (rho - 1);
  const Real dxb = ys * (rho_prime - 1);
  const Real ratio = inside ? ratio_i(ca, c0, dxa) * ratio_i(cb, c0, dxb)
                            : ratio_k(ca, c0, dxa) * ratio_k(cb, c0, dxb);
  const Real p = inside ? s.p_in : s.p_out;
  const Real red = inside ? s.coeff.reduced_in : s.coeff.reduced_out;
  return p * red * ratio / std::sqrt(rho * rho_prime);
}

}  // namespace casimir
