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

#include "casimir/stress.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

using Vec = std::array<Real, detail::kComponents>;
constexpr int kRrIn = 0, kTtIn = 1, kRrOut = 2, kTtOut = 3, kJump = 4;
constexpr Real kEps = std::numeric_limits<Real>::epsilon();
const Real kPrefactor = 1 / (8 * kPi * kPi);

struct Context {
  const MediaConfig* media;
  detail::Probes probes;
  Real nu = 0;
  Real ll = 0;  // l(l+1)
  Real n_in = 1, n_out = 1;
  BesselPolicy bessel;
  std::array<bool, detail::kComponents> active{};
};

Context make_context(const MediaConfig& media, const detail::Probes& probes, int l,
                     const BesselPolicy& bessel) {
  Context c;
  c.media = &media;
  c.probes = probes;
  c.nu = static_cast<Real>(l) + Real(0.5);
  c.ll = static_cast<Real>(l) * static_cast<Real>(l + 1);
  if (!media.is_conductor()) {
    c.n_in = media.n_in();
    c.n_out = media.n_out();
  }
  c.bessel = bessel;
  c.active[kRrIn] = c.active[kTtIn] = probes.delta_in.has_value();
  c.active[kRrOut] = c.active[kTtOut] = probes.delta_out.has_value();
  c.active[kJump] = probes.delta_in && probes.delta_out;
  return c;
}

// Integrand at one y, without (2l+1)/(8 pi^2).
Vec integrand(const Context& c, Real y) {
  Vec f{};
  const Real y1 = y * c.n_in;
  const Real y2 = y * c.n_out;
  Real x_min = std::min(y1, y2);
  if (c.probes.delta_in) x_min = std::min(x_min, y1 - y1 * *c.probes.delta_in);
  const BesselPath path = choose_path(c.nu, x_min, c.bessel);
  const int order = c.bessel.asymptotic_order;
  const detail::SurfaceState s = detail::surface_state(*c.media, c.nu, y, path, order);
  if (c.probes.delta_in && s.coeff.reduced_in != 0) {
    const Real d = *c.probes.delta_in;
    const Real dx = -y1 * d;
    const BesselCore cx = bessel_core(c.nu, y1 + dx, path, order);
    const Real r = ratio_i(cx, s.in, dx);
    const Real w = s.p_in * s.coeff.reduced_in * r * r / (1 - d);
    const Real beta = Real(-0.25) - 2 * cx.t * cx.eps_i - cx.eps_i * cx.eps_i;
    f[kRrIn] = w * beta;
    f[kTtIn] = -w * c.ll;
  }
  if (c.probes.delta_out && s.coeff.reduced_out != 0) {
    const Real d = *c.probes.delta_out;
    const Real dx = y2 * d;
    const BesselCore cx = bessel_core(c.nu, y2 + dx, path, order);
    const Real r = ratio_k(cx, s.out, dx);
    const Real w = s.p_out * s.coeff.reduced_out * r * r / (1 + d);
    const Real beta = Real(-0.25) + 2 * cx.t * cx.eps_k - cx.eps_k * cx.eps_k;
    f[kRrOut] = w * beta;
    f[kTtOut] = -w * c.ll;
  }
  f[kJump] = f[kRrOut] - f[kRrIn];
  return f;
}

struct PanelResult {
  Vec value{}, err{}, abs{};
};

PanelResult gauss_kronrod_panel(const Context& c, Real a, Real b, std::int64_t& evals) {
  using GK = boost::math::quadrature::gauss_kronrod<Real, 21>;
  using G = boost::math::quadrature::gauss<Real, 10>;
  const auto& xk = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = G::weights();
  const Real half = (b - a) / 2;
  const Real mid = (a + b) / 2;

  std::array<Vec, 21> fv;
  fv[0] = integrand(c, mid);
  for (int i = 1; i <= 10; ++i) {
    fv[2 * i - 1] = integrand(c, mid - half * xk[i]);
    fv[2 * i] = integrand(c, mid + half * xk[i]);
  }
  evals += 21;

  PanelResult r;
  for (int k = 0; k < detail::kComponents; ++k) {
    if (!c.active[k]) continue;
    Real resk = wk[0] * fv[0][k];
    Real resg = 0;
    Real resabs = wk[0] * std::fabs(fv[0][k]);
    for (int i = 1; i <= 10; ++i) {
      const Real s = fv[2 * i - 1][k] + fv[2 * i][k];
      resk += wk[i] * s;
      resabs += wk[i] * (std::fabs(fv[2 * i - 1][k]) + std::fabs(fv[2 * i][k]));
      if (i % 2 == 1) resg += wg[i / 2] * s;
    }
    const Real mean = resk / 2;
    Real resasc = wk[0] * std::fabs(fv[0][k] - mean);
    for (int i = 1; i <= 10; ++i) {
      resasc += wk[i] * (std::fabs(fv[2 * i - 1][k] - mean) + std::fabs(fv[2 * i][k] - mean));
    }
    Real err = std::fabs((resk - resg) * half);
    resasc *= std::fabs(half);
    if (resasc != 0 && err != 0) err = resasc * std::min<Real>(1, std::pow(200 * err / resasc, Real(1.5)));
    resabs *= std::fabs(half);
    err = std::max(err, 50 * kEps * resabs);
    r.value[k] = resk * half;
    r.err[k] = err;
    r.abs[k] = resabs;
  }
  return r;
}

Vec jump_scale(const Vec& abs) {
  Vec s = abs;
  s[kJump] = abs[kRrIn] + abs[kRrOut];
  return s;
}

Real min_delta(const detail::Probes& p) {
  Real d = std::numeric_limits<Real>::infinity();
  if (p.delta_in) d = std::min(d, *p.delta_in);
  if (p.delta_out) d = std::min(d, *p.delta_out);
  return d;
}

}  // namespace

namespace detail {

LTerm integrate_l(const MediaConfig& media, const Probes& probes, int l, const StressOptions& opt) {
  LTerm out;
  if (media.identical_media()) return out;
  const Context c = make_context(media, probes, l, opt.bessel);
  const QuadratureSpec& q = opt.quad;

  const Real delta = min_delta(probes);
  const Real n_max = std::max(c.n_in, c.n_out);
  const Real n_min = std::min(c.n_in, c.n_out);
  const Real y_max = q.decay_cutoff / (2 * delta * n_min);
  const Real h0 = q.first_panel * std::min(c.nu, 1 / delta) / n_max;

  std::vector<Real> edges{0};
  for (Real y = h0; y < y_max; y *= 2) edges.push_back(y);
  edges.push_back(y_max);

  struct Pending {
    Real a, b;
    int depth;
    PanelResult r;
  };
  std::vector<Pending> work;
  Vec total_scale{};
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Pending p{edges[i], edges[i + 1], 0, gauss_kronrod_panel(c, edges[i], edges[i + 1], out.evaluations)};
    const Vec s = jump_scale(p.r.abs);
    for (int k = 0; k < kComponents; ++k) total_scale[k] += s[k];
    work.push_back(p);
  }
  // Depth-first in a fixed order keeps the reduction deterministic.
  std::reverse(work.begin(), work.end());
  Vec sum{}, err{};
  while (!work.empty()) {
    Pending p = work.back();
    work.pop_back();
    const Vec s = jump_scale(p.r.abs);
    bool ok = true;
    for (int k = 0; k < kComponents && ok; ++k) {
      if (!c.active[k]) continue;
      const Real floor = total_scale[k] / 64;
      ok = p.r.err[k] <= q.rel_tol * std::max(s[k], floor);
    }
    if (ok) {
      for (int k = 0; k < kComponents; ++k) {
        sum[k] += p.r.value[k];
        err[k] += p.r.err[k];
      }
      continue;
    }
    if (p.depth >= q.max_bisections) {
      throw ConvergenceFailure("y-quadrature did not converge at l=" + std::to_string(l) +
                               " on [" + std::to_string(static_cast<double>(p.a)) + ", " +
                               std::to_string(static_cast<double>(p.b)) + "]");
    }
    const Real m = (p.a + p.b) / 2;
    Pending right{m, p.b, p.depth + 1, gauss_kronrod_panel(c, m, p.b, out.evaluations)};
    Pending left{p.a, m, p.depth + 1, gauss_kronrod_panel(c, p.a, m, out.evaluations)};
    work.push_back(right);
    work.push_back(left);
  }
  const Real w = (2 * static_cast<Real>(l) + 1) * kPrefactor;
  for (int k = 0; k < kComponents; ++k) {
    out.value[k] = w * sum[k];
    out.err[k] = w * err[k];
    out.scale[k] = w * total_scale[k];
  }
  return out;
}

namespace {

class ModeSum {
 public:
  ModeSum(const Probes& probes, const TruncationPolicy& trunc) : trunc_(trunc) {
    const Real delta = min_delta(probes);
    knee_ = static_cast<int>(std::ceil(1 / delta));
    cap_ = static_cast<int>(std::ceil(trunc.l_cap_factor / delta));
    active_[kRrIn] = active_[kTtIn] = probes.delta_in.has_value();
    active_[kRrOut] = active_[kTtOut] = probes.delta_out.has_value();
    active_[kJump] = probes.delta_in && probes.delta_out;
  }

  int cap() const { return cap_; }

  // Returns true once the tail is below tolerance.
  bool add(int l, const LTerm& t) {
    for (int k = 0; k < kComponents; ++k) {
      sum_[k].add(t.value[k]);
      err_[k] += t.err[k];
      hist_[k][0] = hist_[k][1];
      hist_[k][1] = hist_[k][2];
      hist_[k][2] = std::fabs(t.value[k]);
    }
    result_.evaluations += t.evaluations;
    result_.l_max = l;
    ++count_;
    if (count_ < 3 || l < knee_) return false;
    for (int k = 0; k < kComponents; ++k) {
      if (!active_[k]) continue;
      const auto& h = hist_[k];
      if (h[0] == 0 && h[1] == 0 && h[2] == 0) {
        tail_[k] = 0;
        continue;
      }
      if (h[0] == 0 || h[1] == 0) return false;
      const Real r = std::max(h[2] / h[1], h[1] / h[0]);
      if (!(r < 1)) return false;
      tail_[k] = h[2] * r / (1 - r);
      if (tail_[k] > trunc_.tail_tol * std::fabs(sum_[k].value())) return false;
    }
    return true;
  }

  KernelResult finish() {
    for (int k = 0; k < kComponents; ++k) {
      result_.value[k] = sum_[k].value();
      result_.err[k] = err_[k] + tail_[k] + 4 * kEps * std::fabs(result_.value[k]);
    }
    return result_;
  }

 private:
  TruncationPolicy trunc_;
  int knee_ = 1, cap_ = 1, count_ = 0;
  std::array<bool, kComponents> active_{};
  std::array<CompensatedSum, kComponents> sum_{};
  Vec err_{}, tail_{};
  std::array<std::array<Real, 3>, kComponents> hist_{};
  KernelResult result_;
};

[[noreturn]] void cap_reached(int cap) {
  throw ConvergenceFailure("mode sum reached the hard cap l=" + std::to_string(cap) +
                           " without meeting the tail tolerance");
}

}  // namespace

KernelResult stress_kernel_serial(const MediaConfig& media, const Probes& probes,
                                  const StressOptions& opt) {
  ModeSum acc(probes, opt.trunc);
  for (int l = opt.trunc.l_start;; ++l) {
    if (l > acc.cap()) cap_reached(acc.cap());
    if (acc.add(l, integrate_l(media, probes, l, opt))) break;
  }
  return acc.finish();
}

KernelResult stress_kernel_parallel(const MediaConfig& media, const Probes& probes,
                                    const StressOptions& opt) {
  const int threads = omp_get_max_threads();
  if (threads <= 1 || omp_in_parallel()) return stress_kernel_serial(media, probes, opt);
  ModeSum acc(probes, opt.trunc);
  const int block = 4 * threads;
  std::vector<LTerm> terms(block);
  for (int l0 = opt.trunc.l_start;; l0 += block) {
    std::string failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < block; ++i) {
      try {
        terms[i] = integrate_l(media, probes, l0 + i, opt);
      } catch (const std::exception& e) {
#pragma omp critical
        if (failure.empty()) failure = e.what();
      }
    }
    if (!failure.empty()) throw ConvergenceFailure(failure);
    for (int i = 0; i < block; ++i) {
      const int l = l0 + i;
      if (l > acc.cap()) cap_reached(acc.cap());
      if (acc.add(l, terms[i])) return acc.finish();
    }
  }
}

}  // namespace detail

namespace {

detail::KernelResult run_kernel(const MediaConfig& media, const detail::Probes& probes,
                                const StressOptions& opt) {
  return opt.parallel ? detail::stress_kernel_parallel(media, probes, opt)
                      : detail::stress_kernel_serial(media, probes, opt);
}

StressValue profile(const MediaConfig& media, Real rho, const StressOptions& opt) {
  if (!(rho > 0) || !std::isfinite(rho)) throw DomainError("rho must be positive");
  if (std::fabs(rho - 1) < Real(1e-6)) {
    throw SurfaceSingularity("stress requested within 1e-6 of the surface (rho=" +
                             std::to_string(static_cast<double>(rho)) + ")");
  }
  StressValue v;
  v.rho = rho;
  if (media.identical_media()) return v;
  detail::Probes p;
  const bool inside = rho < 1;
  if (inside) {
    p.delta_in = 1 - rho;
  } else {
    p.delta_out = rho - 1;
  }
  const detail::KernelResult r = run_kernel(media, p, opt);
  v.s_rr = r.value[inside ? kRrIn : kRrOut];
  v.s_tt = r.value[inside ? kTtIn : kTtOut];
  v.err_estimate = std::max(r.err[inside ? kRrIn : kRrOut], r.err[inside ? kTtIn : kTtOut]);
  v.l_max = r.l_max;
  return v;
}

}  // namespace

StressValue radial_stress(const MediaConfig& media, Real rho, const StressOptions& opt) {
  return profile(media, rho, opt);
}

StressValue tangential_stress(const MediaConfig& media, Real rho, const StressOptions& opt) {
  return profile(media, rho, opt);
}

StressSample stress_jump(const MediaConfig& media, Real delta, const StressOptions& opt) {
  if (!(delta >= Real(1e-4) && delta <= Real(0.5))) {
    throw DomainError("stress jump needs 1e-4 <= delta <= 0.5, got " +
                      std::to_string(static_cast<double>(delta)));
  }
  StressSample s;
  s.delta = delta;
  if (media.identical_media()) return s;
  detail::Probes p;
  p.delta_in = delta;
  p.delta_out = delta;
  const detail::KernelResult r = run_kernel(media, p, opt);
  s.value = r.value[kJump];
  s.err_estimate = r.err[kJump];
  s.l_max = r.l_max;
  return s;
}

ModeIntegrand mode_integrand(const MediaConfig& media, int l, Real y, Real rho,
                             const BesselPolicy& policy) {
  const ModePoint pt(l, y);
  if (!(rho > 0) || rho == 1) throw DomainError("mode integrand needs rho > 0, rho != 1");
  detail::Probes p;
  if (rho < 1) {
    p.delta_in = 1 - rho;
  } else {
    p.delta_out = rho - 1;
  }
  const Context c = make_context(media, p, l, policy);
  const Vec f = integrand(c, y);
  const Real w = 2 * static_cast<Real>(l) + 1;
  return rho < 1 ? ModeIntegrand{w * f[kRrIn], w * f[kTtIn]}
                 : ModeIntegrand{w * f[kRrOut], w * f[kTtOut]};
}

DivergenceResidual divergence_residual(const MediaConfig& media, int l, Real y, Real rho,
                                       const BesselPolicy& policy) {
  const ModePoint pt(l, y);
  if (!(rho > 0) || rho == 1) throw DomainError("divergence residual needs rho > 0, rho != 1");
  DivergenceResidual out;
  if (media.identical_media()) return out;
  const bool inside = rho < 1;
  const Real nu = pt.nu();
  const Real n1 = media.is_conductor() ? 1 : media.n_in();
  const Real n2 = media.is_conductor() ? 1 : media.n_out();
  const Real ys = y * (inside ? n1 : n2);
  const Real x = ys * rho;
  const BesselPath path = choose_path(nu, std::min({y * n1, y * n2, x}), policy);
  const int order = policy.asymptotic_order;
  const auto s = detail::surface_state(media, nu, y, path, order);
  const BesselCore cx = bessel_core(nu, x, path, order);
  const BesselBundle b = to_bundle(cx);

  // C B^2 / rho^2 through the surface-normalized ratio.
  const Real dx = ys * (rho - 1);
  const Real r = inside ? ratio_i(cx, s.in, dx) : ratio_k(cx, s.out, dx);
  const Real factor = (inside ? s.p_in * s.coeff.reduced_in : s.p_out * s.coeff.reduced_out) * r * r /
                      (rho * rho);

  // Raw bundle values: B'/B from the scaled derivative, B'' from Bessel's equation.
  const Real d1 = inside ? b.dI_scaled / b.I_scaled : b.dK_scaled / b.K_scaled;
  const Real d2 = (x * x + nu * nu) / (x * x) - d1 / x;
  const Real q = Real(0.5) + x * d1;
  const Real q_x = d1 + x * (d2 - d1 * d1);
  const Real ll = static_cast<Real>(l) * static_cast<Real>(l + 1);
  const Real beta = ll + x * x - q * q;
  const Real beta_x = 2 * x - 2 * q * q_x;
  const Real t1 = (2 * q - 2) * beta;
  const Real t2 = x * beta_x;
  const Real t3 = 2 * ll;
  const Real w = (2 * static_cast<Real>(l) + 1) * kPrefactor * factor;
  out.residual = w * (t1 + t2 + t3);
  out.scale = std::fabs(w) * (std::fabs(t1) + std::fabs(t2) + std::fabs(t3));
  return out;
}

}  // namespace casimir
