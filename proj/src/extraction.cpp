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

#include "casimir/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "casimir/cache.hpp"
#include "casimir/errors.hpp"
#include "casimir/version.hpp"

namespace casimir {

namespace {

constexpr Real kUncertaintyFloor = 1e-15L;

std::string num(Real v) {
  std::ostringstream os;
  os.precision(21);
  os << v;
  return os.str();
}

CacheKey make_key(const MediaConfig& media, const SampleGrid& grid, const StressOptions& stress) {
  ExtractionProtocol p;
  p.grid = grid;
  p.stress = stress;
  CacheKey k;
  k.media = media.canonical();
  k.protocol = p.sampling_canonical();
  k.media_hash = stable_hash(k.media);
  k.protocol_hash = stable_hash(k.protocol);
  return k;
}

bool same_grid(const std::vector<StressSample>& s, const std::vector<Real>& deltas) {
  if (s.size() != deltas.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].delta != deltas[i]) return false;
  }
  return true;
}

}  // namespace

std::uint64_t stable_hash(const std::string& text) {
  // FNV-1a, 64 bit
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string ExtractionProtocol::sampling_canonical() const {
  const StressOptions& s = stress;
  std::ostringstream os;
  os << "kernel=" << kKernelRevision << ";grid=" << grid.canonical()
     << ";asymptotic_order=" << s.bessel.asymptotic_order
     << ";crossover_nu=" << num(s.bessel.crossover_nu)
     << ";uniform_tolerance=" << num(s.bessel.uniform_tolerance)
     << ";quad_rel_tol=" << num(s.quad.rel_tol) << ";decay_cutoff=" << num(s.quad.decay_cutoff)
     << ";first_panel=" << num(s.quad.first_panel) << ";max_bisections=" << s.quad.max_bisections
     << ";l_start=" << s.trunc.l_start << ";tail_tol=" << num(s.trunc.tail_tol)
     << ";l_cap_factor=" << num(s.trunc.l_cap_factor);
  return os.str();
}

std::vector<StressSample> sample_jump_curve(const MediaConfig& media, const SampleGrid& grid,
                                            const StressOptions& stress,
                                            const std::string& cache_dir) {
  const std::vector<Real> deltas = grid.deltas();
  const CacheKey key = make_key(media, grid, stress);
  if (!cache_dir.empty()) {
    if (auto cached = read_cache(cache_dir, key); cached && same_grid(cached->samples, deltas)) {
      return cached->samples;
    }
  }

  std::vector<StressSample> out(deltas.size());
  StressOptions inner = stress;
  inner.parallel = false;
  std::string failure;
  const long n = static_cast<long>(deltas.size());
#pragma omp parallel for schedule(dynamic, 1) if (stress.parallel)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = stress_jump(media, deltas[i], inner);
    } catch (const std::exception& e) {
#pragma omp critical
      if (failure.empty()) failure = "at delta=" + num(deltas[i]) + ": " + e.what();
    }
  }
  if (!failure.empty()) throw ConvergenceFailure(failure);

  if (!cache_dir.empty()) write_cache(cache_dir, key, CachedCurve{out, {}});
  return out;
}

ForceResult force_from_samples(const MediaConfig& media, const ExtractionProtocol& protocol,
                               std::vector<StressSample> samples) {
  ForceResult r;
  r.protocol = protocol;
  r.media = media.canonical();
  r.media_hash = stable_hash(r.media);
  r.protocol_hash = stable_hash(protocol.sampling_canonical());
  for (const auto& s : samples) r.max_sample_error = std::max(r.max_sample_error, s.err_estimate);

  FitOptions fo;
  fo.alpha = protocol.alpha;
  fo.max_condition = protocol.max_condition;
  const int N = protocol.fit_order;
  std::set<int> orders{2, 3, 4, 5};
  for (int k = std::max(0, N - 1); k <= N + 1; ++k) orders.insert(k);

  bool have_reported = false;
  for (int k : orders) {
    LadderEntry e;
    e.N = k;
    try {
      const FitCoefficients f = fit_series(samples, k, fo);
      e.f_m = 4 * kPi * f.a0;
      e.f_stderr = 4 * kPi * f.a0_stderr;
      e.condition = f.condition;
      if (k == N) {
        r.fit = f;
        have_reported = true;
      }
    } catch (const Error& ex) {
      if (k == N) throw;
      e.ok = false;
      e.failure = ex.what();
    }
    r.ladder.push_back(e);
  }
  if (!have_reported) throw DomainError("reported fit order did not run");

  r.f_m = 4 * kPi * r.fit.a0;
  Real fit_unc = 4 * kPi * r.fit.a0_stderr;
  for (const auto& e : r.ladder) {
    if (e.ok && (e.N == N - 1 || e.N == N + 1)) fit_unc = std::max(fit_unc, std::fabs(e.f_m - r.f_m));
  }
  r.fit_uncertainty = fit_unc;
  r.uncertainty = std::max(fit_unc, kUncertaintyFloor);
  r.divergent.delta_m3 = r.fit.a_n(-3);
  r.divergent.delta_m2 = r.fit.a_n(-2);
  r.divergent.delta_m1 = r.fit.a_n(-1);
  r.divergent.log = r.fit.b_n(0);
  r.samples = std::move(samples);
  return r;
}

ForceResult extract_macroscopic_force(const MediaConfig& media, const ExtractionProtocol& protocol) {
  if (protocol.fit_order < 0) throw DomainError("fit order must be >= 0");
  if (!(protocol.alpha >= Real(0.25) && protocol.alpha <= 4)) {
    throw DomainError("alpha must lie in [0.25, 4]");
  }
  auto samples = sample_jump_curve(media, protocol.grid, protocol.stress, protocol.cache_dir);
  ForceResult r = force_from_samples(media, protocol, std::move(samples));

  if (protocol.order_ladder && protocol.stress.bessel.asymptotic_order > 0) {
    StressOptions lower = protocol.stress;
    lower.bessel.asymptotic_order -= 1;
    auto lo_samples = sample_jump_curve(media, protocol.grid, lower, protocol.cache_dir);
    ExtractionProtocol lo_protocol = protocol;
    lo_protocol.stress = lower;
    const ForceResult lo = force_from_samples(media, lo_protocol, std::move(lo_samples));
    r.f_m_lower_order = lo.f_m;
    r.order_spread = std::fabs(r.f_m - lo.f_m);
    r.uncertainty = std::max(r.uncertainty, r.order_spread);
  }

  if (!protocol.cache_dir.empty()) {
    CachedCurve curve{r.samples, {}};
    for (const auto& e : r.ladder) {
      if (!e.ok) continue;
      std::ostringstream os;
      os.precision(17);
      os << "fit.N" << e.N << ": alpha=" << static_cast<double>(protocol.alpha)
         << " f_m=" << static_cast<double>(e.f_m) << " stderr=" << static_cast<double>(e.f_stderr)
         << " condition=" << static_cast<double>(e.condition);
      curve.fit_lines.push_back(os.str());
    }
    write_cache(protocol.cache_dir, make_key(media, protocol.grid, protocol.stress), curve);
  }

  if (r.uncertainty > protocol.accuracy_target) {
    std::ostringstream os;
    os << "F_m = " << static_cast<double>(r.f_m) << " has uncertainty "
       << static_cast<double>(r.uncertainty) << " above the target "
       << static_cast<double>(protocol.accuracy_target);
    throw NoConvergence(os.str());
  }
  return r;
}

std::vector<RescaleEntry> rescale_sensitivity(const MediaConfig& media,
                                              const std::vector<Real>& alphas,
                                              const ExtractionProtocol& protocol) {
  for (Real a : alphas) {
    if (!(a >= Real(0.25) && a <= 4)) throw DomainError("alpha must lie in [0.25, 4]");
  }
  const auto samples = sample_jump_curve(media, protocol.grid, protocol.stress, protocol.cache_dir);
  FitOptions fo;
  fo.max_condition = protocol.max_condition;
  const FitCoefficients base = fit_series(samples, protocol.fit_order, fo);
  const Real f1 = 4 * kPi * base.a0;
  std::vector<RescaleEntry> out;
  for (Real a : alphas) {
    FitOptions fa = fo;
    fa.alpha = a;
    const FitCoefficients f = fit_series(samples, protocol.fit_order, fa);
    RescaleEntry e;
    e.alpha = a;
    e.f_m = 4 * kPi * f.a0;
    e.refit_shift = e.f_m - f1;
    e.analytic_shift = -4 * kPi * base.b_n(0) * std::log(a);
    out.push_back(e);
  }
  return out;
}

}  // namespace casimir
