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

// Sampling of the stress-jump curve, the fit-order and asymptotic-order
// ladders, and extraction of the macroscopic force F_m = 4 pi a_0.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "casimir/mode.hpp"
#include "casimir/series_fit.hpp"
#include "casimir/stress.hpp"

namespace casimir {

struct ExtractionProtocol {
  SampleGrid grid;
  int fit_order = 4;
  Real alpha = 1;
  StressOptions stress;
  // Repeat the sampling with asymptotic order one lower and include the
  // change of F_m in the uncertainty.
  bool order_ladder = true;
  // NoConvergence when the uncertainty exceeds this (units hbar c / a^2).
  Real accuracy_target = 1e-3L;
  Real max_condition = 1e14L;
  // Empty disables the sample cache.
  std::string cache_dir;

  // Everything that changes the sampled curve; excludes fit settings.
  std::string sampling_canonical() const;
};

struct DivergentPart {
  Real delta_m3 = 0;  // coefficient of delta^-3
  Real delta_m2 = 0;
  Real delta_m1 = 0;
  Real log = 0;  // b_0, coefficient of log delta
};

struct LadderEntry {
  int N = 0;
  Real f_m = 0;
  Real f_stderr = 0;  // 4 pi stderr(a_0)
  Real condition = 0;
  bool ok = true;
  std::string failure;
};

struct ForceResult {
  Real f_m = 0;
  Real uncertainty = 0;
  // max(|F_N - F_{N-1}|, |F_{N+1} - F_N|, 4 pi stderr(a_0))
  Real fit_uncertainty = 0;
  // |F_m(order) - F_m(order - 1)| when the order ladder ran
  Real order_spread = 0;
  std::optional<Real> f_m_lower_order;
  std::vector<LadderEntry> ladder;
  DivergentPart divergent;
  FitCoefficients fit;
  ExtractionProtocol protocol;
  std::string media;
  std::uint64_t media_hash = 0;
  std::uint64_t protocol_hash = 0;
  std::vector<StressSample> samples;
  Real max_sample_error = 0;
};

// One sample per grid point; read from and written to the cache when
// cache_dir is non-empty.
std::vector<StressSample> sample_jump_curve(const MediaConfig& media, const SampleGrid& grid,
                                            const StressOptions& stress,
                                            const std::string& cache_dir = {});

ForceResult extract_macroscopic_force(const MediaConfig& media, const ExtractionProtocol& protocol);

// F_m from an existing curve.
ForceResult force_from_samples(const MediaConfig& media, const ExtractionProtocol& protocol,
                               std::vector<StressSample> samples);

struct RescaleEntry {
  Real alpha = 1;
  Real f_m = 0;            // refit with expansion variable alpha delta
  Real refit_shift = 0;    // f_m(alpha) - f_m(1)
  Real analytic_shift = 0; // -4 pi b_0 log alpha
};

// Requires each alpha in [0.25, 4].
std::vector<RescaleEntry> rescale_sensitivity(const MediaConfig& media,
                                              const std::vector<Real>& alphas,
                                              const ExtractionProtocol& protocol);

std::uint64_t stable_hash(const std::string& text);
std::string hash_hex(std::uint64_t h);

}  // namespace casimir
