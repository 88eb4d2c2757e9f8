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

// Least-squares fit of the stress jump to
//
//   D(delta) = sum_{n=-3}^{N} a_n (alpha delta)^n
//            + sum_{n=0}^{N} b_n (alpha delta)^n log(alpha delta)
//
// solved in quadruple precision on equilibrated columns.

#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "casimir/numeric.hpp"
#include "casimir/stress.hpp"

namespace casimir {

using Quad = boost::multiprecision::cpp_bin_float_quad;

struct SampleGrid {
  Real delta_min = Real(1) / 1000;
  Real delta_max = Real(1) / 100;
  Real step = Real(1) / 5000;

  // Inclusive of both endpoints.
  std::vector<Real> deltas() const;
  // "min:max:step", each a decimal or a fraction p/q.
  static SampleGrid parse(const std::string& spec);
  std::string canonical() const;
  void validate() const;
};

struct FitCoefficients {
  int N = 0;
  Real alpha = 1;
  std::vector<Real> a;  // a_{-3} .. a_N
  std::vector<Real> b;  // b_0 .. b_N
  Real a0 = 0;
  Real a0_stderr = 0;
  Real residual_norm = 0;
  Real condition = 0;  // 2-norm condition number after column equilibration
  int samples = 0;

  Real a_n(int n) const { return a.at(static_cast<std::size_t>(n + 3)); }
  Real b_n(int n) const { return b.at(static_cast<std::size_t>(n)); }
};

struct FitOptions {
  Real alpha = 1;
  Real max_condition = 1e14L;
};

// Throws DomainError if fewer than 2N+6 samples or N < 0, IllConditioned
// above options.max_condition.
FitCoefficients fit_series(std::span<const Real> deltas, std::span<const Quad> values, int N,
                           const FitOptions& options = {});
FitCoefficients fit_series(const std::vector<StressSample>& samples, int N,
                           const FitOptions& options = {});

// Model value at delta.
Quad evaluate_series(const FitCoefficients& fit, Real delta);

}  // namespace casimir
