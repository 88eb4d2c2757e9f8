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

#include <cmath>
#include <numbers>

namespace casimir {

// Working precision of the Bessel, mode and stress kernels. The stress
// jump is fitted with a basis whose constant-term row amplifies sample
// noise by ~1e12 relative to the leading delta^-3 term, so the kernels run
// in x87 extended precision.
using Real = long double;

inline constexpr Real kPi = std::numbers::pi_v<Real>;

// Neumaier's variant of Kahan summation. Adding terms in a fixed order gives
// bit-identical results regardless of how the terms were produced.
class CompensatedSum {
 public:
  void add(Real x) {
    const Real t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  Real value() const { return sum_ + carry_; }

 private:
  Real sum_ = 0;
  Real carry_ = 0;
};

}  // namespace casimir
