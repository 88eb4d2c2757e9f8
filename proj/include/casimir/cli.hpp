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

// Command-line front end. Subcommands:
//
//   bessel-check     nu,x,path,value_I,value_K,wronskian_residual,rel_err_estimate
//   stress-profile   delta,side,s_rr,s_tt,err_estimate
//   extract-force    one row per media with F_m, its uncertainty and the divergent part
//   table1           comparison with the published Table I values
//   sweep            epsilon,f_m,uncertainty,protocol_hash
//   conductor-sum    sphere + cavity sums against the conductor value
//   dilute-scan      F_m(1+h), F_m/h, halving ratios and the two-term fit
//   surface-tension  gamma in N/m and dyn/cm
//
// Every output starts with a provenance stamp (comment lines for csv, a
// first record for json-lines).
//
// Exit codes: 0 ok, 1 domain or validation error (including usage errors
// and ill-conditioned fits), 2 convergence or accuracy failure, 3 I/O error.

#include <iosfwd>

namespace casimir {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitConvergence = 2;
inline constexpr int kExitIo = 3;

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace casimir
