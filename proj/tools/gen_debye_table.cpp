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

// Build-time generator: writes the embedded Debye coefficient table as
// hex-float long double literals.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/debye.hpp"

namespace {

void emit_family(std::ostream& os, const std::string& name,
                 const std::vector<casimir::RationalPolynomial>& polys) {
  for (std::size_t k = 0; k < polys.size(); ++k) {
    const auto q = casimir::even_part_after_shift(polys[k], static_cast<int>(k));
    os << "inline constexpr long double k" << name << k << "[] = {";
    if (q.empty()) os << "0.0L";
    for (std::size_t i = 0; i < q.size(); ++i) {
      std::ostringstream lit;
      lit << std::hexfloat << casimir::to_real(q[i]);
      os << (i ? ", " : "") << lit.str() << "L";
    }
    os << "};\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_debye_table <output.inc>\n";
    return 1;
  }
  const auto exp = casimir::generate_u_polynomials(casimir::kMaxDebyeOrder);
  std::ofstream os(argv[1]);
  if (!os) {
    std::cerr << "cannot open " << argv[1] << "\n";
    return 1;
  }
  os << "// Generated by gen_debye_table. Do not edit.\n";
  os << "inline constexpr int kGeneratedMaxOrder = " << exp.max_k << ";\n";
  emit_family(os, "U", exp.u);
  emit_family(os, "V", exp.v);
  emit_family(os, "E", exp.e);
  os << "inline constexpr casimir::DebyeTable::Entry kEntries[] = {\n";
  for (int k = 0; k <= exp.max_k; ++k) {
    os << "    {kU" << k << ", kV" << k << ", kE" << k << "},\n";
  }
  os << "};\n";
  return os ? 0 : 1;
}
