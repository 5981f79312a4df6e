// Copyright 2026 The ftwalk Authors
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

#include "ftwalk/report.hpp"

#include <algorithm>
#include <ostream>

#include <json.hpp>

#include "ftwalk/csd.hpp"
#include "ftwalk/error.hpp"

namespace ftwalk {

VerificationReport verify(const FtProgram& prog, const ComplexMatrix& reference) {
  ComplexMatrix w = pad_to_power_of_two(reference);
  int top = 0;
  for (const auto& r : prog.records) top = std::max({top, r.p, r.q});
  if (static_cast<std::size_t>(top) > w.dim()) {
    throw ValidationError("program touches index " + std::to_string(top) +
                          " beyond the padded matrix dimension " + std::to_string(w.dim()));
  }
  const ComplexMatrix wl = effective_matrix(prog, w.dim());
  const ErrorStats s = error_stats(w, wl);
  VerificationReport rep;
  rep.distance = distance(w, wl);
  rep.max_abs_real = s.max_abs_real;
  rep.max_rel_real = s.max_rel_real;
  rep.max_imag = s.max_imag;
  rep.gate_count = prog.total_gate_count();
  rep.dim = w.dim();
  rep.policy = prog.policy;
  rep.table_depth = prog.table_depth;
  return rep;
}

void write_report_json(std::ostream& out, const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["distance"] = r.distance;
  j["max_abs_real"] = r.max_abs_real;
  j["max_rel_real"] = r.max_rel_real;
  j["max_imag"] = r.max_imag;
  j["gate_count"] = r.gate_count;
  j["dim"] = r.dim;
  j["policy"] = r.policy;
  j["table_depth"] = r.table_depth;
  out << j.dump(2) << "\n";
}

}  // namespace ftwalk
