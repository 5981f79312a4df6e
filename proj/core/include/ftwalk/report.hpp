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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

#include "ftwalk/matrix.hpp"
#include "ftwalk/program.hpp"

namespace ftwalk {

struct VerificationReport {
  double distance = 0.0;
  double max_abs_real = 0.0;
  double max_rel_real = 0.0;
  double max_imag = 0.0;
  std::size_t gate_count = 0;
  std::size_t dim = 0;  ///< padded dimension the comparison ran at
  std::string policy;
  int table_depth = 0;
};

/// Pads `reference` to a power of two (at least the largest program index)
/// and compares it against the program's effective matrix.
VerificationReport verify(const FtProgram& prog, const ComplexMatrix& reference);

/// Pretty JSON, full precision.
void write_report_json(std::ostream& out, const VerificationReport& r);

}  // namespace ftwalk
