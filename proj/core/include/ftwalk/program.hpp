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
#include <vector>

#include "ftwalk/angle_table.hpp"
#include "ftwalk/csd.hpp"
#include "ftwalk/gates.hpp"
#include "ftwalk/matrix.hpp"

namespace ftwalk {

/// One compiled two-level operation: `seq` acting on 1-based entries (p, q).
struct ProgramRecord {
  GateSequence seq;
  int p = 1;
  int q = 2;
  friend bool operator==(const ProgramRecord&, const ProgramRecord&) = default;
};

/// Records in the same product order as the decomposition they came from.
struct FtProgram {
  std::vector<ProgramRecord> records;
  std::string policy;   ///< empty when unknown (e.g. hand-written fixtures)
  int table_depth = 0;  ///< max_length of the tables used, 0 when unknown
  std::size_t total_gate_count() const;
};

/// Ry ops are replaced by the nearest non-zero table entry for their sign;
/// Z and Phase(180) become "Z". Rz and other Phase ops are outside the
/// compiler's scope and raise ValidationError.
FtProgram compile(const Decomposition& d, const AngleTableSet& tables, Policy policy);

/// Product of every record embedded as a two-level dim x dim factor.
ComplexMatrix effective_matrix(const FtProgram& prog, std::size_t dim);

// CSV: optional "# policy=..." and "# max_length=L" comments, header
// "sequence,p,q", rows in product order.
void write_program_csv(std::ostream& out, const FtProgram& prog);
FtProgram read_program_csv(std::istream& in);
FtProgram read_program_csv_file(const std::string& path);

}  // namespace ftwalk
