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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ftwalk/gates.hpp"

namespace ftwalk {

enum class Policy { BestRFirst, ShortestFirst };
enum class Sign { Positive, Negative };

const char* to_string(Policy p);
const char* to_string(Sign s);
/// Accepts "best_r_first"/"best" and "shortest_first"/"shortest".
Policy parse_policy(const std::string& s);

/// One table row. Angles are keyed in thousandths of a degree.
struct AngleEntry {
  std::int64_t millideg = 0;
  double r = 0.0;
  double epsilon_deg = 0.0;
  int length = 0;
  GateSequence seq;

  double angle_deg() const { return static_cast<double>(millideg) / 1000.0; }
};

/// Rounds to the nearest 0.001 degree, halves away from zero (symmetric in
/// sign).
std::int64_t to_millideg(double angle_deg);

/// r values closer than this count as equal when ranking entries.
inline constexpr double kRTieTolerance = 1e-12;

/// True if `a` should replace `b` for the same angle key under `policy`.
/// best_r_first orders by (r, length, word); shortest_first by
/// (length, r, word). Words compare in alphabet order.
bool preferred(const AngleEntry& a, const AngleEntry& b, Policy policy);

struct AngleTable {
  Policy policy = Policy::BestRFirst;
  Sign sign = Sign::Positive;
  int max_length = 0;
  std::string warning;              ///< non-empty if the search stopped early
  std::vector<AngleEntry> entries;  ///< ascending by angle, unique keys
};

struct AngleTableSet {
  AngleTable best_r_positive{Policy::BestRFirst, Sign::Positive, 0, {}, {}};
  AngleTable best_r_negative{Policy::BestRFirst, Sign::Negative, 0, {}, {}};
  AngleTable shortest_positive{Policy::ShortestFirst, Sign::Positive, 0, {}, {}};
  AngleTable shortest_negative{Policy::ShortestFirst, Sign::Negative, 0, {}, {}};

  const AngleTable& get(Policy p, Sign s) const;
  AngleTable& get(Policy p, Sign s);
};

/// Entry nearest to `phi_deg`; ties go to the smaller |angle|. Throws
/// ValidationError on an empty table.
const AngleEntry& lookup(const AngleTable& table, double phi_deg);
/// Routes to the positive or negative table of `policy` by the sign of phi.
const AngleEntry& lookup(const AngleTableSet& tables, Policy policy, double phi_deg);

/// Gap statistics over successive angles of one table.
struct AngleSummary {
  std::size_t count = 0;
  double mean_gap = 0.0;
  double max_gap = 0.0;
  double min_gap = 0.0;
  std::size_t gaps_over_one_degree = 0;
};
AngleSummary summarize(const AngleTable& table);

// CSV: "# max_length=L", "# policy=...", "# sign=...", optional
// "# warning=...", then header "angle_deg,r,epsilon_deg,length,sequence".
void write_angle_table_csv(std::ostream& out, const AngleTable& table);
AngleTable read_angle_table_csv(std::istream& in);

/// best_r_first_positive.csv and friends.
std::string table_file_name(Policy p, Sign s);
void write_angle_tables(const std::string& dir, const AngleTableSet& tables);
/// Throws ValidationError if any of the four files is missing.
AngleTableSet read_angle_tables(const std::string& dir);

}  // namespace ftwalk
