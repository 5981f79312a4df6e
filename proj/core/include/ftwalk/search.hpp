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
#include <functional>
#include <string>
#include <vector>

#include "ftwalk/angle_table.hpp"
#include "ftwalk/gates.hpp"
#include "ftwalk/ring.hpp"

namespace ftwalk {

/// Longest word the packed search representation can hold.
inline constexpr int kMaxSearchLength = 42;

struct SearchLevel {
  int length = 0;
  std::size_t distinct = 0;  ///< matrices first reached at this length
  std::size_t accepted = 0;  ///< of those, how many match the rotation form
  double seconds = 0.0;
};

struct SearchOptions {
  int max_length = 1;
  double accept_r = kDefaultAcceptR;
  unsigned workers = 1;
  /// Dedup up to a global phase w^j instead of exactly.
  bool fold_global_phase = false;
  /// Permutation of "HXZTSs" giving the symbol order used to pick the kept
  /// word among equal-length duplicates. Only matters for which word is
  /// reported, except under fold_global_phase where it also picks the phase.
  std::string tie_break_order = "HXZTSs";
  /// 0 means unlimited. When the next length would not fit, the search stops
  /// at the last completed length and records a warning.
  std::size_t memory_budget_bytes = 0;
  /// Called once per distinct matrix with its minimal-length representative.
  std::function<void(const Ring2x2&, const GateSequence&)> visit;
  std::function<void(const SearchLevel&)> progress;
};

struct SearchResult {
  int completed_length = 0;
  std::string warning;
  std::vector<SearchLevel> levels;
  AngleTableSet tables;
};

/// Breadth-first enumeration of all products over the alphabet up to
/// max_length. A word is dropped when its exact matrix already appeared at the
/// same or a shorter length; among equal-length words the alphabet-lexicographic
/// smallest is kept. Every distinct matrix is tested with match_ry_form and the
/// four angle tables are built from the matches. Output is independent of
/// `workers`.
SearchResult search(const SearchOptions& options);

}  // namespace ftwalk
