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

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ftwalk/ring.hpp"

namespace ftwalk {

/// The fault-tolerant gate alphabet, in search tie-break order H<X<Z<T<S<s.
/// `Sdg` is written "s" (S^dagger). T^dagger is deliberately absent.
enum class Gate : std::uint8_t { H = 0, X = 1, Z = 2, T = 3, S = 4, Sdg = 5 };

inline constexpr std::array<Gate, 6> kAlphabet = {Gate::H, Gate::X, Gate::Z,
                                                  Gate::T, Gate::S, Gate::Sdg};

char symbol(Gate g);
/// Throws ValidationError for anything outside "HXZTSs".
Gate gate_from_symbol(char c);
const Ring2x2& gate_matrix(Gate g);

/// A word over the alphabet. The leftmost symbol is the leftmost matrix
/// factor, so the rightmost gate acts on a state first.
class GateSequence {
 public:
  GateSequence() = default;
  explicit GateSequence(std::string word);

  const std::string& word() const { return word_; }
  std::size_t length() const { return word_.size(); }
  bool empty() const { return word_.empty(); }
  std::vector<Gate> gates() const;

  friend bool operator==(const GateSequence&, const GateSequence&) = default;
  /// Shorter first, then lexicographic under the alphabet order.
  friend std::strong_ordering operator<=>(const GateSequence& a, const GateSequence& b);

 private:
  std::string word_;
};

/// Lexicographic comparison of two words under H<X<Z<T<S<s (not ASCII).
bool word_less(std::string_view a, std::string_view b);

/// Exact left-to-right product of the gate matrices.
Ring2x2 evaluate(const GateSequence& seq);

/// Result of testing a 2x2 matrix against the approximate real-rotation form
///
///   [[ cos(phi) + a i,        sin(phi +- eps) + b i ],
///    [ -sin(phi +- eps) + c i, cos(phi) + d i       ]].
struct RyMatch {
  double angle_deg = 0.0;    ///< atan2 of the averaged sine and cosine parts
  double r = 0.0;            ///< max(|a|, |b|, |c|, |d|)
  double epsilon_deg = 0.0;  ///< deviation of the off-diagonal sine argument
};

inline constexpr double kDefaultAcceptR = 0.1;
/// Tolerance on Re m00 = Re m11 and Re m01 = -Re m10.
inline constexpr double kFormTolerance = 1e-9;

std::optional<RyMatch> match_ry_form(const Eigen::Matrix2cd& m,
                                     double accept_r = kDefaultAcceptR);

}  // namespace ftwalk
