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

#include "ftwalk/gates.hpp"

#include <algorithm>
#include <cmath>

#include "ftwalk/error.hpp"

namespace ftwalk {

namespace {

constexpr double kDeg = 180.0 / M_PI;

int rank(char c) {
  switch (c) {
    case 'H': return 0;
    case 'X': return 1;
    case 'Z': return 2;
    case 'T': return 3;
    case 'S': return 4;
    case 's': return 5;
    default: return -1;
  }
}

std::array<Ring2x2, 6> make_gate_matrices() {
  const RingScalar one = RingScalar::one();
  const RingScalar h = RingScalar::inv_sqrt2();
  std::array<Ring2x2, 6> m;
  auto diag = [&](const RingScalar& lower) {
    Ring2x2 d;
    d(0, 0) = one;
    d(1, 1) = lower;
    return d;
  };
  Ring2x2 hm;
  hm(0, 0) = h;
  hm(0, 1) = h;
  hm(1, 0) = h;
  hm(1, 1) = -h;
  Ring2x2 xm;
  xm(0, 1) = one;
  xm(1, 0) = one;
  m[static_cast<std::size_t>(Gate::H)] = hm;
  m[static_cast<std::size_t>(Gate::X)] = xm;
  m[static_cast<std::size_t>(Gate::Z)] = diag(-one);
  m[static_cast<std::size_t>(Gate::T)] = diag(RingScalar::omega_power(1));
  m[static_cast<std::size_t>(Gate::S)] = diag(RingScalar::omega_power(2));
  m[static_cast<std::size_t>(Gate::Sdg)] = diag(RingScalar::omega_power(6));
  return m;
}

}  // namespace

char symbol(Gate g) { return "HXZTSs"[static_cast<std::size_t>(g)]; }

Gate gate_from_symbol(char c) {
  const int r = rank(c);
  if (r < 0) throw ValidationError(std::string("invalid gate symbol '") + c + "'");
  return static_cast<Gate>(r);
}

const Ring2x2& gate_matrix(Gate g) {
  static const std::array<Ring2x2, 6> table = make_gate_matrices();
  return table[static_cast<std::size_t>(g)];
}

GateSequence::GateSequence(std::string word) : word_(std::move(word)) {
  for (char c : word_) gate_from_symbol(c);
}

std::vector<Gate> GateSequence::gates() const {
  std::vector<Gate> out;
  out.reserve(word_.size());
  for (char c : word_) out.push_back(gate_from_symbol(c));
  return out;
}

bool word_less(std::string_view a, std::string_view b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](char x, char y) { return rank(x) < rank(y); });
}

std::strong_ordering operator<=>(const GateSequence& a, const GateSequence& b) {
  if (a.length() != b.length()) return a.length() <=> b.length();
  if (word_less(a.word_, b.word_)) return std::strong_ordering::less;
  if (word_less(b.word_, a.word_)) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Ring2x2 evaluate(const GateSequence& seq) {
  Ring2x2 acc = Ring2x2::identity();
  for (Gate g : seq.gates()) acc = ring_mul(acc, gate_matrix(g));
  return acc;
}

std::optional<RyMatch> match_ry_form(const Eigen::Matrix2cd& m, double accept_r) {
  const double c00 = m(0, 0).real(), c11 = m(1, 1).real();
  const double s01 = m(0, 1).real(), s10 = m(1, 0).real();
  if (std::abs(c00 - c11) >= kFormTolerance) return std::nullopt;
  if (std::abs(s01 + s10) >= kFormTolerance) return std::nullopt;
  const double r = std::max({std::abs(m(0, 0).imag()), std::abs(m(0, 1).imag()),
                             std::abs(m(1, 0).imag()), std::abs(m(1, 1).imag())});
  if (!(r < accept_r)) return std::nullopt;

  const double sine = (s01 - s10) / 2.0;
  const double cosine = (c00 + c11) / 2.0;
  RyMatch out;
  out.angle_deg = std::atan2(sine, cosine) * kDeg;
  out.r = r;
  // Angle on phi's branch whose sine is the off-diagonal value.
  const double base = std::asin(std::clamp(sine, -1.0, 1.0)) * kDeg;
  double branch = base;
  if (out.angle_deg > 90.0) branch = 180.0 - base;
  if (out.angle_deg < -90.0) branch = -180.0 - base;
  out.epsilon_deg = std::abs(branch - out.angle_deg);
  return out;
}

}  // namespace ftwalk
