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

#include <Eigen/Dense>

#include "ftwalk/matrix.hpp"

namespace ftwalk {

enum class OpKind {
  Ry,     ///< [[cos, sin], [-sin, cos]]
  Rz,     ///< diag(e^{i phi}, e^{-i phi})
  Phase,  ///< diag(1, e^{i phi})
  Z,      ///< diag(1, -1); carries no angle
};

const char* to_string(OpKind k);
OpKind parse_op_kind(const std::string& s);

/// A 2x2 unitary acting on entries (p, q) of the padded state vector.
/// Indices are 1-based with p < q; angles are in degrees.
struct TwoLevelOp {
  OpKind kind = OpKind::Ry;
  double angle_deg = 0.0;
  int p = 1;
  int q = 2;

  Eigen::Matrix2cd matrix() const;
  friend bool operator==(const TwoLevelOp&, const TwoLevelOp&) = default;
};

/// Ops are listed in matrix-product order: the first op is the leftmost
/// factor, i.e. the last one applied to a state.
struct Decomposition {
  std::size_t padded_dim = 0;
  std::vector<TwoLevelOp> ops;
};

/// Ops with |angle| below this (degrees) are dropped.
inline constexpr double kAngleDropThreshold = 1e-9;
/// cs_decompose fails if reconstruction deviates by this much.
inline constexpr double kReconstructionFailure = 1e-8;

/// block-diag(U, I) with dimension the smallest power of two >= max(N, 2).
ComplexMatrix pad_to_power_of_two(const ComplexMatrix& u);

/// Recursive cosine-sine decomposition of a 2^M x 2^M unitary into two-level
/// operations. Real orthogonal input yields only Ry and Z ops.
Decomposition cs_decompose(const ComplexMatrix& u);

/// Product of all ops embedded in padded_dim x padded_dim.
ComplexMatrix reconstruct(const Decomposition& d);

/// Normalizes to (-180, 180].
double normalize_degrees(double deg);

// CSV: optional "# padded_dim=N" comment, header "kind,angle_deg,p,q", rows in
// product order. Z rows leave angle_deg empty.
void write_decomposition_csv(std::ostream& out, const Decomposition& d);
/// padded_dim comes from the comment if present, otherwise the smallest power
/// of two >= max(q).
Decomposition read_decomposition_csv(std::istream& in);
Decomposition read_decomposition_csv_file(const std::string& path);

}  // namespace ftwalk
