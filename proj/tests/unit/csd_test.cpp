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

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "ftwalk/csd.hpp"
#include "ftwalk/error.hpp"
#include "support.hpp"

namespace ftwalk {
namespace {

using testing::fixture;
using testing::random_orthogonal;
using testing::random_unitary;

ComplexMatrix ry(double deg) {
  const double a = deg * std::numbers::pi / 180.0;
  Eigen::MatrixXd m(2, 2);
  m << std::cos(a), std::sin(a), -std::sin(a), std::cos(a);
  return ComplexMatrix::from_real(m);
}

bool real_kinds_only(const Decomposition& d) {
  for (const auto& op : d.ops) {
    if (op.kind != OpKind::Ry && op.kind != OpKind::Z) return false;
  }
  return true;
}

TEST(Pad, Dimensions) {
  EXPECT_EQ(pad_to_power_of_two(ComplexMatrix::identity(16)).dim(), 16u);
  EXPECT_EQ(pad_to_power_of_two(ComplexMatrix::identity(9)).dim(), 16u);
  EXPECT_EQ(pad_to_power_of_two(ComplexMatrix::identity(1)).dim(), 2u);
}

TEST(Pad, KeepsBlockAndAddsIdentity) {
  std::mt19937_64 rng(1);
  const ComplexMatrix u(random_unitary(3, rng));
  const ComplexMatrix p = pad_to_power_of_two(u);
  ASSERT_EQ(p.dim(), 4u);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(p(i, j), u(i, j));
    EXPECT_EQ(p(i, 3), Complex(0.0));
    EXPECT_EQ(p(3, i), Complex(0.0));
  }
  EXPECT_EQ(p(3, 3), Complex(1.0));
}

TEST(CsDecompose, SingleRotation) {
  const Decomposition d = cs_decompose(ry(30.0));
  ASSERT_EQ(d.ops.size(), 1u);
  EXPECT_EQ(d.ops[0].kind, OpKind::Ry);
  EXPECT_NEAR(d.ops[0].angle_deg, 30.0, 1e-12);
  EXPECT_EQ(d.ops[0].p, 1);
  EXPECT_EQ(d.ops[0].q, 2);
}

TEST(CsDecompose, IdentityGivesNoOps) {
  for (std::size_t n : {2u, 4u, 8u, 16u}) {
    const Decomposition d = cs_decompose(ComplexMatrix::identity(n));
    EXPECT_TRUE(d.ops.empty());
    EXPECT_EQ(reconstruct(d).max_deviation(ComplexMatrix::identity(n)), 0.0);
  }
}

TEST(CsDecompose, EightStarOperator) {
  const ComplexMatrix u = read_matrix_json_file(fixture("eight_star_operator.json"));
  const Decomposition d = cs_decompose(u);
  EXPECT_LT(reconstruct(d).max_deviation(u), 1e-10);
  EXPECT_TRUE(real_kinds_only(d));
}

TEST(CsDecompose, RejectsBadInput) {
  EXPECT_THROW(cs_decompose(ComplexMatrix::identity(3)), ValidationError);
  Eigen::MatrixXd m(2, 2);
  m << 1, 1, 0, 1;
  EXPECT_THROW(cs_decompose(ComplexMatrix::from_real(m)), ValidationError);
}

TEST(CsDecompose, ReflectionUsesZ) {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, 1, 0;
  const Decomposition d = cs_decompose(ComplexMatrix::from_real(m));
  EXPECT_TRUE(real_kinds_only(d));
  EXPECT_LT(reconstruct(d).max_deviation(ComplexMatrix::from_real(m)), 1e-12);
}

TEST(Reconstruct, SingleOpEmbedding) {
  Decomposition d{16, {{OpKind::Ry, -90.0, 1, 9}}};
  const ComplexMatrix m = reconstruct(d);
  for (std::size_t i = 0; i < 16; ++i) {
    for (std::size_t j = 0; j < 16; ++j) {
      double want = (i == j && i != 0 && i != 8) ? 1.0 : 0.0;
      if (i == 0 && j == 8) want = -1.0;
      if (i == 8 && j == 0) want = 1.0;
      EXPECT_NEAR(m(i, j).real(), want, 1e-15);
      EXPECT_EQ(m(i, j).imag(), 0.0);
    }
  }
}

TEST(Reconstruct, EmptyIsIdentity) {
  EXPECT_EQ(reconstruct(Decomposition{8, {}}).max_deviation(ComplexMatrix::identity(8)), 0.0);
}

TEST(Reconstruct, ReferenceRotationListGivesTheOperator) {
  const Decomposition d = read_decomposition_csv_file(fixture("eight_star_rotations.csv"));
  EXPECT_EQ(d.padded_dim, 16u);
  EXPECT_EQ(d.ops.size(), 34u);
  const ComplexMatrix u = read_matrix_json_file(fixture("eight_star_operator.json"));
  EXPECT_LT(reconstruct(d).max_deviation(u), 1e-3);
}

TEST(TwoLevelOpTest, MatrixConventions) {
  const double a = 0.4;
  const Eigen::Matrix2cd rz = TwoLevelOp{OpKind::Rz, a * 180.0 / std::numbers::pi, 1, 2}.matrix();
  EXPECT_NEAR(std::abs(rz(0, 0) - std::polar(1.0, a)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(rz(1, 1) - std::polar(1.0, -a)), 0.0, 1e-15);
  const Eigen::Matrix2cd ph = TwoLevelOp{OpKind::Phase, a * 180.0 / std::numbers::pi, 1, 2}.matrix();
  EXPECT_EQ(ph(0, 0), Complex(1.0));
  EXPECT_NEAR(std::abs(ph(1, 1) - std::polar(1.0, a)), 0.0, 1e-15);
  const Eigen::Matrix2cd z = TwoLevelOp{OpKind::Z, 0.0, 1, 2}.matrix();
  EXPECT_EQ(z(1, 1), Complex(-1.0));
}

TEST(NormalizeDegrees, HalfOpenRange) {
  EXPECT_EQ(normalize_degrees(180.0), 180.0);
  EXPECT_EQ(normalize_degrees(-180.0), 180.0);
  EXPECT_NEAR(normalize_degrees(270.0), -90.0, 1e-12);
  EXPECT_NEAR(normalize_degrees(-540.5), 179.5, 1e-12);
}

TEST(DecompositionCsv, RoundTrip) {
  std::mt19937_64 rng(8);
  const Decomposition d = cs_decompose(ComplexMatrix(random_unitary(8, rng)));
  std::ostringstream a;
  write_decomposition_csv(a, d);
  std::istringstream in(a.str());
  const Decomposition back = read_decomposition_csv(in);
  std::ostringstream b;
  write_decomposition_csv(b, back);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(back.padded_dim, 8u);
  EXPECT_LT(reconstruct(back).max_deviation(reconstruct(d)), 1e-13);
}

TEST(DecompositionCsv, RejectsBadRows) {
  std::istringstream bad_kind("kind,angle_deg,p,q\nRx,10,1,2\n");
  EXPECT_THROW(read_decomposition_csv(bad_kind), ValidationError);
  std::istringstream bad_idx("kind,angle_deg,p,q\nRy,10,2,2\n");
  EXPECT_THROW(read_decomposition_csv(bad_idx), ValidationError);
  std::istringstream no_header("Ry,10,1,2\n");
  EXPECT_THROW(read_decomposition_csv(no_header), ValidationError);
}

// q - p is the half block size h and p sits in the first half of its block.
void expect_block_targets(const Decomposition& d) {
  for (const auto& op : d.ops) {
    const int h = op.q - op.p;
    ASSERT_GT(h, 0);
    EXPECT_EQ(h & (h - 1), 0) << "half block " << h;
    EXPECT_LT((op.p - 1) % (2 * h), h);
    EXPECT_LE(op.q, static_cast<int>(d.padded_dim));
  }
}

TEST(CsdProperties, RandomUnitariesRoundTrip) {
  std::mt19937_64 rng(2024);
  const std::size_t dims[] = {2, 4, 8, 16, 32};
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = dims[t % 5];
    const ComplexMatrix u(random_unitary(n, rng));
    const Decomposition d = cs_decompose(u);
    EXPECT_LT(distance(u, reconstruct(d)), 1e-9) << "trial " << t << " dim " << n;
    expect_block_targets(d);
  }
}

TEST(CsdProperties, RealOrthogonalInputsGiveRealOps) {
  std::mt19937_64 rng(77);
  const std::size_t dims[] = {2, 4, 8, 16, 32};
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = dims[t % 5];
    const ComplexMatrix u = ComplexMatrix::from_real(random_orthogonal(n, rng));
    const Decomposition d = cs_decompose(u);
    EXPECT_TRUE(real_kinds_only(d)) << "trial " << t;
    EXPECT_LT(reconstruct(d).max_deviation(u), 1e-10);
    expect_block_targets(d);
  }
}

TEST(CsdProperties, Deterministic) {
  std::mt19937_64 rng(5);
  const ComplexMatrix u(random_unitary(16, rng));
  std::ostringstream a, b;
  write_decomposition_csv(a, cs_decompose(u));
  write_decomposition_csv(b, cs_decompose(u));
  EXPECT_EQ(a.str(), b.str());
}

}  // namespace
}  // namespace ftwalk
