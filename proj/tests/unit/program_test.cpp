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
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ftwalk/csd.hpp"
#include "ftwalk/error.hpp"
#include "ftwalk/program.hpp"
#include "ftwalk/report.hpp"
#include "ftwalk/search.hpp"
#include "ftwalk/walk.hpp"
#include "support.hpp"

namespace ftwalk {
namespace {

using testing::fixture;

const AngleTableSet& depth_two_tables() {
  static const AngleTableSet t = [] {
    SearchOptions opt;
    opt.max_length = 2;
    return search(opt).tables;
  }();
  return t;
}

TEST(ReferenceProgram, GateCount) {
  EXPECT_EQ(read_program_csv_file(fixture("eight_star_program.csv")).total_gate_count(), 763u);
}

TEST(ReferenceProgram, EffectiveMatrixMatchesReferenceRealPart) {
  const FtProgram prog = read_program_csv_file(fixture("eight_star_program.csv"));
  const ComplexMatrix wl = effective_matrix(prog, 16);
  const ComplexMatrix ap = read_matrix_json_file(fixture("eight_star_approx_real.json"));
  EXPECT_LT(wl.unitarity_residue(), 1e-9);
  double worst = 0.0;
  for (std::size_t i = 0; i < 16; ++i) {
    for (std::size_t j = 0; j < 16; ++j) {
      worst = std::max(worst, std::abs(wl(i, j).real() - ap(i, j).real()));
    }
  }
  EXPECT_LT(worst, 5e-5);
}

TEST(ReferenceProgram, ImaginaryPartOnlyInUpperRightQuadrant) {
  const ComplexMatrix wl =
      effective_matrix(read_program_csv_file(fixture("eight_star_program.csv")), 16);
  double inside = 0.0, outside = 0.0;
  for (std::size_t i = 0; i < 16; ++i) {
    for (std::size_t j = 0; j < 16; ++j) {
      const double v = std::abs(wl(i, j).imag());
      if (i < 8 && j >= 8) inside = std::max(inside, v);
      else outside = std::max(outside, v);
    }
  }
  EXPECT_GT(inside, 0.1);
  EXPECT_LT(outside, 1e-12);
}

TEST(ReferenceProgram, VerificationReport) {
  const FtProgram prog = read_program_csv_file(fixture("eight_star_program.csv"));
  const ComplexMatrix u = read_matrix_json_file(fixture("eight_star_operator.json"));
  const VerificationReport r = verify(prog, u);
  EXPECT_NEAR(r.distance, 0.0901, 5e-4);
  EXPECT_NEAR(r.max_abs_real, 0.0305, 1e-4);
  EXPECT_NEAR(r.max_rel_real, 0.0600, 5e-4);
  EXPECT_NEAR(r.max_imag, 0.180, 1e-3);
  EXPECT_EQ(r.gate_count, 763u);
  EXPECT_EQ(r.policy, "best_r_first");
  EXPECT_EQ(r.table_depth, 37);
  const VerificationReport again = verify(prog, u);
  EXPECT_NEAR(again.distance, r.distance, 1e-9);
}

TEST(ReferenceProgram, SequencesApproximateTheirRotations) {
  const FtProgram prog = read_program_csv_file(fixture("eight_star_program.csv"));
  const Decomposition d = read_decomposition_csv_file(fixture("eight_star_rotations.csv"));
  ASSERT_EQ(prog.records.size(), d.ops.size());
  for (std::size_t i = 0; i < d.ops.size(); ++i) {
    EXPECT_EQ(prog.records[i].p, d.ops[i].p);
    EXPECT_EQ(prog.records[i].q, d.ops[i].q);
    if (d.ops[i].kind != OpKind::Ry) continue;
    const auto m = match_ry_form(evaluate(prog.records[i].seq).to_matrix());
    ASSERT_TRUE(m.has_value()) << prog.records[i].seq.word();
    EXPECT_LT(std::abs(m->angle_deg - d.ops[i].angle_deg), 1.0) << prog.records[i].seq.word();
  }
}

TEST(Compile, ZOpBecomesZ) {
  const Decomposition d{16, {{OpKind::Z, 0.0, 15, 16}}};
  const FtProgram prog = compile(d, depth_two_tables(), Policy::BestRFirst);
  ASSERT_EQ(prog.records.size(), 1u);
  EXPECT_EQ(prog.records[0], (ProgramRecord{GateSequence("Z"), 15, 16}));
  EXPECT_EQ(prog.total_gate_count(), 1u);
}

TEST(Compile, PhaseOneEightyBecomesZ) {
  const Decomposition d{4, {{OpKind::Phase, 180.0, 1, 3}, {OpKind::Phase, -180.0, 2, 4}}};
  const FtProgram prog = compile(d, depth_two_tables(), Policy::ShortestFirst);
  EXPECT_EQ(prog.records[0].seq.word(), "Z");
  EXPECT_EQ(prog.records[1].seq.word(), "Z");
}

TEST(Compile, ComplexOpsAreOutOfScope) {
  EXPECT_THROW(compile({2, {{OpKind::Rz, 10.0, 1, 2}}}, depth_two_tables(), Policy::BestRFirst),
               ValidationError);
  EXPECT_THROW(compile({2, {{OpKind::Phase, 90.0, 1, 2}}}, depth_two_tables(), Policy::BestRFirst),
               ValidationError);
}

TEST(Compile, RotationsUseNearestNonZeroEntry) {
  const Decomposition d{4, {{OpKind::Ry, -90.0, 1, 3}, {OpKind::Ry, 44.0, 2, 4},
                            {OpKind::Ry, 5.0, 1, 2}, {OpKind::Ry, -0.5, 3, 4}}};
  const FtProgram prog = compile(d, depth_two_tables(), Policy::BestRFirst);
  EXPECT_EQ(prog.records[0].seq.word(), "XZ");
  EXPECT_EQ(prog.records[1].seq.word(), "HX");
  EXPECT_EQ(prog.records[2].seq.word(), "HX");
  EXPECT_EQ(prog.records[3].seq.word(), "HZ");
  EXPECT_EQ(prog.policy, "best_r_first");
  EXPECT_EQ(prog.table_depth, 2);
}

TEST(EffectiveMatrix, EmptyProgramIsIdentity) {
  EXPECT_EQ(effective_matrix(FtProgram{}, 4).max_deviation(ComplexMatrix::identity(4)), 0.0);
}

TEST(EffectiveMatrix, SingleRecord) {
  FtProgram prog;
  prog.records.push_back({GateSequence("XZ"), 1, 2});
  const ComplexMatrix m = effective_matrix(prog, 2);
  EXPECT_NEAR(std::abs(m(0, 1) - Complex(-1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(1, 0) - Complex(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(0, 0)), 0.0, 1e-15);
}

TEST(EffectiveMatrix, IndexOutOfRange) {
  FtProgram prog;
  prog.records.push_back({GateSequence("H"), 1, 5});
  EXPECT_THROW(effective_matrix(prog, 4), ValidationError);
}

TEST(ProgramCsv, RoundTripIsByteStable) {
  std::ifstream in(fixture("eight_star_program.csv"));
  const FtProgram prog = read_program_csv(in);
  std::ostringstream a;
  write_program_csv(a, prog);
  std::istringstream again(a.str());
  const FtProgram back = read_program_csv(again);
  EXPECT_EQ(back.records, prog.records);
  std::ostringstream b;
  write_program_csv(b, back);
  EXPECT_EQ(a.str(), b.str());
}

TEST(ProgramCsv, RejectsBadRows) {
  std::istringstream bad_seq("sequence,p,q\nHY,1,2\n");
  EXPECT_THROW(read_program_csv(bad_seq), ValidationError);
  std::istringstream bad_idx("sequence,p,q\nH,0,2\n");
  EXPECT_THROW(read_program_csv(bad_idx), ValidationError);
  std::istringstream bad_header("seq,p,q\nH,1,2\n");
  EXPECT_THROW(read_program_csv(bad_header), ValidationError);
}

TEST(Verify, EmptyProgramAgainstIdentity) {
  const VerificationReport r = verify(FtProgram{}, ComplexMatrix::identity(4));
  EXPECT_EQ(r.distance, 0.0);
  EXPECT_EQ(r.max_abs_real, 0.0);
  EXPECT_EQ(r.max_rel_real, 0.0);
  EXPECT_EQ(r.max_imag, 0.0);
  EXPECT_EQ(r.gate_count, 0u);
}

TEST(Verify, PadsTheReference) {
  FtProgram prog;
  prog.records.push_back({GateSequence("XZ"), 1, 2});
  Eigen::MatrixXd m(3, 3);
  m << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  const VerificationReport r = verify(prog, ComplexMatrix::from_real(m));
  EXPECT_EQ(r.dim, 4u);
  EXPECT_LT(r.distance, 1e-7);
}

TEST(Pipeline, BuildDecomposeCompileVerify) {
  const Graph g = read_graph_file(fixture("eight_star.graph"));
  const auto idx = build_state_index(g, read_state_order_file(fixture("eight_star.order")));
  const ComplexMatrix u = build_walk_operator(g, CoinFamily::grover(), idx).step;
  const Decomposition d = cs_decompose(pad_to_power_of_two(u));
  SearchOptions opt;
  opt.max_length = 24;
  const SearchResult tables = search(opt);
  for (Policy p : {Policy::BestRFirst, Policy::ShortestFirst}) {
    const FtProgram prog = compile(d, tables.tables, p);
    const VerificationReport r = verify(prog, u);
    EXPECT_EQ(r.gate_count, prog.total_gate_count());
    EXPECT_GE(r.distance, 0.0);
    EXPECT_LT(r.distance, 1.0);
  }
  const VerificationReport reference =
      verify(read_program_csv_file(fixture("eight_star_program.csv")), u);
  EXPECT_NEAR(reference.distance, 0.0901, 5e-4);
}

}  // namespace
}  // namespace ftwalk
