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
#include <set>

#include <gtest/gtest.h>

#include "ftwalk/error.hpp"
#include "ftwalk/steane.hpp"

namespace ftwalk::steane {
namespace {

const double kH = 1.0 / std::numbers::sqrt2;
const Complex kT = std::polar(1.0, std::numbers::pi / 4);

std::size_t nonzero(const StateVector& s) {
  std::size_t n = 0;
  for (const auto& a : s.amplitudes()) n += std::abs(a) > 1e-12;
  return n;
}

TEST(Encode, BasisStates) {
  for (int b = 0; b < 2; ++b) {
    const StateVector s = encode(b);
    EXPECT_EQ(nonzero(s), 8u);
    EXPECT_NEAR(s.norm(), 1.0, 1e-15);
    for (const auto& w : codewords(b)) {
      std::size_t idx = 0;
      for (char c : w) idx = idx * 2 + static_cast<std::size_t>(c == '1');
      EXPECT_NEAR(s.amplitudes()(static_cast<Eigen::Index>(idx)).real(), 1.0 / std::sqrt(8.0), 1e-15);
    }
  }
  EXPECT_EQ(fidelity(encode(0), encode(1)), 0.0);
}

TEST(Encode, CodewordsFormTheHammingCode) {
  std::set<std::string> all;
  for (int b = 0; b < 2; ++b) {
    for (const auto& w : codewords(b)) {
      all.insert(w);
      int weight = 0;
      for (char c : w) weight += c == '1';
      EXPECT_EQ(weight % 2, b == 0 ? 0 : 1) << w;
    }
  }
  EXPECT_EQ(all.size(), 16u);
}

TEST(Encode, Superposition) {
  EXPECT_NEAR(fidelity(encode_superposition(1, 0), encode(0)), 1.0, 1e-15);
  const StateVector theta = encode_superposition(kH, kH * kT);
  EXPECT_NEAR(logical_fidelity(theta, kH, kH * kT), 1.0, 1e-15);
  EXPECT_THROW(encode_superposition(1, 1), ValidationError);
}

TEST(Transversal, Examples) {
  const LogicalBlock b = LogicalBlock::at(0);
  EXPECT_NEAR(fidelity(transversal(LogicalGate::X, b, encode(0)), encode(1)), 1.0, 1e-10);
  EXPECT_NEAR(fidelity(transversal(LogicalGate::Z, b, encode(0)), encode(0)), 1.0, 1e-10);
  EXPECT_NEAR(logical_fidelity(transversal(LogicalGate::H, b, encode(0)), kH, kH), 1.0, 1e-10);
  const StateVector s_plus = transversal(LogicalGate::S, b, encode_superposition(kH, kH));
  EXPECT_NEAR(logical_fidelity(s_plus, kH, Complex(0, kH)), 1.0, 1e-10);
  const StateVector sd_plus = transversal(LogicalGate::Sdg, b, encode_superposition(kH, kH));
  EXPECT_NEAR(logical_fidelity(sd_plus, kH, Complex(0, -kH)), 1.0, 1e-10);
}

TEST(Transversal, ExactLogicalAmplitudes) {
  // Not only fidelity: the relative phase of S must be +i, not -i.
  const auto [a0, a1] =
      logical_amplitudes(transversal(LogicalGate::S, LogicalBlock::at(0), encode(1)));
  EXPECT_NEAR(std::abs(a0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(a1 - Complex(0, 1)), 0.0, 1e-12);
}

TEST(Transversal, InvalidBlock) {
  LogicalBlock b = LogicalBlock::at(0);
  b.qubits[3] = b.qubits[2];
  EXPECT_THROW(transversal(LogicalGate::X, b, encode(0)), ValidationError);
  EXPECT_THROW(transversal(LogicalGate::X, LogicalBlock::at(1), encode(0)), ValidationError);
}

TEST(TransversalCnot, LogicalTruthTable) {
  const LogicalBlock c = LogicalBlock::at(0), t = LogicalBlock::at(7);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const StateVector out = transversal_cnot(c, t, tensor(encode(a), encode(b)));
      EXPECT_NEAR(fidelity(out, tensor(encode(a), encode(a ^ b))), 1.0, 1e-10);
    }
  }
}

TEST(TransversalCnot, MakesBellState) {
  const StateVector out = transversal_cnot(LogicalBlock::at(0), LogicalBlock::at(7),
                                           tensor(encode_superposition(kH, kH), encode(0)));
  StateVector bell = tensor(encode(0), encode(0));
  bell.amplitudes() = kH * (bell.amplitudes() + tensor(encode(1), encode(1)).amplitudes());
  EXPECT_NEAR(fidelity(out, bell), 1.0, 1e-10);
}

TEST(TransversalCnot, OverlappingBlocksRejected) {
  EXPECT_THROW(transversal_cnot(LogicalBlock::at(0), LogicalBlock::at(3),
                                tensor(encode(0), encode(0))),
               ValidationError);
}

TEST(TGate, ZeroInputBothBranches) {
  for (int pb = 0; pb < 2; ++pb) {
    for (int mb = 0; mb < 2; ++mb) {
      const auto r = ft_t_gate(encode(0), {pb, mb, 0});
      EXPECT_NEAR(fidelity(r.output, encode(0)), 1.0, 1e-9);
    }
  }
}

TEST(TGate, PlusInputBothBranches) {
  for (int mb = 0; mb < 2; ++mb) {
    const auto r = ft_t_gate(encode_superposition(kH, kH), {0, mb, 0});
    EXPECT_NEAR(logical_fidelity(r.output, kH, kH * kT), 1.0, 1e-9);
    EXPECT_EQ(r.measurement_branch, mb);
  }
}

TEST(TGate, ExactLogicalAction) {
  // The output must equal T|alpha> up to a global phase, so compare the ratio
  // of logical amplitudes rather than only the fidelity.
  const auto r = ft_t_gate(encode_superposition(0.6, Complex(0, 0.8)), {1, 1, 0});
  const auto [a0, a1] = logical_amplitudes(r.output);
  EXPECT_NEAR(std::abs(a1 / a0 - Complex(0, 0.8) * kT / 0.6), 0.0, 1e-9);
}

TEST(TGate, CorrectionTranscript) {
  const auto r = ft_t_gate(encode_superposition(kH, kH), {1, 1, 0});
  std::vector<std::string> steps;
  for (const auto& s : r.transcript) steps.push_back(s.step);
  EXPECT_EQ(steps, (std::vector<std::string>{"prepare_ancilla", "measure_eSX", "ancilla_fixup",
                                             "transversal_cnot", "measure_data_Z", "correction",
                                             "output"}));
  EXPECT_EQ(r.transcript[2].gates, "Z");
  EXPECT_EQ(r.transcript[5].gates, "SX");
  EXPECT_NEAR(r.transcript[4].probability, 0.5, 1e-12);
  EXPECT_NEAR(*r.transcript.back().fidelity, 1.0, 1e-9);
  EXPECT_NE(to_json_line(r.transcript[5]).find("\"SX\""), std::string::npos);
}

TEST(TGate, RandomInputsAndBranches) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  std::bernoulli_distribution coin;
  for (int t = 0; t < 100; ++t) {
    Eigen::Vector2cd v(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
    v.normalize();
    const int pb = coin(rng), mb = coin(rng);
    const auto r = ft_t_gate(encode_superposition(v(0), v(1)), {pb, mb, 0});
    EXPECT_GE(logical_fidelity(r.output, v(0), v(1) * kT), 1.0 - 1e-9);
    EXPECT_NEAR(r.output.norm(), 1.0, 1e-10);
  }
}

TEST(TGate, SampledBranchesAreSeedDeterministic) {
  TGateOptions opt;
  opt.seed = 42;
  const auto a = ft_t_gate(encode_superposition(kH, kH), opt);
  const auto b = ft_t_gate(encode_superposition(kH, kH), opt);
  EXPECT_EQ(a.preparation_branch, b.preparation_branch);
  EXPECT_EQ(a.measurement_branch, b.measurement_branch);
  EXPECT_THROW(ft_t_gate(encode(0), {2, 0, 0}), ValidationError);
}

TEST(ErrorCorrection, Examples) {
  const auto x3 = inject_and_correct(PauliError{Pauli::X, 3}, encode(0));
  EXPECT_NEAR(fidelity(x3.state, encode(0)), 1.0, 1e-10);
  EXPECT_EQ(x3.syndrome, 3u);
  const StateVector plus = encode_superposition(kH, kH);
  const auto z7 = inject_and_correct(PauliError{Pauli::Z, 7}, plus);
  EXPECT_NEAR(fidelity(z7.state, plus), 1.0, 1e-10);
  EXPECT_EQ(z7.syndrome, 7u << 3);
  const auto none = inject_and_correct(std::vector<PauliError>{}, plus);
  EXPECT_EQ(none.syndrome, 0u);
  EXPECT_FALSE(none.correction.has_value());
  EXPECT_NEAR(fidelity(none.state, plus), 1.0, 1e-15);
}

TEST(ErrorCorrection, AllSingleQubitPaulis) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Eigen::Vector2cd v(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
  v.normalize();
  const StateVector inputs[] = {encode(0), encode(1), encode_superposition(v(0), v(1))};
  for (const auto& in : inputs) {
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      for (int q = 1; q <= 7; ++q) {
        const auto r = inject_and_correct(PauliError{p, q}, in);
        EXPECT_GE(fidelity(r.state, in), 1.0 - 1e-10);
        ASSERT_TRUE(r.correction.has_value());
        EXPECT_EQ(r.correction->qubit, q);
        EXPECT_EQ(r.correction->pauli, p);
      }
    }
  }
}

TEST(ErrorCorrection, MultiQubitErrorsRejected) {
  EXPECT_THROW(inject_and_correct({{Pauli::X, 1}, {Pauli::X, 2}}, encode(0)), ValidationError);
  EXPECT_THROW(inject_and_correct(PauliError{Pauli::X, 8}, encode(0)), ValidationError);
}

TEST(Checks, AllPass) {
  for (const auto& c : run_checks(5, 25)) EXPECT_TRUE(c.pass) << c.name << " worst " << c.worst;
}

}  // namespace
}  // namespace ftwalk::steane
