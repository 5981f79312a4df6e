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

#include "ftwalk/steane.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <json.hpp>

#include "ftwalk/error.hpp"

namespace ftwalk::steane {

namespace {

constexpr double kNormTolerance = 1e-10;

const Complex kI{0.0, 1.0};

Eigen::Matrix2cd gate(LogicalGate g) {
  const double h = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix2cd m;
  switch (g) {
    case LogicalGate::H: m << h, h, h, -h; break;
    case LogicalGate::X: m << 0, 1, 1, 0; break;
    case LogicalGate::Z: m << 1, 0, 0, -1; break;
    case LogicalGate::S: m << 1, 0, 0, kI; break;
    case LogicalGate::Sdg: m << 1, 0, 0, -kI; break;
  }
  return m;
}

Eigen::Matrix2cd physical_gate(LogicalGate g) {
  if (g == LogicalGate::S) return gate(LogicalGate::Sdg);
  if (g == LogicalGate::Sdg) return gate(LogicalGate::S);
  return gate(g);
}

Eigen::Matrix2cd t_matrix() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4);
  return m;
}

void check_block(const LogicalBlock& b, const StateVector& psi) {
  for (std::size_t i = 0; i < b.qubits.size(); ++i) {
    if (b.qubits[i] < 0 || b.qubits[i] >= psi.qubits()) {
      throw ValidationError("block qubit " + std::to_string(b.qubits[i]) + " outside a " +
                            std::to_string(psi.qubits()) + "-qubit state");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (b.qubits[i] == b.qubits[j]) throw ValidationError("block repeats a qubit");
    }
  }
}

std::size_t index_of(const std::string& bits) {
  std::size_t v = 0;
  for (char c : bits) v = (v << 1) | (c == '1' ? 1u : 0u);
  return v;
}

Complex inner(const StateVector& a, const StateVector& b) {
  return a.amplitudes().dot(b.amplitudes());
}

void normalize(StateVector& psi) {
  const double n = psi.amplitudes().norm();
  if (n == 0.0) throw InvariantError("projection onto a zero-probability outcome");
  psi.amplitudes() /= n;
}

int sample(std::mt19937_64& rng, double p0) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p0 ? 0 : 1;
}

}  // namespace

StateVector::StateVector(int qubits) : qubits_(qubits) {
  if (qubits < 1 || qubits > kMaxQubits) {
    throw ValidationError("qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
  }
  amp_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << qubits);
  amp_(0) = 1.0;
}

StateVector::StateVector(int qubits, Eigen::VectorXcd amplitudes) : StateVector(qubits) {
  if (amplitudes.size() != amp_.size()) throw ValidationError("amplitude count mismatch");
  if (std::abs(amplitudes.norm() - 1.0) > kNormTolerance) {
    throw ValidationError("state is not normalized");
  }
  amp_ = std::move(amplitudes);
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  StateVector out(a.qubits() + b.qubits());
  const auto nb = b.amplitudes().size();
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    out.amplitudes().segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
  }
  return out;
}

LogicalBlock LogicalBlock::at(int offset) {
  LogicalBlock b;
  for (int i = 0; i < kBlockSize; ++i) b.qubits[static_cast<std::size_t>(i)] = offset + i;
  return b;
}

const std::array<std::string, 8>& codewords(int bit) {
  static const std::array<std::string, 8> zero = {"0000000", "1010101", "0110011", "1100110",
                                                  "0001111", "1011010", "0111100", "1101001"};
  static const std::array<std::string, 8> one = {"1111111", "0101010", "1001100", "0011001",
                                                 "1110000", "0100101", "1000011", "0010110"};
  if (bit != 0 && bit != 1) throw ValidationError("logical bit must be 0 or 1");
  return bit == 0 ? zero : one;
}

StateVector encode(int bit) {
  StateVector psi(kBlockSize);
  psi.amplitudes().setZero();
  const double a = 1.0 / std::sqrt(8.0);
  for (const auto& w : codewords(bit)) psi.amplitudes()(static_cast<Eigen::Index>(index_of(w))) = a;
  return psi;
}

StateVector encode_superposition(Complex alpha, Complex beta) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kNormTolerance) {
    throw ValidationError("|alpha|^2 + |beta|^2 must be 1");
  }
  StateVector psi(kBlockSize);
  psi.amplitudes() = alpha * encode(0).amplitudes() + beta * encode(1).amplitudes();
  return psi;
}

const char* to_string(LogicalGate g) {
  switch (g) {
    case LogicalGate::H: return "H";
    case LogicalGate::X: return "X";
    case LogicalGate::Z: return "Z";
    case LogicalGate::S: return "S";
    case LogicalGate::Sdg: return "s";
  }
  return "?";
}

void apply_single(StateVector& psi, int qubit, const Eigen::Matrix2cd& g) {
  if (qubit < 0 || qubit >= psi.qubits()) throw ValidationError("qubit out of range");
  auto& a = psi.amplitudes();
  const auto bit = static_cast<Eigen::Index>(psi.bit_of(qubit));
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (i & bit) continue;
    const Complex x0 = a(i);
    const Complex x1 = a(i | bit);
    a(i) = g(0, 0) * x0 + g(0, 1) * x1;
    a(i | bit) = g(1, 0) * x0 + g(1, 1) * x1;
  }
}

void apply_cnot(StateVector& psi, int control, int target) {
  if (control == target) throw ValidationError("CNOT control equals target");
  if (control < 0 || control >= psi.qubits() || target < 0 || target >= psi.qubits()) {
    throw ValidationError("qubit out of range");
  }
  auto& a = psi.amplitudes();
  const auto c = static_cast<Eigen::Index>(psi.bit_of(control));
  const auto t = static_cast<Eigen::Index>(psi.bit_of(target));
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if ((i & c) && !(i & t)) std::swap(a(i), a(i | t));
  }
}

StateVector transversal(LogicalGate g, const LogicalBlock& block, StateVector psi) {
  check_block(block, psi);
  const auto m = physical_gate(g);
  for (int q : block.qubits) apply_single(psi, q, m);
  return psi;
}

StateVector transversal_cnot(const LogicalBlock& control, const LogicalBlock& target,
                             StateVector psi) {
  check_block(control, psi);
  check_block(target, psi);
  for (int c : control.qubits) {
    for (int t : target.qubits) {
      if (c == t) throw ValidationError("control and target blocks overlap");
    }
  }
  for (int i = 0; i < kBlockSize; ++i) {
    apply_cnot(psi, control.qubits[static_cast<std::size_t>(i)],
               target.qubits[static_cast<std::size_t>(i)]);
  }
  return psi;
}

std::pair<Complex, Complex> logical_amplitudes(const StateVector& psi) {
  if (psi.qubits() != kBlockSize) throw ValidationError("logical amplitudes need a 7-qubit state");
  return {inner(encode(0), psi), inner(encode(1), psi)};
}

double logical_fidelity(const StateVector& psi, Complex alpha, Complex beta) {
  return std::norm(inner(encode_superposition(alpha, beta), psi));
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.qubits() != b.qubits()) throw ValidationError("qubit count mismatch");
  return std::norm(inner(a, b));
}

std::string to_json_line(const TranscriptStep& s) {
  nlohmann::ordered_json j;
  j["step"] = s.step;
  j["gates"] = s.gates;
  j["branch"] = s.branch;
  j["probability"] = s.probability;
  j["fidelity"] = s.fidelity ? nlohmann::ordered_json(*s.fidelity) : nlohmann::ordered_json();
  return j.dump();
}

TGateResult ft_t_gate(const StateVector& alpha_block, const TGateOptions& options) {
  if (alpha_block.qubits() != kBlockSize) throw ValidationError("T protocol input must be 7 qubits");
  for (auto b : {options.preparation_branch, options.measurement_branch}) {
    if (b && *b != 0 && *b != 1) throw ValidationError("branch must be 0 or 1");
  }
  std::mt19937_64 rng(options.seed);
  const auto [a0, a1] = logical_amplitudes(alpha_block);
  const Complex e = std::polar(1.0, std::numbers::pi / 4);
  const double h = 1.0 / std::numbers::sqrt2;
  const LogicalBlock block = LogicalBlock::at(0);

  TGateResult res;
  res.transcript.push_back({"prepare_ancilla", "", -1, 1.0, logical_fidelity(encode(0), 1, 0)});

  // Project |0_L> onto the +-1 eigenspaces of e^{-i pi/4} S X.
  StateVector zero = encode(0);
  StateVector m_zero = transversal(LogicalGate::S, block, transversal(LogicalGate::X, block, zero));
  m_zero.amplitudes() *= std::conj(e);
  StateVector plus = zero, minus = zero;
  plus.amplitudes() = (zero.amplitudes() + m_zero.amplitudes()) / 2.0;
  minus.amplitudes() = (zero.amplitudes() - m_zero.amplitudes()) / 2.0;
  const double p_plus = plus.amplitudes().squaredNorm();
  res.preparation_branch =
      options.preparation_branch ? *options.preparation_branch : sample(rng, p_plus);
  StateVector ancilla = res.preparation_branch == 0 ? plus : minus;
  normalize(ancilla);
  res.transcript.push_back({"measure_eSX", "", res.preparation_branch,
                            res.preparation_branch == 0 ? p_plus : 1.0 - p_plus, std::nullopt});
  if (res.preparation_branch == 1) {
    ancilla = transversal(LogicalGate::Z, block, ancilla);
    res.transcript.push_back({"ancilla_fixup", "Z", -1, 1.0, std::nullopt});
  }
  res.transcript.back().fidelity = logical_fidelity(ancilla, h, h * e);

  StateVector joint = tensor(ancilla, alpha_block);
  joint = transversal_cnot(LogicalBlock::at(0), LogicalBlock::at(kBlockSize), joint);
  res.transcript.push_back({"transversal_cnot", "CNOT", -1, 1.0, std::nullopt});

  // Ideal logical Z measurement of the data block: contract it with <b_L|.
  const auto data_bra = [&](int b) {
    const StateVector code = encode(b);
    StateVector out(kBlockSize);
    const auto n = code.amplitudes().size();
    for (Eigen::Index i = 0; i < out.amplitudes().size(); ++i) {
      out.amplitudes()(i) = code.amplitudes().dot(joint.amplitudes().segment(i * n, n));
    }
    return out;
  };
  StateVector out0 = data_bra(0);
  StateVector out1 = data_bra(1);
  const double p0 = out0.amplitudes().squaredNorm();
  const double p1 = out1.amplitudes().squaredNorm();
  if (std::abs(p0 + p1 - 1.0) > 1e-9) throw InvariantError("data block left the code space");
  res.measurement_branch =
      options.measurement_branch ? *options.measurement_branch : sample(rng, p0);
  StateVector out = res.measurement_branch == 0 ? out0 : out1;
  normalize(out);
  res.transcript.push_back({"measure_data_Z", "", res.measurement_branch,
                            res.measurement_branch == 0 ? p0 : p1, std::nullopt});

  if (res.measurement_branch == 1) {
    // Operator S X: X acts first.
    out = transversal(LogicalGate::X, block, out);
    out = transversal(LogicalGate::S, block, out);
    res.transcript.push_back({"correction", "SX", -1, 1.0, std::nullopt});
  }
  const Eigen::Vector2cd want = t_matrix() * Eigen::Vector2cd(a0, a1);
  res.output = out;
  res.transcript.push_back(
      {"output", "", -1, 1.0, logical_fidelity(out, want(0), want(1))});
  return res;
}

const std::array<std::array<int, 4>, 3>& generator_supports() {
  static const std::array<std::array<int, 4>, 3> s = {
      {{1, 3, 5, 7}, {2, 3, 6, 7}, {4, 5, 6, 7}}};
  return s;
}

namespace {

void apply_pauli(StateVector& psi, Pauli p, int qubit1) {
  const int q = qubit1 - 1;
  if (p == Pauli::X || p == Pauli::Y) apply_single(psi, q, gate(LogicalGate::X));
  if (p == Pauli::Z || p == Pauli::Y) apply_single(psi, q, gate(LogicalGate::Z));
}

bool flips(const StateVector& psi, LogicalGate type, const std::array<int, 4>& support) {
  StateVector g = psi;
  for (int q : support) apply_single(g, q - 1, gate(type));
  return inner(psi, g).real() < 0.0;
}

}  // namespace

CorrectionResult inject_and_correct(const std::vector<PauliError>& errors, const StateVector& psi) {
  if (psi.qubits() != kBlockSize) throw ValidationError("error correction needs a 7-qubit block");
  if (errors.size() > 1) {
    throw ValidationError("only single-qubit errors are correctable by this code");
  }
  CorrectionResult res;
  StateVector s = psi;
  for (const auto& e : errors) {
    if (e.qubit < 1 || e.qubit > kBlockSize) throw ValidationError("error qubit must be in 1..7");
    apply_pauli(s, e.pauli, e.qubit);
  }
  const auto& sup = generator_supports();
  for (unsigned i = 0; i < 3; ++i) {
    if (flips(s, LogicalGate::Z, sup[i])) res.syndrome |= 1u << i;
    if (flips(s, LogicalGate::X, sup[i])) res.syndrome |= 1u << (i + 3);
  }
  const int x_at = static_cast<int>(res.syndrome & 7u);
  const int z_at = static_cast<int>(res.syndrome >> 3);
  if (x_at != 0 && z_at != 0 && x_at != z_at) {
    throw InvariantError("syndrome does not match a single-qubit error");
  }
  if (x_at != 0 || z_at != 0) {
    const int q = x_at != 0 ? x_at : z_at;
    const Pauli p = x_at == 0 ? Pauli::Z : (z_at == 0 ? Pauli::X : Pauli::Y);
    apply_pauli(s, p, q);
    res.correction = PauliError{p, q};
  }
  res.state = std::move(s);
  return res;
}

CorrectionResult inject_and_correct(const PauliError& error, const StateVector& psi) {
  return inject_and_correct(std::vector<PauliError>{error}, psi);
}

std::vector<CheckResult> run_checks(std::uint64_t seed, int random_inputs) {
  std::vector<CheckResult> out;
  const double h = 1.0 / std::numbers::sqrt2;

  for (auto g : {LogicalGate::H, LogicalGate::X, LogicalGate::Z, LogicalGate::S, LogicalGate::Sdg}) {
    CheckResult c{std::string("transversal_") + to_string(g), true, 1.0, 0};
    for (int b = 0; b < 2; ++b) {
      const StateVector in = encode(b);
      const StateVector o = transversal(g, LogicalBlock::at(0), in);
      const Eigen::Vector2cd want = gate(g).col(b);
      const double f = logical_fidelity(o, want(0), want(1));
      c.worst = std::min(c.worst, f);
      c.pass = c.pass && f >= 1.0 - 1e-10 && std::abs(o.norm() - 1.0) < kNormTolerance;
      ++c.cases;
    }
    out.push_back(c);
  }

  {
    CheckResult c{"transversal_cnot", true, 1.0, 0};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const StateVector o = transversal_cnot(LogicalBlock::at(0), LogicalBlock::at(kBlockSize),
                                               tensor(encode(a), encode(b)));
        const double f = fidelity(o, tensor(encode(a), encode(a ^ b)));
        c.worst = std::min(c.worst, f);
        c.pass = c.pass && f >= 1.0 - 1e-10;
        ++c.cases;
      }
    }
    StateVector plus = encode_superposition(h, h);
    const StateVector o = transversal_cnot(LogicalBlock::at(0), LogicalBlock::at(kBlockSize),
                                           tensor(plus, encode(0)));
    StateVector bell = tensor(encode(0), encode(0));
    bell.amplitudes() = h * (bell.amplitudes() + tensor(encode(1), encode(1)).amplitudes());
    const double f = fidelity(o, bell);
    c.worst = std::min(c.worst, f);
    c.pass = c.pass && f >= 1.0 - 1e-10;
    ++c.cases;
    out.push_back(c);
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int pb = 0; pb < 2; ++pb) {
    for (int mb = 0; mb < 2; ++mb) {
      CheckResult c{"t_gate_branches_" + std::to_string(pb) + std::to_string(mb), true, 1.0, 0};
      for (int k = 0; k < random_inputs; ++k) {
        Eigen::Vector2cd v(Complex(gauss(rng), gauss(rng)), Complex(gauss(rng), gauss(rng)));
        v.normalize();
        const auto r = ft_t_gate(encode_superposition(v(0), v(1)), {pb, mb, 0});
        const Eigen::Vector2cd want = t_matrix() * v;
        const double f = logical_fidelity(r.output, want(0), want(1));
        c.worst = std::min(c.worst, f);
        c.pass = c.pass && f >= 1.0 - 1e-9 && std::abs(r.output.norm() - 1.0) < kNormTolerance;
        ++c.cases;
      }
      out.push_back(c);
    }
  }

  {
    CheckResult c{"single_qubit_error_correction", true, 1.0, 0};
    for (int b = 0; b < 2; ++b) {
      const StateVector in = encode(b);
      for (auto p : {Pauli::X, Pauli::Y, Pauli::Z}) {
        for (int q = 1; q <= kBlockSize; ++q) {
          const auto r = inject_and_correct(PauliError{p, q}, in);
          const double f = fidelity(r.state, in);
          c.worst = std::min(c.worst, f);
          c.pass = c.pass && f >= 1.0 - 1e-10;
          ++c.cases;
        }
      }
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace ftwalk::steane
