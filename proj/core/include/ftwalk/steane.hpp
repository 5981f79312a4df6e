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
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ftwalk/matrix.hpp"

namespace ftwalk::steane {

inline constexpr int kMaxQubits = 14;
inline constexpr int kBlockSize = 7;

/// n-qubit pure state. Qubit 0 is the most significant bit of the basis
/// index, so "1010101" reads qubit 0 first.
class StateVector {
 public:
  /// |0...0> on n qubits.
  explicit StateVector(int qubits);
  /// Throws ValidationError on size mismatch or norm off by more than 1e-10.
  StateVector(int qubits, Eigen::VectorXcd amplitudes);

  int qubits() const { return qubits_; }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  Eigen::VectorXcd& amplitudes() { return amp_; }
  double norm() const { return amp_.norm(); }
  std::size_t bit_of(int qubit) const { return std::size_t{1} << (qubits_ - 1 - qubit); }

 private:
  int qubits_;
  Eigen::VectorXcd amp_;
};

/// a (x) b, with a's qubits first.
StateVector tensor(const StateVector& a, const StateVector& b);

/// Seven distinct qubits of a state forming one encoded qubit.
struct LogicalBlock {
  std::array<int, kBlockSize> qubits{};
  /// Qubits offset..offset+6.
  static LogicalBlock at(int offset);
};

/// Codeword strings for |0_L> (bit 0) or |1_L> (bit 1).
const std::array<std::string, 8>& codewords(int bit);

StateVector encode(int bit);
/// alpha|0_L> + beta|1_L>; throws ValidationError if not normalized.
StateVector encode_superposition(Complex alpha, Complex beta);

enum class LogicalGate { H, X, Z, S, Sdg };
const char* to_string(LogicalGate g);

void apply_single(StateVector& psi, int qubit, const Eigen::Matrix2cd& g);
void apply_cnot(StateVector& psi, int control, int target);

/// Logical gate by transversal physical gates. Logical S uses s on every
/// qubit and logical s uses S.
StateVector transversal(LogicalGate g, const LogicalBlock& block, StateVector psi);
StateVector transversal_cnot(const LogicalBlock& control, const LogicalBlock& target,
                             StateVector psi);

/// (<0_L|psi>, <1_L|psi>) for a 7-qubit state.
std::pair<Complex, Complex> logical_amplitudes(const StateVector& psi);
/// |<expected|psi>|^2 where expected = alpha|0_L> + beta|1_L>.
double logical_fidelity(const StateVector& psi, Complex alpha, Complex beta);
double fidelity(const StateVector& a, const StateVector& b);

struct TranscriptStep {
  std::string step;
  std::string gates;      ///< matrix-product order, empty if none
  int branch = -1;        ///< measurement outcome, -1 for unitary steps
  double probability = 1.0;
  std::optional<double> fidelity;
};

/// JSON object on one line.
std::string to_json_line(const TranscriptStep& s);

struct TGateOptions {
  /// Outcome of the ancilla preparation measurement: 0 for +1, 1 for -1.
  /// Sampled from `seed` when absent.
  std::optional<int> preparation_branch;
  /// Outcome of the logical Z measurement of the data block.
  std::optional<int> measurement_branch;
  std::uint64_t seed = 0;
};

struct TGateResult {
  StateVector output{kBlockSize};
  int preparation_branch = 0;
  int measurement_branch = 0;
  std::vector<TranscriptStep> transcript;
};

/// Two-block T protocol on an encoded 7-qubit input. The ancilla block is
/// qubits 0-6 and the data block qubits 7-13 of the joint state; the output
/// is the ancilla block holding T|alpha> encoded.
TGateResult ft_t_gate(const StateVector& alpha_block, const TGateOptions& options = {});

enum class Pauli { X, Y, Z };
struct PauliError {
  Pauli pauli = Pauli::X;
  int qubit = 1;  ///< 1-based, matches the codeword string position
};

struct CorrectionResult {
  StateVector state{kBlockSize};
  /// Bits 0-2: Z-type checks (locate X errors); bits 3-5: X-type checks.
  unsigned syndrome = 0;
  std::optional<PauliError> correction;
};

/// Support of the three generators of each type, as 1-based qubit lists
/// from the strings 1010101, 0110011, 0001111. The 3-bit syndrome read with
/// the first generator as the low bit equals the faulty qubit's index.
const std::array<std::array<int, 4>, 3>& generator_supports();

/// Applies at most one single-qubit Pauli, measures the six generators
/// ideally and applies the table correction. More than one error is rejected.
CorrectionResult inject_and_correct(const std::vector<PauliError>& errors, const StateVector& psi);
CorrectionResult inject_and_correct(const PauliError& error, const StateVector& psi);

struct CheckResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;  ///< lowest fidelity seen
  std::size_t cases = 0;
};

/// Transversal gates on both basis states, the T protocol on `random_inputs`
/// random inputs for each forced branch pair, and all 21 single-qubit Pauli
/// errors on both basis states.
std::vector<CheckResult> run_checks(std::uint64_t seed, int random_inputs = 100);

}  // namespace ftwalk::steane
