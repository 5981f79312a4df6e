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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ftwalk/matrix.hpp"

namespace ftwalk {

/// Undirected graph on vertices 1..vertex_count. Self-loops allowed,
/// duplicate edges are not.
struct Graph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;

  /// Throws ValidationError on out-of-range vertices or duplicate edges.
  void validate() const;
};

/// Graph text file: first line "vertices N", then one "j k" pair per line.
/// Blank lines and lines starting with '#' are ignored. Errors carry the
/// 1-based line number.
Graph parse_graph(std::istream& in);
Graph read_graph_file(const std::string& path);

/// Directed walker state |from, to>.
struct DirectedState {
  int from = 0;
  int to = 0;
  friend auto operator<=>(const DirectedState&, const DirectedState&) = default;
};

/// Ordered list of all directed states of a graph. An edge between distinct
/// vertices contributes |j,k> and |k,j>; a self-loop contributes one |v,v>.
class EdgeStateIndex {
 public:
  EdgeStateIndex() = default;
  explicit EdgeStateIndex(std::vector<DirectedState> states);

  std::size_t size() const { return states_.size(); }
  const std::vector<DirectedState>& states() const { return states_; }
  const DirectedState& operator[](std::size_t i) const { return states_[i]; }
  /// 0-based position; throws ValidationError if absent.
  std::size_t position(const DirectedState& s) const;

 private:
  std::vector<DirectedState> states_;
  std::map<DirectedState, std::size_t> lookup_;
};

/// Default order: grouped by `from` ascending, then by `to` ascending. When
/// `order` is given it must be a permutation of the graph's state set and is
/// used verbatim.
EdgeStateIndex build_state_index(const Graph& g,
                                 const std::optional<std::vector<DirectedState>>& order = {});

/// Order file: one "j k" pair per line (same comment rules as graph files).
std::vector<DirectedState> parse_state_order(std::istream& in);
std::vector<DirectedState> read_state_order_file(const std::string& path);

/// d x d Grover coin, entries 2/d - delta_jk.
ComplexMatrix grover_coin(int d);

/// Per-vertex coin choice. Vertices without an explicit override use the
/// family default.
struct CoinFamily {
  enum class Default { Grover, Identity };
  Default fallback = Default::Grover;
  std::map<int, ComplexMatrix> overrides;

  static CoinFamily grover() { return {}; }
  static CoinFamily identity() { return {Default::Identity, {}}; }
};

/// Coin file: JSON object mapping vertex ids ("3") to matrix objects in the
/// matrix file format; unlisted vertices fall back to Grover.
CoinFamily read_coin_file(const std::string& path);

/// U = T * C on the state space of an EdgeStateIndex.
struct WalkOperator {
  ComplexMatrix coin;                ///< block-diagonal over `from` groups
  std::vector<std::size_t> shift;    ///< shift[i] = position of the reversed state i
  ComplexMatrix step;                ///< U

  std::size_t dim() const { return step.dim(); }
  ComplexMatrix shift_matrix() const;
};

WalkOperator build_walk_operator(const Graph& g, const CoinFamily& coins,
                                 const EdgeStateIndex& idx);

/// U * psi. psi must have dimension N and unit norm (within 1e-10).
Eigen::VectorXcd walk_step(const WalkOperator& u, const Eigen::VectorXcd& psi);
/// Same contract on a bare operator matrix (used for approximated walks).
Eigen::VectorXcd walk_step(const ComplexMatrix& u, const Eigen::VectorXcd& psi);

}  // namespace ftwalk
