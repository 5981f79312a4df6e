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

#include "ftwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ftwalk/error.hpp"

namespace ftwalk {

namespace {

constexpr double kNormTolerance = 1e-10;

std::string at_line(std::size_t line, const std::string& msg) {
  return "line " + std::to_string(line) + ": " + msg;
}

bool skippable(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

// Reads exactly two integers from `line`; nothing else may follow.
std::pair<int, int> parse_pair(const std::string& line, std::size_t lineno) {
  std::istringstream ss(line);
  long long j = 0, k = 0;
  if (!(ss >> j >> k)) throw ValidationError(at_line(lineno, "expected \"j k\""));
  std::string rest;
  if (ss >> rest) throw ValidationError(at_line(lineno, "trailing text \"" + rest + "\""));
  if (j < 1 || k < 1 || j > 1'000'000 || k > 1'000'000) {
    throw ValidationError(at_line(lineno, "vertex index out of range"));
  }
  return {static_cast<int>(j), static_cast<int>(k)};
}

std::ifstream open_or_throw(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ValidationError(std::string("cannot open ") + what + ": " + path);
  return in;
}

}  // namespace

void Graph::validate() const {
  if (vertex_count < 1) throw ValidationError("graph needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (const auto& [j, k] : edges) {
    if (j < 1 || k < 1 || j > vertex_count || k > vertex_count) {
      throw ValidationError("edge (" + std::to_string(j) + "," + std::to_string(k) +
                            ") has a vertex outside 1.." + std::to_string(vertex_count));
    }
    if (!seen.insert(std::minmax(j, k)).second) {
      throw ValidationError("duplicate edge (" + std::to_string(j) + "," + std::to_string(k) + ")");
    }
  }
}

Graph parse_graph(std::istream& in) {
  Graph g;
  bool have_header = false;
  std::set<std::pair<int, int>> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    if (!have_header) {
      std::istringstream ss(line);
      std::string word;
      long long n = 0;
      std::string rest;
      if (!(ss >> word >> n) || word != "vertices" || (ss >> rest)) {
        throw ValidationError(at_line(lineno, "expected header \"vertices N\""));
      }
      if (n < 1 || n > 1'000'000) throw ValidationError(at_line(lineno, "vertex count out of range"));
      g.vertex_count = static_cast<int>(n);
      have_header = true;
      continue;
    }
    const auto [j, k] = parse_pair(line, lineno);
    if (j > g.vertex_count || k > g.vertex_count) {
      throw ValidationError(at_line(lineno, "vertex index exceeds vertex count"));
    }
    if (!seen.insert(std::minmax(j, k)).second) {
      throw ValidationError(at_line(lineno, "duplicate edge"));
    }
    g.edges.emplace_back(j, k);
  }
  if (!have_header) throw ValidationError("graph file has no \"vertices N\" header");
  return g;
}

Graph read_graph_file(const std::string& path) {
  auto in = open_or_throw(path, "graph file");
  return parse_graph(in);
}

EdgeStateIndex::EdgeStateIndex(std::vector<DirectedState> states) : states_(std::move(states)) {
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (!lookup_.emplace(states_[i], i).second) {
      throw ValidationError("state |" + std::to_string(states_[i].from) + "," +
                            std::to_string(states_[i].to) + "> listed twice");
    }
  }
}

std::size_t EdgeStateIndex::position(const DirectedState& s) const {
  const auto it = lookup_.find(s);
  if (it == lookup_.end()) {
    throw ValidationError("no state |" + std::to_string(s.from) + "," + std::to_string(s.to) + ">");
  }
  return it->second;
}

EdgeStateIndex build_state_index(const Graph& g,
                                 const std::optional<std::vector<DirectedState>>& order) {
  g.validate();
  std::vector<DirectedState> states;
  for (const auto& [j, k] : g.edges) {
    states.push_back({j, k});
    if (j != k) states.push_back({k, j});
  }
  std::sort(states.begin(), states.end());
  if (!order) return EdgeStateIndex(std::move(states));

  std::vector<DirectedState> sorted = *order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != states) {
    throw ValidationError("state order is not a permutation of the graph's " +
                          std::to_string(states.size()) + " directed states");
  }
  return EdgeStateIndex(*order);
}

std::vector<DirectedState> parse_state_order(std::istream& in) {
  std::vector<DirectedState> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    const auto [j, k] = parse_pair(line, lineno);
    out.push_back({j, k});
  }
  return out;
}

std::vector<DirectedState> read_state_order_file(const std::string& path) {
  auto in = open_or_throw(path, "state order file");
  return parse_state_order(in);
}

ComplexMatrix grover_coin(int d) {
  if (d < 1) throw ValidationError("Grover coin dimension must be >= 1");
  Eigen::MatrixXd g = Eigen::MatrixXd::Constant(d, d, 2.0 / d);
  g.diagonal().array() -= 1.0;
  return ComplexMatrix::from_real(g);
}

CoinFamily read_coin_file(const std::string& path) {
  auto in = open_or_throw(path, "coin file");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("coin file: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("coin file: expected an object keyed by vertex id");
  CoinFamily family;
  for (const auto& [key, value] : doc.items()) {
    int v = 0;
    try {
      std::size_t used = 0;
      v = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ValidationError("coin file: bad vertex id \"" + key + "\"");
    }
    std::istringstream ss(value.dump());
    family.overrides.emplace(v, read_matrix_json(ss));
  }
  return family;
}

ComplexMatrix WalkOperator::shift_matrix() const {
  const auto n = static_cast<Eigen::Index>(shift.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) t(static_cast<Eigen::Index>(shift[static_cast<std::size_t>(i)]), i) = 1.0;
  return ComplexMatrix::from_real(t);
}

WalkOperator build_walk_operator(const Graph& g, const CoinFamily& coins,
                                 const EdgeStateIndex& idx) {
  g.validate();
  const std::size_t n = idx.size();
  if (n == 0) throw ValidationError("graph has no edges");

  // States leaving each vertex, in index order.
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[idx[i].from].push_back(i);

  for (const auto& [v, _] : coins.overrides) {
    if (v < 1 || v > g.vertex_count) {
      throw ValidationError("coin given for unknown vertex " + std::to_string(v));
    }
  }

  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd coin = Eigen::MatrixXcd::Zero(nn, nn);
  for (const auto& [v, members] : groups) {
    const int d = static_cast<int>(members.size());
    ComplexMatrix local;
    if (const auto it = coins.overrides.find(v); it != coins.overrides.end()) {
      local = it->second;
      if (static_cast<int>(local.dim()) != d) {
        throw ValidationError("coin for vertex " + std::to_string(v) + " is " +
                              std::to_string(local.dim()) + "x" + std::to_string(local.dim()) +
                              " but the vertex has degree " + std::to_string(d));
      }
      if (!local.is_unitary()) {
        throw ValidationError("coin for vertex " + std::to_string(v) + " is not unitary");
      }
    } else if (coins.fallback == CoinFamily::Default::Grover) {
      local = grover_coin(d);
    } else {
      local = ComplexMatrix::identity(static_cast<std::size_t>(d));
    }
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        coin(static_cast<Eigen::Index>(members[static_cast<std::size_t>(a)]),
             static_cast<Eigen::Index>(members[static_cast<std::size_t>(b)])) =
            local(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  }

  WalkOperator w;
  w.shift.resize(n);
  for (std::size_t i = 0; i < n; ++i) w.shift[i] = idx.position({idx[i].to, idx[i].from});

  // (T C)_{shift[i], :} = C_{i, :}
  Eigen::MatrixXcd u(nn, nn);
  for (std::size_t i = 0; i < n; ++i) {
    u.row(static_cast<Eigen::Index>(w.shift[i])) = coin.row(static_cast<Eigen::Index>(i));
  }
  w.coin = ComplexMatrix(std::move(coin));
  w.step = ComplexMatrix(std::move(u));
  return w;
}

Eigen::VectorXcd walk_step(const ComplexMatrix& u, const Eigen::VectorXcd& psi) {
  if (static_cast<std::size_t>(psi.size()) != u.dim()) {
    throw ValidationError("state has dimension " + std::to_string(psi.size()) +
                          ", operator has " + std::to_string(u.dim()));
  }
  if (std::abs(psi.norm() - 1.0) > kNormTolerance) {
    throw ValidationError("state is not normalized");
  }
  return u.eigen() * psi;
}

Eigen::VectorXcd walk_step(const WalkOperator& u, const Eigen::VectorXcd& psi) {
  return walk_step(u.step, psi);
}

}  // namespace ftwalk
