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

#include "ftwalk/program.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "csv_util.hpp"
#include "ftwalk/error.hpp"

namespace ftwalk {

std::size_t FtProgram::total_gate_count() const {
  std::size_t n = 0;
  for (const auto& r : records) n += r.seq.length();
  return n;
}

namespace {

// 0 degree entries exist in every table but are never a useful replacement.
const AngleEntry& nearest_nonzero(const AngleTable& table, double phi) {
  const AngleEntry* best = nullptr;
  for (const auto& e : table.entries) {
    if (e.millideg == 0) continue;
    if (best == nullptr) {
      best = &e;
      continue;
    }
    const double d = std::abs(e.angle_deg() - phi);
    const double db = std::abs(best->angle_deg() - phi);
    if (d < db || (d == db && std::abs(e.angle_deg()) < std::abs(best->angle_deg()))) best = &e;
  }
  if (best == nullptr) {
    throw ValidationError(std::string("angle table (") + to_string(table.policy) + ", " +
                          to_string(table.sign) + ") has no non-zero entries");
  }
  return *best;
}

}  // namespace

FtProgram compile(const Decomposition& d, const AngleTableSet& tables, Policy policy) {
  FtProgram prog;
  prog.policy = to_string(policy);
  prog.table_depth = tables.get(policy, Sign::Positive).max_length;
  for (const auto& op : d.ops) {
    switch (op.kind) {
      case OpKind::Z:
        prog.records.push_back({GateSequence("Z"), op.p, op.q});
        break;
      case OpKind::Phase:
        if (std::abs(normalize_degrees(op.angle_deg) - 180.0) < kAngleDropThreshold) {
          prog.records.push_back({GateSequence("Z"), op.p, op.q});
          break;
        }
        throw ValidationError("Phase(" + format_double(op.angle_deg) + ") on (" +
                              std::to_string(op.p) + "," + std::to_string(op.q) +
                              ") is not supported; only real operators can be compiled");
      case OpKind::Rz:
        throw ValidationError("Rz on (" + std::to_string(op.p) + "," + std::to_string(op.q) +
                              ") is not supported; only real operators can be compiled");
      case OpKind::Ry: {
        const double phi = normalize_degrees(op.angle_deg);
        const auto& table = tables.get(policy, phi < 0 ? Sign::Negative : Sign::Positive);
        prog.records.push_back({nearest_nonzero(table, phi).seq, op.p, op.q});
        break;
      }
    }
  }
  return prog;
}

ComplexMatrix effective_matrix(const FtProgram& prog, std::size_t dim) {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(dim),
                                                    static_cast<Eigen::Index>(dim));
  for (const auto& r : prog.records) {
    if (r.p < 1 || r.q < 1 || r.p == r.q || static_cast<std::size_t>(r.p) > dim ||
        static_cast<std::size_t>(r.q) > dim) {
      throw ValidationError("program record (" + std::to_string(r.p) + "," +
                            std::to_string(r.q) + ") out of range for dimension " +
                            std::to_string(dim));
    }
    right_multiply_two_level(acc, evaluate(r.seq).to_matrix(), static_cast<std::size_t>(r.p - 1),
                             static_cast<std::size_t>(r.q - 1));
  }
  return ComplexMatrix(std::move(acc));
}

void write_program_csv(std::ostream& out, const FtProgram& prog) {
  if (!prog.policy.empty()) out << "# policy=" << prog.policy << "\n";
  if (prog.table_depth > 0) out << "# max_length=" << prog.table_depth << "\n";
  out << "sequence,p,q\n";
  for (const auto& r : prog.records) out << r.seq.word() << ',' << r.p << ',' << r.q << '\n';
}

FtProgram read_program_csv(std::istream& in) {
  FtProgram prog;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  auto fail = [&](const std::string& msg) {
    throw ValidationError("program line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::blank(line)) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      const std::string value = line.substr(eq + 1);
      if (key == "policy") prog.policy = value;
      if (key == "max_length") prog.table_depth = std::stoi(value);
      continue;
    }
    const auto f = detail::split_csv(line);
    if (!header) {
      if (f != std::vector<std::string>{"sequence", "p", "q"}) fail("expected header sequence,p,q");
      header = true;
      continue;
    }
    if (f.size() != 3) fail("expected 3 fields");
    ProgramRecord r;
    try {
      r.seq = GateSequence(f[0]);
      std::size_t used = 0;
      r.p = std::stoi(f[1], &used);
      if (used != f[1].size()) fail("bad p");
      r.q = std::stoi(f[2], &used);
      if (used != f[2].size()) fail("bad q");
    } catch (const ValidationError& e) {
      fail(e.what());
    } catch (const std::exception&) {
      fail("unparseable row");
    }
    if (r.p < 1 || r.q < 1 || r.p == r.q) fail("indices must be distinct and >= 1");
    prog.records.push_back(std::move(r));
  }
  if (!header) throw ValidationError("program has no header");
  return prog;
}

FtProgram read_program_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  return read_program_csv(in);
}

}  // namespace ftwalk
