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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ftwalk/angle_table.hpp"
#include "ftwalk/csd.hpp"
#include "ftwalk/error.hpp"
#include "ftwalk/matrix.hpp"
#include "ftwalk/program.hpp"
#include "ftwalk/report.hpp"
#include "ftwalk/search.hpp"
#include "ftwalk/steane.hpp"
#include "ftwalk/walk.hpp"

namespace {

using namespace ftwalk;

constexpr int kExitValidation = 2;
constexpr int kExitInvariant = 3;

// Writes to `path`, or stdout when it is empty or "-".
template <typename F>
void emit(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  write(out);
  if (!out) throw ValidationError("failed writing " + path);
}

std::optional<std::string> file_spec(const std::string& flag, const std::string& value) {
  if (value.rfind("file:", 0) == 0) {
    if (value.size() == 5) throw ValidationError(flag + " file: needs a path");
    return value.substr(5);
  }
  return std::nullopt;
}

int cmd_walk_build(const std::string& graph_path, const std::string& coin, const std::string& order,
                   const std::string& out) {
  const Graph g = read_graph_file(graph_path);
  CoinFamily coins;
  if (auto f = file_spec("--coin", coin)) {
    coins = read_coin_file(*f);
  } else if (coin == "identity") {
    coins = CoinFamily::identity();
  } else if (coin != "grover") {
    throw ValidationError("--coin must be grover, identity or file:<path>");
  }
  std::optional<std::vector<DirectedState>> states;
  if (auto f = file_spec("--order", order)) {
    states = read_state_order_file(*f);
  } else if (order != "default") {
    throw ValidationError("--order must be default or file:<path>");
  }
  const WalkOperator u = build_walk_operator(g, coins, build_state_index(g, states));
  emit(out, [&](std::ostream& os) { write_matrix_json(os, u.step); });
  return 0;
}

int cmd_decompose(const std::string& matrix_path, const std::string& out) {
  const ComplexMatrix u = read_matrix_json_file(matrix_path);
  if (!u.is_unitary()) {
    throw ValidationError(matrix_path + " is not unitary (residue " +
                          format_double(u.unitarity_residue()) + ")");
  }
  const ComplexMatrix padded = pad_to_power_of_two(u);
  const Decomposition d = cs_decompose(padded);
  const double residue = reconstruct(d).max_deviation(padded);
  emit(out, [&](std::ostream& os) { write_decomposition_csv(os, d); });
  std::cerr << "ops=" << d.ops.size() << " padded_dim=" << d.padded_dim
            << " reconstruction_residue=" << format_double(residue) << "\n";
  return 0;
}

int cmd_table(int max_len, const std::string& out_dir, unsigned workers, double budget_mib,
              bool fold, double accept_r, bool quiet) {
  SearchOptions opt;
  opt.max_length = max_len;
  opt.workers = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
  opt.fold_global_phase = fold;
  opt.accept_r = accept_r;
  opt.memory_budget_bytes = static_cast<std::size_t>(budget_mib * 1024.0 * 1024.0);
  if (!quiet) {
    opt.progress = [](const SearchLevel& l) {
      std::fprintf(stderr, "length %2d: %zu new matrices, %zu accepted, %.2fs\n", l.length,
                   l.distinct, l.accepted, l.seconds);
    };
  }
  const SearchResult res = search(opt);
  write_angle_tables(out_dir, res.tables);
  if (!res.warning.empty()) std::cerr << "warning: " << res.warning << "\n";
  std::cout << "table,count,mean_gap_deg,max_gap_deg,min_gap_deg,gaps_over_1deg\n";
  for (Policy p : {Policy::BestRFirst, Policy::ShortestFirst}) {
    for (Sign s : {Sign::Positive, Sign::Negative}) {
      const AngleSummary sum = summarize(res.tables.get(p, s));
      std::cout << to_string(p) << '_' << to_string(s) << ',' << sum.count << ','
                << format_double(sum.mean_gap) << ',' << format_double(sum.max_gap) << ','
                << format_double(sum.min_gap) << ',' << sum.gaps_over_one_degree << '\n';
    }
  }
  const auto& pos = res.tables.best_r_positive.entries;
  if (pos.size() <= 64) {
    std::cout << "angles:";
    for (const auto& e : pos) std::cout << ' ' << e.angle_deg();
    std::cout << "\n";
  }
  return 0;
}

int cmd_compile(const std::string& decomp, const std::string& tables_dir, const std::string& policy,
                const std::string& out) {
  const Decomposition d = read_decomposition_csv_file(decomp);
  const AngleTableSet tables = read_angle_tables(tables_dir);
  const FtProgram prog = compile(d, tables, parse_policy(policy));
  emit(out, [&](std::ostream& os) { write_program_csv(os, prog); });
  std::cerr << "records=" << prog.records.size() << " gate_count=" << prog.total_gate_count()
            << "\n";
  return 0;
}

int cmd_verify(const std::string& program, const std::string& matrix) {
  const FtProgram prog = read_program_csv_file(program);
  const ComplexMatrix u = read_matrix_json_file(matrix);
  write_report_json(std::cout, verify(prog, u));
  return 0;
}

Eigen::VectorXcd read_state_json(const std::string& path, std::size_t dim) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("re") || !doc["re"].is_array()) {
    throw ValidationError(path + ": expected {\"re\": [...], \"im\": [...]}");
  }
  const auto& re = doc["re"];
  if (re.size() > dim) throw ValidationError(path + ": state longer than the operator");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < re.size(); ++i) {
    double im = 0.0;
    if (doc.contains("im")) im = doc["im"].at(i).get<double>();
    psi(static_cast<Eigen::Index>(i)) = Complex(re[i].get<double>(), im);
  }
  return psi;
}

int cmd_simulate(const std::string& program, const std::string& matrix, int steps, int start,
                 const std::string& state_path, const std::string& out) {
  if (program.empty() == matrix.empty()) {
    throw ValidationError("give exactly one of --program or --matrix");
  }
  if (steps < 0) throw ValidationError("--steps must be >= 0");
  ComplexMatrix u;
  if (!matrix.empty()) {
    u = read_matrix_json_file(matrix);
  } else {
    const FtProgram prog = read_program_csv_file(program);
    int top = 2;
    for (const auto& r : prog.records) top = std::max({top, r.p, r.q});
    std::size_t dim = 2;
    while (dim < static_cast<std::size_t>(top)) dim *= 2;
    u = effective_matrix(prog, dim);
  }
  Eigen::VectorXcd psi;
  if (!state_path.empty()) {
    psi = read_state_json(state_path, u.dim());
  } else {
    if (start < 1 || static_cast<std::size_t>(start) > u.dim()) {
      throw ValidationError("--start must be in [1, " + std::to_string(u.dim()) + "]");
    }
    psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(u.dim()));
    psi(start - 1) = 1.0;
  }
  emit(out, [&](std::ostream& os) {
    os << "step";
    for (std::size_t i = 1; i <= u.dim(); ++i) os << ",p" << i;
    os << "\n";
    for (int s = 0; s <= steps; ++s) {
      if (s > 0) psi = walk_step(u, psi);
      os << s;
      for (Eigen::Index i = 0; i < psi.size(); ++i) os << ',' << format_double(std::norm(psi(i)));
      os << "\n";
    }
  });
  return 0;
}

int cmd_plot_data(const std::string& tables_dir, const std::string& out) {
  const AngleTableSet tables = read_angle_tables(tables_dir);
  const AngleTable& t = tables.best_r_positive;
  if (t.entries.empty()) throw ValidationError(tables_dir + " holds no angles");
  emit(out, [&](std::ostream& os) {
    os << "angle_deg,r\n";
    for (const auto& e : t.entries) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", e.angle_deg());
      os << buf << ',' << format_double(e.r) << "\n";
    }
  });
  return 0;
}

int cmd_steane(const std::string& check, const std::string& demo, const std::string& branch,
               const std::string& prep_branch, std::uint64_t seed) {
  if (check.empty() == demo.empty()) throw ValidationError("give exactly one of --check or --demo");
  if (!check.empty()) {
    if (check != "all") throw ValidationError("--check accepts only \"all\"");
    bool ok = true;
    for (const auto& c : steane::run_checks(seed)) {
      nlohmann::ordered_json j;
      j["check"] = c.name;
      j["pass"] = c.pass;
      j["cases"] = c.cases;
      j["worst_fidelity"] = c.worst;
      std::cout << j.dump() << "\n";
      ok = ok && c.pass;
    }
    return ok ? 0 : kExitInvariant;
  }
  if (demo != "t-gate") throw ValidationError("--demo accepts only \"t-gate\"");
  auto parse_branch = [](const std::string& flag, const std::string& v) -> std::optional<int> {
    if (v.empty() || v == "random") return std::nullopt;
    if (v == "0") return 0;
    if (v == "1") return 1;
    throw ValidationError(flag + " must be 0, 1 or random");
  };
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::Vector2cd v(Complex(gauss(rng), gauss(rng)), Complex(gauss(rng), gauss(rng)));
  v.normalize();
  steane::TGateOptions opt;
  opt.measurement_branch = parse_branch("--branch", branch);
  opt.preparation_branch = parse_branch("--prep-branch", prep_branch);
  opt.seed = seed;
  {
    nlohmann::ordered_json j;
    j["step"] = "input";
    j["alpha"] = {v(0).real(), v(0).imag()};
    j["beta"] = {v(1).real(), v(1).imag()};
    std::cout << j.dump() << "\n";
  }
  const auto res = steane::ft_t_gate(steane::encode_superposition(v(0), v(1)), opt);
  for (const auto& s : res.transcript) std::cout << steane::to_json_line(s) << "\n";
  const double f = res.transcript.back().fidelity.value_or(0.0);
  return f >= 1.0 - 1e-9 ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile coined quantum walks into fault-tolerant gate programs"};
  app.require_subcommand(1);

  std::string graph, coin = "grover", order = "default", out;
  auto* wb = app.add_subcommand("walk-build", "Build U = T*C from a graph file");
  wb->add_option("graph", graph, "Graph file")->required();
  wb->add_option("--coin", coin, "grover | identity | file:<coins.json>");
  wb->add_option("--order", order, "default | file:<order list>");
  wb->add_option("-o,--out", out, "Output matrix file (default stdout)");

  std::string matrix;
  auto* dc = app.add_subcommand("decompose", "Cosine-sine decompose a unitary");
  dc->add_option("matrix", matrix, "Matrix file")->required();
  dc->add_option("-o,--out", out, "Output CSV (default stdout)");

  int max_len = 0;
  std::string table_dir;
  unsigned workers = 0;
  double budget_mib = 0.0;
  bool fold = false, quiet = false;
  double accept_r = kDefaultAcceptR;
  auto* tb = app.add_subcommand("table", "Search sequences and write the four angle tables");
  tb->add_option("--max-len", max_len, "Longest sequence length")->required();
  tb->add_option("--out", table_dir, "Output directory")->required();
  tb->add_option("--workers", workers, "Worker threads (0 = all cores)");
  tb->add_option("--memory-budget", budget_mib, "Stop before exceeding this many MiB (0 = off)");
  tb->add_option("--accept-r", accept_r, "Largest accepted imaginary magnitude");
  tb->add_flag("--fold-phase", fold, "Deduplicate up to global phase");
  tb->add_flag("-q,--quiet", quiet, "No per-length progress on stderr");

  std::string decomp, policy = "best";
  auto* cp = app.add_subcommand("compile", "Replace rotations by table sequences");
  cp->add_option("decomposition", decomp, "Decomposition CSV")->required();
  cp->add_option("tables", table_dir, "Directory with the four table CSVs")->required();
  cp->add_option("--policy", policy, "best | shortest");
  cp->add_option("-o,--out", out, "Output program CSV (default stdout)");

  std::string program;
  auto* vf = app.add_subcommand("verify", "Compare a program against the exact operator");
  vf->add_option("program", program, "Program CSV")->required();
  vf->add_option("matrix", matrix, "Matrix file")->required();

  int steps = 1, start = 1;
  std::string state;
  auto* sm = app.add_subcommand("simulate", "Iterate a walk and print probabilities");
  sm->add_option("--program", program, "Program CSV");
  sm->add_option("--matrix", matrix, "Matrix file");
  sm->add_option("--steps", steps, "Number of steps");
  sm->add_option("--start", start, "1-based basis state to start from");
  sm->add_option("--state", state, "JSON state {\"re\": [...], \"im\": [...]}");
  sm->add_option("-o,--out", out, "Output CSV (default stdout)");

  auto* pd = app.add_subcommand("plot-data", "Angle vs smallest r for plotting");
  pd->add_option("tables", table_dir, "Directory with the four table CSVs")->required();
  pd->add_option("-o,--out", out, "Output CSV (default stdout)");

  std::string check, demo, branch, prep_branch;
  std::uint64_t seed = 1;
  auto* st = app.add_subcommand("steane", "Steane-code protocol checks");
  st->add_option("--check", check, "all");
  st->add_option("--demo", demo, "t-gate");
  st->add_option("--branch", branch, "Data measurement outcome: 0, 1 or random");
  st->add_option("--prep-branch", prep_branch, "Ancilla measurement outcome: 0, 1 or random");
  st->add_option("--seed", seed, "Seed for random inputs and branches");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*wb) return cmd_walk_build(graph, coin, order, out);
    if (*dc) return cmd_decompose(matrix, out);
    if (*tb) return cmd_table(max_len, table_dir, workers, budget_mib, fold, accept_r, quiet);
    if (*cp) return cmd_compile(decomp, table_dir, policy, out);
    if (*vf) return cmd_verify(program, matrix);
    if (*sm) return cmd_simulate(program, matrix, steps, start, state, out);
    if (*pd) return cmd_plot_data(table_dir, out);
    if (*st) return cmd_steane(check, demo, branch, prep_branch, seed);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitValidation;
}
