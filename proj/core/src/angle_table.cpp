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

#include "ftwalk/angle_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <utility>

#include "csv_util.hpp"
#include "ftwalk/error.hpp"
#include "ftwalk/matrix.hpp"

namespace ftwalk {

const char* to_string(Policy p) {
  return p == Policy::BestRFirst ? "best_r_first" : "shortest_first";
}

const char* to_string(Sign s) { return s == Sign::Positive ? "positive" : "negative"; }

Policy parse_policy(const std::string& s) {
  if (s == "best_r_first" || s == "best") return Policy::BestRFirst;
  if (s == "shortest_first" || s == "shortest") return Policy::ShortestFirst;
  throw ValidationError("unknown policy \"" + s + "\" (expected best or shortest)");
}

std::int64_t to_millideg(double angle_deg) { return std::llround(angle_deg * 1000.0); }

bool preferred(const AngleEntry& a, const AngleEntry& b, Policy policy) {
  const bool same_r = std::abs(a.r - b.r) <= kRTieTolerance;
  if (policy == Policy::BestRFirst) {
    if (!same_r) return a.r < b.r;
    if (a.length != b.length) return a.length < b.length;
  } else {
    if (a.length != b.length) return a.length < b.length;
    if (!same_r) return a.r < b.r;
  }
  return word_less(a.seq.word(), b.seq.word());
}

const AngleTable& AngleTableSet::get(Policy p, Sign s) const {
  if (p == Policy::BestRFirst) return s == Sign::Positive ? best_r_positive : best_r_negative;
  return s == Sign::Positive ? shortest_positive : shortest_negative;
}

AngleTable& AngleTableSet::get(Policy p, Sign s) {
  return const_cast<AngleTable&>(std::as_const(*this).get(p, s));
}

const AngleEntry& lookup(const AngleTable& table, double phi_deg) {
  if (table.entries.empty()) {
    throw ValidationError(std::string("angle table (") + to_string(table.policy) + ", " +
                          to_string(table.sign) + ") is empty");
  }
  const auto& es = table.entries;
  const auto it = std::lower_bound(es.begin(), es.end(), phi_deg,
                                   [](const AngleEntry& e, double v) { return e.angle_deg() < v; });
  if (it == es.begin()) return *it;
  if (it == es.end()) return es.back();
  const AngleEntry& hi = *it;
  const AngleEntry& lo = *(it - 1);
  const double dhi = std::abs(hi.angle_deg() - phi_deg);
  const double dlo = std::abs(lo.angle_deg() - phi_deg);
  if (dhi != dlo) return dhi < dlo ? hi : lo;
  return std::abs(hi.angle_deg()) < std::abs(lo.angle_deg()) ? hi : lo;
}

const AngleEntry& lookup(const AngleTableSet& tables, Policy policy, double phi_deg) {
  return lookup(tables.get(policy, phi_deg < 0 ? Sign::Negative : Sign::Positive), phi_deg);
}

AngleSummary summarize(const AngleTable& table) {
  AngleSummary s;
  s.count = table.entries.size();
  if (s.count < 2) return s;
  s.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < s.count; ++i) {
    const double gap =
        static_cast<double>(table.entries[i].millideg - table.entries[i - 1].millideg) / 1000.0;
    s.max_gap = std::max(s.max_gap, gap);
    s.min_gap = std::min(s.min_gap, gap);
    if (gap > 1.0) ++s.gaps_over_one_degree;
  }
  s.mean_gap = static_cast<double>(table.entries.back().millideg - table.entries.front().millideg) /
               1000.0 / static_cast<double>(s.count - 1);
  return s;
}

namespace {

std::string format_millideg(std::int64_t m) {
  const std::int64_t a = m < 0 ? -m : m;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%lld.%03lld", m < 0 ? "-" : "", static_cast<long long>(a / 1000),
                static_cast<long long>(a % 1000));
  return buf;
}

std::int64_t parse_millideg(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw ValidationError("bad angle \"" + s + "\"");
  return to_millideg(v);
}

}  // namespace

void write_angle_table_csv(std::ostream& out, const AngleTable& table) {
  out << "# max_length=" << table.max_length << "\n";
  out << "# policy=" << to_string(table.policy) << "\n";
  out << "# sign=" << to_string(table.sign) << "\n";
  if (!table.warning.empty()) out << "# warning=" << table.warning << "\n";
  out << "angle_deg,r,epsilon_deg,length,sequence\n";
  for (const auto& e : table.entries) {
    out << format_millideg(e.millideg) << ',' << format_double(e.r) << ','
        << format_double(e.epsilon_deg) << ',' << e.length << ',' << e.seq.word() << '\n';
  }
}

AngleTable read_angle_table_csv(std::istream& in) {
  AngleTable t;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  auto fail = [&](const std::string& msg) {
    throw ValidationError("angle table line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::blank(line)) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      std::string value = line.substr(eq + 1);
      if (!value.empty() && value.back() == '\r') value.pop_back();
      if (key == "max_length") t.max_length = std::stoi(value);
      if (key == "policy") t.policy = parse_policy(value);
      if (key == "sign") {
        if (value != "positive" && value != "negative") fail("bad sign");
        t.sign = value == "positive" ? Sign::Positive : Sign::Negative;
      }
      if (key == "warning") t.warning = value;
      continue;
    }
    const auto f = detail::split_csv(line);
    if (!header) {
      if (f != std::vector<std::string>{"angle_deg", "r", "epsilon_deg", "length", "sequence"}) {
        fail("expected header angle_deg,r,epsilon_deg,length,sequence");
      }
      header = true;
      continue;
    }
    if (f.size() != 5) fail("expected 5 fields");
    AngleEntry e;
    try {
      e.millideg = parse_millideg(f[0]);
      e.r = std::stod(f[1]);
      e.epsilon_deg = std::stod(f[2]);
      e.length = std::stoi(f[3]);
      e.seq = GateSequence(f[4]);
    } catch (const ValidationError& err) {
      fail(err.what());
    } catch (const std::exception&) {
      fail("unparseable row");
    }
    if (static_cast<std::size_t>(e.length) != e.seq.length()) fail("length does not match sequence");
    if (!t.entries.empty() && e.millideg <= t.entries.back().millideg) fail("angles not ascending");
    t.entries.push_back(std::move(e));
  }
  if (!header) throw ValidationError("angle table has no header");
  return t;
}

std::string table_file_name(Policy p, Sign s) {
  return std::string(to_string(p)) + "_" + to_string(s) + ".csv";
}

void write_angle_tables(const std::string& dir, const AngleTableSet& tables) {
  std::filesystem::create_directories(dir);
  for (Policy p : {Policy::BestRFirst, Policy::ShortestFirst}) {
    for (Sign s : {Sign::Positive, Sign::Negative}) {
      const auto path = std::filesystem::path(dir) / table_file_name(p, s);
      std::ofstream out(path, std::ios::binary);
      if (!out) throw ValidationError("cannot write " + path.string());
      write_angle_table_csv(out, tables.get(p, s));
    }
  }
}

AngleTableSet read_angle_tables(const std::string& dir) {
  AngleTableSet set;
  for (Policy p : {Policy::BestRFirst, Policy::ShortestFirst}) {
    for (Sign s : {Sign::Positive, Sign::Negative}) {
      const auto path = std::filesystem::path(dir) / table_file_name(p, s);
      std::ifstream in(path);
      if (!in) throw ValidationError("missing angle table " + path.string());
      AngleTable t = read_angle_table_csv(in);
      if (t.policy != p || t.sign != s) {
        throw ValidationError(path.string() + " declares a different policy or sign");
      }
      set.get(p, s) = std::move(t);
    }
  }
  return set;
}

}  // namespace ftwalk
