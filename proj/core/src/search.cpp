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

#include "ftwalk/search.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <thread>

#include "ftwalk/error.hpp"

namespace ftwalk {

namespace {

// A 2x2 unitary over Z[w, 1/sqrt2] with determinant w^det is fixed by its
// first column (u, v):
//
//   M = [[u, -w^det conj(v)], [v, w^det conj(u)]].
//
// Both entries share one denominator sqrt2^k, lowered while both numerators
// stay divisible by sqrt2, so equal matrices have equal packed forms.
struct Packed {
  std::array<std::int32_t, 8> c{};  // u0..u3, v0..v3
  std::uint8_t k = 0;
  std::uint8_t det = 0;
};

bool key_less(const Packed& a, const Packed& b) {
  if (a.c != b.c) return a.c < b.c;
  if (a.k != b.k) return a.k < b.k;
  return a.det < b.det;
}

bool key_equal(const Packed& a, const Packed& b) {
  return a.c == b.c && a.k == b.k && a.det == b.det;
}

__extension__ typedef unsigned __int128 u128;

// Word of length L packed 3 bits per symbol, first symbol most significant, so
// numeric order equals alphabet-lexicographic order among equal lengths.
struct Element {
  Packed key;
  std::uint8_t phase = 0;  // actual matrix = w^phase * key (folded mode only)
  std::uint64_t word_hi = 0;
  std::uint64_t word_lo = 0;

  u128 word() const { return (static_cast<u128>(word_hi) << 64) | word_lo; }
  void set_word(u128 w) {
    word_hi = static_cast<std::uint64_t>(w >> 64);
    word_lo = static_cast<std::uint64_t>(w);
  }
};

bool element_less(const Element& a, const Element& b) {
  if (!key_equal(a.key, b.key)) return key_less(a.key, b.key);
  return a.word() < b.word();
}

std::int32_t narrow32(std::int64_t v) {
  if (v > std::numeric_limits<std::int32_t>::max() ||
      v < std::numeric_limits<std::int32_t>::min()) {
    throw RingOverflowError("search coefficient overflow");
  }
  return static_cast<std::int32_t>(v);
}

using Quad = std::array<std::int64_t, 4>;

Quad quad(const Packed& p, int which) {
  const std::size_t o = which == 0 ? 0 : 4;
  return {p.c[o], p.c[o + 1], p.c[o + 2], p.c[o + 3]};
}

void store(Packed& p, int which, const Quad& q) {
  const std::size_t o = which == 0 ? 0 : 4;
  for (std::size_t i = 0; i < 4; ++i) p.c[o + i] = narrow32(q[i]);
}

Quad rotate(Quad x, int j) {
  for (int i = 0; i < ((j % 8) + 8) % 8; ++i) x = {-x[3], x[0], x[1], x[2]};
  return x;
}

Quad conj(const Quad& x) { return {x[0], -x[3], -x[2], -x[1]}; }

void reduce(Packed& p) {
  for (;;) {
    if (p.k == 0) return;
    const Quad u = quad(p, 0), v = quad(p, 1);
    if (u == Quad{} && v == Quad{}) return;
    if (!ring_detail::divisible_by_sqrt2(u) || !ring_detail::divisible_by_sqrt2(v)) return;
    store(p, 0, ring_detail::div_sqrt2(u));
    store(p, 1, ring_detail::div_sqrt2(v));
    --p.k;
  }
}

// First column of g * M from the first column of M.
Packed prepend(const Packed& m, Gate g) {
  Packed out = m;
  const Quad u = quad(m, 0), v = quad(m, 1);
  switch (g) {
    case Gate::H: {
      Quad s, d;
      for (std::size_t i = 0; i < 4; ++i) {
        s[i] = u[i] + v[i];
        d[i] = u[i] - v[i];
      }
      store(out, 0, s);
      store(out, 1, d);
      out.k = static_cast<std::uint8_t>(m.k + 1);
      out.det = static_cast<std::uint8_t>((m.det + 4) % 8);
      reduce(out);
      break;
    }
    case Gate::X:
      store(out, 0, v);
      store(out, 1, u);
      out.det = static_cast<std::uint8_t>((m.det + 4) % 8);
      break;
    case Gate::Z:
      store(out, 1, rotate(v, 4));
      out.det = static_cast<std::uint8_t>((m.det + 4) % 8);
      break;
    case Gate::T:
      store(out, 1, rotate(v, 1));
      out.det = static_cast<std::uint8_t>((m.det + 1) % 8);
      break;
    case Gate::S:
      store(out, 1, rotate(v, 2));
      out.det = static_cast<std::uint8_t>((m.det + 2) % 8);
      break;
    case Gate::Sdg:
      store(out, 1, rotate(v, 6));
      out.det = static_cast<std::uint8_t>((m.det + 6) % 8);
      break;
  }
  return out;
}

Packed times_phase(const Packed& m, int j) {
  Packed out = m;
  store(out, 0, rotate(quad(m, 0), j));
  store(out, 1, rotate(quad(m, 1), j));
  out.det = static_cast<std::uint8_t>(((m.det + 2 * j) % 8 + 8) % 8);
  return out;
}

// Folded mode: smallest of the eight phase multiples, and the j with
// canonical = w^j * actual.
std::pair<Packed, std::uint8_t> canonical_phase(const Packed& actual) {
  Packed best = actual;
  std::uint8_t best_j = 0;
  for (int j = 1; j < 8; ++j) {
    const Packed cand = times_phase(actual, j);
    if (key_less(cand, best)) {
      best = cand;
      best_j = static_cast<std::uint8_t>(j);
    }
  }
  return {best, best_j};
}

Packed actual_of(const Element& e) {
  return e.phase == 0 ? e.key : times_phase(e.key, 8 - e.phase);
}

// The four numerators of M (row-major) over the common sqrt2^k, computed
// exactly so that M and its transpose convert to identical floats.
std::array<Quad, 4> entries(const Packed& p) {
  const Quad u = quad(p, 0), v = quad(p, 1);
  return {u, rotate(conj(v), p.det + 4), v, rotate(conj(u), p.det)};
}

Eigen::Matrix2cd to_float(const Packed& p) {
  const auto e = entries(p);
  Eigen::Matrix2cd m;
  m(0, 0) = ring_detail::to_complex(e[0], p.k);
  m(0, 1) = ring_detail::to_complex(e[1], p.k);
  m(1, 0) = ring_detail::to_complex(e[2], p.k);
  m(1, 1) = ring_detail::to_complex(e[3], p.k);
  return m;
}

Ring2x2 to_ring(const Packed& p) {
  const auto e = entries(p);
  Ring2x2 m;
  for (std::size_t i = 0; i < 4; ++i) m.e[i] = RingScalar(e[i], p.k);
  return m;
}

// Packed symbol codes are ranks in the tie-break order.
struct SymbolOrder {
  std::array<unsigned, 6> rank{};
  std::array<Gate, 6> gate{};

  explicit SymbolOrder(const std::string& order) {
    std::string sorted = order;
    std::string want = "HXZTSs";
    std::sort(sorted.begin(), sorted.end());
    std::sort(want.begin(), want.end());
    if (sorted != want) {
      throw ValidationError("tie-break order must be a permutation of HXZTSs, got \"" + order + "\"");
    }
    for (unsigned i = 0; i < 6; ++i) {
      gate[i] = gate_from_symbol(order[i]);
      rank[static_cast<std::size_t>(gate[i])] = i;
    }
  }
  u128 code(Gate g) const { return rank[static_cast<std::size_t>(g)]; }
};

std::string decode_word(u128 w, int length, const SymbolOrder& order) {
  std::string s(static_cast<std::size_t>(length), '?');
  for (int i = 0; i < length; ++i) {
    const auto sym = static_cast<unsigned>((w >> (3 * (length - 1 - i))) & 7u);
    s[static_cast<std::size_t>(i)] = symbol(order.gate[sym]);
  }
  return s;
}

class Window {
 public:
  void push(std::vector<Element> level) {
    levels_.push_back(std::move(level));
    // A matrix first reached at length L+1 can only collide with lengths
    // L-2..L: every generator's inverse has a word of length <= 2
    // (T^-1 = sT), so g*M at true length m forces M within m+2.
    if (levels_.size() > 3) levels_.erase(levels_.begin());
  }
  bool contains(const Packed& key) const {
    for (const auto& lvl : levels_) {
      const auto it = std::lower_bound(lvl.begin(), lvl.end(), key,
                                       [](const Element& e, const Packed& k) {
                                         return key_less(e.key, k);
                                       });
      if (it != lvl.end() && key_equal(it->key, key)) return true;
    }
    return false;
  }
  const std::vector<Element>& newest() const { return levels_.back(); }
  std::size_t element_count() const {
    std::size_t n = 0;
    for (const auto& l : levels_) n += l.size();
    return n;
  }
  std::size_t size_of(std::size_t back) const {
    return back < levels_.size() ? levels_[levels_.size() - 1 - back].size() : 0;
  }

 private:
  std::vector<std::vector<Element>> levels_;
};

void sort_unique(std::vector<Element>& v) {
  std::sort(v.begin(), v.end(), element_less);
  v.erase(std::unique(v.begin(), v.end(),
                      [](const Element& a, const Element& b) { return key_equal(a.key, b.key); }),
          v.end());
}

template <class Fn>
void parallel_chunks(std::size_t n, unsigned workers, Fn&& fn) {
  const unsigned w = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (w == 1) {
    fn(0u, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(w);
  std::vector<std::exception_ptr> errors(w);
  for (unsigned t = 0; t < w; ++t) {
    const std::size_t lo = n * t / w, hi = n * (t + 1) / w;
    threads.emplace_back([&, t, lo, hi] {
      try {
        fn(t, lo, hi);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Merges per-worker sorted runs, keeping the first (smallest word) per key.
std::vector<Element> merge_runs(std::vector<std::vector<Element>> runs) {
  while (runs.size() > 1) {
    std::vector<std::vector<Element>> next;
    for (std::size_t i = 0; i + 1 < runs.size(); i += 2) {
      std::vector<Element> merged;
      merged.reserve(runs[i].size() + runs[i + 1].size());
      std::merge(runs[i].begin(), runs[i].end(), runs[i + 1].begin(), runs[i + 1].end(),
                 std::back_inserter(merged), element_less);
      std::vector<Element>().swap(runs[i]);
      std::vector<Element>().swap(runs[i + 1]);
      merged.erase(std::unique(merged.begin(), merged.end(),
                               [](const Element& a, const Element& b) {
                                 return key_equal(a.key, b.key);
                               }),
                   merged.end());
      next.push_back(std::move(merged));
    }
    if (runs.size() % 2 == 1) next.push_back(std::move(runs.back()));
    runs = std::move(next);
  }
  return runs.empty() ? std::vector<Element>{} : std::move(runs.front());
}

struct RawMatch {
  std::int64_t millideg;
  double r;
  double epsilon_deg;
  u128 word;
};

class TableBuilder {
 public:
  explicit TableBuilder(const SymbolOrder& order) : order_(order) {}

  void add(const RawMatch& m, int length) {
    std::int64_t key = m.millideg;
    if (key == -180000) key = 180000;
    AngleEntry e{key, m.r, m.epsilon_deg, length, GateSequence(decode_word(m.word, length, order_))};
    offer(best_r_, e, Policy::BestRFirst);
    offer(shortest_, e, Policy::ShortestFirst);
  }

  AngleTableSet finish(int max_length, const std::string& warning) const {
    AngleTableSet set;
    fill(set.best_r_positive, set.best_r_negative, best_r_);
    fill(set.shortest_positive, set.shortest_negative, shortest_);
    for (AngleTable* t : {&set.best_r_positive, &set.best_r_negative, &set.shortest_positive,
                          &set.shortest_negative}) {
      t->max_length = max_length;
      t->warning = warning;
    }
    return set;
  }

 private:
  static void offer(std::map<std::int64_t, AngleEntry>& m, const AngleEntry& e, Policy p) {
    auto [it, inserted] = m.try_emplace(e.millideg, e);
    if (!inserted && preferred(e, it->second, p)) it->second = e;
  }

  // 0 and +-180 degrees belong to both signs.
  static void fill(AngleTable& pos, AngleTable& neg, const std::map<std::int64_t, AngleEntry>& m) {
    for (const auto& [key, e] : m) {
      if (key >= 0) pos.entries.push_back(e);
      if (key <= 0) neg.entries.push_back(e);
      if (key == 180000) {
        AngleEntry mirrored = e;
        mirrored.millideg = -180000;
        neg.entries.insert(neg.entries.begin(), mirrored);
      }
    }
  }

  std::map<std::int64_t, AngleEntry> best_r_;
  std::map<std::int64_t, AngleEntry> shortest_;
  const SymbolOrder& order_;
};

}  // namespace

SearchResult search(const SearchOptions& opt) {
  if (opt.max_length < 1) throw ValidationError("search max_length must be >= 1");
  if (opt.max_length > kMaxSearchLength) {
    throw ValidationError("search max_length must be <= " + std::to_string(kMaxSearchLength));
  }
  using clock = std::chrono::steady_clock;
  const unsigned workers = std::max(1u, opt.workers);

  auto make_element = [&](const Packed& actual, u128 word) {
    Element e;
    if (opt.fold_global_phase) {
      const auto [canon, j] = canonical_phase(actual);
      e.key = canon;
      e.phase = j;
    } else {
      e.key = actual;
    }
    e.set_word(word);
    return e;
  };

  const SymbolOrder order(opt.tie_break_order);
  SearchResult result;
  TableBuilder tables(order);
  Window window;

  auto finish_level = [&](std::vector<Element> level, int length, clock::time_point t0) {
    std::vector<std::vector<RawMatch>> found(workers);
    parallel_chunks(level.size(), workers, [&](unsigned t, std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        const auto m = match_ry_form(to_float(actual_of(level[i])), opt.accept_r);
        if (m) found[t].push_back({to_millideg(m->angle_deg), m->r, m->epsilon_deg, level[i].word()});
      }
    });
    std::size_t accepted = 0;
    for (const auto& f : found) {
      accepted += f.size();
      for (const auto& m : f) tables.add(m, length);
    }
    if (opt.visit) {
      for (const auto& e : level) {
        opt.visit(to_ring(actual_of(e)), GateSequence(decode_word(e.word(), length, order)));
      }
    }
    SearchLevel stats{length, level.size(), accepted,
                      std::chrono::duration<double>(clock::now() - t0).count()};
    result.levels.push_back(stats);
    result.completed_length = length;
    if (opt.progress) opt.progress(stats);
    window.push(std::move(level));
  };

  {
    const auto t0 = clock::now();
    Packed identity;
    identity.c[0] = 1;
    std::vector<Element> first;
    for (Gate g : kAlphabet) first.push_back(make_element(prepend(identity, g), order.code(g)));
    sort_unique(first);
    finish_level(std::move(first), 1, t0);
  }

  for (int length = 2; length <= opt.max_length; ++length) {
    const auto t0 = clock::now();
    const std::vector<Element>& current = window.newest();
    if (opt.memory_budget_bytes != 0) {
      const double prev = static_cast<double>(std::max<std::size_t>(window.size_of(1), 1));
      const double cur = static_cast<double>(current.size());
      const double projected = cur * std::max(1.0, cur / prev);
      const double need =
          (static_cast<double>(window.element_count()) + 2.0 * projected) * sizeof(Element);
      if (need > static_cast<double>(opt.memory_budget_bytes)) {
        result.warning = "memory budget exceeded before length " + std::to_string(length) +
                         "; completed max_length=" + std::to_string(length - 1);
        break;
      }
    }
    const int shift = 3 * (length - 1);
    std::vector<std::vector<Element>> runs(workers);
    parallel_chunks(current.size(), workers, [&](unsigned t, std::size_t lo, std::size_t hi) {
      auto& out = runs[t];
      for (std::size_t i = lo; i < hi; ++i) {
        const Packed base = actual_of(current[i]);
        const u128 word = current[i].word();
        for (Gate g : kAlphabet) {
          Element child = make_element(prepend(base, g), word | (order.code(g) << shift));
          if (!window.contains(child.key)) out.push_back(child);
        }
      }
      sort_unique(out);
    });
    finish_level(merge_runs(std::move(runs)), length, t0);
  }

  result.tables = tables.finish(result.completed_length, result.warning);
  return result;
}

}  // namespace ftwalk
