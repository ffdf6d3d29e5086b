// K_{p,q} \ R: complete bipartite graphs with a set of removed edges, and
// enumeration of the removal classes up to isomorphism.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ikc/canonical.hpp"
#include "ikc/graph.hpp"
#include "ikc/random.hpp"

namespace ikc {

class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Removed pair (i, j), 1-based: the absent edge a_i b_j.
using RemovedPair = std::pair<int, int>;

struct BipartiteSpec {
  int p = 0;
  int q = 0;
  std::vector<RemovedPair> removed;  // sorted, distinct

  int m() const { return static_cast<int>(removed.size()); }
  friend bool operator==(const BipartiteSpec&, const BipartiteSpec&) = default;
  friend auto operator<=>(const BipartiteSpec& a, const BipartiteSpec& b) {
    if (auto c = a.p <=> b.p; c != 0) return c;
    if (auto c = a.q <=> b.q; c != 0) return c;
    return a.removed <=> b.removed;
  }
};

inline BipartiteSpec make_spec(int p, int q, std::vector<RemovedPair> removed) {
  if (p < 0 || q < 0 || p + q > kMaxOrder)
    throw SpecError("part sizes out of range: " + std::to_string(p) + "," + std::to_string(q));
  for (auto [i, j] : removed)
    if (i < 1 || i > p || j < 1 || j > q)
      throw SpecError("removed pair out of range: " + std::to_string(i) + "," + std::to_string(j));
  std::sort(removed.begin(), removed.end());
  if (std::adjacent_find(removed.begin(), removed.end()) != removed.end()) throw SpecError("duplicate removed pair");
  return BipartiteSpec{p, q, std::move(removed)};
}

/// a_i is vertex i-1, b_j is vertex p+j-1.
inline Graph realize(const BipartiteSpec& s) {
  std::vector<VertexMask> rows(static_cast<std::size_t>(s.p + s.q));
  const VertexMask a_part = prefix_mask(s.p);
  const VertexMask b_part = prefix_mask(s.p + s.q) & ~a_part;
  for (int v = 0; v < s.p + s.q; ++v) rows[static_cast<std::size_t>(v)] = v < s.p ? b_part : a_part;
  for (auto [i, j] : s.removed) {
    const Vertex a = i - 1, b = s.p + j - 1;
    rows[static_cast<std::size_t>(a)] &= ~bit(b);
    rows[static_cast<std::size_t>(b)] &= ~bit(a);
  }
  return Graph::from_rows(std::move(rows));
}

/// Per-vertex removed-edge counts, indexed from 0.
struct Deficiencies {
  std::vector<int> a;
  std::vector<int> b;
};

inline Deficiencies deficiencies(const BipartiteSpec& s) {
  Deficiencies d{std::vector<int>(static_cast<std::size_t>(s.p), 0), std::vector<int>(static_cast<std::size_t>(s.q), 0)};
  for (auto [i, j] : s.removed) {
    ++d.a[static_cast<std::size_t>(i - 1)];
    ++d.b[static_cast<std::size_t>(j - 1)];
  }
  return d;
}

/// The partition pair: nonzero per-vertex deficiencies of each side, descending.
struct DeficiencyProfile {
  std::vector<int> a_parts;
  std::vector<int> b_parts;
  friend bool operator==(const DeficiencyProfile&, const DeficiencyProfile&) = default;
};

inline DeficiencyProfile deficiency_profile(const BipartiteSpec& s) {
  auto d = deficiencies(s);
  auto compress = [](std::vector<int> v) {
    std::erase(v, 0);
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
  };
  return {compress(d.a), compress(d.b)};
}

/// Deletes a_i (side 'a') or b_j (side 'b'); later indices shift down.
inline BipartiteSpec delete_part_vertex(const BipartiteSpec& s, char side, int index) {
  std::vector<RemovedPair> out;
  if (side == 'a') {
    if (index < 1 || index > s.p) throw SpecError("no such a-vertex");
    for (auto [i, j] : s.removed)
      if (i != index) out.emplace_back(i > index ? i - 1 : i, j);
    return make_spec(s.p - 1, s.q, std::move(out));
  }
  if (index < 1 || index > s.q) throw SpecError("no such b-vertex");
  for (auto [i, j] : s.removed)
    if (j != index) out.emplace_back(i, j > index ? j - 1 : j);
  return make_spec(s.p, s.q - 1, std::move(out));
}

/// Swaps the roles of the two parts.
inline BipartiteSpec swap_parts(const BipartiteSpec& s) {
  std::vector<RemovedPair> out;
  for (auto [i, j] : s.removed) out.emplace_back(j, i);
  return make_spec(s.q, s.p, std::move(out));
}

/// Reads a bipartite graph as K_{p,q} \ R relative to the given parts; part
/// vertices are taken in ascending label order.
inline BipartiteSpec spec_from_graph(const Graph& g, const std::vector<Vertex>& part_a, const std::vector<Vertex>& part_b) {
  std::vector<RemovedPair> removed;
  for (std::size_t i = 0; i < part_a.size(); ++i)
    for (std::size_t j = 0; j < part_b.size(); ++j)
      if (!g.adjacent(part_a[i], part_b[j])) removed.emplace_back(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
  return make_spec(static_cast<int>(part_a.size()), static_cast<int>(part_b.size()), std::move(removed));
}

/// `kminus <p> <q> : i,j ; i,j ; ...` (no trailing newline).
inline std::string spec_to_string(const BipartiteSpec& s) {
  std::ostringstream os;
  os << "kminus " << s.p << ' ' << s.q << " :";
  for (std::size_t k = 0; k < s.removed.size(); ++k) {
    os << (k ? " ; " : " ") << s.removed[k].first << ',' << s.removed[k].second;
  }
  return os.str();
}

/// Uniform random removed set of size m.
inline BipartiteSpec sample_spec(int p, int q, int m, Rng& rng) {
  std::vector<int> cells(static_cast<std::size_t>(p * q));
  std::iota(cells.begin(), cells.end(), 0);
  std::vector<RemovedPair> removed;
  for (int k = 0; k < m; ++k) {
    const auto pick = static_cast<std::size_t>(k) + static_cast<std::size_t>(rng.below(cells.size() - static_cast<std::size_t>(k)));
    std::swap(cells[static_cast<std::size_t>(k)], cells[pick]);
    removed.emplace_back(cells[static_cast<std::size_t>(k)] / q + 1, cells[static_cast<std::size_t>(k)] % q + 1);
  }
  return make_spec(p, q, std::move(removed));
}

struct EnumerateOptions {
  std::optional<int> max_deficiency;
  bool allow_large = false;  // permit m > kMaxEnumeratedRemovals
};

inline constexpr int kMaxEnumeratedRemovals = 14;

namespace detail {

inline void partitions_into(int n, int max_part, int max_count, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  if (static_cast<int>(cur.size()) == max_count) return;
  for (int part = std::min(n, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_into(n - part, part, max_count, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> partitions(int n, int max_part, int max_count) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  if (max_part >= 1 || n == 0) partitions_into(n, max_part, max_count, cur, out);
  return out;
}

// All 0/1 p-by-q matrices with the given row and column sums, as removed-pair lists.
inline void matrices_with_margins(const std::vector<int>& rows, std::vector<int>& cols, std::size_t row,
                                  std::vector<RemovedPair>& cur, const std::function<void(const std::vector<RemovedPair>&)>& emit) {
  const int q = static_cast<int>(cols.size());
  if (row == rows.size()) {
    for (int c : cols)
      if (c) return;
    emit(cur);
    return;
  }
  int rows_left_with_demand = 0;
  for (std::size_t r = row + 1; r < rows.size(); ++r) rows_left_with_demand += rows[r] > 0;
  const int need = rows[row];
  auto choose = [&](auto&& self, int start, int remaining) -> void {
    if (remaining == 0) {
      for (int c : cols)
        if (c > rows_left_with_demand) return;
      matrices_with_margins(rows, cols, row + 1, cur, emit);
      return;
    }
    for (int j = start; j <= q - remaining; ++j) {
      if (cols[static_cast<std::size_t>(j)] == 0) continue;
      --cols[static_cast<std::size_t>(j)];
      cur.emplace_back(static_cast<int>(row) + 1, j + 1);
      self(self, j + 1, remaining - 1);
      cur.pop_back();
      ++cols[static_cast<std::size_t>(j)];
    }
  };
  choose(choose, 0, need);
}

inline std::vector<int> realized_degree_signature(int p, int q, const std::vector<int>& da, const std::vector<int>& db) {
  std::vector<int> sig;
  sig.reserve(static_cast<std::size_t>(p + q));
  for (int d : da) sig.push_back(q - d);
  for (int d : db) sig.push_back(p - d);
  std::sort(sig.begin(), sig.end());
  return sig;
}

}  // namespace detail

/// One representative per isomorphism class of realize(spec) among removed
/// sets of size m, optionally restricted to sets in which no vertex loses
/// more than `max_deficiency` edges. Candidates are generated from pairs of
/// partitions of m (the deficiency patterns of each side) and deduplicated
/// by canonical key; each class is then represented by its
/// lexicographically least removed set. Output is sorted.
inline std::vector<BipartiteSpec> enumerate_classes(int p, int q, int m, const EnumerateOptions& opts = {}) {
  if (p < 0 || q < 0 || p + q > kMaxOrder) throw SpecError("part sizes out of range");
  if (m < 0 || m > p * q) throw SpecError("m out of range");
  if (m > kMaxEnumeratedRemovals && !opts.allow_large)
    throw SpecError("refusing to enumerate m > " + std::to_string(kMaxEnumeratedRemovals) + " without override");
  const int cap = opts.max_deficiency.value_or(std::max(p, q));
  if (m == 0) return {make_spec(p, q, {})};

  struct ClassInfo {
    std::vector<int> signature;
    std::optional<std::vector<RemovedPair>> best_generated;
    std::optional<std::vector<RemovedPair>> representative;
  };
  std::map<CanonicalKey, ClassInfo> classes;

  for (const auto& lambda : detail::partitions(m, std::min(q, cap), p)) {
    for (const auto& mu : detail::partitions(m, std::min(p, cap), q)) {
      std::vector<int> rows(lambda), cols(mu);
      rows.resize(static_cast<std::size_t>(p), 0);
      cols.resize(static_cast<std::size_t>(q), 0);
      std::vector<RemovedPair> cur;
      detail::matrices_with_margins(rows, cols, 0, cur, [&](const std::vector<RemovedPair>& removed) {
        BipartiteSpec s{p, q, removed};
        std::sort(s.removed.begin(), s.removed.end());
        auto key = canonical_key(realize(s));
        auto [it, inserted] = classes.try_emplace(std::move(key));
        if (inserted) {
          auto d = deficiencies(s);
          it->second.signature = detail::realized_degree_signature(p, q, d.a, d.b);
        }
        if (!it->second.best_generated || s.removed < *it->second.best_generated) it->second.best_generated = s.removed;
      });
    }
  }

  // Lexicographic scan over removed sets; the first hit of each class is its
  // least member. Degree signatures screen out most canonical-key calls.
  std::map<std::vector<int>, int> unmatched_by_signature;
  for (auto& [key, info] : classes) ++unmatched_by_signature[info.signature];
  std::size_t unmatched = classes.size();
  std::uint64_t leaves = 0;
  constexpr std::uint64_t kScanLimit = 20'000'000;
  std::vector<int> da(static_cast<std::size_t>(p), 0), db(static_cast<std::size_t>(q), 0);
  std::vector<RemovedPair> cur;
  auto scan = [&](auto&& self, int next_cell) -> void {
    if (unmatched == 0 || leaves > kScanLimit) return;
    if (static_cast<int>(cur.size()) == m) {
      ++leaves;
      auto sig = detail::realized_degree_signature(p, q, da, db);
      auto it = unmatched_by_signature.find(sig);
      if (it == unmatched_by_signature.end() || it->second == 0) return;
      BipartiteSpec s{p, q, cur};
      auto found = classes.find(canonical_key(realize(s)));
      if (found == classes.end() || found->second.representative) return;
      found->second.representative = cur;
      --it->second;
      --unmatched;
      return;
    }
    for (int cell = next_cell; cell <= p * q - (m - static_cast<int>(cur.size())); ++cell) {
      const int i = cell / q, j = cell % q;
      if (da[static_cast<std::size_t>(i)] == cap || db[static_cast<std::size_t>(j)] == cap) continue;
      ++da[static_cast<std::size_t>(i)];
      ++db[static_cast<std::size_t>(j)];
      cur.emplace_back(i + 1, j + 1);
      self(self, cell + 1);
      cur.pop_back();
      --da[static_cast<std::size_t>(i)];
      --db[static_cast<std::size_t>(j)];
      if (unmatched == 0 || leaves > kScanLimit) return;
    }
  };
  scan(scan, 0);

  std::vector<BipartiteSpec> out;
  out.reserve(classes.size());
  for (auto& [key, info] : classes)
    out.push_back(BipartiteSpec{p, q, info.representative ? *info.representative : *info.best_generated});
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t count_classes(int p, int q, int m, const EnumerateOptions& opts = {}) {
  return enumerate_classes(p, q, m, opts).size();
}

}  // namespace ikc
