// Canonical labeling by partition refinement and individualization, with
// pruning by automorphisms discovered at equal leaves. A separate plain
// backtracking isomorphism search lives here too; the two are kept
// independent so each can check the other.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ikc/graph.hpp"

namespace ikc {

/// Byte string determined by the isomorphism class alone.
struct CanonicalKey {
  std::vector<std::uint8_t> bytes;

  std::string hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (auto b : bytes) {
      s.push_back(digits[b >> 4]);
      s.push_back(digits[b & 15]);
    }
    return s;
  }

  static std::optional<CanonicalKey> from_hex(const std::string& s) {
    if (s.size() % 2) return std::nullopt;
    CanonicalKey k;
    auto nibble = [](char c) -> int {
      if (c >= '0' && c <= '9') return c - '0';
      if (c >= 'a' && c <= 'f') return c - 'a' + 10;
      return -1;
    };
    for (std::size_t i = 0; i < s.size(); i += 2) {
      int hi = nibble(s[i]), lo = nibble(s[i + 1]);
      if (hi < 0 || lo < 0) return std::nullopt;
      k.bytes.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
    }
    return k;
  }

  /// Stable 64-bit FNV-1a digest, used for content addressing.
  std::uint64_t digest() const {
    std::uint64_t h = 14695981039346656037ull;
    for (auto b : bytes) {
      h ^= b;
      h *= 1099511628211ull;
    }
    return h;
  }

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const noexcept { return static_cast<std::size_t>(k.digest()); }
};

struct CanonicalForm {
  CanonicalKey key;
  /// labeling[v] is the canonical position of vertex v.
  std::vector<Vertex> labeling;
  /// Automorphisms met during the search (as permutations); they generate a
  /// subgroup of Aut(G), usually all of it.
  std::vector<std::vector<Vertex>> automorphisms;
};

namespace detail {

class CanonSearch {
 public:
  explicit CanonSearch(const Graph& g) : g_(g), n_(g.order()) {}

  CanonicalForm run() {
    std::vector<VertexMask> cells;
    if (n_ > 0) cells.push_back(g_.vertex_mask());
    std::vector<Vertex> prefix;
    search(cells, prefix);
    CanonicalForm out;
    out.labeling.assign(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < n_; ++i) out.labeling[static_cast<std::size_t>(best_order_[static_cast<std::size_t>(i)])] = i;
    out.key = pack(best_cert_);
    out.automorphisms = std::move(autos_);
    return out;
  }

 private:
  CanonicalKey pack(const std::vector<VertexMask>& cert) const {
    CanonicalKey k;
    k.bytes.push_back(static_cast<std::uint8_t>(n_));
    std::uint8_t acc = 0;
    int nbits = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        acc = static_cast<std::uint8_t>((acc << 1) | ((cert[static_cast<std::size_t>(i)] >> j) & 1));
        if (++nbits == 8) {
          k.bytes.push_back(acc);
          acc = 0;
          nbits = 0;
        }
      }
    if (nbits) k.bytes.push_back(static_cast<std::uint8_t>(acc << (8 - nbits)));
    return k;
  }

  // Splits cells by neighbour counts into each splitter cell until stable.
  // Cell order depends only on structure, never on labels.
  void refine(std::vector<VertexMask>& cells) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t w = 0; w < cells.size(); ++w) {
        const VertexMask splitter = cells[w];
        for (std::size_t x = 0; x < cells.size(); ++x) {
          const VertexMask cell = cells[x];
          if (popcount(cell) == 1) continue;
          std::array<VertexMask, kMaxOrder + 1> by_count{};
          int lo = kMaxOrder, hi = 0;
          for_each_bit(cell, [&](Vertex v) {
            int c = popcount(g_.neighbors(v) & splitter);
            by_count[static_cast<std::size_t>(c)] |= bit(v);
            lo = std::min(lo, c);
            hi = std::max(hi, c);
          });
          if (lo == hi) continue;
          std::vector<VertexMask> parts;
          for (int c = lo; c <= hi; ++c)
            if (by_count[static_cast<std::size_t>(c)]) parts.push_back(by_count[static_cast<std::size_t>(c)]);
          cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(x));
          cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(x), parts.begin(), parts.end());
          x += parts.size() - 1;
          changed = true;
        }
      }
    }
  }

  bool fixes_prefix(const std::vector<Vertex>& perm, const std::vector<Vertex>& prefix) const {
    for (Vertex v : prefix)
      if (perm[static_cast<std::size_t>(v)] != v) return false;
    return true;
  }

  // Orbits of the group generated by the known automorphisms fixing `prefix`.
  std::vector<int> orbits(const std::vector<Vertex>& prefix) const {
    std::vector<int> parent(static_cast<std::size_t>(n_));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      return x;
    };
    for (const auto& a : autos_) {
      if (!fixes_prefix(a, prefix)) continue;
      for (int v = 0; v < n_; ++v) {
        int r1 = find(v), r2 = find(a[static_cast<std::size_t>(v)]);
        if (r1 != r2) parent[static_cast<std::size_t>(std::max(r1, r2))] = std::min(r1, r2);
      }
    }
    for (int v = 0; v < n_; ++v) parent[static_cast<std::size_t>(v)] = find(v);
    return parent;
  }

  void leaf(const std::vector<VertexMask>& cells) {
    std::vector<Vertex> order(static_cast<std::size_t>(n_));
    std::vector<int> pos(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      order[static_cast<std::size_t>(i)] = lowest(cells[static_cast<std::size_t>(i)]);
      pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    }
    std::vector<VertexMask> cert(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < n_; ++i)
      for_each_bit(g_.neighbors(order[static_cast<std::size_t>(i)]),
                   [&](Vertex u) { cert[static_cast<std::size_t>(i)] |= bit(pos[static_cast<std::size_t>(u)]); });
    auto record_auto = [&](const std::vector<Vertex>& other) {
      std::vector<Vertex> perm(static_cast<std::size_t>(n_));
      for (int i = 0; i < n_; ++i) perm[static_cast<std::size_t>(other[static_cast<std::size_t>(i)])] = order[static_cast<std::size_t>(i)];
      autos_.push_back(std::move(perm));
    };
    if (!have_leaf_) {
      have_leaf_ = true;
      first_order_ = best_order_ = order;
      first_cert_ = best_cert_ = cert;
    } else if (cert == first_cert_) {
      record_auto(first_order_);
    } else if (cert == best_cert_) {
      record_auto(best_order_);
    } else if (cert < best_cert_) {
      best_cert_ = std::move(cert);
      best_order_ = std::move(order);
    }
  }

  void search(std::vector<VertexMask> cells, std::vector<Vertex>& prefix) {
    refine(cells);
    std::size_t target = cells.size();
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (popcount(cells[i]) > 1) {
        target = i;
        break;
      }
    if (target == cells.size()) {
      leaf(cells);
      return;
    }
    const VertexMask cell = cells[target];
    std::vector<Vertex> explored;
    for (Vertex w : mask_to_vector(cell)) {
      if (!explored.empty()) {
        auto orb = orbits(prefix);
        bool equivalent = false;
        for (Vertex e : explored)
          if (orb[static_cast<std::size_t>(e)] == orb[static_cast<std::size_t>(w)]) equivalent = true;
        if (equivalent) continue;
      }
      explored.push_back(w);
      std::vector<VertexMask> child;
      child.reserve(cells.size() + 1);
      child.insert(child.end(), cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(target));
      child.push_back(bit(w));
      child.push_back(cell & ~bit(w));
      child.insert(child.end(), cells.begin() + static_cast<std::ptrdiff_t>(target) + 1, cells.end());
      prefix.push_back(w);
      search(std::move(child), prefix);
      prefix.pop_back();
    }
  }

  const Graph& g_;
  int n_;
  bool have_leaf_ = false;
  std::vector<Vertex> first_order_, best_order_;
  std::vector<VertexMask> first_cert_, best_cert_;
  std::vector<std::vector<Vertex>> autos_;
};

}  // namespace detail

inline CanonicalForm canonical_form(const Graph& g) { return detail::CanonSearch(g).run(); }

inline CanonicalKey canonical_key(const Graph& g) { return canonical_form(g).key; }

/// Explicit isomorphism g -> h (map[v] is the image of v), by backtracking
/// over degree-compatible candidates. Independent of canonical_form.
inline std::optional<std::vector<Vertex>> find_isomorphism(const Graph& g, const Graph& h) {
  const int n = g.order();
  if (n != h.order() || g.edge_count() != h.edge_count()) return std::nullopt;
  if (g.degree_sequence() != h.degree_sequence()) return std::nullopt;

  // Match order: BFS from high-degree vertices so each new vertex has mapped neighbours.
  std::vector<Vertex> order;
  VertexMask placed = 0;
  while (static_cast<int>(order.size()) < n) {
    Vertex best = -1;
    int best_links = -1, best_deg = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (placed & bit(v)) continue;
      int links = popcount(g.neighbors(v) & placed), deg = g.degree(v);
      if (links > best_links || (links == best_links && deg > best_deg)) {
        best = v;
        best_links = links;
        best_deg = deg;
      }
    }
    order.push_back(best);
    placed |= bit(best);
  }

  std::vector<Vertex> map(static_cast<std::size_t>(n), -1);
  VertexMask used = 0;
  auto recurse = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == order.size()) return true;
    const Vertex v = order[depth];
    for (Vertex x = 0; x < n; ++x) {
      if ((used & bit(x)) || h.degree(x) != g.degree(v)) continue;
      bool ok = true;
      for (std::size_t i = 0; i < depth && ok; ++i) {
        const Vertex u = order[i];
        ok = g.adjacent(u, v) == h.adjacent(map[static_cast<std::size_t>(u)], x);
      }
      if (!ok) continue;
      map[static_cast<std::size_t>(v)] = x;
      used |= bit(x);
      if (self(self, depth + 1)) return true;
      used &= ~bit(x);
    }
    return false;
  };
  if (!recurse(recurse, 0)) return std::nullopt;
  return map;
}

inline bool is_isomorphic(const Graph& g, const Graph& h) { return find_isomorphism(g, h).has_value(); }

/// Every automorphism of g, in lexicographic order of the image sequence.
/// Returns nullopt when the group has more than `limit` elements.
inline std::optional<std::vector<std::vector<Vertex>>> automorphism_group(const Graph& g, std::size_t limit = 200000) {
  const int n = g.order();
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> map(static_cast<std::size_t>(n), -1);
  VertexMask used = 0;
  bool overflow = false;
  auto recurse = [&](auto&& self, Vertex v) -> void {
    if (overflow) return;
    if (v == n) {
      if (out.size() >= limit) {
        overflow = true;
        return;
      }
      out.push_back(map);
      return;
    }
    for (Vertex x = 0; x < n; ++x) {
      if ((used & bit(x)) || g.degree(x) != g.degree(v)) continue;
      bool ok = true;
      for (Vertex u = 0; u < v && ok; ++u) ok = g.adjacent(u, v) == g.adjacent(map[static_cast<std::size_t>(u)], x);
      if (!ok) continue;
      map[static_cast<std::size_t>(v)] = x;
      used |= bit(x);
      self(self, v + 1);
      used &= ~bit(x);
    }
  };
  recurse(recurse, 0);
  if (overflow) return std::nullopt;
  return out;
}

}  // namespace ikc
