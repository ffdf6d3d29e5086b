// Simple undirected graphs on at most 64 vertices, stored as adjacency
// bitmasks. Every other module builds on this header.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ikc {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;
using VertexMask = std::uint64_t;

inline constexpr int kMaxOrder = 64;

enum class GraphErrorKind { Loop, DuplicateEdge, OutOfRange, TooLarge, AbsentVertex, AbsentEdge, NotTriangle };

inline const char* to_string(GraphErrorKind kind) {
  switch (kind) {
    case GraphErrorKind::Loop: return "loop";
    case GraphErrorKind::DuplicateEdge: return "duplicate edge";
    case GraphErrorKind::OutOfRange: return "endpoint out of range";
    case GraphErrorKind::TooLarge: return "order too large";
    case GraphErrorKind::AbsentVertex: return "absent vertex";
    case GraphErrorKind::AbsentEdge: return "absent edge";
    case GraphErrorKind::NotTriangle: return "not a triangle";
  }
  return "graph error";
}

class GraphError : public std::invalid_argument {
 public:
  GraphError(GraphErrorKind kind, const std::string& detail)
      : std::invalid_argument(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}
  GraphErrorKind kind() const noexcept { return kind_; }

 private:
  GraphErrorKind kind_;
};

inline constexpr VertexMask bit(Vertex v) { return VertexMask{1} << v; }
inline int popcount(VertexMask m) { return std::popcount(m); }
inline Vertex lowest(VertexMask m) { return std::countr_zero(m); }
inline VertexMask prefix_mask(int n) { return n >= 64 ? ~VertexMask{0} : bit(n) - 1; }

template <typename F>
inline void for_each_bit(VertexMask m, F&& f) {
  while (m) {
    Vertex v = std::countr_zero(m);
    m &= m - 1;
    f(v);
  }
}

inline std::vector<Vertex> mask_to_vector(VertexMask m) {
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(popcount(m)));
  for_each_bit(m, [&](Vertex v) { out.push_back(v); });
  return out;
}

inline Edge normalized(Edge e) { return e.first <= e.second ? e : Edge{e.second, e.first}; }

/// Immutable simple graph with vertices 0..order-1.
///
/// The edge set is implied by the adjacency rows, so `edges()` always comes
/// back in lexicographic order of normalized pairs.
class Graph {
 public:
  Graph() = default;

  /// Edgeless graph.
  explicit Graph(int order) : order_(order), adj_(static_cast<std::size_t>(order), 0) {
    if (order < 0 || order > kMaxOrder)
      throw GraphError(GraphErrorKind::TooLarge, std::to_string(order));
  }

  /// Builds from symmetric, loop-free adjacency rows.
  static Graph from_rows(std::vector<VertexMask> rows) {
    Graph g;
    if (rows.size() > static_cast<std::size_t>(kMaxOrder))
      throw GraphError(GraphErrorKind::TooLarge, std::to_string(rows.size()));
    g.order_ = static_cast<int>(rows.size());
    const VertexMask all = prefix_mask(g.order_);
    std::size_t degree_sum = 0;
    for (int v = 0; v < g.order_; ++v) {
      const VertexMask row = rows[static_cast<std::size_t>(v)];
      if (row & bit(v)) throw GraphError(GraphErrorKind::Loop, std::to_string(v));
      if (row & ~all) throw GraphError(GraphErrorKind::OutOfRange, "row " + std::to_string(v));
      for_each_bit(row, [&](Vertex u) {
        if (!(rows[static_cast<std::size_t>(u)] & bit(v)))
          throw GraphError(GraphErrorKind::OutOfRange, "asymmetric adjacency");
      });
      degree_sum += static_cast<std::size_t>(popcount(row));
    }
    g.adj_ = std::move(rows);
    g.edge_count_ = degree_sum / 2;
    return g;
  }

  int order() const noexcept { return order_; }
  std::size_t edge_count() const noexcept { return edge_count_; }
  VertexMask vertex_mask() const noexcept { return prefix_mask(order_); }

  bool has_vertex(Vertex v) const noexcept { return v >= 0 && v < order_; }
  bool adjacent(Vertex u, Vertex v) const noexcept {
    return has_vertex(u) && has_vertex(v) && (adj_[static_cast<std::size_t>(u)] & bit(v));
  }
  VertexMask neighbors(Vertex v) const noexcept { return adj_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const noexcept { return popcount(neighbors(v)); }
  const std::vector<VertexMask>& rows() const noexcept { return adj_; }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < order_; ++u)
      for_each_bit(adj_[static_cast<std::size_t>(u)] & ~prefix_mask(u + 1), [&](Vertex v) { out.emplace_back(u, v); });
    return out;
  }

  std::vector<int> degree_sequence() const {
    std::vector<int> d(static_cast<std::size_t>(order_));
    for (Vertex v = 0; v < order_; ++v) d[static_cast<std::size_t>(v)] = degree(v);
    std::sort(d.begin(), d.end(), std::greater<>());
    return d;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.order_ == b.order_ && a.adj_ == b.adj_; }

 private:
  int order_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<VertexMask> adj_;
};

/// Validating constructor; loops, duplicates and out-of-range endpoints are
/// each reported with their own error kind.
inline Graph make_graph(int order, const std::vector<Edge>& edges) {
  if (order < 0 || order > kMaxOrder) throw GraphError(GraphErrorKind::TooLarge, std::to_string(order));
  std::vector<VertexMask> rows(static_cast<std::size_t>(order), 0);
  for (auto [u, v] : edges) {
    const std::string pair = std::to_string(u) + " " + std::to_string(v);
    if (u < 0 || v < 0 || u >= order || v >= order) throw GraphError(GraphErrorKind::OutOfRange, pair);
    if (u == v) throw GraphError(GraphErrorKind::Loop, pair);
    if (rows[static_cast<std::size_t>(u)] & bit(v)) throw GraphError(GraphErrorKind::DuplicateEdge, pair);
    rows[static_cast<std::size_t>(u)] |= bit(v);
    rows[static_cast<std::size_t>(v)] |= bit(u);
  }
  return Graph::from_rows(std::move(rows));
}

inline Graph complete_graph(int n) {
  std::vector<VertexMask> rows(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) rows[static_cast<std::size_t>(v)] = prefix_mask(n) & ~bit(v);
  return Graph::from_rows(std::move(rows));
}

/// a-part is 0..p-1, b-part is p..p+q-1.
inline Graph complete_bipartite(int p, int q) {
  std::vector<VertexMask> rows(static_cast<std::size_t>(p + q));
  const VertexMask a_part = prefix_mask(p);
  const VertexMask b_part = prefix_mask(p + q) & ~a_part;
  for (int v = 0; v < p + q; ++v) rows[static_cast<std::size_t>(v)] = v < p ? b_part : a_part;
  return Graph::from_rows(std::move(rows));
}

inline Graph cycle_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return make_graph(n, e);
}

/// Complete multipartite graph with the given part sizes, parts laid out in order.
inline Graph complete_multipartite(const std::vector<int>& parts) {
  int n = 0;
  std::vector<VertexMask> part_masks;
  for (int s : parts) {
    part_masks.push_back(prefix_mask(n + s) & ~prefix_mask(n));
    n += s;
  }
  std::vector<VertexMask> rows(static_cast<std::size_t>(n));
  for (const VertexMask pm : part_masks)
    for_each_bit(pm, [&](Vertex v) { rows[static_cast<std::size_t>(v)] = prefix_mask(n) & ~pm; });
  return Graph::from_rows(std::move(rows));
}

/// Relabels so vertex v becomes perm[v].
inline Graph permute(const Graph& g, const std::vector<Vertex>& perm) {
  std::vector<VertexMask> rows(static_cast<std::size_t>(g.order()), 0);
  for (Vertex v = 0; v < g.order(); ++v) {
    VertexMask r = 0;
    for_each_bit(g.neighbors(v), [&](Vertex u) { r |= bit(perm[static_cast<std::size_t>(u)]); });
    rows[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] = r;
  }
  return Graph::from_rows(std::move(rows));
}

/// Subgraph induced by `keep`. Surviving vertices keep their relative order;
/// `new_to_old` (if given) receives the lineage map.
inline Graph induced_subgraph(const Graph& g, VertexMask keep, std::vector<Vertex>* new_to_old = nullptr) {
  keep &= g.vertex_mask();
  std::vector<Vertex> old_of = mask_to_vector(keep);
  std::vector<int> new_of(static_cast<std::size_t>(g.order()), -1);
  for (std::size_t i = 0; i < old_of.size(); ++i) new_of[static_cast<std::size_t>(old_of[i])] = static_cast<int>(i);
  std::vector<VertexMask> rows(old_of.size(), 0);
  for (std::size_t i = 0; i < old_of.size(); ++i)
    for_each_bit(g.neighbors(old_of[i]) & keep, [&](Vertex u) { rows[i] |= bit(new_of[static_cast<std::size_t>(u)]); });
  if (new_to_old) *new_to_old = std::move(old_of);
  return Graph::from_rows(std::move(rows));
}

inline Graph delete_vertex(const Graph& g, Vertex v) {
  if (!g.has_vertex(v)) throw GraphError(GraphErrorKind::AbsentVertex, std::to_string(v));
  return induced_subgraph(g, g.vertex_mask() & ~bit(v));
}

inline Graph delete_edge(const Graph& g, Edge e) {
  auto [u, v] = e;
  if (!g.adjacent(u, v)) throw GraphError(GraphErrorKind::AbsentEdge, std::to_string(u) + " " + std::to_string(v));
  std::vector<VertexMask> rows = g.rows();
  rows[static_cast<std::size_t>(u)] &= ~bit(v);
  rows[static_cast<std::size_t>(v)] &= ~bit(u);
  return Graph::from_rows(std::move(rows));
}

/// Merges the endpoints into the lower label; the higher label disappears and
/// later labels shift down by one. Loops and parallel edges are discarded.
inline Graph contract_edge(const Graph& g, Edge e) {
  auto [u, v] = normalized(e);
  if (!g.adjacent(u, v)) throw GraphError(GraphErrorKind::AbsentEdge, std::to_string(u) + " " + std::to_string(v));
  std::vector<VertexMask> rows = g.rows();
  const VertexMask merged = (rows[static_cast<std::size_t>(u)] | rows[static_cast<std::size_t>(v)]) & ~bit(u) & ~bit(v);
  rows[static_cast<std::size_t>(u)] = merged;
  for_each_bit(merged, [&](Vertex w) {
    rows[static_cast<std::size_t>(w)] = (rows[static_cast<std::size_t>(w)] & ~bit(v)) | bit(u);
  });
  rows[static_cast<std::size_t>(v)] = 0;
  return induced_subgraph(Graph::from_rows(std::move(rows)), g.vertex_mask() & ~bit(v));
}

/// K2 + G: two new adjacent vertices (labels n and n+1), each joined to all of G.
inline Graph join_k2(const Graph& g) {
  const int n = g.order();
  if (n + 2 > kMaxOrder) throw GraphError(GraphErrorKind::TooLarge, std::to_string(n + 2));
  std::vector<VertexMask> rows = g.rows();
  for (auto& r : rows) r |= bit(n) | bit(n + 1);
  rows.push_back(prefix_mask(n) | bit(n + 1));
  rows.push_back(prefix_mask(n) | bit(n));
  return Graph::from_rows(std::move(rows));
}

inline std::vector<VertexMask> connected_components(const Graph& g) {
  std::vector<VertexMask> comps;
  VertexMask seen = 0;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (seen & bit(s)) continue;
    VertexMask comp = bit(s), frontier = bit(s);
    while (frontier) {
      VertexMask next = 0;
      for_each_bit(frontier, [&](Vertex v) { next |= g.neighbors(v); });
      frontier = next & ~comp;
      comp |= next;
    }
    seen |= comp;
    comps.push_back(comp);
  }
  return comps;
}

/// True iff the vertices of `set` induce a connected subgraph (empty set is not connected).
inline bool induces_connected(const Graph& g, VertexMask set) {
  if (!set) return false;
  VertexMask reached = bit(lowest(set)), frontier = reached;
  while (frontier) {
    VertexMask next = 0;
    for_each_bit(frontier, [&](Vertex v) { next |= g.neighbors(v); });
    frontier = next & set & ~reached;
    reached |= frontier;
  }
  return reached == set;
}

inline bool is_connected(const Graph& g) { return g.order() == 0 || induces_connected(g, g.vertex_mask()); }

struct Bipartition {
  std::vector<Vertex> part_a;
  std::vector<Vertex> part_b;
};

/// Two-coloring by BFS; in every component the lowest vertex gets part A.
/// Empty when an odd cycle exists.
inline std::optional<Bipartition> bipartition(const Graph& g) {
  std::vector<int> color(static_cast<std::size_t>(g.order()), -1);
  for (Vertex s = 0; s < g.order(); ++s) {
    if (color[static_cast<std::size_t>(s)] != -1) continue;
    color[static_cast<std::size_t>(s)] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      bool clash = false;
      for_each_bit(g.neighbors(v), [&](Vertex u) {
        auto& cu = color[static_cast<std::size_t>(u)];
        if (cu == -1) {
          cu = 1 - color[static_cast<std::size_t>(v)];
          q.push(u);
        } else if (cu == color[static_cast<std::size_t>(v)]) {
          clash = true;
        }
      });
      if (clash) return std::nullopt;
    }
  }
  Bipartition bp;
  for (Vertex v = 0; v < g.order(); ++v) (color[static_cast<std::size_t>(v)] == 0 ? bp.part_a : bp.part_b).push_back(v);
  return bp;
}

/// Graph text format: `g <order> <edgecount>` then one `u v` line per edge.
inline std::string to_text(const Graph& g) {
  std::ostringstream os;
  os << "g " << g.order() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
  return os.str();
}

}  // namespace ikc
