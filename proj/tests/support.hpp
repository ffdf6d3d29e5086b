// Shared helpers for the test suite: random graphs and small brute-force
// oracles that do not go through the library's own search code.
#pragma once

#include <algorithm>
#include <vector>

#include "ikc/graph.hpp"
#include "ikc/random.hpp"

namespace ikc::test {

inline Graph random_graph(int n, std::uint64_t num, std::uint64_t den, Rng& rng) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.chance(num, den)) e.emplace_back(u, v);
  return make_graph(n, e);
}

inline Graph random_graph_edges(int n, int m, Rng& rng) {
  std::vector<Edge> all;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) all.emplace_back(u, v);
  rng.shuffle(all);
  all.resize(static_cast<std::size_t>(std::min<int>(m, static_cast<int>(all.size()))));
  return make_graph(n, all);
}

inline std::vector<Vertex> random_perm(int n, Rng& rng) {
  auto p = rng.permutation(n);
  return {p.begin(), p.end()};
}

/// Plain vertex-by-vertex isomorphism backtracking.
inline bool brute_isomorphic(const Graph& g, const Graph& h) {
  const int n = g.order();
  if (n != h.order() || g.edge_count() != h.edge_count() || g.degree_sequence() != h.degree_sequence()) return false;
  std::vector<Vertex> map(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  auto rec = [&](auto&& self, Vertex v) -> bool {
    if (v == n) return true;
    for (Vertex x = 0; x < n; ++x) {
      if (used[static_cast<std::size_t>(x)] || g.degree(v) != h.degree(x)) continue;
      bool ok = true;
      for (Vertex u = 0; u < v && ok; ++u) ok = g.adjacent(u, v) == h.adjacent(map[static_cast<std::size_t>(u)], x);
      if (!ok) continue;
      map[static_cast<std::size_t>(v)] = x;
      used[static_cast<std::size_t>(x)] = true;
      if (self(self, v + 1)) return true;
      used[static_cast<std::size_t>(x)] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace ikc::test
