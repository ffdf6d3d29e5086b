// Triangle-Y exchange and the closure of a seed graph under it.

#pragma once

#include <array>
#include <deque>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ikc/canonical.hpp"
#include "ikc/graph.hpp"

namespace ikc {

using Triangle = std::array<Vertex, 3>;

/// All 3-cliques as ascending triples, in lexicographic order.
inline std::vector<Triangle> triangles(const Graph& g) {
  std::vector<Triangle> out;
  for (Vertex u = 0; u < g.order(); ++u)
    for_each_bit(g.neighbors(u) & ~prefix_mask(u + 1), [&](Vertex v) {
      for_each_bit(g.neighbors(u) & g.neighbors(v) & ~prefix_mask(v + 1), [&](Vertex w) { out.push_back({u, v, w}); });
    });
  return out;
}

/// Removes the triangle's edges and adds a new vertex (label = order) joined
/// to its three corners.
inline Graph delta_y(const Graph& g, const Triangle& t) {
  auto [x, y, z] = t;
  if (!(g.adjacent(x, y) && g.adjacent(y, z) && g.adjacent(x, z)))
    throw GraphError(GraphErrorKind::NotTriangle, std::to_string(x) + " " + std::to_string(y) + " " + std::to_string(z));
  const int n = g.order();
  if (n + 1 > kMaxOrder) throw GraphError(GraphErrorKind::TooLarge, std::to_string(n + 1));
  std::vector<VertexMask> rows = g.rows();
  const VertexMask corners = bit(x) | bit(y) | bit(z);
  for (Vertex c : t) rows[static_cast<std::size_t>(c)] = (rows[static_cast<std::size_t>(c)] & ~corners) | bit(n);
  rows.push_back(corners);
  return Graph::from_rows(std::move(rows));
}

struct FamilyMember {
  Graph graph;
  CanonicalKey key;
  int parent = -1;       // index into the family; -1 for the seed
  Triangle triangle{};   // triangle of the parent that was exchanged
};

struct WitnessFamily {
  std::string seed_name;
  std::vector<FamilyMember> members;

  std::size_t size() const { return members.size(); }
};

/// Breadth-first closure of `seed` under triangle-Y exchange, deduplicated by
/// canonical key. Members are then sorted by (order, key) with the lineage
/// indices rewritten to match.
inline WitnessFamily dy_closure(const Graph& seed, std::string seed_name) {
  std::vector<FamilyMember> found;
  std::unordered_map<CanonicalKey, int, CanonicalKeyHash> index;
  found.push_back({seed, canonical_key(seed), -1, {}});
  index.emplace(found.back().key, 0);
  for (std::size_t i = 0; i < found.size(); ++i) {
    const Graph current = found[i].graph;
    for (const auto& t : triangles(current)) {
      Graph next = delta_y(current, t);
      CanonicalKey key = canonical_key(next);
      if (index.contains(key)) continue;
      index.emplace(key, static_cast<int>(found.size()));
      found.push_back({std::move(next), std::move(key), static_cast<int>(i), t});
    }
  }
  std::vector<int> perm(found.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
    const auto& ma = found[static_cast<std::size_t>(a)];
    const auto& mb = found[static_cast<std::size_t>(b)];
    if (ma.graph.order() != mb.graph.order()) return ma.graph.order() < mb.graph.order();
    if (a == 0 || b == 0) return a == 0 && b != 0;
    return ma.key < mb.key;
  });
  std::vector<int> new_index(found.size());
  for (std::size_t k = 0; k < perm.size(); ++k) new_index[static_cast<std::size_t>(perm[k])] = static_cast<int>(k);
  WitnessFamily fam{std::move(seed_name), {}};
  fam.members.reserve(found.size());
  for (int old : perm) {
    FamilyMember m = found[static_cast<std::size_t>(old)];
    if (m.parent >= 0) m.parent = new_index[static_cast<std::size_t>(m.parent)];
    fam.members.push_back(std::move(m));
  }
  return fam;
}

inline Graph k7() { return complete_graph(7); }
inline Graph k3311() { return complete_multipartite({3, 3, 1, 1}); }

struct WitnessSet {
  WitnessFamily k7_family;
  WitnessFamily k3311_family;

  /// Both families, K7 family first.
  std::vector<std::pair<const WitnessFamily*, int>> all_members() const {
    std::vector<std::pair<const WitnessFamily*, int>> out;
    for (const auto* f : {&k7_family, &k3311_family})
      for (int i = 0; i < static_cast<int>(f->members.size()); ++i) out.emplace_back(f, i);
    return out;
  }
};

namespace detail {

inline void write_family_index(const std::filesystem::path& file, const WitnessSet& ws) {
  std::ofstream os(file);
  for (const auto* f : {&ws.k7_family, &ws.k3311_family})
    for (const auto& m : f->members) {
      os << f->seed_name << ' ' << m.key.hex() << ' ' << m.parent << ' ' << m.triangle[0] << ' ' << m.triangle[1] << ' '
         << m.triangle[2] << ' ' << m.graph.order();
      for (auto [u, v] : m.graph.edges()) os << ' ' << u << '-' << v;
      os << '\n';
    }
}

// Loads a persisted index; every stored graph is re-keyed, so a tampered or
// stale file is rejected rather than trusted.
inline std::optional<WitnessSet> read_family_index(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) return std::nullopt;
  WitnessSet ws{{"K7", {}}, {"K3311", {}}};
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string name, hex;
    FamilyMember m;
    int order = 0;
    if (!(ls >> name >> hex >> m.parent >> m.triangle[0] >> m.triangle[1] >> m.triangle[2] >> order)) return std::nullopt;
    std::vector<Edge> edges;
    std::string tok;
    while (ls >> tok) {
      auto dash = tok.find('-');
      if (dash == std::string::npos) return std::nullopt;
      edges.emplace_back(std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1)));
    }
    try {
      m.graph = make_graph(order, edges);
    } catch (const GraphError&) {
      return std::nullopt;
    }
    m.key = canonical_key(m.graph);
    if (m.key.hex() != hex) return std::nullopt;
    if (name == "K7") ws.k7_family.members.push_back(std::move(m));
    else if (name == "K3311") ws.k3311_family.members.push_back(std::move(m));
    else return std::nullopt;
  }
  if (ws.k7_family.members.empty() || ws.k3311_family.members.empty()) return std::nullopt;
  return ws;
}

}  // namespace detail

/// The K7 and K3311 closures, computed once per process. With a cache
/// directory the families are also persisted there and reloaded next time.
inline const WitnessSet& witness_set(const std::optional<std::filesystem::path>& cache_dir = std::nullopt) {
  static std::mutex mu;
  static std::optional<WitnessSet> cached;
  std::lock_guard lock(mu);
  if (cached) return *cached;
  const auto file = cache_dir ? std::optional(*cache_dir / "witness-families.txt") : std::nullopt;
  if (file) {
    if (auto loaded = detail::read_family_index(*file)) {
      cached = std::move(loaded);
      return *cached;
    }
  }
  cached = WitnessSet{dy_closure(k7(), "K7"), dy_closure(k3311(), "K3311")};
  if (file) {
    std::error_code ec;
    std::filesystem::create_directories(*cache_dir, ec);
    detail::write_family_index(*file, *cached);
  }
  return *cached;
}

}  // namespace ikc
