// Planarity testing with a combinatorial embedding as witness, and the
// "subgraph of K2 + planar" non-IK certificate.
//
// Each biconnected block is embedded by face-path insertion (Demoucron,
// Malgrange, Pertuiset); block rotations are then concatenated at cut
// vertices. The witness is checked independently through Euler's formula.

#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "ikc/graph.hpp"

namespace ikc {

/// rotation[v] lists the neighbours of v in clockwise order.
struct Embedding {
  std::vector<std::vector<Vertex>> rotation;

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

namespace detail {

// Biconnected blocks as edge lists (Tarjan, edge stack).
class BlockFinder {
 public:
  explicit BlockFinder(const Graph& g) : g_(g), disc_(static_cast<std::size_t>(g.order()), -1), low_(disc_) {}

  std::vector<std::vector<Edge>> run() {
    for (Vertex v = 0; v < g_.order(); ++v)
      if (disc_[static_cast<std::size_t>(v)] < 0) visit(v, -1);
    return std::move(blocks_);
  }

 private:
  void visit(Vertex v, Vertex parent) {
    disc_[static_cast<std::size_t>(v)] = low_[static_cast<std::size_t>(v)] = time_++;
    for_each_bit(g_.neighbors(v), [&](Vertex w) {
      const auto vi = static_cast<std::size_t>(v), wi = static_cast<std::size_t>(w);
      if (disc_[wi] < 0) {
        stack_.push_back({v, w});
        visit(w, v);
        low_[vi] = std::min(low_[vi], low_[wi]);
        if (low_[wi] >= disc_[vi]) {
          std::vector<Edge> block;
          Edge e;
          do {
            e = stack_.back();
            stack_.pop_back();
            block.push_back(normalized(e));
          } while (e != Edge{v, w});
          std::sort(block.begin(), block.end());
          blocks_.push_back(std::move(block));
        }
      } else if (w != parent && disc_[wi] < disc_[vi]) {
        stack_.push_back({v, w});
        low_[vi] = std::min(low_[vi], disc_[wi]);
      }
    });
  }

  const Graph& g_;
  std::vector<int> disc_, low_;
  int time_ = 0;
  std::vector<Edge> stack_;
  std::vector<std::vector<Edge>> blocks_;
};

// Faces of a planar embedding of one block, as vertex cycles, or nullopt.
inline std::optional<std::vector<std::vector<Vertex>>> embed_block(int order, const std::vector<Edge>& block) {
  std::vector<VertexMask> adj(static_cast<std::size_t>(order), 0);
  VertexMask verts = 0;
  for (auto [u, v] : block) {
    adj[static_cast<std::size_t>(u)] |= bit(v);
    adj[static_cast<std::size_t>(v)] |= bit(u);
    verts |= bit(u) | bit(v);
  }
  const auto A = [&](Vertex v) { return adj[static_cast<std::size_t>(v)]; };

  // Initial cycle: the first edge plus a shortest path back avoiding it.
  const auto [s, t] = block.front();
  std::vector<Vertex> prev(static_cast<std::size_t>(order), -1);
  std::vector<Vertex> queue{t};
  VertexMask seen = bit(t);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Vertex x = queue[i];
    for_each_bit(A(x) & ~seen, [&](Vertex y) {
      if (x == t && y == s) return;
      seen |= bit(y);
      prev[static_cast<std::size_t>(y)] = x;
      queue.push_back(y);
    });
  }
  std::vector<Vertex> cycle;
  for (Vertex x = s; x != -1; x = prev[static_cast<std::size_t>(x)]) cycle.push_back(x);
  // cycle runs s .. t; closing edge t-s
  std::vector<std::vector<Vertex>> faces{cycle, std::vector<Vertex>(cycle.rbegin(), cycle.rend())};

  std::vector<VertexMask> placed(static_cast<std::size_t>(order), 0);  // embedded edges
  VertexMask embedded = 0;
  const auto add_path = [&](const std::vector<Vertex>& path) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      placed[static_cast<std::size_t>(path[i])] |= bit(path[i + 1]);
      placed[static_cast<std::size_t>(path[i + 1])] |= bit(path[i]);
    }
    for (Vertex v : path) embedded |= bit(v);
  };
  cycle.push_back(s);
  add_path(cycle);
  std::size_t placed_edges = cycle.size() - 1;

  while (placed_edges < block.size()) {
    struct Fragment {
      VertexMask inner = 0;   // vertices not yet embedded
      VertexMask attach = 0;  // embedded vertices touching the fragment
      Edge chord{-1, -1};
    };
    std::vector<Fragment> frags;
    for (auto [u, v] : block)
      if ((embedded & bit(u)) && (embedded & bit(v)) && !(placed[static_cast<std::size_t>(u)] & bit(v)))
        frags.push_back({0, bit(u) | bit(v), {u, v}});
    VertexMask rest = verts & ~embedded;
    while (rest) {
      VertexMask comp = bit(lowest(rest)), frontier = comp;
      while (frontier) {
        VertexMask grow = 0;
        for_each_bit(frontier, [&](Vertex x) { grow |= A(x); });
        frontier = grow & rest & ~comp;
        comp |= frontier;
      }
      rest &= ~comp;
      VertexMask attach = 0;
      for_each_bit(comp, [&](Vertex x) { attach |= A(x) & embedded; });
      frags.push_back({comp, attach, {-1, -1}});
    }

    std::vector<VertexMask> face_sets;
    for (const auto& f : faces) {
      VertexMask m = 0;
      for (Vertex v : f) m |= bit(v);
      face_sets.push_back(m);
    }
    int chosen = -1, chosen_face = -1;
    for (std::size_t i = 0; i < frags.size(); ++i) {
      int count = 0, first = -1;
      for (std::size_t f = 0; f < faces.size(); ++f)
        if ((frags[i].attach & ~face_sets[f]) == 0) {
          if (first < 0) first = static_cast<int>(f);
          ++count;
        }
      if (count == 0) return std::nullopt;
      if (count == 1 || chosen < 0) {
        const bool forced = count == 1;
        chosen = static_cast<int>(i);
        chosen_face = first;
        if (forced) break;
      }
    }

    const Fragment& fr = frags[static_cast<std::size_t>(chosen)];
    std::vector<Vertex> path;
    if (fr.chord.first >= 0) {
      path = {fr.chord.first, fr.chord.second};
    } else {
      // Path between the two lowest attachments through the fragment.
      const Vertex a1 = lowest(fr.attach);
      const Vertex a2 = lowest(fr.attach & (fr.attach - 1));
      std::vector<Vertex> from(static_cast<std::size_t>(order), -1);
      std::vector<Vertex> q;
      VertexMask vis = 0;
      for_each_bit(A(a1) & fr.inner, [&](Vertex y) {
        vis |= bit(y);
        from[static_cast<std::size_t>(y)] = a1;
        q.push_back(y);
      });
      Vertex end = -1;
      for (std::size_t i = 0; i < q.size() && end < 0; ++i) {
        const Vertex x = q[i];
        if (A(x) & bit(a2)) {
          end = x;
          break;
        }
        for_each_bit(A(x) & fr.inner & ~vis, [&](Vertex y) {
          vis |= bit(y);
          from[static_cast<std::size_t>(y)] = x;
          q.push_back(y);
        });
      }
      path.push_back(a2);
      for (Vertex x = end; x != a1; x = from[static_cast<std::size_t>(x)]) path.push_back(x);
      path.push_back(a1);
      std::reverse(path.begin(), path.end());
    }

    // Split the face along the path.
    const std::vector<Vertex> face = faces[static_cast<std::size_t>(chosen_face)];
    const std::size_t len = face.size();
    const auto i = static_cast<std::size_t>(std::find(face.begin(), face.end(), path.front()) - face.begin());
    const auto j = static_cast<std::size_t>(std::find(face.begin(), face.end(), path.back()) - face.begin());
    std::vector<Vertex> f1, f2;
    for (std::size_t k = i;; k = (k + 1) % len) {
      f1.push_back(face[k]);
      if (k == j) break;
    }
    for (std::size_t k = path.size() - 2; k >= 1; --k) f1.push_back(path[k]);
    for (std::size_t k = j;; k = (k + 1) % len) {
      f2.push_back(face[k]);
      if (k == i) break;
    }
    for (std::size_t k = 1; k + 1 < path.size(); ++k) f2.push_back(path[k]);
    faces[static_cast<std::size_t>(chosen_face)] = std::move(f1);
    faces.push_back(std::move(f2));
    add_path(path);
    placed_edges += path.size() - 1;
  }
  return faces;
}

// Rotation at each vertex of a block from its face cycles: a face passing
// u -> v -> w means w follows u clockwise around v.
inline std::vector<std::vector<Vertex>> rotations_from_faces(int order, const std::vector<std::vector<Vertex>>& faces) {
  std::vector<std::vector<std::pair<Vertex, Vertex>>> succ(static_cast<std::size_t>(order));
  for (const auto& f : faces) {
    const std::size_t n = f.size();
    for (std::size_t k = 0; k < n; ++k)
      succ[static_cast<std::size_t>(f[k])].push_back({f[(k + n - 1) % n], f[(k + 1) % n]});
  }
  std::vector<std::vector<Vertex>> rot(static_cast<std::size_t>(order));
  for (std::size_t v = 0; v < succ.size(); ++v) {
    auto& s = succ[v];
    if (s.empty()) continue;
    std::sort(s.begin(), s.end());
    Vertex cur = s.front().first;
    do {
      rot[v].push_back(cur);
      cur = std::lower_bound(s.begin(), s.end(), std::pair<Vertex, Vertex>{cur, -1})->second;
    } while (cur != s.front().first);
  }
  return rot;
}

}  // namespace detail

/// A planar rotation system for g, or nullopt when g is not planar.
inline std::optional<Embedding> planar_embedding(const Graph& g) {
  const int n = g.order();
  if (n >= 3 && static_cast<int>(g.edge_count()) > 3 * n - 6) return std::nullopt;
  Embedding emb{std::vector<std::vector<Vertex>>(static_cast<std::size_t>(n))};
  for (const auto& block : detail::BlockFinder(g).run()) {
    if (block.size() == 1) {
      auto [u, v] = block.front();
      emb.rotation[static_cast<std::size_t>(u)].push_back(v);
      emb.rotation[static_cast<std::size_t>(v)].push_back(u);
      continue;
    }
    auto faces = detail::embed_block(n, block);
    if (!faces) return std::nullopt;
    auto rot = detail::rotations_from_faces(n, *faces);
    for (std::size_t v = 0; v < rot.size(); ++v)
      emb.rotation[v].insert(emb.rotation[v].end(), rot[v].begin(), rot[v].end());
  }
  return emb;
}

inline bool is_planar(const Graph& g) { return planar_embedding(g).has_value(); }

/// Independent check: the rotation system covers every edge once per side and
/// its face count meets Euler's formula, i.e. it has genus zero.
inline bool verify_embedding(const Graph& g, const Embedding& emb) {
  const int n = g.order();
  if (static_cast<int>(emb.rotation.size()) != n) return false;
  std::vector<std::vector<int>> pos(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (Vertex v = 0; v < n; ++v) {
    const auto& r = emb.rotation[static_cast<std::size_t>(v)];
    VertexMask m = 0;
    for (std::size_t k = 0; k < r.size(); ++k) {
      const Vertex w = r[k];
      if (w < 0 || w >= n || (m & bit(w))) return false;
      m |= bit(w);
      pos[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] = static_cast<int>(k);
    }
    if (m != g.neighbors(v)) return false;
  }
  // Dart u->v is followed by v->(successor of u around v).
  std::vector<VertexMask> used(static_cast<std::size_t>(n), 0);
  int faces = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : emb.rotation[static_cast<std::size_t>(u)]) {
      if (used[static_cast<std::size_t>(u)] & bit(v)) continue;
      ++faces;
      Vertex a = u, b = v;
      while (!(used[static_cast<std::size_t>(a)] & bit(b))) {
        used[static_cast<std::size_t>(a)] |= bit(b);
        const auto& r = emb.rotation[static_cast<std::size_t>(b)];
        const auto k = static_cast<std::size_t>(pos[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)]);
        const Vertex c = r[(k + 1) % r.size()];
        a = b;
        b = c;
      }
    }
  int isolated = 0;
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) == 0) ++isolated;
  const int components = static_cast<int>(connected_components(g).size());
  return n - static_cast<int>(g.edge_count()) + faces + isolated == 2 * components;
}

/// Witness that g is a subgraph of K2 + (g - {u, v}) with g - {u, v} planar.
/// The embedding is given in g's labels (rows for u and v are empty).
struct PlanarJoinCertificate {
  Vertex u = -1;
  Vertex v = -1;
  Embedding embedding;

  friend bool operator==(const PlanarJoinCertificate&, const PlanarJoinCertificate&) = default;
};

namespace detail {

inline Graph without_pair(const Graph& g, Vertex u, Vertex v, std::vector<Vertex>& new_to_old) {
  return induced_subgraph(g, g.vertex_mask() & ~bit(u) & ~bit(v), &new_to_old);
}

}  // namespace detail

/// First pair (u < v) in lexicographic order whose removal leaves a planar graph.
inline std::optional<PlanarJoinCertificate> planar_join_certificate(const Graph& g) {
  const int n = g.order();
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      std::vector<Vertex> back;
      const Graph rest = detail::without_pair(g, u, v, back);
      auto emb = planar_embedding(rest);
      if (!emb) continue;
      PlanarJoinCertificate cert{u, v, {std::vector<std::vector<Vertex>>(static_cast<std::size_t>(n))}};
      for (std::size_t x = 0; x < back.size(); ++x)
        for (Vertex y : emb->rotation[x])
          cert.embedding.rotation[static_cast<std::size_t>(back[x])].push_back(back[static_cast<std::size_t>(y)]);
      return cert;
    }
  return std::nullopt;
}

inline bool verify_planar_join(const Graph& g, const PlanarJoinCertificate& cert) {
  const int n = g.order();
  if (cert.u < 0 || cert.v < 0 || cert.u >= n || cert.v >= n || cert.u == cert.v) return false;
  if (static_cast<int>(cert.embedding.rotation.size()) != n) return false;
  if (!cert.embedding.rotation[static_cast<std::size_t>(cert.u)].empty() ||
      !cert.embedding.rotation[static_cast<std::size_t>(cert.v)].empty())
    return false;
  std::vector<Vertex> back;
  const Graph rest = detail::without_pair(g, cert.u, cert.v, back);
  std::vector<Vertex> to_new(static_cast<std::size_t>(n), -1);
  for (std::size_t x = 0; x < back.size(); ++x) to_new[static_cast<std::size_t>(back[x])] = static_cast<Vertex>(x);
  Embedding local{std::vector<std::vector<Vertex>>(back.size())};
  for (std::size_t x = 0; x < back.size(); ++x)
    for (Vertex y : cert.embedding.rotation[static_cast<std::size_t>(back[x])]) {
      if (y < 0 || y >= n || to_new[static_cast<std::size_t>(y)] < 0) return false;
      local.rotation[x].push_back(to_new[static_cast<std::size_t>(y)]);
    }
  return verify_embedding(rest, local);
}

}  // namespace ikc
