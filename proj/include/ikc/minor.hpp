// Subgraph and minor containment with replayable witnesses.
//
// has_minor grows one branch set per pattern vertex (branch and bound over
// vertex assignments). minor_oracle is an independent brute force over
// deletion/contraction sequences, only meant for tiny hosts and for testing.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ikc/canonical.hpp"
#include "ikc/graph.hpp"

namespace ikc {

struct MinorModel {
  /// branch_sets[h] is the (sorted) set of host vertices contracted onto h.
  std::vector<std::vector<Vertex>> branch_sets;
  /// For every pattern edge, the host edge realizing it.
  std::vector<std::pair<Edge, Edge>> edge_assignment;

  friend bool operator==(const MinorModel&, const MinorModel&) = default;
};

struct SearchBudget {
  std::uint64_t node_limit = 100'000'000;
  std::int64_t time_limit_ms = 60'000;

  static SearchBudget unlimited_nodes(std::int64_t time_limit_ms) { return {~std::uint64_t{0}, time_limit_ms}; }
};

enum class MinorOutcome { Found, Absent, Undecided };

inline const char* to_string(MinorOutcome o) {
  switch (o) {
    case MinorOutcome::Found: return "found";
    case MinorOutcome::Absent: return "absent";
    case MinorOutcome::Undecided: return "undecided";
  }
  return "?";
}

struct MinorResult {
  MinorOutcome outcome = MinorOutcome::Absent;
  std::optional<MinorModel> model;
  std::uint64_t nodes = 0;
};

/// Lexicographically least injective map V(h) -> V(g) carrying edges to edges.
inline std::optional<std::vector<Vertex>> has_subgraph(const Graph& h, const Graph& g) {
  const int nh = h.order();
  if (nh > g.order() || h.edge_count() > g.edge_count()) return std::nullopt;
  auto dh = h.degree_sequence(), dg = g.degree_sequence();
  for (int i = 0; i < nh; ++i)
    if (dh[static_cast<std::size_t>(i)] > dg[static_cast<std::size_t>(i)]) return std::nullopt;

  std::vector<Vertex> map(static_cast<std::size_t>(nh), -1);
  VertexMask used = 0;
  auto recurse = [&](auto&& self, Vertex v) -> bool {
    if (v == nh) return true;
    VertexMask cand = g.vertex_mask() & ~used;
    for_each_bit(h.neighbors(v) & prefix_mask(v), [&](Vertex u) { cand &= g.neighbors(map[static_cast<std::size_t>(u)]); });
    const int need = h.degree(v);
    while (cand) {
      const Vertex x = lowest(cand);
      cand &= cand - 1;
      if (g.degree(x) < need) continue;
      map[static_cast<std::size_t>(v)] = x;
      used |= bit(x);
      if (self(self, v + 1)) return true;
      used &= ~bit(x);
    }
    return false;
  };
  if (!recurse(recurse, 0)) return std::nullopt;
  return map;
}

/// Checks every model invariant directly against the two graphs.
inline bool verify_model(const Graph& h, const Graph& g, const MinorModel& model) {
  if (static_cast<int>(model.branch_sets.size()) != h.order()) return false;
  std::vector<VertexMask> sets;
  VertexMask seen = 0;
  for (const auto& bs : model.branch_sets) {
    VertexMask m = 0;
    for (Vertex v : bs) {
      if (!g.has_vertex(v) || (m & bit(v))) return false;
      m |= bit(v);
    }
    if (!m || (m & seen) || !induces_connected(g, m)) return false;
    seen |= m;
    sets.push_back(m);
  }
  auto h_edges = h.edges();
  if (model.edge_assignment.size() != h_edges.size()) return false;
  std::vector<std::pair<Edge, Edge>> assigned = model.edge_assignment;
  for (auto& [he, ge] : assigned) he = normalized(he);
  std::sort(assigned.begin(), assigned.end());
  for (std::size_t k = 0; k < h_edges.size(); ++k) {
    const auto& [he, ge] = assigned[k];
    if (he != h_edges[k]) return false;
    auto [x, y] = ge;
    if (!g.adjacent(x, y)) return false;
    const VertexMask su = sets[static_cast<std::size_t>(he.first)], sv = sets[static_cast<std::size_t>(he.second)];
    const bool forward = (su & bit(x)) && (sv & bit(y));
    const bool backward = (su & bit(y)) && (sv & bit(x));
    if (!forward && !backward) return false;
  }
  return true;
}

/// Builds the edge assignment for given branch sets (least host edge per pattern edge).
inline MinorModel model_from_sets(const Graph& h, const Graph& g, const std::vector<VertexMask>& sets) {
  MinorModel model;
  for (VertexMask s : sets) model.branch_sets.push_back(mask_to_vector(s));
  for (auto [u, v] : h.edges()) {
    std::optional<Edge> best;
    for_each_bit(sets[static_cast<std::size_t>(u)], [&](Vertex x) {
      for_each_bit(g.neighbors(x) & sets[static_cast<std::size_t>(v)], [&](Vertex y) {
        Edge e = normalized({x, y});
        if (!best || e < *best) best = e;
      });
    });
    if (best) model.edge_assignment.push_back({{u, v}, *best});
  }
  return model;
}

/// Host graph plus its automorphism group (when small enough to list), so
/// repeated searches into one host share that work.
struct PreparedHost {
  explicit PreparedHost(Graph g) : graph(std::move(g)), group(automorphism_group(graph, 50000)) {}

  Graph graph;
  std::optional<std::vector<std::vector<Vertex>>> group;
};

namespace detail {

inline bool lex_less(VertexMask a, VertexMask b) {
  while (a && b) {
    const Vertex la = lowest(a), lb = lowest(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return !a && b;
}

inline VertexMask image(const std::vector<Vertex>& perm, VertexMask m) {
  VertexMask out = 0;
  for_each_bit(m, [&](Vertex v) { out |= bit(perm[static_cast<std::size_t>(v)]); });
  return out;
}

class MinorSearch {
 public:
  MinorSearch(const Graph& h, const Graph& g, const SearchBudget& budget,
              const std::optional<std::vector<std::vector<Vertex>>>* host_group = nullptr, bool symmetry = true)
      : h_(h), g_(g), budget_(budget), known_host_group_(host_group), symmetry_(symmetry) {}

  MinorResult run() {
    MinorResult result;
    const int nh = h_.order(), ng = g_.order();
    if (nh > ng || h_.edge_count() > g_.edge_count()) return result;
    if (nh == 0) {
      result.outcome = MinorOutcome::Found;
      result.model = MinorModel{};
      return result;
    }
    slack_ = ng - nh;
    if (!degree_feasible()) return result;
    plan_order();
    plan_symmetry();
    start_ = std::chrono::steady_clock::now();
    sets_.assign(static_cast<std::size_t>(nh), 0);
    nbr_.assign(static_cast<std::size_t>(nh), 0);
    placed_.assign(static_cast<std::size_t>(nh), false);
    std::vector<int> stab;
    if (use_host_symmetry_) {
      stab.resize(host_group_.size());
      std::iota(stab.begin(), stab.end(), 0);
    }
    const bool found = place(0, g_.vertex_mask(), 0, 0, stab);
    result.nodes = nodes_;
    if (found) {
      result.outcome = MinorOutcome::Found;
      result.model = model_from_sets(h_, g_, solution_);
    } else {
      result.outcome = aborted_ ? MinorOutcome::Undecided : MinorOutcome::Absent;
    }
    return result;
  }

 private:
  // Each pattern vertex of degree d needs a branch set whose external degree
  // can reach d; a set of t host vertices has external degree at most
  // t*maxdeg - 2(t-1). The extra vertices required must fit in the slack.
  bool degree_feasible() const {
    int maxdeg = 0;
    for (Vertex v = 0; v < g_.order(); ++v) maxdeg = std::max(maxdeg, g_.degree(v));
    int extra = 0;
    for (Vertex v = 0; v < h_.order(); ++v) {
      const int d = h_.degree(v);
      int t = 1;
      while (t * maxdeg - 2 * (t - 1) < d) {
        if (maxdeg <= 2) return false;
        ++t;
      }
      extra += t - 1;
    }
    return extra <= slack_;
  }

  void plan_order() {
    const int nh = h_.order();
    VertexMask placed = 0;
    while (static_cast<int>(order_.size()) < nh) {
      Vertex best = -1;
      int best_links = -1, best_deg = -1;
      for (Vertex v = 0; v < nh; ++v) {
        if (placed & bit(v)) continue;
        const int links = popcount(h_.neighbors(v) & placed), deg = h_.degree(v);
        if (links > best_links || (links == best_links && deg > best_deg)) {
          best = v;
          best_links = links;
          best_deg = deg;
        }
      }
      order_.push_back(best);
      placed |= bit(best);
    }
  }

  // Either break pattern symmetry with ordering constraints on branch-set
  // minima, or break host symmetry by exploring only orbit-minimal branch
  // sets under the stabilizer of what is already placed. The two cannot be
  // combined, so the larger group wins.
  void plan_symmetry() {
    const int nh = h_.order();
    less_than_.assign(static_cast<std::size_t>(nh), 0);
    greater_than_.assign(static_cast<std::size_t>(nh), 0);
    if (!symmetry_) return;
    auto pattern_group = automorphism_group(h_, 100000);
    auto host_group = known_host_group_ ? *known_host_group_ : automorphism_group(g_, 50000);
    const std::size_t hs = pattern_group ? pattern_group->size() : 1;
    const std::size_t gs = host_group ? host_group->size() : 1;
    if (gs > hs && gs > 1) {
      use_host_symmetry_ = true;
      host_group_ = std::move(*host_group);
      return;
    }
    if (hs <= 1) return;
    std::vector<std::vector<Vertex>> group = std::move(*pattern_group);
    for (Vertex h : order_) {
      if (group.size() <= 1) break;
      VertexMask orbit = 0;
      for (const auto& a : group) orbit |= bit(a[static_cast<std::size_t>(h)]);
      for_each_bit(orbit & ~bit(h), [&](Vertex y) {
        less_than_[static_cast<std::size_t>(h)] |= bit(y);
        greater_than_[static_cast<std::size_t>(y)] |= bit(h);
      });
      std::erase_if(group, [&](const std::vector<Vertex>& a) { return a[static_cast<std::size_t>(h)] != h; });
    }
  }

  bool out_of_budget() {
    if (aborted_) return true;
    if (nodes_ >= budget_.node_limit) return aborted_ = true;
    if ((nodes_ & 1023) == 0) {
      const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
      if (elapsed >= budget_.time_limit_ms) return aborted_ = true;
    }
    return false;
  }

  VertexMask external_neighbors(VertexMask s) const {
    VertexMask n = 0;
    for_each_bit(s, [&](Vertex v) { n |= g_.neighbors(v); });
    return n & ~s;
  }

  // Connected subsets of `allowed` with exactly `size` vertices, in
  // lexicographic order of their sorted vertex lists.
  std::vector<VertexMask> connected_sets(VertexMask allowed, int size) const {
    std::vector<VertexMask> out;
    if (size == 1) {
      for_each_bit(allowed, [&](Vertex v) { out.push_back(bit(v)); });
      return out;
    }
    for_each_bit(allowed, [&](Vertex anchor) {
      const VertexMask above = allowed & ~prefix_mask(anchor + 1);
      auto extend = [&](auto&& self, VertexMask set, VertexMask ext, VertexMask closed) -> void {
        if (popcount(set) == size) {
          out.push_back(set);
          return;
        }
        while (ext) {
          const Vertex w = lowest(ext);
          ext &= ext - 1;
          const VertexMask fresh = g_.neighbors(w) & above & ~closed;
          self(self, set | bit(w), ext | fresh, closed | fresh);
        }
      };
      const VertexMask start_ext = g_.neighbors(anchor) & above;
      extend(extend, bit(anchor), start_ext, bit(anchor) | start_ext);
    });
    std::sort(out.begin(), out.end(), lex_less);
    return out;
  }

  bool place(std::size_t step, VertexMask free, int extra, int waste, const std::vector<int>& stab) {
    if (step == order_.size()) {
      solution_ = sets_;
      return true;
    }
    const Vertex h = order_[step];
    const VertexMask hn = h_.neighbors(h);
    VertexMask placed_nbrs = 0, later_nbrs = 0;
    for_each_bit(hn, [&](Vertex u) { (placed_[static_cast<std::size_t>(u)] ? placed_nbrs : later_nbrs) |= bit(u); });
    const int later_deg = popcount(later_nbrs);
    const int max_size = 1 + slack_ - extra;

    int rep_min = -1, rep_max = kMaxOrder;
    for_each_bit(greater_than_[static_cast<std::size_t>(h)], [&](Vertex y) {
      if (placed_[static_cast<std::size_t>(y)]) rep_min = std::max(rep_min, lowest(sets_[static_cast<std::size_t>(y)]));
    });
    for_each_bit(less_than_[static_cast<std::size_t>(h)], [&](Vertex y) {
      if (placed_[static_cast<std::size_t>(y)]) rep_max = std::min(rep_max, lowest(sets_[static_cast<std::size_t>(y)]));
    });

    VertexMask common = free;
    for_each_bit(placed_nbrs, [&](Vertex p) { common &= nbr_[static_cast<std::size_t>(p)]; });

    for (int size = 1; size <= max_size; ++size) {
      std::vector<VertexMask> candidates;
      if (size == 1) {
        for_each_bit(common, [&](Vertex v) { candidates.push_back(bit(v)); });
      } else {
        candidates = connected_sets(free, size);
      }
      for (const VertexMask x : candidates) {
        const int rep = lowest(x);
        if (rep <= rep_min || rep >= rep_max) continue;
        bool touches_all = true;
        for_each_bit(placed_nbrs, [&](Vertex p) { touches_all = touches_all && (x & nbr_[static_cast<std::size_t>(p)]); });
        if (!touches_all) continue;
        const VertexMask free_after = free & ~x;
        const VertexMask xn = external_neighbors(x);
        if (popcount(xn & free_after) < later_deg) continue;

        // Placed vertices still waiting for neighbours need room next to them.
        bool room = true;
        for (std::size_t k = 0; k < step && room; ++k) {
          const Vertex p = order_[k];
          int waiting = 0;
          for_each_bit(h_.neighbors(p), [&](Vertex u) { waiting += !placed_[static_cast<std::size_t>(u)] && u != h; });
          if (waiting && popcount(nbr_[static_cast<std::size_t>(p)] & free_after) < waiting) room = false;
        }
        if (!room) continue;

        // Host edges that can no longer realize any pattern edge.
        int lost = 0;
        for_each_bit(x, [&](Vertex v) { lost += popcount(g_.neighbors(v) & x); });
        lost /= 2;
        for (std::size_t k = 0; k < step; ++k) {
          const Vertex p = order_[k];
          int between = 0;
          for_each_bit(x, [&](Vertex v) { between += popcount(g_.neighbors(v) & sets_[static_cast<std::size_t>(p)]); });
          lost += (hn & bit(p)) ? std::max(0, between - 1) : between;
        }
        if (static_cast<long>(g_.edge_count()) - (waste + lost) < static_cast<long>(h_.edge_count())) continue;

        std::vector<int> child_stab;
        if (use_host_symmetry_ && !stab.empty()) {
          bool minimal = true;
          for (int a : stab) {
            const VertexMask img = image(host_group_[static_cast<std::size_t>(a)], x);
            if (img < x) {
              minimal = false;
              break;
            }
            if (img == x) child_stab.push_back(a);
          }
          if (!minimal) continue;
          if (child_stab.size() <= 1) child_stab.clear();
        }

        ++nodes_;
        if (out_of_budget()) return false;
        sets_[static_cast<std::size_t>(h)] = x;
        nbr_[static_cast<std::size_t>(h)] = xn;
        placed_[static_cast<std::size_t>(h)] = true;
        const bool ok = place(step + 1, free_after, extra + size - 1, waste + lost, child_stab);
        placed_[static_cast<std::size_t>(h)] = false;
        sets_[static_cast<std::size_t>(h)] = 0;
        if (ok) return true;
        if (aborted_) return false;
      }
    }
    return false;
  }

  const Graph& h_;
  const Graph& g_;
  SearchBudget budget_;
  const std::optional<std::vector<std::vector<Vertex>>>* known_host_group_;
  bool symmetry_;
  int slack_ = 0;
  std::vector<Vertex> order_;
  std::vector<VertexMask> less_than_, greater_than_;
  bool use_host_symmetry_ = false;
  std::vector<std::vector<Vertex>> host_group_;
  std::vector<VertexMask> sets_, nbr_, solution_;
  std::vector<bool> placed_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/// Decides whether `h` is a minor of `g`. Found results carry a model that
/// passes verify_model; Absent means the search space was exhausted;
/// Undecided means the budget ran out first.
inline MinorResult has_minor(const Graph& h, const Graph& g, const SearchBudget& budget = {}) {
  return detail::MinorSearch(h, g, budget).run();
}

inline MinorResult has_minor(const Graph& h, const PreparedHost& host, const SearchBudget& budget = {}) {
  return detail::MinorSearch(h, host.graph, budget, &host.group).run();
}

class OracleTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kOracleMaxOrder = 8;

/// Brute-force minor test. Explores vertex deletions and edge contractions
/// down to |V(h)| vertices, then edge deletions, memoizing every visited
/// graph by canonical key. Any deletion/contraction sequence can be
/// reordered into that shape, so nothing is missed.
inline bool minor_oracle(const Graph& h, const Graph& g) {
  if (g.order() > kOracleMaxOrder) throw OracleTooLarge("minor_oracle host order " + std::to_string(g.order()) + " > 8");
  const int nh = h.order();
  const auto eh = h.edge_count();
  const CanonicalKey target = canonical_key(h);
  std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
  auto explore = [&](auto&& self, const Graph& s) -> bool {
    if (s.order() < nh || s.edge_count() < eh) return false;
    CanonicalKey key = canonical_key(s);
    if (!seen.insert(key).second) return false;
    if (s.order() == nh) {
      if (s.edge_count() == eh) return key == target;
      for (const Edge& e : s.edges())
        if (self(self, delete_edge(s, e))) return true;
      return false;
    }
    for (Vertex v = 0; v < s.order(); ++v)
      if (self(self, delete_vertex(s, v))) return true;
    for (const Edge& e : s.edges())
      if (self(self, contract_edge(s, e))) return true;
    return false;
  };
  return explore(explore, g);
}

}  // namespace ikc
