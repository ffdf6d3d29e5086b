// Classification of graphs as IK / NOT_IK / UNKNOWN with replayable
// certificates, and the constructive descent for bipartite specs.

#pragma once

#include <algorithm>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ikc/bipartite.hpp"
#include "ikc/canonical.hpp"
#include "ikc/graph.hpp"
#include "ikc/minor.hpp"
#include "ikc/planarity.hpp"
#include "ikc/rules.hpp"
#include "ikc/transforms.hpp"

namespace ikc {

inline constexpr const char* kEngineVersion = "ikc-engine/1.0 rules/1";

enum class Status { IK, NotIK, Unknown };
enum class CertificateKind { None, MinorWitness, RuleChain, PlanarJoin, SmallPart, KnownClass };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::IK: return "IK";
    case Status::NotIK: return "NOT_IK";
    case Status::Unknown: return "UNKNOWN";
  }
  return "?";
}

inline const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::None: return "None";
    case CertificateKind::MinorWitness: return "MinorWitness";
    case CertificateKind::RuleChain: return "RuleChain";
    case CertificateKind::PlanarJoin: return "PlanarJoin";
    case CertificateKind::SmallPart: return "SmallPart";
    case CertificateKind::KnownClass: return "KnownClass";
  }
  return "?";
}

/// Vertices deleted (input labels) in one descent step, and the shape left.
struct DeletionStep {
  std::vector<Vertex> removed;
  int p = 0, q = 0, m = 0;
  std::string move;  // "max-deficiency-vertex" or "vertex-pair"

  friend bool operator==(const DeletionStep&, const DeletionStep&) = default;
};

struct WitnessRef {
  std::string family;  // "K7" or "K3311"
  int member = -1;     // index within the family
  std::string member_key;
  MinorModel model;    // pattern = family member, host = the classified graph

  friend bool operator==(const WitnessRef&, const WitnessRef&) = default;
};

struct Certificate {
  CertificateKind kind = CertificateKind::None;
  /// Bipartition the numeric/exact rules were read against (input labels).
  std::vector<Vertex> part_a, part_b;
  /// RuleChain: derivation of a bound for (|part_a|, |part_b|) ...
  std::vector<ChainStep> chain;
  /// ... or a single rule applied directly (graph-level or conditional).
  std::string direct_rule;
  /// KnownClass: name of the exact class.
  std::string known_class;
  /// KnownClass IK: input vertex v maps to reference vertex isomorphism[v].
  std::optional<std::vector<Vertex>> isomorphism;
  std::optional<PlanarJoinCertificate> planar;
  std::vector<DeletionStep> descent;
  std::optional<WitnessRef> witness;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct Verdict {
  Status status = Status::Unknown;
  Certificate certificate;
  std::vector<std::string> citations;
  /// Some minor search stopped on its budget before deciding.
  bool undecided = false;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct ClassifyOptions {
  SearchBudget budget;
  std::optional<std::filesystem::path> cache_dir;  // where witness families persist
  bool use_search = true;
};

inline BipartiteSpec g553_spec() { return make_spec(5, 5, {{1, 1}, {1, 2}, {2, 1}}); }
inline BipartiteSpec g666_spec() { return make_spec(6, 6, {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}}); }

namespace detail {

inline const CanonicalKey& g553_key() {
  static const CanonicalKey key = canonical_key(realize(g553_spec()));
  return key;
}

inline const CanonicalKey& g666_key() {
  static const CanonicalKey key = canonical_key(realize(g666_spec()));
  return key;
}

inline bool is_g666(const Graph& g) {
  return g.order() == 12 && g.edge_count() == 30 && canonical_key(g) == g666_key();
}

// All bipartitions up to component flips, as achievable |A| values with one
// realizing split each (lowest vertex of every component starts in A).
inline std::vector<Bipartition> splits(const Graph& g, const Bipartition& base) {
  const auto comps = connected_components(g);
  VertexMask a_mask = 0;
  for (Vertex v : base.part_a) a_mask |= bit(v);
  const int n = g.order();
  // reach[s] = flip mask (over components) reaching |A| = s, first found
  std::vector<std::optional<std::vector<bool>>> reach(static_cast<std::size_t>(n + 1));
  reach[0] = std::vector<bool>{};
  for (VertexMask c : comps) {
    const int x = popcount(c & a_mask), y = popcount(c & ~a_mask);
    std::vector<std::optional<std::vector<bool>>> next(static_cast<std::size_t>(n + 1));
    for (int s = 0; s <= n; ++s) {
      if (!reach[static_cast<std::size_t>(s)]) continue;
      for (int flip = 0; flip < 2; ++flip) {
        const int t = s + (flip ? y : x);
        if (t > n || next[static_cast<std::size_t>(t)]) continue;
        auto choice = *reach[static_cast<std::size_t>(s)];
        choice.push_back(flip == 1);
        next[static_cast<std::size_t>(t)] = std::move(choice);
      }
    }
    reach = std::move(next);
  }
  std::vector<Bipartition> out;
  for (int s = 0; s <= n; ++s) {
    if (!reach[static_cast<std::size_t>(s)]) continue;
    VertexMask a = 0;
    for (std::size_t i = 0; i < comps.size(); ++i)
      a |= (*reach[static_cast<std::size_t>(s)])[i] ? (comps[i] & ~a_mask) : (comps[i] & a_mask);
    out.push_back({mask_to_vector(a), mask_to_vector(g.vertex_mask() & ~a)});
  }
  return out;
}

inline bool is_bipartition(const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  VertexMask ma = 0, mb = 0;
  for (Vertex v : a) {
    if (!g.has_vertex(v) || (ma & bit(v))) return false;
    ma |= bit(v);
  }
  for (Vertex v : b) {
    if (!g.has_vertex(v) || (mb & bit(v))) return false;
    mb |= bit(v);
  }
  if ((ma & mb) || (ma | mb) != g.vertex_mask()) return false;
  for (Vertex v : a)
    if (g.neighbors(v) & ma) return false;
  for (Vertex v : b)
    if (g.neighbors(v) & mb) return false;
  return true;
}

inline int missing_edges(const Graph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  return static_cast<int>(a.size() * b.size()) - g.edge_count();
}

}  // namespace detail

struct WitnessSearch {
  MinorOutcome outcome = MinorOutcome::Absent;
  std::optional<WitnessRef> witness;
  std::uint64_t nodes = 0;
};

/// Witness-family members that could fit in a host of this size, closest
/// order first (ties: K7 family first, then member index).
inline std::vector<std::pair<const WitnessFamily*, int>> candidate_members(const WitnessSet& ws, int order, int edges) {
  auto all = ws.all_members();
  std::vector<std::pair<const WitnessFamily*, int>> out;
  for (const auto& fm : all) {
    const Graph& h = fm.first->members[static_cast<std::size_t>(fm.second)].graph;
    if (h.order() <= order && static_cast<int>(h.edge_count()) <= edges) out.push_back(fm);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.first->members[static_cast<std::size_t>(x.second)].graph.order() >
           y.first->members[static_cast<std::size_t>(y.second)].graph.order();
  });
  return out;
}

/// Tries each witness-family member as a minor of g; stops at the first hit.
inline WitnessSearch search_witnesses(const Graph& g, const SearchBudget& budget,
                                      const std::optional<std::filesystem::path>& cache_dir = std::nullopt) {
  const WitnessSet& ws = witness_set(cache_dir);
  WitnessSearch out;
  const PreparedHost host(g);
  bool undecided = false;
  for (const auto& [fam, idx] : candidate_members(ws, g.order(), g.edge_count())) {
    const FamilyMember& mem = fam->members[static_cast<std::size_t>(idx)];
    const MinorResult r = has_minor(mem.graph, host, budget);
    out.nodes += r.nodes;
    if (r.outcome == MinorOutcome::Found) {
      out.outcome = MinorOutcome::Found;
      out.witness = WitnessRef{fam->seed_name, idx, mem.key.hex(), *r.model};
      return out;
    }
    if (r.outcome == MinorOutcome::Undecided) undecided = true;
  }
  out.outcome = undecided ? MinorOutcome::Undecided : MinorOutcome::Absent;
  return out;
}

namespace detail {

inline Verdict rule_chain_verdict(const Bipartition& parts, int x, int y) {
  Verdict v{Status::IK, {}, {}, false};
  v.certificate.kind = CertificateKind::RuleChain;
  v.certificate.part_a = parts.part_a;
  v.certificate.part_b = parts.part_b;
  v.certificate.chain = derivation(x, y);
  for (const auto& s : v.certificate.chain) {
    if (s.kind == ChainStep::Kind::Rule) v.citations.push_back(s.rule_id);
    else if (std::find(v.citations.begin(), v.citations.end(), "pigeonhole-lift") == v.citations.end())
      v.citations.push_back("pigeonhole-lift");
  }
  return v;
}

// Exact and numeric rules on bipartite input; nullopt when none decides.
inline std::optional<Verdict> classify_bipartite(const Graph& g, const std::vector<Bipartition>& candidates) {
  // Small part.
  for (const auto& s : candidates)
    if (std::min(s.part_a.size(), s.part_b.size()) <= 4) {
      Verdict v{Status::NotIK, {}, {"small-part"}, false};
      v.certificate.kind = CertificateKind::SmallPart;
      v.certificate.part_a = s.part_a;
      v.certificate.part_b = s.part_b;
      return v;
    }
  for (const auto& s : candidates) {
    const int x = static_cast<int>(s.part_a.size()), y = static_cast<int>(s.part_b.size());
    const int m = missing_edges(g, s.part_a, s.part_b);
    if (x == 5 && y == 5 && m >= 3) {
      Verdict v{Status::NotIK, {}, {}, false};
      v.certificate.kind = CertificateKind::KnownClass;
      v.certificate.part_a = s.part_a;
      v.certificate.part_b = s.part_b;
      if (m == 3) {
        if (auto iso = find_isomorphism(g, realize(g553_spec()))) {
          v.status = Status::IK;
          v.certificate.known_class = "G553";
          v.certificate.isomorphism = std::move(iso);
          v.citations = {"k55-minus-3-g553"};
          return v;
        }
        v.certificate.known_class = "k55-minus-3-other";
      } else {
        v.certificate.known_class = "k55-minus-4-or-more";
      }
      v.citations = {v.certificate.known_class};
      v.certificate.planar = planar_join_certificate(g);
      return v;
    }
  }
  for (const auto& s : candidates) {
    const int x = static_cast<int>(s.part_a.size()), y = static_cast<int>(s.part_b.size());
    const int m = missing_edges(g, s.part_a, s.part_b);
    if (m <= derived_bound(x, y)) return rule_chain_verdict(s, x, y);
    if (x == 6 && y == 6 && m == 6 && !is_g666(g)) {
      Verdict v{Status::IK, {}, {"k66-minus-6"}, false};
      v.certificate.kind = CertificateKind::RuleChain;
      v.certificate.part_a = s.part_a;
      v.certificate.part_b = s.part_b;
      v.certificate.direct_rule = "k66-minus-6";
      return v;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Decision pipeline: small part, exact classes, numeric rules (with
/// pigeonhole chains), planar join, witness-family minor search, UNKNOWN.
inline Verdict classify(const Graph& g, const ClassifyOptions& opts = {},
                        const std::optional<Bipartition>& given_parts = std::nullopt) {
  if (auto bp = given_parts ? given_parts : bipartition(g)) {
    std::vector<Bipartition> candidates = detail::splits(g, *bp);
    if (given_parts) candidates.insert(candidates.begin(), *given_parts);
    if (auto v = detail::classify_bipartite(g, candidates)) return *std::move(v);
  } else {
    for (const Rule* r : applicable_graph_rules(g.order(), g.edge_count())) {
      if (r->conclusion != Conclusion::IK) continue;
      Verdict v{Status::IK, {}, {r->id}, false};
      v.certificate.kind = CertificateKind::RuleChain;
      v.certificate.direct_rule = r->id;
      return v;
    }
  }
  if (auto pj = planar_join_certificate(g)) {
    Verdict v{Status::NotIK, {}, {"k2-join-planar"}, false};
    v.certificate.kind = CertificateKind::PlanarJoin;
    v.certificate.planar = std::move(pj);
    return v;
  }
  Verdict v;
  if (opts.use_search) {
    WitnessSearch ws = search_witnesses(g, opts.budget, opts.cache_dir);
    if (ws.outcome == MinorOutcome::Found) {
      v.status = Status::IK;
      v.certificate.kind = CertificateKind::MinorWitness;
      v.certificate.witness = std::move(ws.witness);
      v.citations = {"witness-family-minor"};
      return v;
    }
    v.undecided = ws.outcome == MinorOutcome::Undecided;
  }
  return v;
}

inline Verdict classify(const BipartiteSpec& spec, const ClassifyOptions& opts = {}) {
  Bipartition parts;
  for (Vertex v = 0; v < spec.p; ++v) parts.part_a.push_back(v);
  for (Vertex v = spec.p; v < spec.p + spec.q; ++v) parts.part_b.push_back(v);
  return classify(realize(spec), opts, parts);
}

// ---------------------------------------------------------------------------
// Descent

/// True when the numeric or exact rules declare every graph of this shape
/// (or this particular graph, for conditional classes) IK.
inline bool numeric_ik(const BipartiteSpec& s) {
  if (s.p <= 4 || s.q <= 4) return false;
  if (s.m() <= derived_bound(s.p, s.q)) return true;
  if (s.p == 6 && s.q == 6 && s.m() == 6) return !detail::is_g666(realize(s));
  if (s.p == 5 && s.q == 5 && s.m() == 3) return canonical_key(realize(s)) == detail::g553_key();
  return false;
}

inline constexpr int kDescentBaseOrder = 12;

struct DescentOptions {
  SearchBudget budget;
  std::optional<std::filesystem::path> cache_dir;
  int max_base_searches = 64;
};

namespace detail {

struct Move {
  char kind;  // 's' single, 'p' pair
  char side;  // single: 'a' or 'b'
  int i = 0, j = 0;  // 1-based indices (pair: a_i, b_j)
};

inline std::vector<Move> descent_moves(const BipartiteSpec& s) {
  const auto d = deficiencies(s);
  std::vector<std::pair<int, Move>> singles, pairs;
  for (int i = 1; i <= s.p; ++i) singles.push_back({d.a[static_cast<std::size_t>(i - 1)], {'s', 'a', i, 0}});
  for (int j = 1; j <= s.q; ++j) singles.push_back({d.b[static_cast<std::size_t>(j - 1)], {'s', 'b', j, 0}});
  std::stable_sort(singles.begin(), singles.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  for (int i = 1; i <= s.p; ++i)
    for (int j = 1; j <= s.q; ++j) {
      if (std::binary_search(s.removed.begin(), s.removed.end(), RemovedPair{i, j})) continue;
      pairs.push_back({d.a[static_cast<std::size_t>(i - 1)] + d.b[static_cast<std::size_t>(j - 1)], {'p', 'a', i, j}});
    }
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<Move> out;
  for (auto& [_, mv] : singles) out.push_back(mv);
  for (auto& [_, mv] : pairs) out.push_back(mv);
  return out;
}

class Descent {
 public:
  Descent(const BipartiteSpec& spec, const DescentOptions& opts) : root_(spec), opts_(opts) {}

  std::optional<Verdict> run() {
    std::vector<Vertex> labels(static_cast<std::size_t>(root_.p + root_.q));
    for (std::size_t v = 0; v < labels.size(); ++v) labels[v] = static_cast<Vertex>(v);
    std::vector<DeletionStep> path;
    if (!descend(root_, labels, path)) return std::nullopt;
    return result_;
  }

  bool undecided() const { return undecided_; }

 private:
  bool descend(const BipartiteSpec& s, const std::vector<Vertex>& labels, std::vector<DeletionStep>& path) {
    if (s.p + s.q <= kDescentBaseOrder) return base(s, labels, path);
    for (const Move& mv : descent_moves(s)) {
      if (searches_ >= opts_.max_base_searches) return false;
      BipartiteSpec next = s;
      std::vector<Vertex> gone;
      std::vector<Vertex> next_labels = labels;
      if (mv.kind == 's') {
        const std::size_t pos = mv.side == 'a' ? static_cast<std::size_t>(mv.i - 1) : static_cast<std::size_t>(s.p + mv.i - 1);
        gone.push_back(labels[pos]);
        next_labels.erase(next_labels.begin() + static_cast<std::ptrdiff_t>(pos));
        next = delete_part_vertex(s, mv.side, mv.i);
      } else {
        const std::size_t pa = static_cast<std::size_t>(mv.i - 1), pb = static_cast<std::size_t>(s.p + mv.j - 1);
        gone = {labels[pa], labels[pb]};
        next_labels.erase(next_labels.begin() + static_cast<std::ptrdiff_t>(pb));
        next_labels.erase(next_labels.begin() + static_cast<std::ptrdiff_t>(pa));
        next = delete_part_vertex(delete_part_vertex(s, 'b', mv.j), 'a', mv.i);
      }
      if (!numeric_ik(next)) continue;
      path.push_back({gone, next.p, next.q, next.m(), mv.kind == 's' ? "max-deficiency-vertex" : "vertex-pair"});
      if (descend(next, next_labels, path)) return true;
      path.pop_back();
    }
    return false;
  }

  bool base(const BipartiteSpec& s, const std::vector<Vertex>& labels, std::vector<DeletionStep>& path) {
    ++searches_;
    const WitnessSearch ws = search_witnesses(realize(s), opts_.budget, opts_.cache_dir);
    if (ws.outcome == MinorOutcome::Undecided) undecided_ = true;
    if (ws.outcome != MinorOutcome::Found) return false;
    WitnessRef w = *ws.witness;
    for (auto& bs : w.model.branch_sets) {
      for (Vertex& v : bs) v = labels[static_cast<std::size_t>(v)];
      std::sort(bs.begin(), bs.end());
    }
    for (auto& [he, ge] : w.model.edge_assignment)
      ge = normalized({labels[static_cast<std::size_t>(ge.first)], labels[static_cast<std::size_t>(ge.second)]});
    result_ = Verdict{Status::IK, {}, {"witness-family-minor"}, false};
    result_.certificate.kind = CertificateKind::MinorWitness;
    result_.certificate.descent = path;
    result_.certificate.witness = std::move(w);
    for (Vertex v = 0; v < root_.p; ++v) result_.certificate.part_a.push_back(v);
    for (Vertex v = root_.p; v < root_.p + root_.q; ++v) result_.certificate.part_b.push_back(v);
    return true;
  }

  BipartiteSpec root_;
  DescentOptions opts_;
  Verdict result_;
  int searches_ = 0;
  bool undecided_ = false;
};

}  // namespace detail

class DescentPrecondition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Deletes vertices (one of maximum deficiency, or an adjacent a/b pair)
/// while the rules still declare the remainder IK, down to at most twelve
/// vertices, then finds a witness-family minor there. The model is reported
/// in the labels of realize(spec). If no descent path yields a witness the
/// original graph is searched directly.
inline Verdict reduce_to_witness(const BipartiteSpec& spec, const DescentOptions& opts = {}) {
  if (!numeric_ik(spec)) throw DescentPrecondition("rules do not declare " + spec_to_string(spec) + " IK");
  detail::Descent d(spec, opts);
  if (auto v = d.run()) return *std::move(v);
  Verdict v;
  v.undecided = true;
  const WitnessSearch ws = search_witnesses(realize(spec), opts.budget, opts.cache_dir);
  if (ws.outcome == MinorOutcome::Found) {
    v.status = Status::IK;
    v.certificate.kind = CertificateKind::MinorWitness;
    v.certificate.witness = ws.witness;
    v.citations = {"witness-family-minor"};
  }
  return v;
}

// ---------------------------------------------------------------------------
// Replay

/// Re-checks a certificate against g without trusting anything the search
/// produced. Trusted rules are re-evaluated from the inventory.
inline bool replay(const Graph& g, const Verdict& v, const std::optional<std::filesystem::path>& cache_dir = std::nullopt) {
  const Certificate& c = v.certificate;
  const auto parts_ok = [&] { return detail::is_bipartition(g, c.part_a, c.part_b); };
  switch (c.kind) {
    case CertificateKind::None:
      return v.status == Status::Unknown;
    case CertificateKind::SmallPart:
      return v.status == Status::NotIK && parts_ok() && std::min(c.part_a.size(), c.part_b.size()) <= 4;
    case CertificateKind::PlanarJoin:
      return v.status == Status::NotIK && c.planar && verify_planar_join(g, *c.planar);
    case CertificateKind::KnownClass: {
      if (!parts_ok() || c.part_a.size() != 5 || c.part_b.size() != 5) return false;
      const int m = detail::missing_edges(g, c.part_a, c.part_b);
      if (c.planar && !verify_planar_join(g, *c.planar)) return false;
      if (c.known_class == "G553") {
        if (v.status != Status::IK || !c.isomorphism || c.isomorphism->size() != 10) return false;
        return permute(g, *c.isomorphism) == realize(g553_spec());
      }
      if (v.status != Status::NotIK) return false;
      if (c.known_class == "k55-minus-4-or-more") return m >= 4;
      if (c.known_class == "k55-minus-3-other") return m == 3 && !is_isomorphic(g, realize(g553_spec()));
      return false;
    }
    case CertificateKind::RuleChain: {
      if (v.status != Status::IK) return false;
      if (c.direct_rule == "k66-minus-6")
        return parts_ok() && c.part_a.size() == 6 && c.part_b.size() == 6 &&
               detail::missing_edges(g, c.part_a, c.part_b) == 6 && !detail::is_g666(g);
      if (!c.direct_rule.empty()) {
        const Rule* rule = nullptr;
        for (const auto& r : rule_inventory())
          if (r.id == c.direct_rule) rule = &r;
        return rule && rule->conclusion == Conclusion::IK && rule->trust != Trust::Conjecture && rule->holds_for_graph &&
               rule->holds_for_graph(g.order(), g.edge_count());
      }
      if (!parts_ok()) return false;
      const auto proved = check_derivation(c.chain);
      if (!proved) return false;
      const auto [x, y, bound] = *proved;
      return x == static_cast<int>(c.part_a.size()) && y == static_cast<int>(c.part_b.size()) &&
             detail::missing_edges(g, c.part_a, c.part_b) <= bound;
    }
    case CertificateKind::MinorWitness: {
      if (v.status != Status::IK || !c.witness) return false;
      const WitnessSet& ws = witness_set(cache_dir);
      const WitnessFamily* fam = c.witness->family == "K7"      ? &ws.k7_family
                                 : c.witness->family == "K3311" ? &ws.k3311_family
                                                                : nullptr;
      if (!fam || c.witness->member < 0 || c.witness->member >= static_cast<int>(fam->members.size())) return false;
      const FamilyMember& mem = fam->members[static_cast<std::size_t>(c.witness->member)];
      if (mem.key.hex() != c.witness->member_key) return false;
      VertexMask deleted = 0;
      for (const auto& step : c.descent)
        for (Vertex x : step.removed) deleted |= bit(x);
      for (const auto& bs : c.witness->model.branch_sets)
        for (Vertex x : bs)
          if (x >= 0 && x < 64 && (deleted & bit(x))) return false;
      return verify_model(mem.graph, g, c.witness->model);
    }
  }
  return false;
}

/// Certificate rewritten for permute(g, perm) (vertex v becomes perm[v]).
inline Verdict relabel(const Verdict& v, const std::vector<Vertex>& perm) {
  Verdict out = v;
  Certificate& c = out.certificate;
  const auto map = [&](Vertex x) { return perm[static_cast<std::size_t>(x)]; };
  const auto map_all = [&](std::vector<Vertex>& xs, bool sort) {
    for (Vertex& x : xs) x = map(x);
    if (sort) std::sort(xs.begin(), xs.end());
  };
  // Part order matters for reading K_{p,q} \ R, so parts keep their roles.
  map_all(c.part_a, true);
  map_all(c.part_b, true);
  if (c.isomorphism) {
    std::vector<Vertex> iso(c.isomorphism->size());
    for (std::size_t x = 0; x < iso.size(); ++x) iso[static_cast<std::size_t>(map(static_cast<Vertex>(x)))] = (*c.isomorphism)[x];
    c.isomorphism = std::move(iso);
  }
  if (c.planar) {
    PlanarJoinCertificate pj;
    pj.u = map(c.planar->u);
    pj.v = map(c.planar->v);
    if (pj.u > pj.v) std::swap(pj.u, pj.v);
    pj.embedding.rotation.resize(c.planar->embedding.rotation.size());
    for (std::size_t x = 0; x < pj.embedding.rotation.size(); ++x) {
      auto r = c.planar->embedding.rotation[x];
      map_all(r, false);
      pj.embedding.rotation[static_cast<std::size_t>(map(static_cast<Vertex>(x)))] = std::move(r);
    }
    c.planar = std::move(pj);
  }
  for (auto& step : c.descent) map_all(step.removed, true);
  if (c.witness) {
    for (auto& bs : c.witness->model.branch_sets) map_all(bs, true);
    for (auto& [he, ge] : c.witness->model.edge_assignment) ge = normalized({map(ge.first), map(ge.second)});
  }
  return out;
}

}  // namespace ikc
