// Numeric sufficiency rules for K_{p,q} \ m, the pigeonhole lift between
// part sizes, and the a_n recurrence.
//
// Rule predicates take part sizes normalized to p <= q. A rule may carry an
// isomorphism condition that only the classifier can check on the concrete
// graph; such rules never take part in derived chains.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ikc/bipartite.hpp"

namespace ikc {

enum class Conclusion { IK, NotIK };
enum class Trust { Proved, External, Conjecture };
enum class RuleCondition { None, IsG553, NotG553, NotG666 };

inline const char* to_string(Conclusion c) { return c == Conclusion::IK ? "IK" : "NOT_IK"; }
inline const char* to_string(Trust t) {
  switch (t) {
    case Trust::Proved: return "proved";
    case Trust::External: return "external-trusted";
    case Trust::Conjecture: return "conjecture-only";
  }
  return "?";
}
inline const char* to_string(RuleCondition c) {
  switch (c) {
    case RuleCondition::None: return "";
    case RuleCondition::IsG553: return "requires isomorphism to G553";
    case RuleCondition::NotG553: return "requires non-isomorphism to G553";
    case RuleCondition::NotG666: return "requires non-isomorphism to G666";
  }
  return "?";
}

class RecurrenceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// a_5 = 5, a_6 = 7, a_n = floor(n (a_{n-1} - 1) / (n - 5)) + 1.
inline std::int64_t recurrence_a(int n) {
  if (n < 5) throw RecurrenceError("recurrence starts at n = 5, got " + std::to_string(n));
  static std::mutex mu;
  static std::vector<std::int64_t> memo{5, 7};
  std::lock_guard lock(mu);
  while (static_cast<int>(memo.size()) <= n - 5) {
    const std::int64_t k = static_cast<std::int64_t>(memo.size()) + 5;
    const std::int64_t prev = memo.back();
    if (prev > INT64_MAX / k) throw RecurrenceError("a_n overflows 64 bits at n = " + std::to_string(k));
    memo.push_back(k * (prev - 1) / (k - 5) + 1);
  }
  return memo[static_cast<std::size_t>(n - 5)];
}

inline std::int64_t constant_c(int n) {
  if (n < 5) throw RecurrenceError("C_n is defined for n >= 5, got " + std::to_string(n));
  return n <= 6 ? -17 : recurrence_a(n) - 4 * static_cast<std::int64_t>(n);
}

struct Rule {
  std::string id;
  std::string statement;
  Conclusion conclusion;
  Trust trust;
  RuleCondition condition = RuleCondition::None;
  /// (p, q, m) with p <= q.
  std::function<bool(int, int, int)> holds;
  /// Set for rules stated for arbitrary graphs: (order, edge count).
  std::function<bool(int, int)> holds_for_graph;
};

namespace detail {

inline std::int64_t edges_of(int p, int q, int m) { return static_cast<std::int64_t>(p) * q - m; }

// Exactly n vertices in one part, at least a_n in the other: e >= 4v + C_n.
inline bool recurrence_bound(int n, int other, int m) {
  if (n < 5) return false;
  const std::int64_t need = n == 5 ? 5 : n == 6 ? 7 : recurrence_a(n);
  if (other < need) return false;
  return edges_of(n, other, m) >= 4 * static_cast<std::int64_t>(n + other) + constant_c(n);
}

// Largest m in [0, pq] with r.holds(p, q, m), or -1. Predicates are
// monotone (downward closed) in m.
inline int largest_m(const Rule& r, int p, int q) {
  if (!r.holds(p, q, 0)) return -1;
  int lo = 0, hi = p * q;
  while (lo < hi) {
    const int mid = lo + (hi - lo + 1) / 2;
    if (r.holds(p, q, mid)) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

inline std::vector<Rule> build_inventory() {
  std::vector<Rule> r;
  const auto ik = Conclusion::IK;
  const auto not_ik = Conclusion::NotIK;
  r.push_back({"small-part", "a bipartite graph with at most four vertices in one part is not IK", not_ik, Trust::External,
               RuleCondition::None, [](int p, int, int) { return p <= 4; }, {}});
  r.push_back({"k55-minus-4-or-more", "no K5,5 minus four or more edges is IK", not_ik, Trust::Proved, RuleCondition::None,
               [](int p, int q, int m) { return p == 5 && q == 5 && m >= 4; }, {}});
  r.push_back({"k55-minus-3-g553", "the K5,5 minus three edges graph missing a1b1, a1b2, a2b1 is IK", ik, Trust::Proved,
               RuleCondition::IsG553, [](int p, int q, int m) { return p == 5 && q == 5 && m == 3; }, {}});
  r.push_back({"k55-minus-3-other", "every other K5,5 minus three edges graph is a subgraph of K2 + planar, not IK", not_ik,
               Trust::Proved, RuleCondition::NotG553, [](int p, int q, int m) { return p == 5 && q == 5 && m == 3; }, {}});
  r.push_back({"k55-minus-2", "every K5,5 minus at most two edges is IK", ik, Trust::External, RuleCondition::None,
               [](int p, int q, int m) { return p == 5 && q == 5 && m <= 2; }, {}});
  r.push_back({"k65-minus-2", "every K6,5 minus at most two edges is IK", ik, Trust::External, RuleCondition::None,
               [](int p, int q, int m) { return p == 5 && q == 6 && m <= 2; }, {}});
  r.push_back({"five-part-4v-17", "exactly five vertices in one part, at least five in the other, e >= 4v - 17", ik,
               Trust::External, RuleCondition::None, [](int p, int q, int m) { return p == 5 && q >= 5 && m <= q - 3; }, {}});
  r.push_back({"k66-minus-5", "every K6,6 minus at most five edges is IK", ik, Trust::Proved, RuleCondition::None,
               [](int p, int q, int m) { return p == 6 && q == 6 && m <= 5; }, {}});
  r.push_back({"k66-minus-6", "every K6,6 minus six edges other than G666 is IK", ik, Trust::Proved, RuleCondition::NotG666,
               [](int p, int q, int m) { return p == 6 && q == 6 && m == 6; }, {}});
  r.push_back({"k6n-minus-2n5", "K_{6+n,6} minus 2n+5 edges is IK for n >= 1", ik, Trust::Proved, RuleCondition::None,
               [](int p, int q, int m) { return p == 6 && q >= 7 && m <= 2 * (q - 6) + 5; }, {}});
  r.push_back({"six-part-4v-17", "exactly six vertices in one part, at least six in the other, e >= 4v - 17", ik,
               Trust::Proved, RuleCondition::None,
               [](int p, int q, int m) { return p == 6 && q >= 6 && edges_of(p, q, m) >= 4 * (p + q) - 17; }, {}});
  r.push_back({"k77-minus-10", "every K7,7 minus at most ten edges is IK", ik, Trust::Proved, RuleCondition::None,
               [](int p, int q, int m) { return p == 7 && q == 7 && m <= 10; }, {}});
  r.push_back({"bipartite-4v-17", "five or six vertices in one part (at least five in the other), or K7,7: e >= 4v - 17", ik,
               Trust::Proved, RuleCondition::None,
               [](int p, int q, int m) {
                 return ((p == 5 || p == 6) && q >= 5) || (p == 7 && q == 7) ? edges_of(p, q, m) >= 4 * (p + q) - 17 : false;
               },
               {}});
  r.push_back({"k7n-minus-2n10", "K_{7+n,7} minus 2n+10 edges is IK for n >= 1", ik, Trust::Proved, RuleCondition::None,
               [](int p, int q, int m) { return p == 7 && q >= 8 && m <= 2 * (q - 7) + 10; }, {}});
  r.push_back({"seven-part-5v-31", "exactly seven vertices in one part, at least seven in the other, e >= 5v - 31", ik,
               Trust::Proved, RuleCondition::None,
               [](int p, int q, int m) { return p == 7 && q >= 7 && edges_of(p, q, m) >= 5 * (p + q) - 31; }, {}});
  r.push_back({"k8n-minus-2n15", "K_{8+n,8} minus 2n+15 edges is IK for n >= 1", ik, Trust::Proved, RuleCondition::None,
               [](int p, int q, int m) { return p == 8 && q >= 9 && m <= 2 * (q - 8) + 15; }, {}});
  r.push_back({"k88-minus-14", "every K8,8 minus at most fourteen edges is IK", ik, Trust::Proved, RuleCondition::None,
               [](int p, int q, int m) { return p == 8 && q == 8 && m <= 14; }, {}});
  r.push_back({"kaa-minus-6a34", "K_{a,a} minus 6a-34 edges is IK for a >= 9", ik, Trust::Proved, RuleCondition::None,
               [](int p, int q, int m) { return p >= 9 && q == p && m <= 6 * p - 34; }, {}});
  r.push_back({"kan-minus-3n6a34", "K_{a+n,a} minus 3n+6a-34 edges is IK for a >= 9, n >= 0", ik, Trust::Proved,
               RuleCondition::None, [](int p, int q, int m) { return p >= 9 && m <= 3 * (q - p) + 6 * p - 34; }, {}});
  r.push_back({"recurrence-4v-cn", "exactly n >= 5 vertices in one part, at least a_n in the other, e >= 4v + C_n", ik,
               Trust::Proved, RuleCondition::None,
               [](int p, int q, int m) { return recurrence_bound(p, q, m) || recurrence_bound(q, p, m); }, {}});
  r.push_back({"general-5v-14", "any graph on at least seven vertices with e >= 5v - 14 is IK", ik, Trust::External,
               RuleCondition::None,
               [](int p, int q, int m) { return p + q >= 7 && edges_of(p, q, m) >= 5 * (p + q) - 14; },
               [](int v, int e) { return v >= 7 && e >= 5 * v - 14; }});
  r.push_back({"conjecture-4v-17", "conjecture: bipartite, at least five vertices in each part, e >= 4v - 17", ik,
               Trust::Conjecture, RuleCondition::None,
               [](int p, int q, int m) { return p >= 5 && q >= 5 && edges_of(p, q, m) >= 4 * (p + q) - 17; }, {}});
  return r;
}

}  // namespace detail

inline const std::vector<Rule>& rule_inventory() {
  static const std::vector<Rule> rules = detail::build_inventory();
  return rules;
}

inline const Rule& find_rule(const std::string& id) {
  for (const auto& r : rule_inventory())
    if (r.id == id) return r;
  throw std::out_of_range("unknown rule " + id);
}

/// Rules whose predicate holds for (p, q, m), in inventory order. Conjecture
/// rules are only listed when asked for.
inline std::vector<const Rule*> applicable_rules(int p, int q, int m, bool include_conjecture = false) {
  if (p > q) std::swap(p, q);
  std::vector<const Rule*> out;
  if (p < 0 || m < 0 || m > p * q) return out;
  for (const auto& r : rule_inventory()) {
    if (r.trust == Trust::Conjecture && !include_conjecture) continue;
    if (r.holds(p, q, m)) out.push_back(&r);
  }
  return out;
}

/// Graph-level rules for arbitrary (possibly non-bipartite) graphs.
inline std::vector<const Rule*> applicable_graph_rules(int order, int edges) {
  std::vector<const Rule*> out;
  for (const auto& r : rule_inventory())
    if (r.holds_for_graph && r.trust != Trust::Conjecture && r.holds_for_graph(order, edges)) out.push_back(&r);
  return out;
}

inline bool conditions_exclusive(RuleCondition a, RuleCondition b) {
  return (a == RuleCondition::IsG553 && b == RuleCondition::NotG553) ||
         (a == RuleCondition::NotG553 && b == RuleCondition::IsG553);
}

// ---------------------------------------------------------------------------
// Pigeonhole lift

class PigeonholeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// (k - 1) * new_part < removed: the counting condition under which some
/// vertex of a part of size new_part misses at least k edges.
inline bool pigeonhole_holds(int new_part, int removed, int k) {
  return k >= 1 && new_part >= 2 && static_cast<std::int64_t>(k - 1) * new_part < removed;
}

/// Deletes an a-vertex of maximum deficiency (lowest index on ties). When
/// (k-1) p < |removed| that vertex misses at least k edges, so the result is
/// K_{p-1,q} minus at most |removed| - k edges.
inline BipartiteSpec php_reduce(const BipartiteSpec& spec, int k) {
  if (spec.p <= 1) throw PigeonholeError("a-part must have at least two vertices");
  if (!pigeonhole_holds(spec.p, spec.m(), k))
    throw PigeonholeError("need (k-1)*p < |removed| with k >= 1; got k=" + std::to_string(k) + " p=" + std::to_string(spec.p) +
                          " |removed|=" + std::to_string(spec.m()));
  const auto d = deficiencies(spec);
  const auto it = std::max_element(d.a.begin(), d.a.end());
  return delete_part_vertex(spec, 'a', static_cast<int>(it - d.a.begin()) + 1);
}

/// Largest k with (k - 1) * new_part < m + k, i.e. how many extra removed
/// edges a part of size new_part can absorb on top of m.
inline int max_lift(int new_part, int m) {
  if (new_part < 2 || m < 0) return 0;
  return (m + new_part - 1) / (new_part - 1);
}

// ---------------------------------------------------------------------------
// Derived bounds: largest m such that every K_{x,y} \ m is IK, from base
// rules closed under pigeonhole lifts on either side.

struct ChainStep {
  enum class Kind { Rule, Lift } kind = Kind::Rule;
  std::string rule_id;  // Kind::Rule
  char side = 'a';      // Kind::Lift: which part grows
  int k = 0;
  int from_p = 0, from_q = 0, from_m = 0;
  int p = 0, q = 0, m = 0;  // after the step (for Rule: where it is applied)

  friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

inline constexpr int kDerivedLimit = 40;

namespace detail {

struct DerivedTable {
  // bound[x][y]: -1 when nothing is known.
  std::array<std::array<int, kDerivedLimit + 1>, kDerivedLimit + 1> bound{};
  std::array<std::array<ChainStep, kDerivedLimit + 1>, kDerivedLimit + 1> how{};

  DerivedTable() {
    for (auto& row : bound) row.fill(-1);
    for (int s = 0; s <= 2 * kDerivedLimit; ++s)
      for (int x = std::max(0, s - kDerivedLimit); x <= std::min(s, kDerivedLimit); ++x) fill(x, s - x);
  }

  void fill(int x, int y) {
    int best = -1;
    ChainStep step;
    const int p = std::min(x, y), q = std::max(x, y);
    for (const auto& r : rule_inventory()) {
      if (r.conclusion != Conclusion::IK || r.trust == Trust::Conjecture || r.condition != RuleCondition::None) continue;
      const int m = largest_m(r, p, q);
      if (m > best) {
        best = m;
        step = {ChainStep::Kind::Rule, r.id, 'a', 0, 0, 0, 0, x, y, m};
      }
    }
    const auto lift = [&](char side, int fx, int fy, int part) {
      const int base = bound[static_cast<std::size_t>(fx)][static_cast<std::size_t>(fy)];
      if (base < 0) return;
      const int k = max_lift(part, base);
      if (k < 1) return;
      const int m = std::min(base + k, x * y);
      if (m > best) {
        best = m;
        step = {ChainStep::Kind::Lift, "", side, m - base, fx, fy, base, x, y, m};
      }
    };
    if (x >= 2) lift('a', x - 1, y, x);
    if (y >= 2) lift('b', x, y - 1, y);
    bound[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = best;
    how[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = step;
  }
};

inline const DerivedTable& derived_table() {
  static const DerivedTable table;
  return table;
}

}  // namespace detail

/// Largest m with every K_{x,y} \ m provably IK via rules and lifts; -1 if none.
inline int derived_bound(int x, int y) {
  if (x < 0 || y < 0) return -1;
  if (x > kDerivedLimit || y > kDerivedLimit) {
    // Beyond the table only direct rules apply.
    int best = -1;
    for (const auto& r : rule_inventory())
      if (r.conclusion == Conclusion::IK && r.trust != Trust::Conjecture && r.condition == RuleCondition::None)
        best = std::max(best, detail::largest_m(r, std::min(x, y), std::max(x, y)));
    return best;
  }
  return detail::derived_table().bound[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
}

/// The steps proving derived_bound(x, y): one base rule, then lifts.
inline std::vector<ChainStep> derivation(int x, int y) {
  std::vector<ChainStep> steps;
  if (derived_bound(x, y) < 0) return steps;
  if (x > kDerivedLimit || y > kDerivedLimit) {
    const int m = derived_bound(x, y);
    for (const auto& r : rule_inventory())
      if (r.conclusion == Conclusion::IK && r.trust != Trust::Conjecture && r.condition == RuleCondition::None &&
          detail::largest_m(r, std::min(x, y), std::max(x, y)) == m) {
        steps.push_back({ChainStep::Kind::Rule, r.id, 'a', 0, 0, 0, 0, x, y, m});
        break;
      }
    return steps;
  }
  const auto& t = detail::derived_table();
  for (;;) {
    const ChainStep& s = t.how[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    steps.push_back(s);
    if (s.kind == ChainStep::Kind::Rule) break;
    x = s.from_p;
    y = s.from_q;
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

/// Re-checks a derivation from scratch; returns the proved (x, y, m).
inline std::optional<std::array<int, 3>> check_derivation(const std::vector<ChainStep>& steps) {
  if (steps.empty() || steps.front().kind != ChainStep::Kind::Rule) return std::nullopt;
  std::array<int, 3> cur{};
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    if (s.kind == ChainStep::Kind::Rule) {
      if (i != 0) return std::nullopt;
      const Rule* rule = nullptr;
      for (const auto& r : rule_inventory())
        if (r.id == s.rule_id) rule = &r;
      if (!rule || rule->conclusion != Conclusion::IK || rule->trust == Trust::Conjecture ||
          rule->condition != RuleCondition::None)
        return std::nullopt;
      if (s.p < 0 || s.q < 0 || s.m < 0 || s.m > s.p * s.q) return std::nullopt;
      if (!rule->holds(std::min(s.p, s.q), std::max(s.p, s.q), s.m)) return std::nullopt;
      cur = {s.p, s.q, s.m};
      continue;
    }
    if (s.from_p != cur[0] || s.from_q != cur[1] || s.from_m != cur[2]) return std::nullopt;
    const int grown = s.side == 'a' ? cur[0] + 1 : cur[1] + 1;
    const int want_p = s.side == 'a' ? grown : cur[0];
    const int want_q = s.side == 'a' ? cur[1] : grown;
    if ((s.side != 'a' && s.side != 'b') || s.p != want_p || s.q != want_q) return std::nullopt;
    if (s.m != cur[2] + s.k || !pigeonhole_holds(grown, s.m, s.k) || s.m > s.p * s.q) return std::nullopt;
    cur = {s.p, s.q, s.m};
  }
  return cur;
}

// ---------------------------------------------------------------------------
// The recurrence claim: every K_{n,a} \ ((n-4)a - a_n) with a >= a_n is IK,
// by lifting from n-1 at a = a_n and then growing a one vertex at a time.

struct ChainCheck {
  int n = 0;
  int a = 0;
  std::string step;  // "base" or "grow"
  bool ok = false;
  std::string detail;
};

inline std::vector<ChainCheck> check_recurrence_chain(int max_n, int extra_a = 20) {
  std::vector<ChainCheck> out;
  for (int n = 7; n <= max_n; ++n) {
    const std::int64_t an = recurrence_a(n), prev = recurrence_a(n - 1);
    // Base: K_{n-1,a_n} \ ((n-5) a_n - a_{n-1}) lifted by k = a_{n-1} to
    // K_{n,a_n} \ ((n-5) a_n); requires a_n >= a_{n-1} for the hypothesis.
    {
      ChainCheck c{n, static_cast<int>(an), "base", false, ""};
      const std::int64_t m = (n - 5) * an - prev;
      const std::int64_t k = prev;
      const bool lhs = (k - 1) * n < m + k;
      const bool target = m + k == (n - 4) * an - an;
      c.ok = an >= prev && m >= 0 && lhs && target;
      c.detail = "(k-1)(a+1)=" + std::to_string((k - 1) * n) + " < m+k=" + std::to_string(m + k);
      out.push_back(std::move(c));
    }
    // Grow the other part: from a to a+1 with k = n - 4.
    for (std::int64_t a = an; a < an + extra_a; ++a) {
      ChainCheck c{n, static_cast<int>(a), "grow", false, ""};
      const std::int64_t m = (n - 4) * a - an;
      const std::int64_t k = n - 4;
      c.ok = m >= 0 && (k - 1) * (a + 1) < m + k && m + k == (n - 4) * (a + 1) - an;
      c.detail = "(k-1)(a+1)=" + std::to_string((k - 1) * (a + 1)) + " < m+k=" + std::to_string(m + k);
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace ikc
