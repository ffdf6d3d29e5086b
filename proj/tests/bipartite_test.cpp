#include <catch_amalgamated.hpp>

#include <map>
#include <set>

#include "ikc/bipartite.hpp"
#include "ikc/canonical.hpp"
#include "support.hpp"

using namespace ikc;

TEST_CASE("realize") {
  CHECK(realize(make_spec(5, 5, {})) == complete_bipartite(5, 5));
  CHECK(realize(make_spec(5, 5, {{1, 1}, {1, 2}, {2, 1}})).edge_count() == 22);
  const Graph g666 = realize(make_spec(6, 6, {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}}));
  CHECK(g666.edge_count() == 30);
  CHECK_FALSE(g666.adjacent(0, 6));
  CHECK(g666.adjacent(0, 7));
  const auto bp = bipartition(realize(make_spec(4, 7, {{1, 1}, {4, 7}})));
  REQUIRE(bp);
  CHECK(bp->part_a.size() == 4);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(make_spec(5, 5, {{6, 1}}), SpecError);
  CHECK_THROWS_AS(make_spec(5, 5, {{1, 0}}), SpecError);
  CHECK_THROWS_AS(make_spec(5, 5, {{1, 1}, {1, 1}}), SpecError);
  CHECK(make_spec(3, 3, {{2, 2}, {1, 3}}).removed == std::vector<RemovedPair>{{1, 3}, {2, 2}});
  CHECK(spec_to_string(make_spec(5, 5, {})) == "kminus 5 5 :");
  CHECK(spec_to_string(make_spec(5, 5, {{2, 1}, {1, 1}})) == "kminus 5 5 : 1,1 ; 2,1");
}

TEST_CASE("deficiency profiles") {
  using V = std::vector<int>;
  const auto g666 = deficiency_profile(make_spec(6, 6, {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}}));
  CHECK(g666.a_parts == V{1, 1, 1, 1, 1, 1});
  CHECK(g666.b_parts == V{1, 1, 1, 1, 1, 1});
  const auto g553 = deficiency_profile(make_spec(5, 5, {{1, 1}, {1, 2}, {2, 1}}));
  CHECK(g553.a_parts == V{2, 1});
  CHECK(g553.b_parts == V{2, 1});
  const auto star = deficiency_profile(make_spec(6, 6, {{1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}}));
  CHECK(star.a_parts == V{5});
  CHECK(star.b_parts == V{1, 1, 1, 1, 1});
}

TEST_CASE("class counts") {
  CHECK(count_classes(5, 5, 0) == 1);
  CHECK(count_classes(5, 5, 1) == 1);
  CHECK(count_classes(5, 5, 2) == 2);
  CHECK(count_classes(5, 5, 3) == 4);
  CHECK(count_classes(6, 6, 5) == 20);
  EnumerateOptions two;
  two.max_deficiency = 2;
  CHECK(count_classes(6, 6, 6, two) == 17);
  CHECK_THROWS_AS(enumerate_classes(8, 8, 15), SpecError);
}

namespace {

// Every removed set of size m, grouped by canonical key; value is the
// lexicographically least removed set of the class.
std::map<CanonicalKey, std::vector<RemovedPair>> brute_classes(int p, int q, int m, int cap = 1 << 20) {
  std::map<CanonicalKey, std::vector<RemovedPair>> out;
  std::vector<RemovedPair> cur;
  auto rec = [&](auto&& self, int cell) -> void {
    if (static_cast<int>(cur.size()) == m) {
      const BipartiteSpec s{p, q, cur};
      const auto d = deficiencies(s);
      for (int x : d.a)
        if (x > cap) return;
      for (int x : d.b)
        if (x > cap) return;
      auto [it, fresh] = out.try_emplace(canonical_key(realize(s)), cur);
      if (!fresh && cur < it->second) it->second = cur;
      return;
    }
    for (int c = cell; c < p * q; ++c) {
      cur.emplace_back(c / q + 1, c % q + 1);
      self(self, c + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

void compare_with_brute(int p, int q, int m, std::optional<int> cap = std::nullopt) {
  EnumerateOptions eo;
  eo.max_deficiency = cap;
  const auto classes = enumerate_classes(p, q, m, eo);
  const auto brute = brute_classes(p, q, m, cap.value_or(1 << 20));
  INFO("p=" << p << " q=" << q << " m=" << m);
  REQUIRE(classes.size() == brute.size());
  std::set<CanonicalKey> seen;
  for (const auto& s : classes) {
    const auto key = canonical_key(realize(s));
    CHECK(seen.insert(key).second);
    const auto it = brute.find(key);
    REQUIRE(it != brute.end());
    CHECK(it->second == s.removed);
  }
  CHECK(std::is_sorted(classes.begin(), classes.end()));
}

}  // namespace

TEST_CASE("enumeration matches brute force for p*q <= 16, m <= 4") {
  for (int p = 1; p <= 16; ++p)
    for (int q = 1; p * q <= 16; ++q)
      for (int m = 0; m <= std::min(4, p * q); ++m) compare_with_brute(p, q, m);
}

TEST_CASE("K5,5 minus 4 count against brute force over all 4-subsets") { compare_with_brute(5, 5, 4); }

TEST_CASE("deficiency cap matches brute force with the same filter") {
  compare_with_brute(4, 4, 4, 1);
  compare_with_brute(4, 4, 5, 2);
  compare_with_brute(4, 5, 6, 2);
}

TEST_CASE("profiles are invariant under isomorphism and sum to m") {
  Rng rng(31);
  for (int t = 0; t < 300; ++t) {
    const int p = rng.between(2, 7), q = rng.between(2, 7);
    const BipartiteSpec s = sample_spec(p, q, rng.between(0, p * q / 2), rng);
    const auto prof = deficiency_profile(s);
    int sa = 0, sb = 0;
    for (int x : prof.a_parts) sa += x;
    for (int x : prof.b_parts) sb += x;
    CHECK(sa == s.m());
    CHECK(sb == s.m());
    // Relabel inside each part; the profile must not move.
    auto pa = rng.permutation(p), pb = rng.permutation(q);
    std::vector<RemovedPair> moved;
    for (auto [i, j] : s.removed) moved.emplace_back(pa[static_cast<std::size_t>(i - 1)] + 1, pb[static_cast<std::size_t>(j - 1)] + 1);
    const BipartiteSpec r = make_spec(p, q, moved);
    CHECK(is_isomorphic(realize(s), realize(r)));
    CHECK(deficiency_profile(r) == prof);
    const auto sw = deficiency_profile(swap_parts(s));
    CHECK(sw.a_parts == prof.b_parts);
    CHECK(sw.b_parts == prof.a_parts);
  }
}

TEST_CASE("sample_spec is reproducible and uniform in shape") {
  Rng a(5), b(5);
  for (int t = 0; t < 20; ++t) CHECK(sample_spec(7, 7, 10, a) == sample_spec(7, 7, 10, b));
  Rng c(6);
  const auto s = sample_spec(7, 7, 10, c);
  CHECK(s.m() == 10);
}

TEST_CASE("delete_part_vertex shifts indices") {
  const auto s = make_spec(3, 3, {{1, 1}, {2, 2}, {3, 3}});
  CHECK(delete_part_vertex(s, 'a', 2) == make_spec(2, 3, {{1, 1}, {2, 3}}));
  CHECK(delete_part_vertex(s, 'b', 1) == make_spec(3, 2, {{2, 1}, {3, 2}}));
  CHECK(realize(delete_part_vertex(s, 'a', 2)) == delete_vertex(realize(s), 1));
}
