#include <catch_amalgamated.hpp>

#include <set>

#include "ikc/bipartite.hpp"
#include "ikc/canonical.hpp"
#include "support.hpp"

using namespace ikc;

TEST_CASE("is_isomorphic examples") {
  Rng rng(3);
  const Graph k33 = complete_bipartite(3, 3);
  CHECK(is_isomorphic(k33, permute(k33, test::random_perm(6, rng))));
  const Graph two_triangles = make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  CHECK_FALSE(is_isomorphic(cycle_graph(6), two_triangles));
  const Graph x = realize(make_spec(5, 5, {{1, 1}, {2, 2}}));
  const Graph y = realize(make_spec(5, 5, {{1, 2}, {2, 1}}));
  CHECK(is_isomorphic(x, y));
  // the explicit witness b1 <-> b2
  std::vector<Vertex> swap_b = {0, 1, 2, 3, 4, 6, 5, 7, 8, 9};
  CHECK(permute(x, swap_b) == y);
}

TEST_CASE("find_isomorphism returns a working map") {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const int n = rng.between(1, 12);
    const Graph g = test::random_graph(n, 1, 2, rng);
    const Graph h = permute(g, test::random_perm(n, rng));
    const auto iso = find_isomorphism(g, h);
    REQUIRE(iso);
    CHECK(permute(g, *iso) == h);
  }
}

TEST_CASE("canonical key distinguishes simple cases") {
  CHECK(canonical_key(complete_graph(4)) != canonical_key(cycle_graph(4)));
  std::set<std::string> keys;
  for (const auto& s : enumerate_classes(5, 5, 3)) keys.insert(canonical_key(realize(s)).hex());
  CHECK(keys.size() == 4);
}

TEST_CASE("canonical key is invariant under 1000 relabelings per size 6..10") {
  Rng rng(2024);
  for (int n = 6; n <= 10; ++n) {
    const Graph g = test::random_graph(n, 1, 2, rng);
    const CanonicalForm cf = canonical_form(g);
    int agree = 0;
    for (int t = 0; t < 1000; ++t) {
      const Graph h = permute(g, test::random_perm(n, rng));
      if (canonical_key(h) == cf.key) ++agree;
    }
    CHECK(agree == 1000);
  }
}

TEST_CASE("canonical labeling maps onto the canonical graph") {
  Rng rng(9);
  for (int t = 0; t < 200; ++t) {
    const int n = rng.between(2, 11);
    const Graph g = test::random_graph(n, 1, 2, rng);
    const CanonicalForm cf = canonical_form(g);
    const Graph h = permute(g, test::random_perm(n, rng));
    const CanonicalForm ch = canonical_form(h);
    CHECK(permute(g, cf.labeling) == permute(h, ch.labeling));
  }
}

TEST_CASE("key equality agrees with brute-force isomorphism on 10^4 pairs of 8-vertex graphs") {
  Rng rng(77);
  std::vector<Graph> pool;
  // Dense collisions: few edges so many pairs share a degree sequence.
  for (int i = 0; i < 400; ++i) pool.push_back(test::random_graph_edges(8, rng.between(6, 10), rng));
  std::vector<CanonicalKey> keys;
  for (const auto& g : pool) keys.push_back(canonical_key(g));
  int pairs = 0, iso = 0, mismatches = 0;
  for (int t = 0; t < 10000; ++t) {
    const auto i = static_cast<std::size_t>(rng.below(pool.size()));
    Graph other;
    CanonicalKey other_key;
    if (t % 3 == 0) {
      other = permute(pool[i], test::random_perm(8, rng));
      other_key = canonical_key(other);
    } else {
      const auto j = static_cast<std::size_t>(rng.below(pool.size()));
      other = pool[j];
      other_key = keys[j];
    }
    const bool truth = test::brute_isomorphic(pool[i], other);
    if ((keys[i] == other_key) != truth) ++mismatches;
    if (is_isomorphic(pool[i], other) != truth) ++mismatches;
    iso += truth;
    ++pairs;
  }
  CHECK(pairs == 10000);
  CHECK(iso > 3000);
  CHECK(mismatches == 0);
}

TEST_CASE("automorphism group elements are automorphisms") {
  const Graph g = realize(make_spec(6, 6, {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}}));
  const auto group = automorphism_group(g);
  REQUIRE(group);
  // K6,6 minus a perfect matching: S6 acting diagonally, times the part swap.
  CHECK(group->size() == 1440);
  for (const auto& p : *group) CHECK(permute(g, p) == g);
}
