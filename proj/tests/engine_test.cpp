#include <catch_amalgamated.hpp>

#include "ikc/engine.hpp"
#include "support.hpp"

using namespace ikc;

namespace {

ClassifyOptions quick() {
  ClassifyOptions o;
  o.budget = SearchBudget::unlimited_nodes(120000);
  return o;
}

Verdict classify_checked(const BipartiteSpec& s) {
  const Verdict v = classify(s, quick());
  INFO(spec_to_string(s));
  CHECK(replay(realize(s), v));
  return v;
}

}  // namespace

TEST_CASE("classify: K5,5 minus three") {
  const Verdict g553 = classify_checked(g553_spec());
  CHECK(g553.status == Status::IK);
  CHECK(g553.certificate.kind == CertificateKind::KnownClass);
  CHECK(g553.certificate.known_class == "G553");
  for (const auto& s : enumerate_classes(5, 5, 3)) {
    const Verdict v = classify_checked(s);
    if (canonical_key(realize(s)) == canonical_key(realize(g553_spec()))) CHECK(v.status == Status::IK);
    else CHECK(v.status == Status::NotIK);
  }
}

TEST_CASE("classify: K5,5 minus four or more is not IK") {
  Rng rng(4);
  for (int m = 4; m <= 12; ++m)
    for (int t = 0; t < 5; ++t) {
      const Verdict v = classify_checked(sample_spec(5, 5, m, rng));
      CHECK(v.status == Status::NotIK);
    }
}

TEST_CASE("classify: G666 stays UNKNOWN without being undecided") {
  const Verdict v = classify(g666_spec(), quick());
  CHECK(v.status == Status::Unknown);
  CHECK_FALSE(v.undecided);
  CHECK(v.certificate.kind == CertificateKind::None);
  CHECK(replay(realize(g666_spec()), v));
}

TEST_CASE("classify: K7,7 minus ten by rule chain") {
  Rng rng(77);
  for (int t = 0; t < 20; ++t) {
    const BipartiteSpec s = sample_spec(7, 7, rng.between(0, 10), rng);
    const Verdict v = classify_checked(s);
    CHECK(v.status == Status::IK);
    CHECK(v.certificate.kind == CertificateKind::RuleChain);
    const auto proved = check_derivation(v.certificate.chain);
    REQUIRE(proved);
    CHECK((*proved)[2] >= 10);
  }
}

TEST_CASE("classify: non-bipartite and small-part inputs") {
  const Verdict k7 = classify(complete_graph(7), quick());
  CHECK(k7.status == Status::IK);
  CHECK(k7.certificate.direct_rule == "general-5v-14");
  CHECK(replay(complete_graph(7), k7));

  const Graph k4_20 = complete_bipartite(4, 20);
  const Verdict small = classify(k4_20, quick());
  CHECK(small.status == Status::NotIK);
  CHECK(small.certificate.kind == CertificateKind::SmallPart);
  CHECK(replay(k4_20, small));

  const Graph c7 = cycle_graph(7);
  const Verdict planar = classify(c7, quick());
  CHECK(planar.status == Status::NotIK);
  CHECK(planar.certificate.kind == CertificateKind::PlanarJoin);
  CHECK(replay(c7, planar));

  const Graph k3311 = complete_multipartite({3, 3, 1, 1});
  const Verdict w = classify(k3311, quick());
  CHECK(w.status == Status::IK);
  CHECK(w.certificate.kind == CertificateKind::MinorWitness);
  CHECK(replay(k3311, w));
}

TEST_CASE("classify: isolated vertex does not hide K5,5") {
  const Graph g = make_graph(11, complete_bipartite(5, 5).edges());
  const Verdict v = classify(g, quick());
  CHECK(v.status == Status::IK);
  CHECK(replay(g, v));
}

TEST_CASE("replay rejects tampered certificates") {
  const Graph g = realize(g553_spec());
  Verdict v = classify(g553_spec(), quick());
  Verdict flipped = v;
  flipped.status = Status::NotIK;
  CHECK_FALSE(replay(g, flipped));
  Verdict bad_iso = v;
  std::swap((*bad_iso.certificate.isomorphism)[0], (*bad_iso.certificate.isomorphism)[5]);
  CHECK_FALSE(replay(g, bad_iso));

  Rng rng(3);
  const BipartiteSpec s = sample_spec(7, 7, 10, rng);
  Verdict chain = classify(s, quick());
  REQUIRE(chain.certificate.kind == CertificateKind::RuleChain);
  CHECK_FALSE(replay(realize(sample_spec(7, 7, 11, rng)), chain));
  chain.certificate.part_a.pop_back();
  CHECK_FALSE(replay(realize(s), chain));

  const Graph k3311 = complete_multipartite({3, 3, 1, 1});
  Verdict w = classify(k3311, quick());
  REQUIRE(w.certificate.witness);
  w.certificate.witness->model.branch_sets[0].clear();
  CHECK_FALSE(replay(k3311, w));
}

TEST_CASE("status and certificates survive relabeling") {
  Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    const int p = rng.between(5, 6), q = rng.between(5, 6);
    const BipartiteSpec s = sample_spec(p, q, rng.between(0, 8), rng);
    const Graph g = realize(s);
    const auto perm = test::random_perm(g.order(), rng);
    const Graph h = permute(g, perm);
    const Verdict vg = classify(g, quick());
    const Verdict vh = classify(h, quick());
    INFO(spec_to_string(s));
    CHECK(vg.status == vh.status);
    CHECK(replay(g, vg));
    CHECK(replay(h, relabel(vg, perm)));
  }
}

TEST_CASE("IK verdicts never have a planar join") {
  Rng rng(12);
  int ik = 0;
  for (int t = 0; t < 60; ++t) {
    const int p = rng.between(5, 7), q = rng.between(5, 7);
    const BipartiteSpec s = sample_spec(p, q, rng.between(0, 9), rng);
    const Verdict v = classify(s, quick());
    INFO(spec_to_string(s));
    if (v.status == Status::IK) {
      ++ik;
      CHECK_FALSE(planar_join_certificate(realize(s)));
    }
    if (planar_join_certificate(realize(s))) CHECK(v.status == Status::NotIK);
  }
  CHECK(ik > 10);
}

TEST_CASE("numeric_ik examples") {
  CHECK(numeric_ik(g553_spec()));
  CHECK_FALSE(numeric_ik(g666_spec()));
  CHECK_FALSE(numeric_ik(make_spec(5, 5, {{1, 1}, {2, 2}, {3, 3}})));
  CHECK(numeric_ik(make_spec(6, 6, {{1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}})));
  CHECK_FALSE(numeric_ik(make_spec(4, 30, {})));
}

TEST_CASE("descent: deficiency-two vertex of K7,6 minus 7") {
  const BipartiteSpec s = make_spec(7, 6, {{1, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 1}});
  const auto moves = detail::descent_moves(s);
  REQUIRE_FALSE(moves.empty());
  CHECK(moves[0].kind == 's');
  CHECK(moves[0].side == 'a');
  CHECK(moves[0].i == 1);
  const Verdict v = reduce_to_witness(s);
  CHECK(v.status == Status::IK);
  CHECK_FALSE(v.undecided);
  REQUIRE_FALSE(v.certificate.descent.empty());
  const DeletionStep& first = v.certificate.descent[0];
  CHECK(first.removed == std::vector<Vertex>{0});
  CHECK(first.p == 6);
  CHECK(first.q == 6);
  CHECK(first.m <= 5);
  CHECK(replay(realize(s), v));
}

TEST_CASE("descent: deficiency-three vertex goes first") {
  Rng rng(33);
  int seen = 0;
  for (int t = 0; t < 200 && seen < 5; ++t) {
    const BipartiteSpec s = sample_spec(7, 7, 10, rng);
    const auto d = deficiencies(s);
    const int worst = std::max(*std::max_element(d.a.begin(), d.a.end()), *std::max_element(d.b.begin(), d.b.end()));
    if (worst < 3) continue;
    ++seen;
    const Verdict v = reduce_to_witness(s);
    INFO(spec_to_string(s));
    REQUIRE_FALSE(v.certificate.descent.empty());
    const DeletionStep& first = v.certificate.descent[0];
    REQUIRE(first.removed.size() == 1);
    const Vertex x = first.removed[0];
    const int def = x < 7 ? d.a[static_cast<std::size_t>(x)] : d.b[static_cast<std::size_t>(x - 7)];
    CHECK(def == worst);
    CHECK(first.m == 10 - worst);
    CHECK(replay(realize(s), v));
  }
  CHECK(seen == 5);
}

TEST_CASE("descent: pair deletion skips the pair that lands on G666") {
  const BipartiteSpec s =
      make_spec(7, 7, {{1, 2}, {1, 3}, {2, 1}, {4, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}, {7, 7}});
  const auto moves = detail::descent_moves(s);
  const auto first_pair = std::find_if(moves.begin(), moves.end(), [](const detail::Move& m) { return m.kind == 'p'; });
  REQUIRE(first_pair != moves.end());
  CHECK(first_pair->i == 1);
  CHECK(first_pair->j == 1);
  const BipartiteSpec bad = delete_part_vertex(delete_part_vertex(s, 'b', 1), 'a', 1);
  CHECK(detail::is_g666(realize(bad)));
  CHECK_FALSE(numeric_ik(bad));

  const Verdict v = reduce_to_witness(s);
  CHECK(v.status == Status::IK);
  CHECK_FALSE(v.undecided);
  REQUIRE_FALSE(v.certificate.descent.empty());
  const DeletionStep& first = v.certificate.descent[0];
  CHECK(first.move == "vertex-pair");
  CHECK(first.removed != std::vector<Vertex>{0, 7});
  CHECK(first.p == 6);
  CHECK(first.q == 6);
  CHECK(replay(realize(s), v));
}

TEST_CASE("descent: every pair lands on G666, direct search decides") {
  const BipartiteSpec s =
      make_spec(7, 7, {{1, 2}, {1, 3}, {2, 1}, {3, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}, {7, 7}});
  int eligible = 0, g666 = 0;
  for (const auto& mv : detail::descent_moves(s)) {
    const BipartiteSpec next = mv.kind == 's' ? delete_part_vertex(s, mv.side, mv.i)
                                              : delete_part_vertex(delete_part_vertex(s, 'b', mv.j), 'a', mv.i);
    eligible += numeric_ik(next);
    g666 += next.p == 6 && next.q == 6 && next.m() == 6 && detail::is_g666(realize(next));
  }
  CHECK(eligible == 0);
  CHECK(g666 > 0);
  const Verdict v = reduce_to_witness(s);
  CHECK(v.undecided);
  CHECK(v.certificate.descent.empty());
  CHECK(v.status == Status::IK);
  CHECK(replay(realize(s), v));
}

TEST_CASE("descent: precondition") {
  CHECK_THROWS_AS(reduce_to_witness(g666_spec()), DescentPrecondition);
  CHECK_THROWS_AS(reduce_to_witness(make_spec(5, 5, {{1, 1}, {2, 2}, {3, 3}})), DescentPrecondition);
}

TEST_CASE("descent on random K7,7 minus 10") {
  Rng rng(1001);
  for (int t = 0; t < 25; ++t) {
    const BipartiteSpec s = sample_spec(7, 7, 10, rng);
    const Verdict v = reduce_to_witness(s);
    INFO(spec_to_string(s));
    CHECK(v.status == Status::IK);
    CHECK(replay(realize(s), v));
    int order = 14;
    for (const auto& step : v.certificate.descent) {
      order -= static_cast<int>(step.removed.size());
      CHECK(step.p + step.q == order);
    }
    if (!v.undecided) CHECK(order <= kDescentBaseOrder);
  }
}
