// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <iostream>
#include <thread>

#include "ikc/ikc.hpp"
#include "support.hpp"

using namespace ikc;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

AuditOptions audit_options() {
  AuditOptions o;
  o.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  o.seed = 1;
  o.samples = 100;
  o.max_n = 12;
  return o;
}

Outcome from_audit(const AuditReport& r) {
  std::string d = std::to_string(r.items.size()) + " items";
  for (const auto& [k, v] : r.counts) d += ", " + k + " " + std::to_string(v);
  if (!r.passed) d += "; first failure: " + r.failure;
  return {r.passed, d};
}

Outcome k55() {
  const AuditReport r = audit_k55(audit_options());
  Outcome o = from_audit(r);
  // Independent of the audit's own checks: class counts per m.
  const bool counts = count_classes(5, 5, 0) == 1 && count_classes(5, 5, 1) == 1 && count_classes(5, 5, 2) == 2 &&
                      count_classes(5, 5, 3) == 4;
  int ik3 = 0, not_ik3 = 0;
  for (const auto& it : r.items) {
    if (it.spec.rfind("kminus 5 5 :", 0) != 0) continue;
    const auto spec = std::get<BipartiteSpec>(parse_input(it.spec));
    if (spec.m() != 3) continue;
    ik3 += it.status == "IK";
    not_ik3 += it.status == "NOT_IK" && it.kind == "PlanarJoin";
  }
  o.ok = o.ok && counts && ik3 == 1 && not_ik3 == 3;
  return o;
}

Outcome k66_5() {
  const AuditReport r = audit_k66_5(audit_options());
  Outcome o = from_audit(r);
  int witnessed = 0;
  for (const auto& it : r.items) witnessed += it.ok && it.status == "IK" && it.kind == "MinorWitness";
  o.ok = o.ok && count_classes(6, 6, 5) == 20 && witnessed == 20;
  return o;
}

Outcome k66_6() {
  const AuditReport r = audit_k66_6(audit_options());
  Outcome o = from_audit(r);
  EnumerateOptions eo;
  eo.max_deficiency = 2;
  o.ok = o.ok && count_classes(6, 6, 6, eo) == 17 && !r.undecided;
  return o;
}

Outcome k77() {
  const AuditReport r = audit_k77_sample(audit_options());
  Outcome o = from_audit(r);
  int ik = 0;
  for (const auto& it : r.items) ik += it.ok && it.status == "IK";
  o.ok = o.ok && r.items.size() == 100 && ik == 100;
  return o;
}

Outcome recurrence() {
  const AuditReport r = audit_recurrence(audit_options());
  Outcome o = from_audit(r);
  const std::int64_t expect[] = {5, 7, 22, 57, 127, 253};
  for (int n = 5; n <= 10; ++n) o.ok = o.ok && recurrence_a(n) == expect[n - 5];
  for (const auto& c : check_recurrence_chain(12)) o.ok = o.ok && c.ok;
  return o;
}

Outcome properties() {
  Rng rng(2024);
  int bad = 0;
  std::string d;
  // Canonical keys under relabeling.
  for (int n = 6; n <= 10; ++n) {
    const Graph g = test::random_graph(n, 1, 2, rng);
    const CanonicalKey k = canonical_key(g);
    for (int t = 0; t < 1000; ++t) bad += canonical_key(permute(g, test::random_perm(n, rng))) != k;
  }
  d += "relabel mismatches " + std::to_string(bad);
  // Minor search against the brute-force oracle.
  int minor_bad = 0;
  for (int t = 0; t < 500; ++t) {
    const int ng = rng.between(4, 8);
    const int nh = rng.between(2, std::min(ng, 6));
    const Graph g = test::random_graph(ng, rng.between(4, 8), 10, rng);
    const Graph h = test::random_graph(nh, rng.between(3, 8), 10, rng);
    const MinorResult r = has_minor(h, g);
    const bool found = r.outcome == MinorOutcome::Found;
    minor_bad += r.outcome == MinorOutcome::Undecided || found != minor_oracle(h, g) ||
                 (r.model && !verify_model(h, g, *r.model));
  }
  d += ", minor disagreements " + std::to_string(minor_bad) + "/500";
  // Planarity against K5 / K3,3 minors.
  int planar_bad = 0;
  const Graph k5 = complete_graph(5), k33 = complete_bipartite(3, 3);
  for (int t = 0; t < 10000; ++t) {
    const int n = rng.between(1, 8);
    const Graph g = test::random_graph_edges(n, rng.between(0, std::min(n * (n - 1) / 2, 3 * n - 3)), rng);
    const auto emb = planar_embedding(g);
    const bool truth = !minor_oracle(k5, g) && !minor_oracle(k33, g);
    planar_bad += emb.has_value() != truth || (emb && !verify_embedding(g, *emb));
  }
  d += ", planarity disagreements " + std::to_string(planar_bad) + "/10000";
  // Pigeonhole reduction.
  int php_bad = 0;
  for (int t = 0; t < 500; ++t) {
    const int p = rng.between(2, 12), q = rng.between(1, 12);
    const int m = rng.between(1, p * q);
    const BipartiteSpec s = sample_spec(p, q, m, rng);
    int k = 1;
    while (pigeonhole_holds(p, m, k + 1)) ++k;
    k = rng.between(1, k);
    const auto def = deficiencies(s);
    const int worst = *std::max_element(def.a.begin(), def.a.end());
    const BipartiteSpec r = php_reduce(s, k);
    php_bad += worst < k || r.p != p - 1 || r.q != q || r.m() > m - k;
  }
  d += ", pigeonhole failures " + std::to_string(php_bad) + "/500";
  return {bad == 0 && minor_bad == 0 && planar_bad == 0 && php_bad == 0, d};
}

Outcome consistency() {
  const auto t0 = std::chrono::steady_clock::now();
  int conflicts = 0, triples = 0;
  for (int p = 0; p <= 12; ++p)
    for (int q = 0; q <= 12; ++q)
      for (int m = 0; m <= p * q; ++m) {
        ++triples;
        const auto rules = applicable_rules(p, q, m);
        for (const Rule* a : rules)
          for (const Rule* b : rules)
            conflicts += a->conclusion == Conclusion::IK && b->conclusion == Conclusion::NotIK &&
                         !conditions_exclusive(a->condition, b->condition);
        if (m <= derived_bound(p, q))
          for (const Rule* b : rules) conflicts += b->conclusion == Conclusion::NotIK && b->condition == RuleCondition::None;
      }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {conflicts == 0 && secs < 60,
          std::to_string(triples) + " triples, " + std::to_string(conflicts) + " conflicts, " + std::to_string(secs) + " s"};
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"K5,5 classification", k55},
      {"K6,6 minus 5: 20 classes with witness minors", k66_5},
      {"K6,6 minus 6: 17 classes, 16 minors, G666 absent", k66_6},
      {"K7,7 minus 10: 100 seeded samples certified", k77},
      {"recurrence values and chain", recurrence},
      {"property suites", properties},
      {"rule consistency p, q <= 12", consistency},
  };
  bool all = true;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << n << ": " << (o.ok ? "PASS" : "FAIL") << " " << name << " (" << o.detail << "; "
              << secs << " s)" << std::endl;
    all = all && o.ok;
  }
  return all ? 0 : 1;
}
