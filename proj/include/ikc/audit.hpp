// Reproduction audits for the K5,5 / K6,6 / K7,7 classifications and the
// recurrence, plus Markdown/JSON report writers.
//
// Every IK class is certified by a direct witness-family minor search whose
// model is replayed; NOT_IK classes carry a planar-join certificate. Each
// verdict is also cross-checked against classify().

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ikc/bipartite.hpp"
#include "ikc/cache.hpp"
#include "ikc/engine.hpp"
#include "ikc/io.hpp"
#include "ikc/random.hpp"
#include "ikc/rules.hpp"

namespace ikc {

struct AuditItem {
  std::string spec;
  std::string expected;
  std::string status;
  std::string kind;
  std::string digest;
  double elapsed_ms = 0;
  std::string note;
  bool ok = false;
  bool undecided = false;
};

struct AuditCheck {
  std::string what;
  bool ok = false;
};

struct AuditReport {
  std::string name;
  std::vector<AuditItem> items;
  std::vector<AuditCheck> checks;
  std::map<std::string, int> counts;
  std::vector<std::string> notes;
  bool passed = false;
  bool undecided = false;
  std::string failure;  // first offending item (enumeration order) or check
};

struct AuditOptions {
  SearchBudget budget{100000000, 600000};
  int jobs = 1;
  std::optional<std::filesystem::path> cache_dir;
  std::uint64_t seed = 1;
  int samples = 100;
  int max_n = 12;
  // Budget for the G666 absence runs: effectively unbounded.
  SearchBudget absence_budget = SearchBudget::unlimited_nodes(24LL * 3600 * 1000);
};

namespace detail {

template <class F>
std::vector<AuditItem> run_pool(std::size_t count, int jobs, F&& task) {
  std::vector<AuditItem> out(count);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        out[i] = task(i);
      } catch (const std::exception& e) {
        out[i].ok = false;
        out[i].note = std::string("error: ") + e.what();
      }
      out[i].elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  if (n == 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  for (int k = 0; k < n; ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

inline void finish(AuditReport& r) {
  r.passed = true;
  for (const auto& it : r.items) {
    ++r.counts[it.status];
    if (it.undecided) r.undecided = true;
    if (!it.ok && r.passed) {
      r.passed = false;
      r.failure = it.spec + (it.note.empty() ? "" : " (" + it.note + ")");
    }
  }
  for (const auto& c : r.checks)
    if (!c.ok && r.passed) {
      r.passed = false;
      r.failure = c.what;
    }
}

inline std::string witness_cache_version() { return std::string(kEngineVersion) + " audit/witness"; }

// Witness-family minor verdict for g, via the cache when one is configured.
// Cached certificates are replayed before use.
inline Verdict witness_verdict(const Graph& g, const AuditOptions& opts, VerdictCache* cache, bool& from_cache) {
  from_cache = false;
  if (cache)
    if (auto hit = cache->lookup(g); hit && hit->status == Status::IK && replay(g, *hit, opts.cache_dir)) {
      from_cache = true;
      return *hit;
    }
  Verdict v;
  const WitnessSearch ws = search_witnesses(g, opts.budget, opts.cache_dir);
  if (ws.outcome == MinorOutcome::Found) {
    v.status = Status::IK;
    v.certificate.kind = CertificateKind::MinorWitness;
    v.certificate.witness = ws.witness;
    v.citations = {"witness-family-minor"};
    if (cache) cache->store(g, v);
  }
  v.undecided = ws.outcome == MinorOutcome::Undecided;
  return v;
}

inline Verdict planar_verdict(const Graph& g) {
  Verdict v;
  if (auto pj = planar_join_certificate(g)) {
    v.status = Status::NotIK;
    v.certificate.kind = CertificateKind::PlanarJoin;
    v.certificate.planar = std::move(pj);
    v.citations = {"k2-join-planar"};
  }
  return v;
}

inline void fill(AuditItem& it, const Verdict& v) {
  it.status = to_string(v.status);
  it.kind = to_string(v.certificate.kind);
  it.digest = certificate_digest(v);
  it.undecided = v.undecided;
}

inline std::optional<VerdictCache> open_cache(const AuditOptions& opts) {
  if (!opts.cache_dir) return std::nullopt;
  return std::optional<VerdictCache>(std::in_place, *opts.cache_dir, witness_cache_version());
}

// Certifies one bipartite class against an expected status.
inline AuditItem certify_class(const BipartiteSpec& s, Status expected, const AuditOptions& opts, VerdictCache* cache) {
  AuditItem it;
  it.spec = spec_to_string(s);
  it.expected = to_string(expected);
  const Graph g = realize(s);
  bool cached = false;
  const Verdict v = expected == Status::IK ? witness_verdict(g, opts, cache, cached) : planar_verdict(g);
  fill(it, v);
  const bool certified = v.status == expected && replay(g, v, opts.cache_dir);
  ClassifyOptions co;
  co.budget = opts.budget;
  co.cache_dir = opts.cache_dir;
  const Verdict c = classify(s, co);
  const bool agrees = c.status == expected && replay(g, c, opts.cache_dir);
  it.ok = certified && agrees;
  if (!certified) it.note = "no replayable certificate";
  else if (!agrees) it.note = std::string("classify gave ") + to_string(c.status);
  else if (cached) it.note = "cached";
  return it;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Reference lists

/// Removal sets for K6,6 minus 5 in the order they are printed in the
/// literature, as (i, j) for a_i b_j.
inline const std::vector<std::vector<RemovedPair>>& listed_k66_5() {
  static const std::vector<std::vector<RemovedPair>> v = {
      {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}}, {{1, 5}, {2, 5}, {4, 4}, {5, 1}, {6, 6}},
      {{1, 5}, {2, 5}, {4, 1}, {5, 1}, {6, 6}}, {{1, 5}, {2, 5}, {5, 1}, {5, 2}, {6, 6}},
      {{2, 5}, {4, 1}, {5, 1}, {5, 2}, {6, 6}}, {{1, 5}, {2, 5}, {5, 1}, {5, 2}, {6, 6}},
      {{1, 5}, {2, 5}, {5, 1}, {5, 2}, {5, 3}}, {{1, 4}, {1, 5}, {5, 1}, {5, 2}, {5, 3}},
      {{1, 5}, {4, 1}, {4, 4}, {4, 5}, {5, 1}}, {{4, 1}, {4, 4}, {4, 5}, {5, 1}, {6, 6}},
      {{4, 4}, {5, 1}, {5, 2}, {5, 3}, {6, 6}}, {{1, 4}, {1, 5}, {5, 1}, {5, 2}, {5, 4}},
      {{1, 4}, {5, 1}, {5, 2}, {5, 3}, {5, 4}}, {{5, 1}, {5, 2}, {5, 3}, {5, 4}, {6, 6}},
      {{1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}}, {{1, 4}, {4, 1}, {4, 5}, {5, 1}, {5, 4}},
      {{1, 4}, {4, 1}, {5, 1}, {5, 4}, {6, 6}}, {{1, 4}, {1, 5}, {2, 5}, {4, 4}, {4, 5}},
      {{1, 4}, {1, 5}, {4, 4}, {4, 5}, {6, 6}}, {{1, 4}, {4, 1}, {4, 4}, {4, 5}, {5, 4}},
  };
  return v;
}

/// Removal sets for K6,6 minus 6, printed order; the first is G666.
inline const std::vector<std::vector<RemovedPair>>& listed_k66_6() {
  static const std::vector<std::vector<RemovedPair>> v = {
      {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}}, {{1, 4}, {2, 5}, {4, 1}, {4, 4}, {5, 2}, {6, 6}},
      {{1, 4}, {2, 5}, {3, 5}, {4, 1}, {5, 4}, {6, 6}}, {{1, 5}, {2, 5}, {4, 1}, {4, 4}, {5, 3}, {6, 6}},
      {{1, 4}, {2, 5}, {4, 1}, {4, 4}, {5, 2}, {6, 6}}, {{1, 4}, {3, 5}, {4, 1}, {5, 1}, {5, 4}, {6, 6}},
      {{1, 4}, {2, 5}, {3, 5}, {5, 1}, {5, 4}, {6, 6}}, {{1, 4}, {2, 5}, {3, 5}, {4, 1}, {5, 1}, {5, 4}},
      {{2, 5}, {3, 5}, {4, 1}, {4, 4}, {5, 1}, {5, 2}}, {{3, 1}, {3, 5}, {5, 2}, {5, 4}, {6, 3}, {6, 6}},
      {{1, 4}, {2, 5}, {3, 5}, {4, 4}, {5, 1}, {5, 2}}, {{1, 4}, {2, 5}, {4, 1}, {4, 5}, {5, 2}, {5, 4}},
      {{1, 4}, {1, 5}, {2, 5}, {5, 1}, {5, 4}, {6, 6}}, {{1, 4}, {2, 5}, {4, 1}, {4, 5}, {5, 1}, {5, 4}},
      {{1, 5}, {1, 4}, {4, 4}, {4, 5}, {5, 1}, {6, 6}}, {{1, 5}, {2, 5}, {4, 1}, {4, 4}, {5, 1}, {5, 4}},
      {{1, 4}, {1, 5}, {4, 1}, {4, 5}, {5, 1}, {5, 4}},
  };
  return v;
}

struct ListMatch {
  std::vector<int> class_of_item;                // per listed item, enumerated class index or -1
  std::vector<std::vector<int>> items_of_class;  // per class, 0-based listed items
  std::vector<std::pair<int, int>> duplicates;   // (earlier item, later item), 0-based
  std::vector<int> unmatched_classes;
};

inline ListMatch match_listed(int p, int q, const std::vector<BipartiteSpec>& classes,
                              const std::vector<std::vector<RemovedPair>>& listed) {
  ListMatch lm;
  lm.items_of_class.resize(classes.size());
  std::vector<CanonicalKey> keys;
  for (const auto& s : classes) keys.push_back(canonical_key(realize(s)));
  for (std::size_t i = 0; i < listed.size(); ++i) {
    const CanonicalKey k = canonical_key(realize(make_spec(p, q, listed[i])));
    int found = -1;
    for (std::size_t c = 0; c < keys.size(); ++c)
      if (keys[c] == k) found = static_cast<int>(c);
    lm.class_of_item.push_back(found);
    if (found >= 0) {
      auto& its = lm.items_of_class[static_cast<std::size_t>(found)];
      if (!its.empty()) lm.duplicates.emplace_back(its.front(), static_cast<int>(i));
      its.push_back(static_cast<int>(i));
    }
  }
  for (std::size_t c = 0; c < classes.size(); ++c)
    if (lm.items_of_class[c].empty()) lm.unmatched_classes.push_back(static_cast<int>(c));
  return lm;
}

namespace detail {

inline void describe_match(AuditReport& r, const ListMatch& lm, const std::vector<BipartiteSpec>& classes) {
  for (std::size_t i = 0; i < lm.class_of_item.size(); ++i)
    if (lm.class_of_item[i] < 0) r.notes.push_back("listed item " + std::to_string(i + 1) + " is not a valid class here");
  for (auto [a, b] : lm.duplicates)
    r.notes.push_back("listed items " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " are the same class");
  for (int c : lm.unmatched_classes)
    r.notes.push_back("class " + std::to_string(c + 1) + " " + spec_to_string(classes[static_cast<std::size_t>(c)]) +
                      " matches no listed item");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Audits

inline AuditReport audit_k55(const AuditOptions& opts = {}) {
  AuditReport r;
  r.name = "k55";
  std::vector<BipartiteSpec> all;
  std::vector<std::size_t> per_m(6);
  for (int m = 0; m <= 5; ++m) {
    auto cls = enumerate_classes(5, 5, m);
    per_m[static_cast<std::size_t>(m)] = cls.size();
    all.insert(all.end(), cls.begin(), cls.end());
  }
  auto cache = detail::open_cache(opts);
  VerdictCache* cp = cache ? &*cache : nullptr;
  const Graph g553 = realize(g553_spec());
  r.items = detail::run_pool(all.size(), opts.jobs, [&](std::size_t i) {
    const BipartiteSpec& s = all[i];
    const bool ik = s.m() <= 2 || (s.m() == 3 && is_isomorphic(realize(s), g553));
    AuditItem it = detail::certify_class(s, ik ? Status::IK : Status::NotIK, opts, cp);
    if (s.m() == 3 && ik) it.note += std::string(it.note.empty() ? "" : "; ") + "isomorphic to G553";
    return it;
  });
  std::size_t at = 0;
  for (int m = 0; m <= 5; ++m) {
    int ik = 0, not_ik = 0;
    for (std::size_t k = 0; k < per_m[static_cast<std::size_t>(m)]; ++k, ++at) {
      if (r.items[at].status == "IK") ++ik;
      if (r.items[at].status == "NOT_IK") ++not_ik;
    }
    const int n = static_cast<int>(per_m[static_cast<std::size_t>(m)]);
    std::ostringstream os;
    os << "m=" << m << ": " << n << " classes, " << ik << " IK, " << not_ik << " NOT_IK";
    bool ok;
    if (m <= 2) ok = ik == n;
    else if (m == 3) ok = n == 4 && ik == 1 && not_ik == 3;
    else ok = not_ik == n;
    r.checks.push_back({os.str(), ok});
  }
  {
    const Graph d = realize(make_spec(5, 5, {{1, 1}, {1, 2}, {2, 1}, {2, 2}}));
    const auto pj = planar_join_certificate(d);
    r.checks.push_back({"K5,5 minus {11,12,21,22} has a planar join", pj && verify_planar_join(d, *pj)});
  }
  detail::finish(r);
  return r;
}

inline AuditReport audit_k66_5(const AuditOptions& opts = {}) {
  AuditReport r;
  r.name = "k66_5";
  const auto classes = enumerate_classes(6, 6, 5);
  auto cache = detail::open_cache(opts);
  VerdictCache* cp = cache ? &*cache : nullptr;
  r.items = detail::run_pool(classes.size(), opts.jobs,
                             [&](std::size_t i) { return detail::certify_class(classes[i], Status::IK, opts, cp); });
  r.checks.push_back({"class count " + std::to_string(classes.size()) + " == 20", classes.size() == 20});
  const ListMatch lm = match_listed(6, 6, classes, listed_k66_5());
  detail::describe_match(r, lm, classes);
  if (const int c = lm.class_of_item[0]; c >= 0) {
    const auto& it = r.items[static_cast<std::size_t>(c)];
    r.notes.push_back("listed item 1 is class " + std::to_string(c + 1) + ": " + it.status + " via " + it.kind);
  }
  detail::finish(r);
  return r;
}

inline AuditReport audit_k66_6(const AuditOptions& opts = {}) {
  AuditReport r;
  r.name = "k66_6";
  EnumerateOptions eo;
  eo.max_deficiency = 2;
  const auto classes = enumerate_classes(6, 6, 6, eo);
  const WitnessSet& ws = witness_set(opts.cache_dir);
  const auto members = ws.all_members();
  const Graph g666 = realize(g666_spec());
  auto cache = detail::open_cache(opts);
  VerdictCache* cp = cache ? &*cache : nullptr;

  // Tasks: one per class, then one absence run per family member.
  std::size_t g666_index = classes.size();
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (detail::is_g666(realize(classes[i]))) g666_index = i;
  const PreparedHost host(g666);
  r.items = detail::run_pool(classes.size() + members.size(), opts.jobs, [&](std::size_t i) {
    if (i < classes.size()) {
      if (i != g666_index) return detail::certify_class(classes[i], Status::IK, opts, cp);
      AuditItem it;
      it.spec = spec_to_string(classes[i]);
      it.expected = "UNKNOWN";
      ClassifyOptions co;
      co.budget = opts.budget;
      co.cache_dir = opts.cache_dir;
      const Verdict v = classify(classes[i], co);
      detail::fill(it, v);
      it.ok = v.status == Status::Unknown;
      it.note = "G666";
      return it;
    }
    const auto [fam, idx] = members[i - classes.size()];
    const FamilyMember& mem = fam->members[static_cast<std::size_t>(idx)];
    AuditItem it;
    it.spec = "G666 vs " + fam->seed_name + " member " + std::to_string(idx) + " (" + std::to_string(mem.graph.order()) +
              " vertices, " + std::to_string(mem.graph.edge_count()) + " edges)";
    it.expected = "absent";
    const MinorResult res = has_minor(mem.graph, host, opts.absence_budget);
    it.status = to_string(res.outcome);
    it.kind = "minor-search";
    it.digest = key_hash(mem.key);
    it.note = std::to_string(res.nodes) + " nodes";
    it.undecided = res.outcome == MinorOutcome::Undecided;
    it.ok = res.outcome == MinorOutcome::Absent;
    return it;
  });
  r.checks.push_back({"class count " + std::to_string(classes.size()) + " == 17", classes.size() == 17});
  r.checks.push_back({"G666 is among the classes", g666_index < classes.size()});
  int with_minor = 0;
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (i != g666_index && r.items[i].ok) ++with_minor;
  r.checks.push_back({std::to_string(with_minor) + " classes besides G666 have witness minors, expected 16", with_minor == 16});
  r.checks.push_back({"G666 checked against all " + std::to_string(members.size()) + " family members", !members.empty()});
  const ListMatch lm = match_listed(6, 6, classes, listed_k66_6());
  detail::describe_match(r, lm, classes);
  if (const int c = lm.class_of_item[10]; c >= 0) {
    const auto& it = r.items[static_cast<std::size_t>(c)];
    r.notes.push_back("listed item 11 is class " + std::to_string(c + 1) + ": " + it.status + " via " + it.kind);
  }
  detail::finish(r);
  return r;
}

inline std::vector<BipartiteSpec> k77_samples(int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<BipartiteSpec> out;
  for (int i = 0; i < count; ++i) out.push_back(sample_spec(7, 7, 10, rng));
  return out;
}

inline AuditReport audit_k77_sample(const AuditOptions& opts = {}) {
  AuditReport r;
  r.name = "k77_sample";
  const auto specs = k77_samples(opts.samples, opts.seed);
  DescentOptions dopt;
  dopt.budget = opts.budget;
  dopt.cache_dir = opts.cache_dir;
  r.items = detail::run_pool(specs.size(), opts.jobs, [&](std::size_t i) {
    AuditItem it;
    it.spec = spec_to_string(specs[i]);
    it.expected = "IK";
    const Verdict v = reduce_to_witness(specs[i], dopt);
    detail::fill(it, v);
    it.ok = v.status == Status::IK && v.certificate.kind == CertificateKind::MinorWitness && replay(realize(specs[i]), v, opts.cache_dir);
    std::ostringstream os;
    for (const auto& st : v.certificate.descent) os << (os.tellp() ? "," : "") << (st.removed.size() == 1 ? "v" : "pair");
    it.note = v.certificate.descent.empty() ? "direct" : "descent " + os.str();
    return it;
  });
  int deg3 = 0, deg3_first = 0, pairs = 0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto d = deficiencies(specs[i]);
    const int mx = std::max(*std::max_element(d.a.begin(), d.a.end()), *std::max_element(d.b.begin(), d.b.end()));
    if (mx >= 3) {
      ++deg3;
      if (r.items[i].note.rfind("descent v", 0) == 0) ++deg3_first;
    }
    if (r.items[i].note.find("pair") != std::string::npos) ++pairs;
  }
  r.notes.push_back(std::to_string(deg3) + " samples have a vertex of deficiency >= 3; " + std::to_string(deg3_first) +
                    " of them start by deleting a single vertex");
  r.notes.push_back(std::to_string(pairs) + " samples use an adjacent-pair deletion");
  r.checks.push_back({std::to_string(specs.size()) + " samples drawn", static_cast<int>(specs.size()) == opts.samples});
  detail::finish(r);
  return r;
}

inline AuditReport audit_recurrence(const AuditOptions& opts = {}) {
  AuditReport r;
  r.name = "recurrence";
  const std::map<int, std::int64_t> expected = {{5, 5}, {6, 7}, {7, 22}, {8, 57}, {9, 127}, {10, 253}};
  for (int n = 5; n <= opts.max_n; ++n) {
    AuditItem it;
    it.spec = "n=" + std::to_string(n);
    try {
      const auto a = recurrence_a(n);
      const auto e = expected.find(n);
      it.expected = e == expected.end() ? "-" : "a=" + std::to_string(e->second);
      it.ok = e == expected.end() || e->second == a;
      it.status = it.ok ? "valid" : "mismatch";
      it.note = "a=" + std::to_string(a) + " C=" + std::to_string(constant_c(n));
    } catch (const RecurrenceError& err) {
      it.status = "overflow";
      it.note = err.what();
    }
    it.kind = "recurrence";
    r.items.push_back(std::move(it));
  }
  for (const auto& c : check_recurrence_chain(opts.max_n, 20)) {
    AuditItem it;
    it.spec = "chain n=" + std::to_string(c.n) + " a=" + std::to_string(c.a) + " " + c.step;
    it.expected = "valid";
    it.status = c.ok ? "valid" : "invalid";
    it.kind = "inequality";
    it.note = c.detail;
    it.ok = c.ok;
    r.items.push_back(std::move(it));
  }
  // C6 against the six-vertex-part bound e >= 4v - 17: the general
  // recurrence rule at n = 6 must agree with the six-part rule.
  bool c6 = constant_c(6) == -17;
  const Rule& six = find_rule("six-part-4v-17");
  const Rule& rec = find_rule("recurrence-4v-cn");
  for (int q = 7; q <= 30; ++q)
    for (int m = 0; m <= 6 * q; ++m)
      if (six.holds(6, q, m) != rec.holds(6, q, m) || six.holds(6, q, m) != (6 * q - m >= 4 * (6 + q) - 17)) c6 = false;
  r.checks.push_back({"C6 = -17 agrees with the six-part bound e >= 4v - 17", c6});
  detail::finish(r);
  return r;
}

/// Looks for K6,6 minus 12 graphs with a 9-vertex K7-family minor and counts
/// how many K6,6 minus 5 classes contain each as a subgraph. Exploratory:
/// candidates are reported, best coverage first, never asserted.
inline AuditReport audit_expansions(const AuditOptions& opts = {}) {
  AuditReport r;
  r.name = "expansions";
  const auto cands = enumerate_classes(6, 6, 12);
  const auto targets = enumerate_classes(6, 6, 5);
  std::vector<Graph> target_graphs;
  for (const auto& t : targets) target_graphs.push_back(realize(t));
  const WitnessSet& ws = witness_set(opts.cache_dir);
  std::vector<int> nine;
  for (int i = 0; i < static_cast<int>(ws.k7_family.size()); ++i)
    if (ws.k7_family.members[static_cast<std::size_t>(i)].graph.order() == 9) nine.push_back(i);
  std::vector<int> coverage(cands.size(), -1);
  auto all = detail::run_pool(cands.size(), opts.jobs, [&](std::size_t i) {
    AuditItem it;
    it.spec = spec_to_string(cands[i]);
    it.expected = "report";
    it.ok = true;
    const Graph g = realize(cands[i]);
    const PreparedHost host(g);
    std::string found;
    for (int idx : nine) {
      const MinorResult res = has_minor(ws.k7_family.members[static_cast<std::size_t>(idx)].graph, host, opts.budget);
      if (res.outcome == MinorOutcome::Found) found += (found.empty() ? "" : ",") + std::to_string(idx);
      if (res.outcome == MinorOutcome::Undecided) it.undecided = true;
    }
    if (found.empty()) return it;
    int covered = 0;
    for (const auto& t : target_graphs)
      if (has_subgraph(g, t)) ++covered;
    coverage[i] = covered;
    it.status = "candidate";
    it.kind = "K7 member " + found;
    it.note = "subgraph of " + std::to_string(covered) + " of " + std::to_string(targets.size()) + " K6,6 minus 5 classes";
    return it;
  });
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (coverage[i] >= 0) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return coverage[x] > coverage[y]; });
  for (std::size_t i : order) r.items.push_back(all[i]);
  for (const auto& it : all)
    if (it.undecided) r.undecided = true;
  r.notes.push_back(std::to_string(cands.size()) + " K6,6 minus 12 classes searched; " + std::to_string(r.items.size()) +
                    " contain a 9-vertex K7-family minor");
  r.notes.push_back("9-vertex K7-family members: " + std::to_string(nine.size()) + " (unlabeled)");
  const auto full = std::count(coverage.begin(), coverage.end(), static_cast<int>(targets.size()));
  r.notes.push_back(std::to_string(full) + " candidates lie in every K6,6 minus 5 class");
  detail::finish(r);
  return r;
}

inline const std::vector<std::string>& audit_names() {
  static const std::vector<std::string> v = {"k55", "k66_5", "k66_6", "k77_sample", "recurrence", "expansions"};
  return v;
}

inline AuditReport run_audit(const std::string& name, const AuditOptions& opts = {}) {
  if (name == "k55") return audit_k55(opts);
  if (name == "k66_5") return audit_k66_5(opts);
  if (name == "k66_6") return audit_k66_6(opts);
  if (name == "k77_sample") return audit_k77_sample(opts);
  if (name == "recurrence") return audit_recurrence(opts);
  if (name == "expansions") return audit_expansions(opts);
  throw std::invalid_argument("unknown audit: " + name);
}

// ---------------------------------------------------------------------------
// Output

inline json to_json(const AuditReport& r) {
  json items = json::array(), checks = json::array();
  for (const auto& it : r.items)
    items.push_back({{"spec", it.spec},   {"expected", it.expected}, {"status", it.status}, {"certificate", it.kind},
                     {"digest", it.digest}, {"elapsedMs", it.elapsed_ms}, {"note", it.note},   {"ok", it.ok},
                     {"undecided", it.undecided}});
  for (const auto& c : r.checks) checks.push_back({{"check", c.what}, {"ok", c.ok}});
  json out = {{"audit", r.name},   {"passed", r.passed}, {"undecided", r.undecided}, {"counts", r.counts},
              {"checks", checks}, {"notes", r.notes},   {"items", items}};
  if (!r.failure.empty()) out["failure"] = r.failure;
  return out;
}

inline std::string to_markdown(const AuditReport& r) {
  std::ostringstream os;
  os << "# Audit " << r.name << "\n\n";
  os << "Result: **" << (r.passed ? "PASS" : "FAIL") << "**";
  if (r.undecided) os << " (some searches hit their budget)";
  os << "\n\n";
  if (!r.failure.empty()) os << "First failure: `" << r.failure << "`\n\n";
  if (!r.checks.empty()) {
    os << "## Checks\n\n";
    for (const auto& c : r.checks) os << "- [" << (c.ok ? "x" : " ") << "] " << c.what << '\n';
    os << '\n';
  }
  if (!r.notes.empty()) {
    os << "## Notes\n\n";
    for (const auto& n : r.notes) os << "- " << n << '\n';
    os << '\n';
  }
  os << "## Counts\n\n";
  for (const auto& [k, v] : r.counts) os << "- " << k << ": " << v << '\n';
  os << "\n## Items\n\n| # | spec | expected | status | certificate | digest | ms | ok | note |\n";
  os << "|---|---|---|---|---|---|---|---|---|\n";
  for (std::size_t i = 0; i < r.items.size(); ++i) {
    const auto& it = r.items[i];
    os << "| " << i + 1 << " | `" << it.spec << "` | " << it.expected << " | " << it.status << " | " << it.kind << " | "
       << it.digest << " | " << static_cast<long long>(it.elapsed_ms) << " | " << (it.ok ? "yes" : "NO") << " | "
       << it.note << " |\n";
  }
  return os.str();
}

inline void write_report(const AuditReport& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream(dir / (r.name + ".md")) << to_markdown(r);
  std::ofstream(dir / (r.name + ".json")) << to_json(r).dump(2) << '\n';
}

}  // namespace ikc
