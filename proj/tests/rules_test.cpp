#include <catch_amalgamated.hpp>

#include "ikc/bipartite.hpp"
#include "ikc/rules.hpp"
#include "support.hpp"

using namespace ikc;

TEST_CASE("recurrence values") {
  CHECK(recurrence_a(5) == 5);
  CHECK(recurrence_a(6) == 7);
  CHECK(recurrence_a(7) == 22);
  CHECK(recurrence_a(8) == 57);
  CHECK(recurrence_a(9) == 127);
  CHECK(recurrence_a(10) == 253);
  CHECK(constant_c(5) == -17);
  CHECK(constant_c(6) == -17);
  CHECK(constant_c(7) == -6);
  CHECK_THROWS_AS(recurrence_a(4), RecurrenceError);
  CHECK_THROWS_AS(constant_c(3), RecurrenceError);
}

TEST_CASE("recurrence against an independent evaluation") {
  // floor(n (a - 1) / (n - 5)) + 1, evaluated by repeated subtraction.
  long long a = 7;
  for (int n = 7; n <= 30; ++n) {
    long long num = n * (a - 1), quotient = 0;
    const long long den = n - 5;
    while (num >= den) {
      num -= den;
      ++quotient;
    }
    a = quotient + 1;
    CHECK(recurrence_a(n) == a);
    CHECK(constant_c(n) == a - 4 * n);
  }
}

TEST_CASE("applicable_rules examples") {
  const auto ids = [](int p, int q, int m, bool conj = false) {
    std::vector<std::string> out;
    for (const Rule* r : applicable_rules(p, q, m, conj)) out.push_back(r->id);
    return out;
  };
  const auto has = [](const std::vector<std::string>& v, const std::string& id) {
    return std::find(v.begin(), v.end(), id) != v.end();
  };
  CHECK(has(ids(7, 7, 10), "k77-minus-10"));
  CHECK(has(ids(4, 100, 0), "small-part"));
  CHECK(has(ids(100, 4, 0), "small-part"));
  const auto six = ids(6, 6, 6);
  CHECK(has(six, "k66-minus-6"));
  CHECK(find_rule("k66-minus-6").condition == RuleCondition::NotG666);
  CHECK(std::string(to_string(RuleCondition::NotG666)) == "requires non-isomorphism to G666");
  CHECK_FALSE(has(ids(5, 5, 3), "conjecture-4v-17"));
  CHECK_FALSE(has(ids(6, 6, 5), "conjecture-4v-17"));
  CHECK(has(ids(6, 6, 5, true), "conjecture-4v-17"));
  CHECK_FALSE(has(ids(6, 6, 6, true), "conjecture-4v-17"));
  CHECK(has(ids(7, 8, 12), "k7n-minus-2n10"));
  CHECK(has(ids(8, 8, 14), "k88-minus-14"));
  CHECK(has(ids(9, 9, 20), "kaa-minus-6a34"));
  CHECK_FALSE(has(ids(9, 9, 21), "kaa-minus-6a34"));
  CHECK(has(ids(7, 22, 3 * 22 - 22), "recurrence-4v-cn"));
  CHECK_FALSE(has(ids(7, 21, 0), "recurrence-4v-cn"));
}

TEST_CASE("rule consistency: no (p, q, m) with p, q <= 12 gets both conclusions") {
  int checked = 0, conflicts = 0;
  for (int p = 0; p <= 12; ++p)
    for (int q = 0; q <= 12; ++q)
      for (int m = 0; m <= p * q; ++m) {
        const auto rules = applicable_rules(p, q, m);
        for (const Rule* a : rules)
          for (const Rule* b : rules)
            if (a->conclusion == Conclusion::IK && b->conclusion == Conclusion::NotIK &&
                !conditions_exclusive(a->condition, b->condition))
              ++conflicts;
        // Derived chains must stay clear of every unconditional NOT_IK rule.
        if (m <= derived_bound(p, q))
          for (const Rule* b : rules)
            if (b->conclusion == Conclusion::NotIK && b->condition == RuleCondition::None) ++conflicts;
        ++checked;
      }
  CHECK(checked > 5000);
  CHECK(conflicts == 0);
}

TEST_CASE("conjecture rule never contradicts proved rules and never enters chains") {
  for (int p = 0; p <= 7; ++p)
    for (int q = 0; q <= 7; ++q)
      for (int m = 0; m <= p * q; ++m) {
        const auto rules = applicable_rules(p, q, m, true);
        const bool conj = std::any_of(rules.begin(), rules.end(), [](const Rule* r) { return r->trust == Trust::Conjecture; });
        if (!conj) continue;
        for (const Rule* r : rules) {
          INFO(p << "," << q << "," << m << " " << r->id);
          CHECK_FALSE((r->conclusion == Conclusion::NotIK && r->condition == RuleCondition::None));
        }
      }
  for (int x = 0; x <= kDerivedLimit; ++x)
    for (int y = 0; y <= kDerivedLimit; ++y)
      for (const auto& s : derivation(x, y)) CHECK(s.rule_id != "conjecture-4v-17");
}

namespace {

// Independent fixed point of base rules and lifts, by linear scans.
std::vector<std::vector<int>> slow_bounds(int limit) {
  std::vector<std::vector<int>> b(static_cast<std::size_t>(limit + 1), std::vector<int>(static_cast<std::size_t>(limit + 1), -1));
  for (int x = 0; x <= limit; ++x)
    for (int y = 0; y <= limit; ++y)
      for (const auto& r : rule_inventory()) {
        if (r.conclusion != Conclusion::IK || r.trust == Trust::Conjecture || r.condition != RuleCondition::None) continue;
        for (int m = 0; m <= x * y; ++m) {
          if (!r.holds(std::min(x, y), std::max(x, y), m)) break;
          b[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = std::max(b[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)], m);
        }
      }
  for (bool changed = true; changed;) {
    changed = false;
    for (int x = 0; x <= limit; ++x)
      for (int y = 0; y <= limit; ++y)
        for (int side = 0; side < 2; ++side) {
          const int fx = side ? x : x - 1, fy = side ? y - 1 : y, part = side ? y : x;
          if (fx < 0 || fy < 0 || part < 2) continue;
          const int base = b[static_cast<std::size_t>(fx)][static_cast<std::size_t>(fy)];
          if (base < 0) continue;
          int best = base;
          for (int k = 1; base + k <= x * y; ++k)
            if ((k - 1) * part < base + k) best = base + k;
          auto& cell = b[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
          if (best > cell) {
            cell = best;
            changed = true;
          }
        }
  }
  return b;
}

}  // namespace

TEST_CASE("derived bounds match an independent fixed point") {
  const int limit = 24;
  const auto slow = slow_bounds(limit);
  for (int x = 0; x <= limit; ++x)
    for (int y = 0; y <= limit; ++y) {
      INFO(x << "," << y);
      CHECK(derived_bound(x, y) == slow[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]);
    }
}

TEST_CASE("derived bounds cover the stated theorems") {
  CHECK(derived_bound(5, 5) >= 2);
  CHECK(derived_bound(6, 5) >= 2);
  CHECK(derived_bound(6, 6) >= 5);
  CHECK(derived_bound(7, 6) >= 7);
  CHECK(derived_bound(7, 7) >= 10);
  CHECK(derived_bound(8, 7) >= 12);
  CHECK(derived_bound(8, 8) >= 14);
  CHECK(derived_bound(9, 9) >= 20);
  CHECK(derived_bound(4, 30) == -1);
  CHECK(derived_bound(5, 5) < 3);
  for (int n = 7; n <= 9; ++n) {
    const int a = static_cast<int>(recurrence_a(n));
    if (a > kDerivedLimit) continue;
    CHECK(derived_bound(n, a) >= (n - 4) * a - a);
  }
}

TEST_CASE("every derivation replays and proves exactly the derived bound") {
  for (int x = 0; x <= kDerivedLimit; ++x)
    for (int y = 0; y <= kDerivedLimit; ++y) {
      const int b = derived_bound(x, y);
      const auto steps = derivation(x, y);
      if (b < 0) {
        CHECK(steps.empty());
        continue;
      }
      const auto proved = check_derivation(steps);
      REQUIRE(proved);
      CHECK((*proved)[0] == x);
      CHECK((*proved)[1] == y);
      CHECK((*proved)[2] == b);
    }
}

TEST_CASE("check_derivation rejects tampered chains") {
  std::vector<ChainStep> steps;
  for (int x = 5; x <= 20 && steps.size() < 2; ++x)
    for (int y = 5; y <= 20 && steps.size() < 2; ++y) steps = derivation(x, y);
  REQUIRE(steps.size() >= 2);
  auto inflated = steps;
  inflated.back().m += 1;
  inflated.back().k += 1;
  CHECK_FALSE(check_derivation(inflated));
  auto conj = steps;
  conj.front().rule_id = "conjecture-4v-17";
  CHECK_FALSE(check_derivation(conj));
  auto skipped = steps;
  skipped.erase(skipped.begin());
  CHECK_FALSE(check_derivation(skipped));
  std::vector<ChainStep> g553 = {{ChainStep::Kind::Rule, "k55-minus-3-g553", 'a', 0, 0, 0, 0, 5, 5, 3}};
  CHECK_FALSE(check_derivation(g553));
}

TEST_CASE("unconditional IK rules are monotone in m") {
  for (int p = 0; p <= 12; ++p)
    for (int q = 0; q <= 12; ++q)
      for (const auto& r : rule_inventory()) {
        if (r.conclusion != Conclusion::IK || r.condition != RuleCondition::None) continue;
        for (int m = 1; m <= p * q; ++m)
          if (r.holds(std::min(p, q), std::max(p, q), m)) CHECK(r.holds(std::min(p, q), std::max(p, q), m - 1));
      }
}

TEST_CASE("php_reduce examples") {
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const BipartiteSpec s = sample_spec(8, 7, 12, rng);
    const BipartiteSpec r = php_reduce(s, 2);
    CHECK(r.p == 7);
    CHECK(r.q == 7);
    CHECK(r.m() <= 10);
  }
  for (int m = 0; m <= 10; ++m) {
    const BipartiteSpec s = sample_spec(6, 5, m + 1, rng);
    const BipartiteSpec r = php_reduce(s, 1);
    CHECK(r.p == 5);
    CHECK(r.m() <= m);
  }
  CHECK_THROWS_AS(php_reduce(make_spec(1, 5, {{1, 1}}), 1), PigeonholeError);
  CHECK_THROWS_AS(php_reduce(make_spec(5, 5, {{1, 1}, {2, 2}}), 2), PigeonholeError);
  CHECK_THROWS_AS(php_reduce(make_spec(5, 5, {}), 1), PigeonholeError);
}

TEST_CASE("php_reduce pigeonhole property on 500 random valid specs") {
  Rng rng(500);
  int trials = 0;
  while (trials < 500) {
    const int p = rng.between(2, 12), q = rng.between(1, 12);
    const int m = rng.between(1, p * q);
    const BipartiteSpec s = sample_spec(p, q, m, rng);
    int k = 1;
    while (pigeonhole_holds(p, m, k + 1)) ++k;
    k = rng.between(1, k);
    REQUIRE(pigeonhole_holds(p, m, k));
    const auto d = deficiencies(s);
    const int worst = *std::max_element(d.a.begin(), d.a.end());
    const BipartiteSpec r = php_reduce(s, k);
    CHECK(worst >= k);
    CHECK(r.p == p - 1);
    CHECK(r.q == q);
    CHECK(r.m() == m - worst);
    CHECK(r.m() <= m - k);
    ++trials;
  }
}

TEST_CASE("max_lift is the largest valid k") {
  for (int part = 2; part <= 30; ++part)
    for (int m = 0; m <= 60; ++m) {
      const int k = max_lift(part, m);
      CHECK(pigeonhole_holds(part, m + k, k));
      CHECK_FALSE(pigeonhole_holds(part, m + k + 1, k + 1));
    }
}

TEST_CASE("recurrence chain checks") {
  const auto checks = check_recurrence_chain(12, 20);
  CHECK(!checks.empty());
  for (const auto& c : checks) {
    INFO(c.n << " " << c.a << " " << c.step << " " << c.detail);
    CHECK(c.ok);
  }
  // Same inequalities, recomputed for n = 7, a = 22..42.
  const long long an = 22;
  for (long long a = 22; a <= 42; ++a) {
    const long long m = 3 * a - an, k = 3;
    CHECK((k - 1) * (a + 1) < m + k);
  }
  int grow = 0;
  for (const auto& c : checks) grow += c.n == 7 && c.step == "grow";
  CHECK(grow == 20);
}
