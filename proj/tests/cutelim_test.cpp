#include <algorithm>
#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "mixed/cutelim.hpp"
#include "mixed/error.hpp"
#include "mixed/oracle.hpp"

using namespace mixed;
using mixed::testing::F;

namespace {

const PPolicy kCv = PPolicy::classical_vars();
const PPolicy kBot = PPolicy::bot_only();

Derivation ax(const char* a) { return make_ax(F(a)); }
Derivation der(Derivation d) {
  Formula a = *d.conclusion().stoup;
  return make(Rule::der, a, {std::move(d)});
}
Derivation mk(Rule r, const char* a, std::vector<Derivation> prem) { return make(r, F(a), std::move(prem)); }

Derivation pp() { return mk(Rule::imp1_r, "p -> p", {ax("p")}); }
Derivation use_pp() { return mk(Rule::imp1_l, "p -> p", {ax("p"), ax("p")}); }

// For a total order, the multiset extension agrees with comparing the
// descending-sorted sequences lexicographically.
bool dm_oracle(std::vector<Degree> m, std::vector<Degree> n) {
  std::sort(m.rbegin(), m.rend());
  std::sort(n.rbegin(), n.rend());
  return std::lexicographical_compare(n.begin(), n.end(), m.begin(), m.end());
}

std::size_t count_cuts(const Derivation& d) {
  std::size_t n = 0;
  for_each_node(d, [&](const Derivation& x, const TreePath&) { n += is_cut(x.rule()); });
  return n;
}

}  // namespace

TEST_CASE("degree of a cut2 on a variable") {
  Derivation d = mk(Rule::cut2, "x_c", {der(ax("x_c")), der(ax("x_c"))});
  CHECK(cut_degree(d, {}) == Degree{1, 3});
}

TEST_CASE("degree of a key-case cut") {
  Derivation l = mk(Rule::imp1_r, "p -> q", {mk(Rule::w_l, "p", {ax("q")})});
  Derivation r = mk(Rule::imp1_l, "p -> q", {ax("q"), ax("p")});
  CHECK(cut_degree(make_cut1(l, r), {}) == Degree{3, 0});
}

TEST_CASE("degree when the left premise ends in a structural rule") {
  Derivation l = mk(Rule::w_l, "q", {mk(Rule::imp2_r, "x_c -> x_c", {der(ax("x_c"))})});
  Derivation r = mk(Rule::w_l, "x_c -> x_c", {ax("p")});
  CHECK(cut_degree(make_cut1(l, r), {}) == Degree{3, 2});
  CHECK_THROWS_AS(cut_degree(l, {}), PreconditionError);
}

TEST_CASE("k = 1 when only the left side is principal") {
  CHECK(cut_degree(make_cut1(pp(), mk(Rule::w_l, "p -> p", {ax("q")})), {}) == Degree{3, 1});
}

TEST_CASE("derivation degree") {
  CHECK(derivation_degree(ax("p")).empty());
  Derivation b = mk(Rule::cut2, "bot", {mk(Rule::w_r, "bot", {ax("p")}), make_bot()});
  CHECK(derivation_degree(b) == DerivationDegree{Degree{1, 3}});
  Derivation c = make_cut1(ax("p"), ax("p"));
  Derivation two = mk(Rule::and1_r, "p & p", {c, c});
  DerivationDegree m = derivation_degree(two);
  CHECK(m.size() == 2);
  CHECK(m.count(Degree{1, 2}) == 2);
}

TEST_CASE("multiset order examples") {
  using M = DerivationDegree;
  CHECK(multiset_greater(M{Degree{3, 0}}, M{Degree{1, 2}, Degree{1, 2}, Degree{2, 3}}));
  CHECK(multiset_greater(M{Degree{1, 1}}, M{}));
  CHECK_FALSE(multiset_greater(M{}, M{}));
  CHECK_FALSE(multiset_greater(M{Degree{1, 1}}, M{Degree{1, 1}}));
  CHECK(multiset_greater(M{Degree{2, 1}, Degree{1, 0}}, M{Degree{2, 0}, Degree{1, 3}, Degree{1, 3}}));
  CHECK_FALSE(multiset_greater(M{Degree{2, 0}}, M{Degree{2, 1}}));
}

TEST_CASE("property: multiset order matches the sorted-sequence oracle") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> len(0, 4), l(1, 3), k(0, 3);
  for (int i = 0; i < 20000; ++i) {
    std::vector<Degree> a, b;
    for (int j = len(rng); j > 0; --j) a.push_back({static_cast<std::size_t>(l(rng)), k(rng)});
    for (int j = len(rng); j > 0; --j) b.push_back({static_cast<std::size_t>(l(rng)), k(rng)});
    REQUIRE(multiset_greater(DerivationDegree(a), DerivationDegree(b)) == dm_oracle(a, b));
  }
}

TEST_CASE("key case table") {
  const std::set<std::pair<Rule, Rule>> expected = {
      {Rule::and1_r, Rule::and1_l}, {Rule::and1_r, Rule::and2_l}, {Rule::and2_r, Rule::and2_l},
      {Rule::and3_r, Rule::and2_l}, {Rule::and4_r, Rule::and2_l}, {Rule::or1_r, Rule::or1_l},
      {Rule::or1_r, Rule::or2_l},   {Rule::or2_r, Rule::or1_l},   {Rule::or2_r, Rule::or2_l},
      {Rule::or3_r, Rule::or2_l},   {Rule::or4_r, Rule::or2_l},   {Rule::imp1_r, Rule::imp1_l},
      {Rule::imp1_r, Rule::imp2_l}, {Rule::imp1_r, Rule::imp3_l}, {Rule::imp2_r, Rule::imp2_l},
      {Rule::imp2_r, Rule::imp3_l},
  };
  for (Rule a : all_rules())
    for (Rule b : all_rules()) {
      CAPTURE(rule_name(a));
      CAPTURE(rule_name(b));
      CHECK(key_case_compatible(a, b) == expected.contains({a, b}));
    }
}

TEST_CASE("topmost cut is the leftmost one in post-order") {
  Derivation inner_l = make_cut1(ax("p"), ax("p"));
  Derivation inner_r = make_cut1(ax("q"), ax("q"));
  Derivation d = mk(Rule::and1_r, "p & q", {inner_l, inner_r});
  CHECK(find_topmost_cut(d) == TreePath{0});
  Derivation outer = make_cut1(pp(), make_cut1(mk(Rule::w_l, "p -> p", {ax("q")}), mk(Rule::w_l, "q", {ax("q")})));
  CHECK(find_topmost_cut(outer) == TreePath{1});
  CHECK_FALSE(find_topmost_cut(ax("p")).has_value());
}

TEST_CASE("reduce_once: key case on p -> p leaves cuts on p") {
  Derivation d = make_cut1(pp(), use_pp());
  Derivation r = reduce_once(d, kCv);
  CHECK(r.conclusion() == d.conclusion());
  CHECK(check_derivation(r, kCv).ok);
  DerivationDegree m = derivation_degree(r);
  CHECK_FALSE(m.empty());
  for (const Degree& g : m) CHECK(g.l == 1);
}

TEST_CASE("reduce_once: cut2 against a weakened body formula disappears") {
  Derivation l = mk(Rule::w_r, "x_c", {ax("p")});
  Derivation d = mk(Rule::cut2, "x_c", {l, der(ax("x_c"))});
  Derivation r = reduce_once(d, kCv);
  CHECK(is_cut_free(r));
  CHECK(check_derivation(r, kCv).ok);
  CHECK(r.conclusion() == d.conclusion());
}

TEST_CASE("reduce_once: cut against an axiom leaves no cut") {
  Derivation d = make_cut1(pp(), ax("p -> p"));
  Derivation r = reduce_once(d, kCv);
  CHECK(is_cut_free(r));
  CHECK(r == pp());
  Derivation e = make_cut1(ax("p -> p"), use_pp());
  CHECK(reduce_once(e, kCv) == use_pp());
}

TEST_CASE("reduce_once preconditions") {
  CHECK_THROWS_AS(reduce_once(ax("p"), kCv), PreconditionError);
  Derivation bad(parse_sequent("p |- ; q"), Rule::cut1, {ax("p"), ax("p")});
  CHECK_THROWS_AS(reduce_once(bad, kCv), PreconditionError);
}

TEST_CASE("normalize leaves cut-free input unchanged") {
  for (const auto& np : mixed::testing::fixture_corpus())
    if (is_cut_free(np.proof)) CHECK(normalize(np.proof, np.policy) == np.proof);
}

TEST_CASE("spurious cut on |- ; p -> p") {
  Derivation d = mk(Rule::imp1_r, "p -> p", {make_cut1(ax("p"), ax("p"))});
  Derivation n = normalize(d, kBot);
  CHECK(n == pp());
  auto found = prove_bounded(parse_sequent("|- ; p -> p"), kBot, SearchConfig{3, 2});
  REQUIRE(found.has_value());
  CHECK(*found == n);
  CHECK(n.node_count() == 2);
}

TEST_CASE("step budget") {
  Derivation d = make_cut1(make_cut1(pp(), mk(Rule::w_l, "p -> p", {pp()})), use_pp());
  NormalizeOptions opts;
  opts.step_budget = 1;
  CHECK_THROWS_AS(normalize(d, kCv, opts), StepBudgetExceeded);
}

TEST_CASE("cut corpus: classes, descent, validity, conclusion") {
  std::set<int> ks;
  for (const auto& c : mixed::testing::cut_corpus()) {
    CAPTURE(c.name);
    REQUIRE(check_derivation(c.proof, c.policy).ok);
    auto path = find_topmost_cut(c.proof);
    REQUIRE(path.has_value());
    Degree g = cut_degree(c.proof, *path);
    CHECK(g.k == c.expected_k);
    ks.insert(g.k);
    if (g.k == 0) {
      const Derivation& cut = node_at(c.proof, *path);
      CHECK(key_case_compatible(cut.premise(0).rule(), cut.premise(1).rule()));
    }
    NormalizeOptions opts;
    std::size_t steps = 0;
    opts.trace = [&](const ReductionStep& s) {
      ++steps;
      CHECK(multiset_greater(s.before, s.after));
    };
    Derivation n = normalize(c.proof, c.policy, opts);
    CHECK(steps >= count_cuts(c.proof));
    CHECK(is_cut_free(n));
    CHECK(n.conclusion() == c.proof.conclusion());
    CHECK(check_derivation(n, c.policy).ok);
    CHECK(verify_subformula_property(n));
  }
  CHECK(ks == std::set<int>{0, 1, 2, 3});
}

TEST_CASE("property: random cut proofs normalize with strict descent") {
  std::mt19937 rng(21);
  auto proofs = mixed::testing::random_cut_proofs(rng, 120);
  CHECK(proofs.size() == 120);
  for (const auto& np : proofs) {
    CAPTURE(print_proof(np.proof));
    REQUIRE(check_derivation(np.proof, np.policy).ok);
    Derivation cur = np.proof;
    while (!is_cut_free(cur)) {
      Derivation next = reduce_once(cur, np.policy);
      REQUIRE(multiset_greater(derivation_degree(cur), derivation_degree(next)));
      REQUIRE(next.conclusion() == cur.conclusion());
      REQUIRE(check_derivation(next, np.policy).ok);
      cur = next;
    }
    CHECK(normalize(np.proof, np.policy) == cur);
    CHECK(verify_subformula_property(cur));
  }
}

TEST_CASE("subformula property checks") {
  CHECK(verify_subformula_property(ax("p & q")));
  // A weakened formula lands in the root, so it is a subformula of it.
  CHECK(verify_subformula_property(mk(Rule::w_l, "r -> r", {ax("p")})));
  CHECK_THROWS_AS(verify_subformula_property(make_cut1(ax("p"), ax("p"))), PreconditionError);
  // An ill-formed tree with an alien formula above the root.
  Derivation alien(parse_sequent("p |- ; p"), Rule::c_l, {Derivation(parse_sequent("p, r |- ; p"), Rule::ax, {})});
  CHECK_FALSE(verify_subformula_property(alien));
}

TEST_CASE("disjunction witness") {
  SUBCASE("stoup left") {
    Derivation d = mk(Rule::or1_r, "(p -> p) | q", {pp()});
    Witness w = disjunction_witness(d, kBot);
    CHECK(w.side == Witness::Side::StoupLeft);
    CHECK(w.proof == pp());
  }
  SUBCASE("stoup right") {
    Derivation d = mk(Rule::or2_r, "q | (p -> p)", {pp()});
    CHECK(disjunction_witness(d, kBot).side == Witness::Side::StoupRight);
  }
  SUBCASE("body left") {
    Derivation xx = der(mk(Rule::imp2_r, "x_c -> x_c", {der(ax("x_c"))}));
    Derivation d = mk(Rule::or3_r, "(x_c -> x_c) | y_c", {xx});
    Witness w = disjunction_witness(d, kCv);
    CHECK(w.side == Witness::Side::BodyLeft);
    CHECK(w.proof.conclusion() == parse_sequent("|- x_c -> x_c ;"));
    CHECK(witness_side_name(w.side) == "BodyLeft");
  }
  SUBCASE("errors") {
    Derivation body = mk(Rule::w_r, "x_c", {mk(Rule::or1_r, "(p -> p) | q", {pp()})});
    CHECK_THROWS_AS(disjunction_witness(body, kCv), PreconditionError);
    CHECK_THROWS_AS(disjunction_witness(pp(), kCv), PreconditionError);
    Derivation cut = mk(Rule::or1_r, "(p -> p) | q", {make_cut1(pp(), ax("p -> p"))});
    CHECK_THROWS_AS(disjunction_witness(cut, kCv), PreconditionError);
  }
}
