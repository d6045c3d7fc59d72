#include <random>
#include <set>

#include "corpus.hpp"
#include "doctest.h"
#include "mixed/calculus.hpp"
#include "mixed/embeddings.hpp"
#include "mixed/error.hpp"
#include "mixed/oracle.hpp"

using namespace mixed;
using mixed::testing::F;

namespace {

const PPolicy kCv = PPolicy::classical_vars();
const PPolicy kBot = PPolicy::bot_only();

PSequent S(const char* s) { return parse_sequent(s); }

Derivation node(const char* seq, Rule r, std::vector<Derivation> prem = {}) {
  return Derivation(S(seq), r, std::move(prem));
}

bool mentions(const CheckReport& r, const std::string& text) {
  for (const auto& f : r.failures)
    if (f.message.find(text) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("rule tags and arities") {
  std::set<std::string_view> names;
  for (Rule r : all_rules()) {
    names.insert(rule_name(r));
    CHECK(rule_from_name(rule_name(r)) == r);
  }
  CHECK(names.size() == kRuleCount);
  CHECK_FALSE(rule_from_name("exchange").has_value());
  for (Rule r : {Rule::ax, Rule::zero, Rule::bot}) CHECK(rule_arity(r) == 0);
  for (Rule r : {Rule::der, Rule::c_l, Rule::c_r, Rule::w_l, Rule::w_r, Rule::and1_l, Rule::and2_l, Rule::or1_r,
                 Rule::or2_r, Rule::or3_r, Rule::or4_r, Rule::imp1_r, Rule::imp2_r})
    CHECK(rule_arity(r) == 1);
  for (Rule r : {Rule::cut1, Rule::cut2, Rule::and1_r, Rule::and2_r, Rule::and3_r, Rule::and4_r, Rule::or1_l,
                 Rule::or2_l, Rule::imp1_l, Rule::imp2_l, Rule::imp3_l})
    CHECK(rule_arity(r) == 2);
}

TEST_CASE("sequent text") {
  PSequent s = S("p, q |- x_c ; r");
  CHECK(s.antecedent == FormulaBag{F("p"), F("q")});
  CHECK(s.body == FormulaBag{F("x_c")});
  CHECK(s.stoup == F("r"));
  CHECK(print_sequent(s) == "p, q |- x_c ; r");
  PSequent e = S("|- ;");
  CHECK(e.antecedent.empty());
  CHECK(e.body.empty());
  CHECK_FALSE(e.stoup.has_value());
  CHECK_THROWS_AS(S("p |- ; q, r"), ParseError);
  CHECK_THROWS_AS(S("p ; q"), ParseError);
}

TEST_CASE("axiom under any policy") {
  Derivation d = node("x_c |- ; x_c", Rule::ax);
  for (const PPolicy& p : {kCv, kBot, PPolicy::all()}) CHECK(check_derivation(d, p).ok);
  CHECK(conclusion(make_ax(F("p & q"))) == S("p & q |- ; p & q"));
}

TEST_CASE("der needs its formula in P") {
  Derivation d = node("|- p ;", Rule::der, {node("|- ; p", Rule::ax)});
  CheckReport r = check_derivation(d, kBot);
  CHECK_FALSE(r.ok);
  // Body well-formedness fails too: p is not in P.
  CHECK(mentions(r, "A in P"));
  Derivation ok = make(Rule::der, F("bot"), {make_ax(F("bot"))});
  CHECK(check_derivation(ok, kBot).ok);
}

TEST_CASE("conclusions of simple nodes") {
  Derivation d = make(Rule::imp1_r, F("p -> p"), {make_ax(F("p"))});
  CHECK(conclusion(d) == S("|- ; p -> p"));
  PSequent before = d.conclusion();
  (void)check_derivation(d, kBot);
  CHECK(d.conclusion() == before);
}

TEST_CASE("Peirce's law via the LK embedding") {
  Formula peirce = F("((x_c -> y_c) -> x_c) -> x_c");
  auto lk = lk_decide(LKSequent{{}, FormulaBag{peirce}});
  REQUIRE(lk.has_value());
  Derivation d = lk_to_mlp(*lk, kCv, subformulas(peirce));
  CHECK(d.conclusion() == S("|- ((x_c -> y_c) -> x_c) -> x_c ;"));
  CHECK(check_derivation(d, kCv).ok);
}

TEST_CASE("cut freeness") {
  CHECK(is_cut_free(make_ax(F("p"))));
  Derivation c2 = make(Rule::cut2, F("x_c"), {make(Rule::der, F("x_c"), {make_ax(F("x_c"))}),
                                              make(Rule::der, F("x_c"), {make_ax(F("x_c"))})});
  CHECK_FALSE(is_cut_free(c2));
  CHECK_FALSE(is_cut_free(make(Rule::w_l, F("q"), {c2})));
}

TEST_CASE("side conditions") {
  SUBCASE("and1_l components outside P") {
    Derivation d = make(Rule::and1_l, F("x_c & q"), {make(Rule::w_l, F("q"), {make_ax(F("x_c"))})});
    CHECK(mentions(check_derivation(d, kCv), "A not in P"));
    CHECK(check_derivation(d, kBot).ok);
  }
  SUBCASE("or1_l components outside P") {
    Derivation d = make(Rule::or1_l, F("x_c | p"), {make(Rule::or1_r, F("x_c | p"), {make_ax(F("x_c"))}),
                                                   make(Rule::or2_r, F("x_c | p"), {make_ax(F("p"))})});
    CHECK_FALSE(check_derivation(d, kCv).ok);
    CHECK(check_derivation(d, kBot).ok);
  }
  SUBCASE("imp1_l consequent outside P") {
    Derivation d = make(Rule::imp1_l, F("p -> y_c"), {make_ax(F("y_c")), make_ax(F("p"))});
    CHECK(mentions(check_derivation(d, kCv), "B not in P"));
    CHECK(check_derivation(d, kBot).ok);
  }
  SUBCASE("zero needs its body in P") {
    Derivation d = make_zero(S("0 |- p ; q"));
    CHECK_FALSE(check_derivation(d, kCv).ok);
    CHECK(check_derivation(d, PPolicy::all()).ok);
    CHECK(check_derivation(make_zero(S("0, r |- x_c ;")), kCv).ok);
  }
  SUBCASE("w_r needs its formula in P") {
    Derivation d = make(Rule::w_r, F("p"), {make_ax(F("q"))});
    CHECK_FALSE(check_derivation(d, kCv).ok);
    CHECK(check_derivation(d, PPolicy::all()).ok);
  }
}

TEST_CASE("stoup occupancy") {
  // and1_l displays C, so an empty stoup is rejected; and2_l is the empty case.
  Derivation prem = make(Rule::w_l, F("y_c"), {make(Rule::der, F("x_c"), {make_ax(F("x_c"))})});
  CHECK_THROWS_AS(make(Rule::and1_l, F("x_c & y_c"), {prem}), PreconditionError);
  CHECK(check_derivation(make(Rule::and2_l, F("x_c & y_c"), {prem}), kCv).ok);
  Derivation wrong = Derivation(S("x_c & y_c |- x_c ;"), Rule::and1_l, {prem});
  CHECK_FALSE(check_derivation(wrong, kCv).ok);
  // cut2 accepts either stoup on the left.
  Derivation l = make(Rule::w_r, F("x_c"), {make_ax(F("p"))});
  Derivation r = make(Rule::der, F("x_c"), {make_ax(F("x_c"))});
  CHECK(check_derivation(make(Rule::cut2, F("x_c"), {l, r}), kCv).ok);
}

TEST_CASE("arity mismatch is reported") {
  Derivation d = Derivation(S("p |- ; p"), Rule::w_l, {});
  CheckReport r = check_derivation(d, kCv);
  CHECK_FALSE(r.ok);
  CHECK(mentions(r, "premise"));
}

TEST_CASE("failures carry tree paths") {
  Derivation bad = node("p, q |- ; p", Rule::ax);
  Derivation d = make(Rule::imp1_r, F("q -> p"), {bad});
  CheckReport r = check_derivation(d, kCv);
  REQUIRE_FALSE(r.ok);
  CHECK(r.failures.front().path == "root.0");
  CHECK(path_string({}) == "root");
  CHECK(path_string({1, 0}) == "root.1.0");
}

TEST_CASE("principal search without annotations") {
  // c_l on p with q present; the checker has to find which formula was contracted.
  Derivation d = node("p, q |- ; p", Rule::c_l, {node("p, p, q |- ; p", Rule::w_l, {node("p, q |- ; p", Rule::w_l,
                                                                                           {node("p |- ; p", Rule::ax)})})});
  CHECK(check_derivation(d, kCv).ok);
  CHECK(resolve_principal(d) == F("p"));
  Derivation a = annotate(d, kCv);
  CHECK(a.principal() == F("p"));
  CHECK(a.premise(0).principal().has_value());
  // A wrong annotation is rejected.
  Derivation wrong(S("p, q |- ; p"), Rule::c_l, d.premises(), F("q"));
  CHECK_FALSE(check_derivation(wrong, kCv).ok);
  CHECK_THROWS_AS(annotate(wrong, kCv), PreconditionError);
}

TEST_CASE("proof file round trip") {
  const char* text = R"((imp1_l "p -> q, p |- ; q"
  ; comment
  (ax "q |- ; q")
  (ax "p |- ; p" :principal "p")))";
  Derivation d = parse_proof(text);
  CHECK(d.rule() == Rule::imp1_l);
  CHECK(check_derivation(d, kCv).ok);
  CHECK(parse_proof(print_proof(d)) == d);
  CHECK_THROWS_AS(parse_proof("(nosuchrule \"p |- ; p\")"), ParseError);
  CHECK_THROWS_AS(parse_proof("(ax \"p |- ; p\""), ParseError);
  CHECK_THROWS_AS(parse_proof("(ax \"p |- ; p\" :principal \"p &\")"), ParseError);
}

TEST_CASE("node_at and replace_at") {
  Derivation d = make(Rule::imp1_l, F("p -> q"), {make_ax(F("q")), make_ax(F("p"))});
  CHECK(node_at(d, {1}).conclusion() == S("p |- ; p"));
  Derivation e = replace_at(d, {1}, make(Rule::c_l, F("p"), {make(Rule::w_l, F("p"), {make_ax(F("p"))})}));
  CHECK(e.conclusion() == d.conclusion());
  CHECK(check_derivation(e, kCv).ok);
  CHECK(e.node_count() == d.node_count() + 2);
  CHECK(e.height() == 4);
}

TEST_CASE("weaken_all and contract_all") {
  Derivation d = weaken_all(make_ax(F("p")), FormulaBag{F("q"), F("r")}, FormulaBag{F("x_c")});
  CHECK(d.conclusion() == S("p, q, r |- x_c ; p"));
  Derivation twice = weaken_all(d, FormulaBag{F("q")}, FormulaBag{F("x_c")});
  Derivation c = contract_all(twice, FormulaBag{F("q")}, FormulaBag{F("x_c")});
  CHECK(c.conclusion() == d.conclusion());
  CHECK(check_derivation(c, kCv).ok);
}

TEST_CASE("fixture corpus: every rule, every fixture valid, every deletion rejected") {
  std::set<Rule> used;
  std::size_t mutations = 0;
  for (const auto& np : mixed::testing::fixture_corpus()) {
    CAPTURE(np.name);
    for_each_node(np.proof, [&](const Derivation& n, const TreePath&) { used.insert(n.rule()); });
    CHECK(check_derivation(np.proof, np.policy).ok);
    CHECK(parse_proof(print_proof(np.proof)) == np.proof);
    for (const Derivation& m : mixed::testing::single_deletions(np.proof)) {
      if (np.proof.rule() == Rule::zero && m.conclusion().antecedent.contains(Formula::zero())) continue;
      ++mutations;
      CHECK_FALSE(check_derivation(m, np.policy).ok);
    }
  }
  CHECK(used.size() == kRuleCount);
  CHECK(mutations >= 27);
}

TEST_CASE("property: oracle proofs pass the checker and survive printing") {
  std::mt19937 rng(11);
  auto proofs = mixed::testing::random_proofs(rng, 150);
  CHECK(proofs.size() == 150);
  for (const auto& np : proofs) {
    CheckReport r = check_derivation(np.proof, np.policy);
    REQUIRE_MESSAGE(r.ok, print_proof(np.proof) << r.summary());
    Derivation back = parse_proof(print_proof(np.proof));
    REQUIRE(back == np.proof);
    // Annotations are optional: stripping them keeps the proof checkable.
    ProofText t = proof_to_text(np.proof);
    std::function<void(ProofText&)> strip = [&](ProofText& p) {
      p.principal.reset();
      for (ProofText& q : p.premises) strip(q);
    };
    strip(t);
    REQUIRE(check_derivation(proof_from_text(t), np.policy).ok);
  }
}

TEST_CASE("property: valid nodes keep bodies in P") {
  std::mt19937 rng(12);
  for (const auto& np : mixed::testing::random_proofs(rng, 100)) {
    for_each_node(np.proof, [&](const Derivation& n, const TreePath&) {
      for (const Formula& f : n.conclusion().body) REQUIRE(np.policy.contains(f));
    });
  }
}
