#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "mixed/error.hpp"
#include "mixed/linear.hpp"
#include "mixed/oracle.hpp"

using namespace mixed;
using mixed::testing::F;

namespace {

const PPolicy kCv = PPolicy::classical_vars();
const PPolicy kBot = PPolicy::bot_only();

LLFormula L(const char* s) { return parse_ll_formula(s); }
LLSequent LS(const char* s) { return parse_ll_sequent(s); }

LLDerivation llax(const char* a) { return ll_make(LLRule::ll_ax, L(a), {}); }
LLDerivation llmk(LLRule r, const char* a, std::vector<LLDerivation> p) { return ll_make(r, L(a), std::move(p)); }

bool mentions(const CheckReport& r, const std::string& text) {
  for (const auto& f : r.failures)
    if (f.message.find(text) != std::string::npos) return true;
  return false;
}

std::size_t count_rule(const LLDerivation& d, LLRule r) {
  std::size_t n = d.rule() == r;
  for (const LLDerivation& p : d.premises()) n += count_rule(p, r);
  return n;
}

bool promoted_shape(const LLFormula& f) {
  switch (f.kind()) {
    case LLFormula::Kind::Zero:
    case LLFormula::Kind::Bang: return true;
    case LLFormula::Kind::Tensor:
    case LLFormula::Kind::Plus: return f.left().is(LLFormula::Kind::Bang) && f.right().is(LLFormula::Kind::Bang);
    default: return false;
  }
}

}  // namespace

TEST_CASE("LL formula syntax") {
  CHECK(L("!p * !q") == LLFormula::tensor(LLFormula::bang(LLFormula::atom("p")), LLFormula::bang(LLFormula::atom("q"))));
  CHECK(L("a * b + c") == LLFormula::plus(L("a * b"), L("c")));
  CHECK(L("a -o b -o c") == LLFormula::lolli(L("a"), L("b -o c")));
  CHECK(L("a + b -o c") == LLFormula::lolli(L("a + b"), L("c")));
  CHECK(L("?!x_c").is(LLFormula::Kind::Quest));
  CHECK(L("0").is(LLFormula::Kind::Zero));
  for (const char* s : {"!(!p -o ?!q)", "(!p + !q) * 0", "?(!a * !b)", "a -o (b -o c)"})
    CHECK(parse_ll_formula(print_ll_formula(L(s))) == L(s));
  CHECK_THROWS_AS(parse_ll_formula("a -o"), ParseError);
  CHECK(parse_ll_sequent(print_ll_sequent(LS("!p, 0 |- ?!q"))) == LS("!p, 0 |- ?!q"));
}

TEST_CASE("t and b") {
  CHECK(t_translate(F("x_c"), kCv) == L("!x_c"));
  CHECK(t_translate(F("bot"), kCv) == L("0"));
  CHECK(t_translate(F("0"), kBot) == L("0"));
  CHECK(t_translate(F("p & q"), kBot) == L("!(!p) * !(!q)"));
  CHECK(t_translate(F("p | x_c"), kCv) == L("!!p + !?!x_c"));
  CHECK(t_translate(F("p -> x_c"), kCv) == L("!(!p -o ?!x_c)"));
  CHECK(b_translate(F("p"), kBot) == L("!p"));
  CHECK(b_translate(F("x_c"), kCv) == L("?!x_c"));
  CHECK(b_translate(F("bot"), kBot) == L("?0"));
  CHECK(translate_sequent(parse_sequent("p, bot |- x_c ; q"), kCv) == LS("!p, 0 |- ?!x_c, !q"));
}

TEST_CASE("property: t lands in promotable shapes and b is t or ?t") {
  std::mt19937 rng(41);
  std::vector<Formula> atoms{F("p"), F("q"), F("x_c"), F("bot"), F("0")};
  for (int i = 0; i < 3000; ++i) {
    Formula a = mixed::testing::random_formula(rng, atoms, 4);
    for (const PPolicy& p : {kBot, kCv, PPolicy::all()}) {
      LLFormula t = t_translate(a, p);
      REQUIRE(promoted_shape(t));
      REQUIRE(is_bang_like(t));
      LLFormula b = b_translate(a, p);
      REQUIRE((b == t || b == LLFormula::quest(t)));
      REQUIRE((b == LLFormula::quest(t)) == p.contains(a));
    }
  }
}

TEST_CASE("LL checker basics") {
  CHECK(check_ll(llax("!p")).ok);
  CHECK(llax("!p").conclusion() == LS("!p |- !p"));
  // Promotion with a tensor in the left context.
  LLDerivation in = llmk(LLRule::tensor_l, "!a * !b", {ll_make_zero(LS("0, !a, !b |- q"))});
  LLDerivation bad(LS("!a * !b, 0 |- !q"), LLRule::bang_r, {in}, L("!q"));
  CheckReport r = check_ll(bad);
  CHECK_FALSE(r.ok);
  CHECK(mentions(r, "promotion context"));
  // quest_l with a non-? formula on the right.
  LLDerivation q = llmk(LLRule::bang_w, "!p", {llax("q")});
  LLDerivation bad_q(LS("!p, ?q |- q"), LLRule::quest_l, {q}, L("?q"));
  CHECK(mentions(check_ll(bad_q), "promotion context"));
  CHECK(ll_rule_from_name("quest_l") == LLRule::quest_l);
  CHECK_FALSE(ll_rule_from_name("ax").has_value());
}

TEST_CASE("LL proof files") {
  LLDerivation d = translate_derivation(mixed::testing::imp3_l_fixture(), kCv);
  CHECK(parse_ll_proof(print_ll_proof(d)) == d);
  CHECK(check_ll(parse_ll_proof(print_ll_proof(d))).ok);
}

TEST_CASE("displayed imp3_l derivation checks") {
  // t(G), !(t(A) -o b(B)), b(A) |- ?t(D) with A = x_c, B = y_c, G = D = {}.
  LLDerivation right = llmk(LLRule::quest_l, "?!y_c", {llmk(LLRule::quest_r, "?!y_c", {llax("!y_c")})});
  LLDerivation l = llmk(LLRule::lolli_l, "!x_c -o ?!y_c", {right, llax("!x_c")});
  LLDerivation b = llmk(LLRule::bang_l, "!(!x_c -o ?!y_c)", {l});
  LLDerivation q = llmk(LLRule::quest_l, "?!x_c", {b});
  CHECK(q.conclusion() == LS("!(!x_c -o ?!y_c), ?!x_c |- ?!y_c"));
  CHECK(check_ll(q).ok);
}

TEST_CASE("contract_t") {
  SUBCASE("bang shape: one bang_c") {
    LLDerivation d = llmk(LLRule::bang_w, "!p", {llax("!p")});
    LLDerivation out = contract_t(d, F("p"), kBot);
    CHECK(out.rule() == LLRule::bang_c);
    CHECK(out.premise(0) == d);
    CHECK(out.conclusion() == LS("!p |- !p"));
  }
  SUBCASE("zero: rebuilt from zero_l") {
    LLDerivation d = ll_make_zero(LS("0, 0 |- !q"));
    LLDerivation out = contract_t(d, F("bot"), kBot);
    CHECK(out.rule() == LLRule::zero_l);
    CHECK(out.conclusion() == LS("0 |- !q"));
  }
  SUBCASE("tensor shape: invert, contract, rebuild") {
    LLFormula t = t_translate(F("p & q"), kBot);
    // 0, !!p * !!q, !!p, !!q |- !r
    LLDerivation d = llmk(LLRule::bang_w, "!!p",
                          {llmk(LLRule::bang_w, "!!q",
                                {llmk(LLRule::tensor_l, "!!p * !!q", {ll_make_zero(LS("0, !!p, !!q |- !r"))})})});
    LLDerivation two = llmk(LLRule::tensor_l, "!!p * !!q", {d});
    LLDerivation out = contract_t(two, F("p & q"), kBot);
    CHECK(check_ll(out).ok);
    LLSequent expect = two.conclusion();
    expect.left.erase_one(t);
    CHECK(out.conclusion() == expect);
    CHECK(count_rule(out, LLRule::bang_c) + count_rule(out, LLRule::zero_l) >= 1);
  }
}

TEST_CASE("weaken_t") {
  LLDerivation d = llax("!r");
  SUBCASE("bang shape") {
    LLDerivation out = weaken_t(d, F("p"), kBot);
    CHECK(out.rule() == LLRule::bang_w);
    CHECK(out.conclusion() == LS("!r, !p |- !r"));
  }
  SUBCASE("zero") {
    LLDerivation out = weaken_t(d, F("bot"), kBot);
    CHECK(out.rule() == LLRule::zero_l);
    CHECK(out.conclusion() == LS("!r, 0 |- !r"));
  }
  SUBCASE("plus shape duplicates the derivation") {
    LLDerivation out = weaken_t(d, F("p | q"), kBot);
    CHECK(out.rule() == LLRule::plus_l);
    CHECK(check_ll(out).ok);
    CHECK(out.conclusion() == LS("!r, !!p + !!q |- !r"));
  }
}

TEST_CASE("quest_left_t") {
  SUBCASE("bang-only context: one quest_l") {
    LLDerivation d = llmk(LLRule::bang_w, "!p", {llmk(LLRule::quest_r, "?!q", {llax("!q")})});
    LLDerivation out = quest_left_t(d, L("!q"));
    CHECK(out.rule() == LLRule::quest_l);
    CHECK(out.premise(0) == d);
    CHECK(out.conclusion() == LS("!p, ?!q |- ?!q"));
  }
  SUBCASE("zero in the context") {
    LLDerivation d = ll_make_zero(LS("0, !q |- ?!r"));
    LLDerivation out = quest_left_t(d, L("!q"));
    CHECK(out.rule() == LLRule::zero_l);
    CHECK(out.conclusion() == LS("0, ?!q |- ?!r"));
  }
  SUBCASE("tensor in the context") {
    LLDerivation inner = llmk(LLRule::bang_w, "!!p", {llmk(LLRule::bang_w, "!!r", {llmk(LLRule::quest_r, "?!q", {llax("!q")})})});
    LLDerivation d = llmk(LLRule::tensor_l, "!!p * !!r", {inner});
    LLDerivation out = quest_left_t(d, L("!q"));
    CHECK(out.rule() == LLRule::tensor_l);
    CHECK(check_ll(out).ok);
    CHECK(out.conclusion() == LS("!!p * !!r, ?!q |- ?!q"));
  }
  SUBCASE("non-? right side is rejected") {
    CHECK_THROWS_AS(quest_left_t(llax("!q"), L("!q")), PreconditionError);
  }
}

TEST_CASE("bang_right_t") {
  SUBCASE("bang context: one bang_r") {
    LLDerivation d = llmk(LLRule::bang_w, "!p", {llax("!q")});
    LLDerivation out = bang_right_t(d, L("!q"));
    CHECK(out.rule() == LLRule::bang_r);
    CHECK(out.conclusion() == LS("!p, !q |- !!q"));
  }
  SUBCASE("plus context: two promoted branches") {
    LLDerivation branch_p = llmk(LLRule::bang_w, "!!p", {llax("!q")});
    LLDerivation branch_r = llmk(LLRule::bang_w, "!!r", {llax("!q")});
    LLDerivation plus = llmk(LLRule::plus_l, "!!p + !!r", {branch_p, branch_r});
    LLDerivation out = bang_right_t(plus, L("!q"));
    CHECK(out.rule() == LLRule::plus_l);
    CHECK(count_rule(out, LLRule::bang_r) == 2);
    CHECK(check_ll(out).ok);
    CHECK(out.conclusion() == LS("!!p + !!r, !q |- !!q"));
  }
  SUBCASE("empty context: bare bang_r") {
    LLDerivation d = llmk(LLRule::lolli_r, "!p -o !p", {llax("!p")});
    LLDerivation out = bang_right_t(d, L("!p -o !p"));
    CHECK(out.rule() == LLRule::bang_r);
    CHECK(out.premise(0) == d);
    CHECK(out.conclusion() == LS("|- !(!p -o !p)"));
  }
  SUBCASE("zero in the context") {
    LLDerivation out = bang_right_t(ll_make_zero(LS("0 |- !q")), L("!q"));
    CHECK(out.rule() == LLRule::zero_l);
    CHECK(out.conclusion() == LS("0 |- !!q"));
  }
}

TEST_CASE("inversion on random translated proofs") {
  std::mt19937 rng(42);
  std::vector<Formula> atoms{F("p"), F("q"), F("x_c"), F("bot")};
  std::size_t tensors = 0, pluses = 0;
  for (int attempt = 0; attempt < 4000 && (tensors < 100 || pluses < 100); ++attempt) {
    Formula a = mixed::testing::random_formula(rng, atoms, 2);
    if (!a.is(Formula::Kind::And) && !a.is(Formula::Kind::Or)) continue;
    PSequent s{FormulaBag{a, mixed::testing::random_formula(rng, atoms, 1)}, {}, mixed::testing::random_formula(rng, atoms, 2)};
    auto d = prove_bounded(s, kCv, SearchConfig{6, 2});
    if (!d) continue;
    LLDerivation t = translate_derivation(*d, kCv);
    LLFormula ta = t_translate(a, kCv);
    if (ta.is(LLFormula::Kind::Tensor)) {
      ++tensors;
      LLDerivation out = invert_tensor_l(t, ta);
      LLSequent expect = t.conclusion();
      expect.left.erase_one(ta);
      expect.left.insert(ta.left());
      expect.left.insert(ta.right());
      REQUIRE(check_ll(out).ok);
      REQUIRE(out.conclusion() == expect);
    } else {
      ++pluses;
      auto [l, r] = invert_plus_l(t, ta);
      LLSequent el = t.conclusion();
      el.left.erase_one(ta);
      LLSequent er = el;
      el.left.insert(ta.left());
      er.left.insert(ta.right());
      REQUIRE(check_ll(l).ok);
      REQUIRE(check_ll(r).ok);
      REQUIRE(l.conclusion() == el);
      REQUIRE(r.conclusion() == er);
    }
  }
  CHECK(tensors >= 100);
  CHECK(pluses >= 100);
}

TEST_CASE("translation of small proofs") {
  LLDerivation a = translate_derivation(make_ax(F("p")), kBot);
  CHECK(a.rule() == LLRule::ll_ax);
  CHECK(a.conclusion() == LS("!p |- !p"));
  Derivation dx = make(Rule::der, F("x_c"), {make_ax(F("x_c"))});
  LLDerivation t = translate_derivation(dx, kCv);
  CHECK(t.rule() == LLRule::quest_r);
  CHECK(t.premise(0).rule() == LLRule::ll_ax);
  CHECK(t.conclusion() == LS("!x_c |- ?!x_c"));
  CHECK(check_ll(t).ok);
  Derivation bad(parse_sequent("p |- ; q"), Rule::ax, {});
  CHECK_THROWS_AS(translate_derivation(bad, kBot), PreconditionError);
}

TEST_CASE("imp3_l translation shape") {
  LLDerivation t = translate_derivation(mixed::testing::imp3_l_fixture(), kCv);
  CHECK(check_ll(t).ok);
  REQUIRE(t.rule() == LLRule::ll_cut);
  CHECK(t.principal() == L("?!x_c"));
  CHECK(t.premise(0).conclusion() == LS("!x_c |- ?!x_c"));
  const LLDerivation& q = t.premise(1);
  REQUIRE(q.rule() == LLRule::quest_l);
  CHECK(q.conclusion() == LS("!(!x_c -o ?!y_c), ?!x_c |- ?!y_c"));
  REQUIRE(q.premise(0).rule() == LLRule::bang_l);
  const LLDerivation& lolli = q.premise(0).premise(0);
  REQUIRE(lolli.rule() == LLRule::lolli_l);
  CHECK(lolli.premise(0).conclusion() == LS("?!y_c |- ?!y_c"));
  CHECK(lolli.premise(1).rule() == LLRule::ll_ax);
  CHECK(lolli.premise(1).conclusion() == LS("!x_c |- !x_c"));
  CHECK(t.conclusion() == LS("!x_c, !(!x_c -o ?!y_c) |- ?!y_c"));
}

TEST_CASE("property: corpus translations check and hit the t/? image") {
  std::vector<mixed::testing::NamedProof> proofs = mixed::testing::fixture_corpus();
  for (auto& c : mixed::testing::cut_corpus()) proofs.push_back({c.name, c.proof, c.policy});
  std::mt19937 rng(43);
  for (auto& r : mixed::testing::random_proofs(rng, 100)) proofs.push_back(r);
  for (const auto& np : proofs) {
    CAPTURE(np.name);
    LLDerivation t = translate_derivation(np.proof, np.policy);
    CHECK(check_ll(t).ok);
    CHECK(t.conclusion() == translate_sequent(np.proof.conclusion(), np.policy));
  }
}
