#include "mixed/embeddings.hpp"

#include "mixed/cutelim.hpp"
#include "mixed/error.hpp"
#include "sequent_parser.hpp"
#include "tree_check.hpp"

namespace mixed {

namespace {

using Kind = Formula::Kind;

std::string fs(const Formula& f) { return print_formula(f); }

std::vector<Formula> of_kind(const FormulaBag& b, Kind k) {
  std::vector<Formula> out;
  for (const Formula& f : b.distinct())
    if (f.is(k)) out.push_back(f);
  return out;
}

std::optional<FormulaBag> drop(const FormulaBag& b, const Formula& f, const std::string& where, std::string* why) {
  auto out = b.without(f);
  if (!out && why) *why = fs(f) + " missing from " + where;
  return out;
}

template <typename T>
std::optional<T> failed(std::string* why, std::string msg) {
  if (why) *why = std::move(msg);
  return std::nullopt;
}

bool wrong_kind(const Formula& a, Kind k, std::string* why) {
  if (a.is(k)) return false;
  if (why) *why = "rule cannot act on " + fs(a);
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// LK

namespace {

constexpr std::array<std::pair<LKRule, std::string_view>, kLKRuleCount> kLK = {{
    {LKRule::ax, "lk.ax"},       {LKRule::cut, "lk.cut"},     {LKRule::c_l, "lk.c_l"},
    {LKRule::c_r, "lk.c_r"},     {LKRule::w_l, "lk.w_l"},     {LKRule::w_r, "lk.w_r"},
    {LKRule::and_l, "lk.and_l"}, {LKRule::and_r, "lk.and_r"}, {LKRule::or_l, "lk.or_l"},
    {LKRule::or1_r, "lk.or1_r"}, {LKRule::or2_r, "lk.or2_r"}, {LKRule::imp_l, "lk.imp_l"},
    {LKRule::imp_r, "lk.imp_r"}, {LKRule::bot, "lk.bot"},
}};

std::size_t lk_arity(LKRule r) {
  switch (r) {
    case LKRule::ax:
    case LKRule::bot:
      return 0;
    case LKRule::cut:
    case LKRule::and_r:
    case LKRule::or_l:
    case LKRule::imp_l:
      return 2;
    default:
      return 1;
  }
}

std::vector<Formula> lk_candidates(const LKDerivation& d) {
  const LKSequent& c = d.conclusion();
  switch (d.rule()) {
    case LKRule::ax:
      return c.left.distinct();
    case LKRule::cut:
      if (d.premises().size() == 2) return d.premise(0).conclusion().right.common(d.premise(1).conclusion().left).distinct();
      return {};
    case LKRule::c_l:
    case LKRule::w_l:
      return c.left.distinct();
    case LKRule::c_r:
    case LKRule::w_r:
      return c.right.distinct();
    case LKRule::and_l:
      return of_kind(c.left, Kind::And);
    case LKRule::or_l:
      return of_kind(c.left, Kind::Or);
    case LKRule::imp_l:
      return of_kind(c.left, Kind::Imp);
    case LKRule::and_r:
      return of_kind(c.right, Kind::And);
    case LKRule::or1_r:
    case LKRule::or2_r:
      return of_kind(c.right, Kind::Or);
    case LKRule::imp_r:
      return of_kind(c.right, Kind::Imp);
    case LKRule::bot:
      return {Formula::bot()};
  }
  return {};
}

}  // namespace

std::array<LKRule, kLKRuleCount> all_lk_rules() {
  std::array<LKRule, kLKRuleCount> out{};
  for (std::size_t i = 0; i < kLKRuleCount; ++i) out[i] = kLK[i].first;
  return out;
}

std::string_view lk_rule_name(LKRule r) { return kLK[static_cast<std::size_t>(r)].second; }

std::optional<LKRule> lk_rule_from_name(std::string_view tag) {
  for (const auto& [r, n] : kLK)
    if (n == tag) return r;
  return std::nullopt;
}

LKSequent parse_lk_sequent(std::string_view text) {
  using namespace detail;
  TokenStream ts(tokenize(text));
  LKSequent s;
  s.left = FormulaBag(parse_formula_list(ts, Tok::Turnstile));
  ts.expect(Tok::Turnstile, "'|-'");
  s.right = FormulaBag(parse_formula_list(ts, Tok::End));
  if (!ts.at(Tok::End)) ts.fail("unexpected token in LK sequent");
  return s;
}

std::string print_lk_sequent(const LKSequent& s) {
  std::string out = detail::join_formulas(s.left);
  out += out.empty() ? "|-" : " |-";
  if (!s.right.empty()) out += " " + detail::join_formulas(s.right);
  return out;
}

std::optional<LKSequent> lk_infer(LKRule r, const Formula& a, const std::vector<LKSequent>& p, std::string* why) {
  using R = std::optional<LKSequent>;
  if (p.size() != lk_arity(r)) return failed<LKSequent>(why, "wrong number of premises");
  switch (r) {
    case LKRule::ax:
      return LKSequent{FormulaBag{a}, FormulaBag{a}};
    case LKRule::bot:
      if (wrong_kind(a, Kind::Bot, why)) return std::nullopt;
      return LKSequent{FormulaBag{a}, {}};
    case LKRule::cut: {
      auto d1 = drop(p[0].right, a, "left premise succedent", why);
      auto g2 = drop(p[1].left, a, "right premise antecedent", why);
      if (!d1 || !g2) return std::nullopt;
      return LKSequent{p[0].left + *g2, *d1 + p[1].right};
    }
    case LKRule::c_l:
      if (p[0].left.count(a) < 2) return failed<LKSequent>(why, "c_l needs two copies of " + fs(a));
      return LKSequent{*p[0].left.without(a), p[0].right};
    case LKRule::c_r:
      if (p[0].right.count(a) < 2) return failed<LKSequent>(why, "c_r needs two copies of " + fs(a));
      return LKSequent{p[0].left, *p[0].right.without(a)};
    case LKRule::w_l:
      return LKSequent{p[0].left.with(a), p[0].right};
    case LKRule::w_r:
      return LKSequent{p[0].left, p[0].right.with(a)};
    case LKRule::and_l: {
      if (wrong_kind(a, Kind::And, why)) return std::nullopt;
      auto g = drop(p[0].left, a.left(), "premise antecedent", why);
      if (g) g = drop(*g, a.right(), "premise antecedent", why);
      if (!g) return std::nullopt;
      return LKSequent{g->with(a), p[0].right};
    }
    case LKRule::and_r: {
      if (wrong_kind(a, Kind::And, why)) return std::nullopt;
      auto d1 = drop(p[0].right, a.left(), "left premise succedent", why);
      auto d2 = drop(p[1].right, a.right(), "right premise succedent", why);
      if (!d1 || !d2) return std::nullopt;
      return LKSequent{p[0].left + p[1].left, (*d1 + *d2).with(a)};
    }
    case LKRule::or_l: {
      if (wrong_kind(a, Kind::Or, why)) return std::nullopt;
      auto g1 = drop(p[0].left, a.left(), "left premise antecedent", why);
      auto g2 = drop(p[1].left, a.right(), "right premise antecedent", why);
      if (!g1 || !g2) return std::nullopt;
      if (!(*g1 == *g2) || !(p[0].right == p[1].right))
        return failed<LKSequent>(why, "premises of lk.or_l must share their context");
      return LKSequent{g1->with(a), p[0].right};
    }
    case LKRule::or1_r:
    case LKRule::or2_r: {
      if (wrong_kind(a, Kind::Or, why)) return std::nullopt;
      auto d = drop(p[0].right, r == LKRule::or1_r ? a.left() : a.right(), "premise succedent", why);
      if (!d) return std::nullopt;
      return LKSequent{p[0].left, d->with(a)};
    }
    case LKRule::imp_l: {
      if (wrong_kind(a, Kind::Imp, why)) return std::nullopt;
      auto g1 = drop(p[0].left, a.right(), "left premise antecedent", why);
      auto d2 = drop(p[1].right, a.left(), "right premise succedent", why);
      if (!g1 || !d2) return std::nullopt;
      return LKSequent{(*g1 + p[1].left).with(a), p[0].right + *d2};
    }
    case LKRule::imp_r: {
      if (wrong_kind(a, Kind::Imp, why)) return std::nullopt;
      auto g = drop(p[0].left, a.left(), "premise antecedent", why);
      auto d = drop(p[0].right, a.right(), "premise succedent", why);
      if (!g || !d) return std::nullopt;
      return LKSequent{*g, d->with(a)};
    }
  }
  return R{};
}

LKDerivation lk_make(LKRule r, const Formula& a, std::vector<LKDerivation> premises) {
  std::vector<LKSequent> p;
  for (const auto& d : premises) p.push_back(d.conclusion());
  std::string why;
  auto c = lk_infer(r, a, p, &why);
  if (!c) throw PreconditionError("cannot build " + std::string(lk_rule_name(r)) + ": " + why);
  return LKDerivation(std::move(*c), r, std::move(premises), a);
}

CheckReport check_lk(const LKDerivation& d) {
  CheckReport report;
  TreePath path;
  auto match = [](const LKDerivation& n, std::string& why) {
    if (n.premises().size() != lk_arity(n.rule())) {
      why = std::string(lk_rule_name(n.rule())) + " has the wrong number of premises";
      return false;
    }
    return detail::match_candidates(n, lk_candidates(n), lk_infer, why);
  };
  detail::check_tree(d, match, path, report);
  return report;
}

namespace {

template <typename Tree, typename FromName, typename ParseSeq>
Tree tree_from_text(const ProofText& t, FromName from_name, ParseSeq parse_seq) {
  auto r = from_name(t.tag);
  if (!r) throw ParseError("unknown rule tag '" + t.tag + "'");
  std::vector<Tree> prem;
  for (const ProofText& p : t.premises) prem.push_back(tree_from_text<Tree>(p, from_name, parse_seq));
  std::optional<Formula> principal;
  if (t.principal) principal = parse_formula(*t.principal);
  return Tree(parse_seq(t.sequent), *r, std::move(prem), std::move(principal));
}

template <typename Tree, typename Name, typename PrintSeq>
ProofText tree_to_text(const Tree& d, Name name, PrintSeq print_seq) {
  ProofText t;
  t.tag = std::string(name(d.rule()));
  t.sequent = print_seq(d.conclusion());
  if (d.principal()) t.principal = print_formula(*d.principal());
  for (const Tree& p : d.premises()) t.premises.push_back(tree_to_text(p, name, print_seq));
  return t;
}

}  // namespace

LKDerivation parse_lk_proof(std::string_view text) {
  return tree_from_text<LKDerivation>(parse_proof_text(text), lk_rule_from_name, parse_lk_sequent);
}

std::string print_lk_proof(const LKDerivation& d) {
  return print_proof_text(tree_to_text(d, lk_rule_name, print_lk_sequent));
}

// ---------------------------------------------------------------------------
// LJ

namespace {

constexpr std::array<std::pair<LJRule, std::string_view>, kLJRuleCount> kLJ = {{
    {LJRule::ax, "lj.ax"},       {LJRule::cut, "lj.cut"},     {LJRule::c_l, "lj.c_l"},
    {LJRule::w_l, "lj.w_l"},     {LJRule::zero, "lj.zero"},   {LJRule::and_l, "lj.and_l"},
    {LJRule::and_r, "lj.and_r"}, {LJRule::or_l, "lj.or_l"},   {LJRule::or1_r, "lj.or1_r"},
    {LJRule::or2_r, "lj.or2_r"}, {LJRule::imp_l, "lj.imp_l"}, {LJRule::imp_r, "lj.imp_r"},
}};

std::size_t lj_arity(LJRule r) {
  switch (r) {
    case LJRule::ax:
    case LJRule::zero:
      return 0;
    case LJRule::cut:
    case LJRule::and_r:
    case LJRule::or_l:
    case LJRule::imp_l:
      return 2;
    default:
      return 1;
  }
}

std::vector<Formula> lj_candidates(const LJDerivation& d) {
  const LJSequent& c = d.conclusion();
  switch (d.rule()) {
    case LJRule::ax:
    case LJRule::and_r:
    case LJRule::or1_r:
    case LJRule::or2_r:
    case LJRule::imp_r:
      return {c.right};
    case LJRule::cut:
      if (!d.premises().empty()) return {d.premise(0).conclusion().right};
      return {};
    case LJRule::c_l:
    case LJRule::w_l:
      return c.left.distinct();
    case LJRule::zero:
      return {Formula::zero()};
    case LJRule::and_l:
      return of_kind(c.left, Kind::And);
    case LJRule::or_l:
      return of_kind(c.left, Kind::Or);
    case LJRule::imp_l:
      return of_kind(c.left, Kind::Imp);
  }
  return {};
}

}  // namespace

std::array<LJRule, kLJRuleCount> all_lj_rules() {
  std::array<LJRule, kLJRuleCount> out{};
  for (std::size_t i = 0; i < kLJRuleCount; ++i) out[i] = kLJ[i].first;
  return out;
}

std::string_view lj_rule_name(LJRule r) { return kLJ[static_cast<std::size_t>(r)].second; }

std::optional<LJRule> lj_rule_from_name(std::string_view tag) {
  for (const auto& [r, n] : kLJ)
    if (n == tag) return r;
  return std::nullopt;
}

LJSequent parse_lj_sequent(std::string_view text) {
  using namespace detail;
  TokenStream ts(tokenize(text));
  FormulaBag left(parse_formula_list(ts, Tok::Turnstile));
  ts.expect(Tok::Turnstile, "'|-'");
  if (ts.at(Tok::End)) ts.fail("an LJ sequent needs exactly one succedent formula");
  Formula right = parse_formula_at(ts);
  if (ts.at(Tok::Comma)) ts.fail("an LJ sequent has exactly one succedent formula");
  if (!ts.at(Tok::End)) ts.fail("unexpected token in LJ sequent");
  return LJSequent{std::move(left), std::move(right)};
}

std::string print_lj_sequent(const LJSequent& s) {
  std::string out = detail::join_formulas(s.left);
  out += out.empty() ? "|- " : " |- ";
  return out + print_formula(s.right);
}

std::optional<LJSequent> lj_infer(LJRule r, const Formula& a, const std::vector<LJSequent>& p, std::string* why) {
  if (p.size() != lj_arity(r)) return failed<LJSequent>(why, "wrong number of premises");
  switch (r) {
    case LJRule::ax:
      return LJSequent{FormulaBag{a}, a};
    case LJRule::zero:
      return failed<LJSequent>(why, "the zero rule has no computed conclusion");
    case LJRule::cut: {
      if (!(p[0].right == a)) return failed<LJSequent>(why, "left premise must conclude the cut formula");
      auto g2 = drop(p[1].left, a, "right premise antecedent", why);
      if (!g2) return std::nullopt;
      return LJSequent{p[0].left + *g2, p[1].right};
    }
    case LJRule::c_l:
      if (p[0].left.count(a) < 2) return failed<LJSequent>(why, "c_l needs two copies of " + fs(a));
      return LJSequent{*p[0].left.without(a), p[0].right};
    case LJRule::w_l:
      return LJSequent{p[0].left.with(a), p[0].right};
    case LJRule::and_l: {
      if (wrong_kind(a, Kind::And, why)) return std::nullopt;
      auto g = drop(p[0].left, a.left(), "premise antecedent", why);
      if (g) g = drop(*g, a.right(), "premise antecedent", why);
      if (!g) return std::nullopt;
      return LJSequent{g->with(a), p[0].right};
    }
    case LJRule::and_r:
      if (wrong_kind(a, Kind::And, why)) return std::nullopt;
      if (!(p[0].right == a.left()) || !(p[1].right == a.right()))
        return failed<LJSequent>(why, "premises must conclude the conjuncts of " + fs(a));
      return LJSequent{p[0].left + p[1].left, a};
    case LJRule::or_l: {
      if (wrong_kind(a, Kind::Or, why)) return std::nullopt;
      auto g1 = drop(p[0].left, a.left(), "left premise antecedent", why);
      auto g2 = drop(p[1].left, a.right(), "right premise antecedent", why);
      if (!g1 || !g2) return std::nullopt;
      if (!(*g1 == *g2) || !(p[0].right == p[1].right))
        return failed<LJSequent>(why, "premises of lj.or_l must share their context");
      return LJSequent{g1->with(a), p[0].right};
    }
    case LJRule::or1_r:
    case LJRule::or2_r:
      if (wrong_kind(a, Kind::Or, why)) return std::nullopt;
      if (!(p[0].right == (r == LJRule::or1_r ? a.left() : a.right())))
        return failed<LJSequent>(why, "premise must conclude the chosen disjunct of " + fs(a));
      return LJSequent{p[0].left, a};
    case LJRule::imp_l: {
      if (wrong_kind(a, Kind::Imp, why)) return std::nullopt;
      auto g1 = drop(p[0].left, a.right(), "left premise antecedent", why);
      if (!g1) return std::nullopt;
      if (!(p[1].right == a.left())) return failed<LJSequent>(why, "right premise must conclude " + fs(a.left()));
      return LJSequent{(*g1 + p[1].left).with(a), p[0].right};
    }
    case LJRule::imp_r: {
      if (wrong_kind(a, Kind::Imp, why)) return std::nullopt;
      auto g = drop(p[0].left, a.left(), "premise antecedent", why);
      if (!g) return std::nullopt;
      if (!(p[0].right == a.right())) return failed<LJSequent>(why, "premise must conclude " + fs(a.right()));
      return LJSequent{*g, a};
    }
  }
  return std::nullopt;
}

LJDerivation lj_make(LJRule r, const Formula& a, std::vector<LJDerivation> premises) {
  if (r == LJRule::zero) throw PreconditionError("use lj_make_zero for the zero rule");
  std::vector<LJSequent> p;
  for (const auto& d : premises) p.push_back(d.conclusion());
  std::string why;
  auto c = lj_infer(r, a, p, &why);
  if (!c) throw PreconditionError("cannot build " + std::string(lj_rule_name(r)) + ": " + why);
  return LJDerivation(std::move(*c), r, std::move(premises), a);
}

LJDerivation lj_make_zero(LJSequent conclusion) {
  if (!conclusion.left.contains(Formula::zero())) throw PreconditionError("lj.zero needs 0 in the antecedent");
  return LJDerivation(std::move(conclusion), LJRule::zero, {}, Formula::zero());
}

CheckReport check_lj(const LJDerivation& d) {
  CheckReport report;
  TreePath path;
  auto match = [](const LJDerivation& n, std::string& why) {
    if (n.premises().size() != lj_arity(n.rule())) {
      why = std::string(lj_rule_name(n.rule())) + " has the wrong number of premises";
      return false;
    }
    if (n.rule() == LJRule::zero) {
      if (n.conclusion().left.contains(Formula::zero())) return true;
      why = "lj.zero needs 0 in the antecedent";
      return false;
    }
    return detail::match_candidates(n, lj_candidates(n), lj_infer, why);
  };
  detail::check_tree(d, match, path, report);
  return report;
}

LJDerivation parse_lj_proof(std::string_view text) {
  return tree_from_text<LJDerivation>(parse_proof_text(text), lj_rule_from_name, parse_lj_sequent);
}

std::string print_lj_proof(const LJDerivation& d) {
  return print_proof_text(tree_to_text(d, lj_rule_name, print_lj_sequent));
}

// ---------------------------------------------------------------------------
// Formula sets and hypotheses.

FormulaSet formulas_of(const Derivation& d) {
  FormulaSet out;
  for_each_node(d, [&](const Derivation& n, const TreePath&) {
    const PSequent& s = n.conclusion();
    out.insert(s.antecedent.begin(), s.antecedent.end());
    out.insert(s.body.begin(), s.body.end());
    if (s.stoup) out.insert(*s.stoup);
  });
  return out;
}

FormulaSet formulas_of(const LKDerivation& d) {
  FormulaSet out;
  d.visit([&](const LKDerivation& n) {
    out.insert(n.conclusion().left.begin(), n.conclusion().left.end());
    out.insert(n.conclusion().right.begin(), n.conclusion().right.end());
  });
  return out;
}

FormulaSet formulas_of(const LJDerivation& d) {
  FormulaSet out;
  d.visit([&](const LJDerivation& n) {
    out.insert(n.conclusion().left.begin(), n.conclusion().left.end());
    out.insert(n.conclusion().right);
  });
  return out;
}

FormulaSet subformula_closure(const FormulaSet& s) {
  FormulaSet out;
  for (const Formula& f : s) {
    FormulaSet sub = subformulas(f);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

void require_lk_hypotheses(const FormulaSet& k_set, const PPolicy& policy) {
  if (!is_stable(k_set)) throw PreconditionError("K is not stable");
  for (const Formula& f : k_set)
    if (!policy.contains(f)) throw PreconditionError("K is not a subset of P (" + fs(f) + " not in P)");
  if (k_set.contains(Formula::zero())) throw PreconditionError("0 belongs to K");
}

void require_lj_hypotheses(const FormulaSet& i_set, const PPolicy& policy) {
  if (!is_stable(i_set)) throw PreconditionError("I is not stable");
  for (const Formula& f : i_set)
    if (policy.contains(f)) throw PreconditionError("I and P intersect (" + fs(f) + " in P)");
  if (i_set.contains(Formula::bot())) throw PreconditionError("bot belongs to I");
}

namespace {

void require_within(const FormulaSet& used, const FormulaSet& bound, const char* name) {
  for (const Formula& f : used)
    if (!bound.contains(f))
      throw PreconditionError(std::string("formula ") + fs(f) + " of the derivation lies outside " + name);
}

// ---------------------------------------------------------------------------
// LK -> ML_P

Derivation der(Derivation d) {
  Formula a = *d.conclusion().stoup;
  return make(Rule::der, a, {std::move(d)});
}

Derivation lk_image(const LKDerivation& d) {
  const Formula& a = *d.principal();
  std::vector<Derivation> p;
  for (const LKDerivation& q : d.premises()) p.push_back(lk_image(q));
  switch (d.rule()) {
    case LKRule::ax: return der(make_ax(a));
    case LKRule::cut: return make(Rule::cut2, a, std::move(p));
    case LKRule::c_l: return make(Rule::c_l, a, std::move(p));
    case LKRule::c_r: return make(Rule::c_r, a, std::move(p));
    case LKRule::w_l: return make(Rule::w_l, a, std::move(p));
    case LKRule::w_r: return make(Rule::w_r, a, std::move(p));
    case LKRule::bot: return make_bot();
    case LKRule::and_l: return make(Rule::and2_l, a, std::move(p));
    case LKRule::and_r: return der(make(Rule::and2_r, a, std::move(p)));
    case LKRule::or_l: return make(Rule::or2_l, a, std::move(p));
    case LKRule::or1_r: return der(make(Rule::or3_r, a, std::move(p)));
    case LKRule::or2_r: return der(make(Rule::or4_r, a, std::move(p)));
    case LKRule::imp_l: return make(Rule::imp3_l, a, std::move(p));
    case LKRule::imp_r: return der(make(Rule::imp2_r, a, std::move(p)));
  }
  throw InternalError("unhandled LK rule");
}

LKDerivation annotate_lk(const LKDerivation& d) {
  std::vector<LKDerivation> p;
  for (const LKDerivation& q : d.premises()) p.push_back(annotate_lk(q));
  std::string why;
  std::vector<Formula> cands = d.principal() ? std::vector<Formula>{*d.principal()} : lk_candidates(d);
  std::vector<LKSequent> ps;
  for (const auto& q : p) ps.push_back(q.conclusion());
  for (const Formula& a : cands) {
    auto c = lk_infer(d.rule(), a, ps, &why);
    if (c && *c == d.conclusion()) return LKDerivation(d.conclusion(), d.rule(), std::move(p), a);
  }
  throw PreconditionError("invalid LK node " + std::string(lk_rule_name(d.rule())));
}

LKSequent fuse(const PSequent& s) {
  FormulaBag right = s.body;
  if (s.stoup) right.insert(*s.stoup);
  return LKSequent{s.antecedent, right};
}

LKDerivation lk_preimage(const Derivation& d) {
  const Formula& a = *d.principal();
  std::vector<LKDerivation> p;
  for (const Derivation& q : d.premises()) p.push_back(lk_preimage(q));
  auto mk = [&](LKRule r) { return lk_make(r, a, std::move(p)); };
  switch (d.rule()) {
    case Rule::ax: return lk_make(LKRule::ax, a, {});
    case Rule::cut1:
    case Rule::cut2: return mk(LKRule::cut);
    case Rule::der: return p[0];
    case Rule::c_l: return mk(LKRule::c_l);
    case Rule::c_r: return mk(LKRule::c_r);
    case Rule::w_l: return mk(LKRule::w_l);
    case Rule::w_r: return mk(LKRule::w_r);
    case Rule::zero: throw PreconditionError("the 0 rule has no LK counterpart");
    case Rule::bot: return lk_make(LKRule::bot, a, {});
    case Rule::and1_l:
    case Rule::and2_l: return mk(LKRule::and_l);
    case Rule::and1_r:
    case Rule::and2_r:
    case Rule::and3_r:
    case Rule::and4_r: return mk(LKRule::and_r);
    case Rule::or1_l:
    case Rule::or2_l: return mk(LKRule::or_l);
    case Rule::or1_r:
    case Rule::or3_r: return mk(LKRule::or1_r);
    case Rule::or2_r:
    case Rule::or4_r: return mk(LKRule::or2_r);
    case Rule::imp1_l:
    case Rule::imp2_l:
    case Rule::imp3_l: return mk(LKRule::imp_l);
    case Rule::imp1_r:
    case Rule::imp2_r: return mk(LKRule::imp_r);
  }
  throw InternalError("unhandled rule");
}

// ---------------------------------------------------------------------------
// LJ <-> ML_P

LJDerivation annotate_lj(const LJDerivation& d) {
  std::vector<LJDerivation> p;
  for (const LJDerivation& q : d.premises()) p.push_back(annotate_lj(q));
  if (d.rule() == LJRule::zero) return lj_make_zero(d.conclusion());
  std::string why;
  std::vector<Formula> cands = d.principal() ? std::vector<Formula>{*d.principal()} : lj_candidates(d);
  std::vector<LJSequent> ps;
  for (const auto& q : p) ps.push_back(q.conclusion());
  for (const Formula& a : cands) {
    auto c = lj_infer(d.rule(), a, ps, &why);
    if (c && *c == d.conclusion()) return LJDerivation(d.conclusion(), d.rule(), std::move(p), a);
  }
  throw PreconditionError("invalid LJ node " + std::string(lj_rule_name(d.rule())));
}

Derivation lj_image(const LJDerivation& d) {
  if (d.rule() == LJRule::zero)
    return make_zero(PSequent{d.conclusion().left, {}, d.conclusion().right});
  const Formula& a = *d.principal();
  std::vector<Derivation> p;
  for (const LJDerivation& q : d.premises()) p.push_back(lj_image(q));
  auto mk = [&](Rule r) { return make(r, a, std::move(p)); };
  switch (d.rule()) {
    case LJRule::ax: return make_ax(a);
    case LJRule::cut: return mk(Rule::cut1);
    case LJRule::c_l: return mk(Rule::c_l);
    case LJRule::w_l: return mk(Rule::w_l);
    case LJRule::and_l: return mk(Rule::and1_l);
    case LJRule::and_r: return mk(Rule::and1_r);
    case LJRule::or_l: return mk(Rule::or1_l);
    case LJRule::or1_r: return mk(Rule::or1_r);
    case LJRule::or2_r: return mk(Rule::or2_r);
    case LJRule::imp_l: return mk(Rule::imp1_l);
    case LJRule::imp_r: return mk(Rule::imp1_r);
    case LJRule::zero: break;
  }
  throw InternalError("unhandled LJ rule");
}

LJDerivation lj_preimage(const Derivation& d) {
  const PSequent& c = d.conclusion();
  if (!c.body.empty() || !c.stoup)
    throw InternalError("normal form of an intuitionistic sequent uses the body or an empty stoup at a " +
                        std::string(rule_name(d.rule())) + " node");
  if (d.rule() == Rule::zero) return lj_make_zero(LJSequent{c.antecedent, *c.stoup});
  const Formula& a = *d.principal();
  std::vector<LJDerivation> p;
  for (const Derivation& q : d.premises()) p.push_back(lj_preimage(q));
  auto mk = [&](LJRule r) { return lj_make(r, a, std::move(p)); };
  switch (d.rule()) {
    case Rule::ax: return lj_make(LJRule::ax, a, {});
    case Rule::c_l: return mk(LJRule::c_l);
    case Rule::w_l: return mk(LJRule::w_l);
    case Rule::and1_l: return mk(LJRule::and_l);
    case Rule::and1_r: return mk(LJRule::and_r);
    case Rule::or1_l: return mk(LJRule::or_l);
    case Rule::or1_r: return mk(LJRule::or1_r);
    case Rule::or2_r: return mk(LJRule::or2_r);
    case Rule::imp1_l: return mk(LJRule::imp_l);
    case Rule::imp1_r: return mk(LJRule::imp_r);
    default:
      throw InternalError("normal form of an intuitionistic sequent uses rule " + std::string(rule_name(d.rule())));
  }
}

}  // namespace

Derivation lk_to_mlp(const LKDerivation& d, const PPolicy& policy, const FormulaSet& k_set) {
  require_lk_hypotheses(k_set, policy);
  CheckReport rep = check_lk(d);
  if (!rep.ok) throw PreconditionError("LK derivation does not check: " + rep.summary());
  require_within(formulas_of(d), k_set, "K");
  Derivation out = lk_image(annotate_lk(d));
  CheckReport out_rep = check_derivation(out, policy);
  if (!out_rep.ok) throw InternalError("LK embedding produced an invalid derivation: " + out_rep.summary());
  return out;
}

LKDerivation mlp_to_lk(const Derivation& d, const PPolicy& policy, const FormulaSet& k_set) {
  require_lk_hypotheses(k_set, policy);
  require_within(formulas_of(d), k_set, "K");
  Derivation annotated = annotate(d, policy);
  LKDerivation out = lk_preimage(annotated);
  if (!(out.conclusion() == fuse(d.conclusion())))
    throw InternalError("LK extraction changed the sequent");
  CheckReport rep = check_lk(out);
  if (!rep.ok) throw InternalError("LK extraction produced an invalid derivation: " + rep.summary());
  return out;
}

Derivation lj_to_mlp(const LJDerivation& d, const PPolicy& policy, const std::optional<FormulaSet>& i_set) {
  CheckReport rep = check_lj(d);
  if (!rep.ok) throw PreconditionError("LJ derivation does not check: " + rep.summary());
  FormulaSet used = formulas_of(d);
  FormulaSet i = i_set ? *i_set : subformula_closure(used);
  require_lj_hypotheses(i, policy);
  require_within(used, i, "I");
  Derivation out = lj_image(annotate_lj(d));
  CheckReport out_rep = check_derivation(out, policy);
  if (!out_rep.ok) throw InternalError("LJ embedding produced an invalid derivation: " + out_rep.summary());
  return out;
}

LJDerivation mlp_to_lj(const Derivation& d, const PPolicy& policy, const FormulaSet& i_set) {
  const PSequent& c = d.conclusion();
  if (!c.body.empty() || !c.stoup)
    throw PreconditionError("extraction to LJ needs a conclusion of the form G |- ; A, got " + print_sequent(c));
  require_lj_hypotheses(i_set, policy);
  FormulaSet root(c.antecedent.begin(), c.antecedent.end());
  root.insert(*c.stoup);
  require_within(root, i_set, "I");
  Derivation normal = normalize(d, policy);
  LJDerivation out = lj_preimage(normal);
  CheckReport rep = check_lj(out);
  if (!rep.ok) throw InternalError("LJ extraction produced an invalid derivation: " + rep.summary());
  return out;
}

}  // namespace mixed
