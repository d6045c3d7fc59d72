#include "mixed/linear.hpp"

#include <functional>

#include "lexer.hpp"
#include "mixed/error.hpp"
#include "tree_check.hpp"

namespace mixed {

using LK = LLFormula::Kind;

// ---------------------------------------------------------------------------
// Formulas

LLFormula LLFormula::make_node(Kind k, std::string name, const LLFormula* l, const LLFormula* r) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->name = std::move(name);
  if (l) {
    n->left = std::make_unique<LLFormula>(*l);
    n->size += l->size();
  }
  if (r) {
    n->right = std::make_unique<LLFormula>(*r);
    n->size += r->size();
  }
  return LLFormula(n);
}

LLFormula LLFormula::atom(std::string name) { return make_node(Kind::Atom, std::move(name), nullptr, nullptr); }

LLFormula LLFormula::zero() {
  static const LLFormula z = make_node(Kind::Zero, "", nullptr, nullptr);
  return z;
}

LLFormula LLFormula::tensor(LLFormula a, LLFormula b) { return make_node(Kind::Tensor, "", &a, &b); }
LLFormula LLFormula::plus(LLFormula a, LLFormula b) { return make_node(Kind::Plus, "", &a, &b); }
LLFormula LLFormula::lolli(LLFormula a, LLFormula b) { return make_node(Kind::Lolli, "", &a, &b); }
LLFormula LLFormula::bang(LLFormula a) { return make_node(Kind::Bang, "", &a, nullptr); }
LLFormula LLFormula::quest(LLFormula a) { return make_node(Kind::Quest, "", &a, nullptr); }

std::strong_ordering operator<=>(const LLFormula& a, const LLFormula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.size <=> y.size; c != 0) return c;
  switch (x.kind) {
    case LK::Zero:
      return std::strong_ordering::equal;
    case LK::Atom:
      return x.name.compare(y.name) <=> 0;
    case LK::Bang:
    case LK::Quest:
      return *x.left <=> *y.left;
    default:
      if (auto c = *x.left <=> *y.left; c != 0) return c;
      return *x.right <=> *y.right;
  }
}

bool operator==(const LLFormula& a, const LLFormula& b) { return (a <=> b) == 0; }

namespace {

int ll_prec(const LLFormula& f) {
  switch (f.kind()) {
    case LK::Lolli: return 1;
    case LK::Plus: return 2;
    case LK::Tensor: return 3;
    case LK::Bang:
    case LK::Quest: return 4;
    default: return 5;
  }
}

void ll_print_to(std::string& out, const LLFormula& f) {
  switch (f.kind()) {
    case LK::Zero: out += '0'; return;
    case LK::Atom: out += f.name(); return;
    case LK::Bang:
    case LK::Quest: {
      out += f.is(LK::Bang) ? '!' : '?';
      const bool paren = ll_prec(f.operand()) < 4;
      if (paren) out += '(';
      ll_print_to(out, f.operand());
      if (paren) out += ')';
      return;
    }
    default: break;
  }
  const int p = ll_prec(f);
  const bool right_assoc = f.is(LK::Lolli);
  const bool paren_l = ll_prec(f.left()) < p || (right_assoc && ll_prec(f.left()) == p);
  const bool paren_r = ll_prec(f.right()) < p || (!right_assoc && ll_prec(f.right()) == p);
  if (paren_l) out += '(';
  ll_print_to(out, f.left());
  if (paren_l) out += ')';
  out += f.is(LK::Tensor) ? " * " : f.is(LK::Plus) ? " + " : " -o ";
  if (paren_r) out += '(';
  ll_print_to(out, f.right());
  if (paren_r) out += ')';
}

using detail::Tok;
using detail::TokenStream;

LLFormula ll_parse_lolli(TokenStream& ts);

LLFormula ll_parse_unary(TokenStream& ts) {
  const detail::Token& t = ts.peek();
  switch (t.kind) {
    case Tok::Bang: ts.next(); return LLFormula::bang(ll_parse_unary(ts));
    case Tok::Quest: ts.next(); return LLFormula::quest(ll_parse_unary(ts));
    case Tok::Zero: ts.next(); return LLFormula::zero();
    case Tok::Ident: {
      std::string name = t.text;
      ts.next();
      return LLFormula::atom(std::move(name));
    }
    case Tok::LParen: {
      ts.next();
      LLFormula f = ll_parse_lolli(ts);
      ts.expect(Tok::RParen, "')'");
      return f;
    }
    default:
      ts.fail("expected a linear formula");
  }
}

LLFormula ll_parse_tensor(TokenStream& ts) {
  LLFormula f = ll_parse_unary(ts);
  while (ts.accept(Tok::Star)) f = LLFormula::tensor(f, ll_parse_unary(ts));
  return f;
}

LLFormula ll_parse_plus(TokenStream& ts) {
  LLFormula f = ll_parse_tensor(ts);
  while (ts.accept(Tok::Plus)) f = LLFormula::plus(f, ll_parse_tensor(ts));
  return f;
}

LLFormula ll_parse_lolli(TokenStream& ts) {
  LLFormula f = ll_parse_plus(ts);
  if (ts.accept(Tok::Lolli)) return LLFormula::lolli(f, ll_parse_lolli(ts));
  return f;
}

std::vector<LLFormula> ll_parse_list(TokenStream& ts, Tok stop) {
  std::vector<LLFormula> out;
  if (ts.at(stop) || ts.at(Tok::End)) return out;
  out.push_back(ll_parse_lolli(ts));
  while (ts.accept(Tok::Comma)) out.push_back(ll_parse_lolli(ts));
  return out;
}

std::string ll_join(const LLBag& b) {
  std::string out;
  for (const LLFormula& f : b) {
    if (!out.empty()) out += ", ";
    out += print_ll_formula(f);
  }
  return out;
}

}  // namespace

std::string print_ll_formula(const LLFormula& f) {
  std::string out;
  ll_print_to(out, f);
  return out;
}

std::string LLFormula::str() const { return print_ll_formula(*this); }

LLFormula parse_ll_formula(std::string_view text) {
  TokenStream ts(detail::tokenize(text));
  LLFormula f = ll_parse_lolli(ts);
  if (!ts.at(Tok::End)) ts.fail("unexpected token after linear formula");
  return f;
}

LLSequent parse_ll_sequent(std::string_view text) {
  TokenStream ts(detail::tokenize(text));
  LLSequent s;
  s.left = LLBag(ll_parse_list(ts, Tok::Turnstile));
  ts.expect(Tok::Turnstile, "'|-'");
  s.right = LLBag(ll_parse_list(ts, Tok::End));
  if (!ts.at(Tok::End)) ts.fail("unexpected token in linear sequent");
  return s;
}

std::string print_ll_sequent(const LLSequent& s) {
  std::string out = ll_join(s.left);
  out += out.empty() ? "|-" : " |-";
  if (!s.right.empty()) out += " " + ll_join(s.right);
  return out;
}

// ---------------------------------------------------------------------------
// Rules

namespace {

constexpr std::array<std::pair<LLRule, std::string_view>, kLLRuleCount> kLL = {{
    {LLRule::ll_ax, "ll_ax"},       {LLRule::ll_cut, "ll_cut"},     {LLRule::zero_l, "zero_l"},
    {LLRule::tensor_l, "tensor_l"}, {LLRule::tensor_r, "tensor_r"}, {LLRule::plus_l, "plus_l"},
    {LLRule::plus_r1, "plus_r1"},   {LLRule::plus_r2, "plus_r2"},   {LLRule::lolli_l, "lolli_l"},
    {LLRule::lolli_r, "lolli_r"},   {LLRule::bang_l, "bang_l"},     {LLRule::bang_r, "bang_r"},
    {LLRule::bang_c, "bang_c"},     {LLRule::bang_w, "bang_w"},     {LLRule::quest_r, "quest_r"},
    {LLRule::quest_l, "quest_l"},   {LLRule::quest_c, "quest_c"},   {LLRule::quest_w, "quest_w"},
}};

std::size_t ll_arity(LLRule r) {
  switch (r) {
    case LLRule::ll_ax:
    case LLRule::zero_l:
      return 0;
    case LLRule::ll_cut:
    case LLRule::tensor_r:
    case LLRule::plus_l:
    case LLRule::lolli_l:
      return 2;
    default:
      return 1;
  }
}

std::string lfs(const LLFormula& f) { return print_ll_formula(f); }

template <typename T = LLSequent>
std::optional<T> ll_fail(std::string* why, std::string msg) {
  if (why) *why = std::move(msg);
  return std::nullopt;
}

std::optional<LLBag> ll_drop(const LLBag& b, const LLFormula& f, const char* where, std::string* why) {
  auto out = b.without(f);
  if (!out && why) *why = lfs(f) + " missing from " + where;
  return out;
}

bool all_kind(const LLBag& b, LK k) {
  return b.all_of([k](const LLFormula& f) { return f.is(k); });
}

}  // namespace

std::array<LLRule, kLLRuleCount> all_ll_rules() {
  std::array<LLRule, kLLRuleCount> out{};
  for (std::size_t i = 0; i < kLLRuleCount; ++i) out[i] = kLL[i].first;
  return out;
}

std::string_view ll_rule_name(LLRule r) { return kLL[static_cast<std::size_t>(r)].second; }

std::optional<LLRule> ll_rule_from_name(std::string_view tag) {
  for (const auto& [r, n] : kLL)
    if (n == tag) return r;
  return std::nullopt;
}

std::optional<LLSequent> ll_infer(LLRule r, const LLFormula& a, const std::vector<LLSequent>& p, std::string* why) {
  if (p.size() != ll_arity(r)) return ll_fail(why, "wrong number of premises");
  auto need = [&](LK k) {
    if (a.is(k)) return true;
    if (why) *why = std::string(ll_rule_name(r)) + " cannot act on " + lfs(a);
    return false;
  };
  switch (r) {
    case LLRule::ll_ax:
      return LLSequent{LLBag{a}, LLBag{a}};
    case LLRule::zero_l:
      return ll_fail(why, "zero_l has no computed conclusion");
    case LLRule::ll_cut: {
      auto d1 = ll_drop(p[0].right, a, "left premise succedent", why);
      auto g2 = ll_drop(p[1].left, a, "right premise antecedent", why);
      if (!d1 || !g2) return std::nullopt;
      return LLSequent{p[0].left + *g2, *d1 + p[1].right};
    }
    case LLRule::tensor_l: {
      if (!need(LK::Tensor)) return std::nullopt;
      auto g = ll_drop(p[0].left, a.left(), "premise antecedent", why);
      if (g) g = ll_drop(*g, a.right(), "premise antecedent", why);
      if (!g) return std::nullopt;
      return LLSequent{g->with(a), p[0].right};
    }
    case LLRule::tensor_r: {
      if (!need(LK::Tensor)) return std::nullopt;
      auto d1 = ll_drop(p[0].right, a.left(), "left premise succedent", why);
      auto d2 = ll_drop(p[1].right, a.right(), "right premise succedent", why);
      if (!d1 || !d2) return std::nullopt;
      return LLSequent{p[0].left + p[1].left, (*d1 + *d2).with(a)};
    }
    case LLRule::plus_l: {
      if (!need(LK::Plus)) return std::nullopt;
      auto g1 = ll_drop(p[0].left, a.left(), "left premise antecedent", why);
      auto g2 = ll_drop(p[1].left, a.right(), "right premise antecedent", why);
      if (!g1 || !g2) return std::nullopt;
      if (!(*g1 == *g2) || !(p[0].right == p[1].right))
        return ll_fail(why, "premises of plus_l must share their context");
      return LLSequent{g1->with(a), p[0].right};
    }
    case LLRule::plus_r1:
    case LLRule::plus_r2: {
      if (!need(LK::Plus)) return std::nullopt;
      auto d = ll_drop(p[0].right, r == LLRule::plus_r1 ? a.left() : a.right(), "premise succedent", why);
      if (!d) return std::nullopt;
      return LLSequent{p[0].left, d->with(a)};
    }
    case LLRule::lolli_l: {
      if (!need(LK::Lolli)) return std::nullopt;
      auto g1 = ll_drop(p[0].left, a.right(), "left premise antecedent", why);
      auto d2 = ll_drop(p[1].right, a.left(), "right premise succedent", why);
      if (!g1 || !d2) return std::nullopt;
      return LLSequent{(*g1 + p[1].left).with(a), p[0].right + *d2};
    }
    case LLRule::lolli_r: {
      if (!need(LK::Lolli)) return std::nullopt;
      auto g = ll_drop(p[0].left, a.left(), "premise antecedent", why);
      auto d = ll_drop(p[0].right, a.right(), "premise succedent", why);
      if (!g || !d) return std::nullopt;
      return LLSequent{*g, d->with(a)};
    }
    case LLRule::bang_l: {
      if (!need(LK::Bang)) return std::nullopt;
      auto g = ll_drop(p[0].left, a.operand(), "premise antecedent", why);
      if (!g) return std::nullopt;
      return LLSequent{g->with(a), p[0].right};
    }
    case LLRule::bang_r: {
      if (!need(LK::Bang)) return std::nullopt;
      auto d = ll_drop(p[0].right, a.operand(), "premise succedent", why);
      if (!d) return std::nullopt;
      if (!all_kind(p[0].left, LK::Bang) || !all_kind(*d, LK::Quest))
        return ll_fail(why, "promotion context: bang_r needs !-formulas on the left and ?-formulas on the right");
      return LLSequent{p[0].left, d->with(a)};
    }
    case LLRule::bang_c:
      if (!need(LK::Bang)) return std::nullopt;
      if (p[0].left.count(a) < 2) return ll_fail(why, "bang_c needs two copies of " + lfs(a));
      return LLSequent{*p[0].left.without(a), p[0].right};
    case LLRule::bang_w:
      if (!need(LK::Bang)) return std::nullopt;
      return LLSequent{p[0].left.with(a), p[0].right};
    case LLRule::quest_r: {
      if (!need(LK::Quest)) return std::nullopt;
      auto d = ll_drop(p[0].right, a.operand(), "premise succedent", why);
      if (!d) return std::nullopt;
      return LLSequent{p[0].left, d->with(a)};
    }
    case LLRule::quest_l: {
      if (!need(LK::Quest)) return std::nullopt;
      auto g = ll_drop(p[0].left, a.operand(), "premise antecedent", why);
      if (!g) return std::nullopt;
      if (!all_kind(*g, LK::Bang) || !all_kind(p[0].right, LK::Quest))
        return ll_fail(why, "promotion context: quest_l needs !-formulas on the left and ?-formulas on the right");
      return LLSequent{g->with(a), p[0].right};
    }
    case LLRule::quest_c:
      if (!need(LK::Quest)) return std::nullopt;
      if (p[0].right.count(a) < 2) return ll_fail(why, "quest_c needs two copies of " + lfs(a));
      return LLSequent{p[0].left, *p[0].right.without(a)};
    case LLRule::quest_w:
      if (!need(LK::Quest)) return std::nullopt;
      return LLSequent{p[0].left, p[0].right.with(a)};
  }
  return std::nullopt;
}

LLDerivation ll_make(LLRule r, const LLFormula& a, std::vector<LLDerivation> premises) {
  if (r == LLRule::zero_l) throw PreconditionError("use ll_make_zero for zero_l");
  std::vector<LLSequent> p;
  for (const auto& d : premises) p.push_back(d.conclusion());
  std::string why;
  auto c = ll_infer(r, a, p, &why);
  if (!c) throw PreconditionError("cannot build " + std::string(ll_rule_name(r)) + ": " + why);
  return LLDerivation(std::move(*c), r, std::move(premises), a);
}

LLDerivation ll_make_zero(LLSequent conclusion) {
  if (!conclusion.left.contains(LLFormula::zero())) throw PreconditionError("zero_l needs 0 on the left");
  return LLDerivation(std::move(conclusion), LLRule::zero_l, {}, LLFormula::zero());
}

namespace {

std::vector<LLFormula> ll_candidates(const LLDerivation& d) {
  LLBag all = d.conclusion().left + d.conclusion().right;
  if (d.rule() == LLRule::ll_cut && d.premises().size() == 2)
    return d.premise(0).conclusion().right.common(d.premise(1).conclusion().left).distinct();
  return all.distinct();
}

}  // namespace

CheckReport check_ll(const LLDerivation& d) {
  CheckReport report;
  TreePath path;
  auto match = [](const LLDerivation& n, std::string& why) {
    if (n.premises().size() != ll_arity(n.rule())) {
      why = std::string(ll_rule_name(n.rule())) + " has the wrong number of premises";
      return false;
    }
    if (n.rule() == LLRule::zero_l) {
      if (n.conclusion().left.contains(LLFormula::zero())) return true;
      why = "zero_l needs 0 on the left";
      return false;
    }
    return detail::match_candidates(n, ll_candidates(n), ll_infer, why);
  };
  detail::check_tree(d, match, path, report);
  return report;
}

namespace {

LLDerivation ll_from_text(const ProofText& t) {
  auto r = ll_rule_from_name(t.tag);
  if (!r) throw ParseError("unknown rule tag '" + t.tag + "'");
  std::vector<LLDerivation> prem;
  for (const ProofText& p : t.premises) prem.push_back(ll_from_text(p));
  std::optional<LLFormula> principal;
  if (t.principal) principal = parse_ll_formula(*t.principal);
  return LLDerivation(parse_ll_sequent(t.sequent), *r, std::move(prem), std::move(principal));
}

ProofText ll_to_text(const LLDerivation& d) {
  ProofText t;
  t.tag = std::string(ll_rule_name(d.rule()));
  t.sequent = print_ll_sequent(d.conclusion());
  if (d.principal()) t.principal = print_ll_formula(*d.principal());
  for (const LLDerivation& p : d.premises()) t.premises.push_back(ll_to_text(p));
  return t;
}

}  // namespace

LLDerivation parse_ll_proof(std::string_view text) { return ll_from_text(parse_proof_text(text)); }
std::string print_ll_proof(const LLDerivation& d) { return print_proof_text(ll_to_text(d)); }

// ---------------------------------------------------------------------------
// Translations

LLFormula t_translate(const Formula& a, const PPolicy& policy) {
  switch (a.kind()) {
    case Formula::Kind::Zero:
    case Formula::Kind::Bot:
      return LLFormula::zero();
    case Formula::Kind::Var:
      return LLFormula::bang(LLFormula::atom(a.name()));
    case Formula::Kind::And:
      return LLFormula::tensor(LLFormula::bang(b_translate(a.left(), policy)),
                               LLFormula::bang(b_translate(a.right(), policy)));
    case Formula::Kind::Or:
      return LLFormula::plus(LLFormula::bang(b_translate(a.left(), policy)),
                             LLFormula::bang(b_translate(a.right(), policy)));
    case Formula::Kind::Imp:
      return LLFormula::bang(LLFormula::lolli(t_translate(a.left(), policy), b_translate(a.right(), policy)));
  }
  throw InternalError("unhandled formula kind");
}

LLFormula b_translate(const Formula& a, const PPolicy& policy) {
  LLFormula t = t_translate(a, policy);
  return policy.contains(a) ? LLFormula::quest(t) : t;
}

LLSequent translate_sequent(const PSequent& s, const PPolicy& policy) {
  LLSequent out;
  for (const Formula& f : s.antecedent) out.left.insert(t_translate(f, policy));
  for (const Formula& f : s.body) out.right.insert(LLFormula::quest(t_translate(f, policy)));
  if (s.stoup) out.right.insert(t_translate(*s.stoup, policy));
  return out;
}

bool is_bang_like(const LLFormula& f) {
  switch (f.kind()) {
    case LK::Zero:
    case LK::Bang:
      return true;
    case LK::Tensor:
    case LK::Plus:
      return f.left().is(LK::Bang) && f.right().is(LK::Bang);
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// Inversion

namespace {

// Left formulas a premise carries beyond its share of the conclusion's
// left context.
LLBag active_left(const LLDerivation& n, std::size_t i) {
  const LLFormula& a = *n.principal();
  LLBag out;
  switch (n.rule()) {
    case LLRule::ll_cut:
      if (i == 1) out.insert(a);
      break;
    case LLRule::tensor_l:
      out.insert(a.left());
      out.insert(a.right());
      break;
    case LLRule::plus_l:
      out.insert(i == 0 ? a.left() : a.right());
      break;
    case LLRule::lolli_l:
      if (i == 0) out.insert(a.right());
      break;
    case LLRule::lolli_r:
      out.insert(a.left());
      break;
    case LLRule::bang_l:
    case LLRule::quest_l:
      out.insert(a.operand());
      break;
    case LLRule::bang_c:
      out.insert_n(a, 2);
      break;
    default:
      break;
  }
  return out;
}

// Index of a premise that inherits an occurrence of f from the conclusion's
// left context.
std::size_t inheriting_premise(const LLDerivation& n, const LLFormula& f) {
  for (std::size_t i = 0; i < n.premises().size(); ++i) {
    const LLBag& left = n.premise(i).conclusion().left;
    if (left.count(f) > active_left(n, i).count(f)) return i;
  }
  throw InternalError("occurrence of " + lfs(f) + " cannot be traced through " + std::string(ll_rule_name(n.rule())));
}

LLDerivation rebuild(const LLDerivation& n, std::vector<LLDerivation> premises) {
  return ll_make(n.rule(), *n.principal(), std::move(premises));
}

LLDerivation annotate_ll(const LLDerivation& d) {
  std::vector<LLDerivation> p;
  for (const auto& q : d.premises()) p.push_back(annotate_ll(q));
  if (d.rule() == LLRule::zero_l) return ll_make_zero(d.conclusion());
  std::vector<LLFormula> cands = d.principal() ? std::vector<LLFormula>{*d.principal()} : ll_candidates(d);
  std::vector<LLSequent> ps;
  for (const auto& q : p) ps.push_back(q.conclusion());
  for (const LLFormula& a : cands) {
    auto c = ll_infer(d.rule(), a, ps, nullptr);
    if (c && *c == d.conclusion()) return LLDerivation(d.conclusion(), d.rule(), std::move(p), a);
  }
  throw PreconditionError("invalid LL node " + std::string(ll_rule_name(d.rule())));
}

LLDerivation inv_tensor(const LLDerivation& d, const LLFormula& t) {
  const LLSequent& c = d.conclusion();
  switch (d.rule()) {
    case LLRule::ll_ax:
      return ll_make(LLRule::tensor_r, t,
                     {ll_make(LLRule::ll_ax, t.left(), {}), ll_make(LLRule::ll_ax, t.right(), {})});
    case LLRule::zero_l:
      return ll_make_zero(LLSequent{c.left.without(t)->with(t.left()).with(t.right()), c.right});
    case LLRule::tensor_l:
      if (*d.principal() == t) return d.premise(0);
      break;
    default:
      break;
  }
  std::size_t i = inheriting_premise(d, t);
  std::vector<LLDerivation> p = d.premises();
  p[i] = inv_tensor(p[i], t);
  if (d.rule() == LLRule::plus_l) p[1 - i] = inv_tensor(p[1 - i], t);
  return rebuild(d, std::move(p));
}

std::pair<LLDerivation, LLDerivation> inv_plus(const LLDerivation& d, const LLFormula& s) {
  const LLSequent& c = d.conclusion();
  switch (d.rule()) {
    case LLRule::ll_ax:
      return {ll_make(LLRule::plus_r1, s, {ll_make(LLRule::ll_ax, s.left(), {})}),
              ll_make(LLRule::plus_r2, s, {ll_make(LLRule::ll_ax, s.right(), {})})};
    case LLRule::zero_l: {
      LLBag rest = *c.left.without(s);
      return {ll_make_zero(LLSequent{rest.with(s.left()), c.right}),
              ll_make_zero(LLSequent{rest.with(s.right()), c.right})};
    }
    case LLRule::plus_l:
      if (*d.principal() == s) return {d.premise(0), d.premise(1)};
      {
        auto [a0, b0] = inv_plus(d.premise(0), s);
        auto [a1, b1] = inv_plus(d.premise(1), s);
        return {rebuild(d, {a0, a1}), rebuild(d, {b0, b1})};
      }
    default:
      break;
  }
  std::size_t i = inheriting_premise(d, s);
  auto [a, b] = inv_plus(d.premise(i), s);
  std::vector<LLDerivation> pa = d.premises();
  std::vector<LLDerivation> pb = d.premises();
  pa[i] = a;
  pb[i] = b;
  return {rebuild(d, std::move(pa)), rebuild(d, std::move(pb))};
}

void require_left(const LLDerivation& d, const LLFormula& f, std::size_t n, const char* op) {
  if (d.conclusion().left.count(f) < n)
    throw PreconditionError(std::string(op) + ": conclusion lacks " + std::to_string(n) + " copies of " + lfs(f) +
                            " on the left");
}

}  // namespace

LLDerivation invert_tensor_l(const LLDerivation& d, const LLFormula& tensor) {
  if (!tensor.is(LK::Tensor)) throw PreconditionError("invert_tensor_l needs a tensor formula");
  require_left(d, tensor, 1, "invert_tensor_l");
  return inv_tensor(annotate_ll(d), tensor);
}

std::pair<LLDerivation, LLDerivation> invert_plus_l(const LLDerivation& d, const LLFormula& plus) {
  if (!plus.is(LK::Plus)) throw PreconditionError("invert_plus_l needs a plus formula");
  require_left(d, plus, 1, "invert_plus_l");
  return inv_plus(annotate_ll(d), plus);
}

// ---------------------------------------------------------------------------
// Structural transformers

LLDerivation contract_ll(const LLDerivation& d, const LLFormula& f) {
  require_left(d, f, 2, "contraction");
  const LLSequent& c = d.conclusion();
  switch (f.kind()) {
    case LK::Zero:
      return ll_make_zero(LLSequent{*c.left.without(f), c.right});
    case LK::Bang:
      return ll_make(LLRule::bang_c, f, {d});
    case LK::Tensor: {
      LLDerivation e = invert_tensor_l(invert_tensor_l(d, f), f);
      e = contract_ll(contract_ll(e, f.left()), f.right());
      return ll_make(LLRule::tensor_l, f, {e});
    }
    case LK::Plus: {
      auto [d1, d2] = invert_plus_l(d, f);
      LLDerivation left_left = invert_plus_l(d1, f).first;
      LLDerivation right_right = invert_plus_l(d2, f).second;
      return ll_make(LLRule::plus_l, f, {contract_ll(left_left, f.left()), contract_ll(right_right, f.right())});
    }
    default:
      throw PreconditionError("contraction needs a !-like formula, got " + lfs(f));
  }
}

LLDerivation weaken_ll(const LLDerivation& d, const LLFormula& f) {
  const LLSequent& c = d.conclusion();
  switch (f.kind()) {
    case LK::Zero:
      return ll_make_zero(LLSequent{c.left.with(f), c.right});
    case LK::Bang:
      return ll_make(LLRule::bang_w, f, {d});
    case LK::Tensor:
      return ll_make(LLRule::tensor_l, f, {weaken_ll(weaken_ll(d, f.left()), f.right())});
    case LK::Plus:
      return ll_make(LLRule::plus_l, f, {weaken_ll(d, f.left()), weaken_ll(d, f.right())});
    default:
      throw PreconditionError("weakening needs a !-like formula, got " + lfs(f));
  }
}

LLDerivation contract_t(const LLDerivation& d, const Formula& a, const PPolicy& policy) {
  return contract_ll(d, t_translate(a, policy));
}

LLDerivation weaken_t(const LLDerivation& d, const Formula& a, const PPolicy& policy) {
  return weaken_ll(d, t_translate(a, policy));
}

namespace {

enum class Side { Left, Right };

// Inverts every tensor/plus of the context until it is !-only, applies the
// promotion there and rebuilds the inverted rules below it.
LLDerivation promote(const LLDerivation& d, const LLFormula& a, Side side) {
  const LLSequent& c = d.conclusion();
  LLBag ctx = c.left;
  LLBag others = c.right;
  if (side == Side::Left) {
    auto rest = c.left.without(a);
    if (!rest) throw PreconditionError("? on the left: " + lfs(a) + " is not on the left of the premise");
    ctx = *rest;
  } else {
    auto rest = c.right.without(a);
    if (!rest) throw PreconditionError("! on the right: " + lfs(a) + " is not on the right of the premise");
    others = *rest;
  }
  if (!all_kind(others, LK::Quest))
    throw PreconditionError("promotion needs every other succedent formula to be ?-prefixed");

  const LLFormula target = side == Side::Left ? LLFormula::quest(a) : LLFormula::bang(a);
  if (ctx.contains(LLFormula::zero())) {
    if (side == Side::Left) return ll_make_zero(LLSequent{ctx.with(target), others});
    return ll_make_zero(LLSequent{ctx, others.with(target)});
  }
  for (const LLFormula& g : ctx.distinct()) {
    if (g.is(LK::Bang)) continue;
    if (g.is(LK::Tensor)) return ll_make(LLRule::tensor_l, g, {promote(invert_tensor_l(d, g), a, side)});
    if (g.is(LK::Plus)) {
      auto [d1, d2] = invert_plus_l(d, g);
      return ll_make(LLRule::plus_l, g, {promote(d1, a, side), promote(d2, a, side)});
    }
    throw PreconditionError("promotion context contains " + lfs(g) + ", which is not !-like");
  }
  return ll_make(side == Side::Left ? LLRule::quest_l : LLRule::bang_r, target, {d});
}

}  // namespace

LLDerivation quest_left_t(const LLDerivation& d, const LLFormula& a) { return promote(d, a, Side::Left); }

LLDerivation bang_right_t(const LLDerivation& d, const LLFormula& a) { return promote(d, a, Side::Right); }

// ---------------------------------------------------------------------------
// Derivations

namespace {

class Translator {
 public:
  explicit Translator(const PPolicy& policy) : policy_(policy) {}

  LLDerivation run(const Derivation& n) {
    const Formula& a = *n.principal();
    std::vector<LLDerivation> p;
    for (const Derivation& q : n.premises()) p.push_back(run(q));
    const LLFormula ta = t(a);
    switch (n.rule()) {
      case Rule::ax: return ll_make(LLRule::ll_ax, ta, {});
      case Rule::cut1: return ll_make(LLRule::ll_cut, ta, {p[0], p[1]});
      case Rule::cut2: return ll_make(LLRule::ll_cut, LLFormula::quest(ta), {p[0], quest_left_t(p[1], ta)});
      case Rule::der: return ll_make(LLRule::quest_r, LLFormula::quest(ta), {p[0]});
      case Rule::c_l: return contract_ll(p[0], ta);
      case Rule::c_r: return ll_make(LLRule::quest_c, LLFormula::quest(ta), {p[0]});
      case Rule::w_l: return weaken_ll(p[0], ta);
      case Rule::w_r: return ll_make(LLRule::quest_w, LLFormula::quest(ta), {p[0]});
      case Rule::zero:
      case Rule::bot: return ll_make_zero(translate_sequent(n.conclusion(), policy_));

      case Rule::and1_l:
      case Rule::and2_l: {
        LLDerivation q = bang_left(bang_left(p[0], a.left()), a.right());
        return ll_make(LLRule::tensor_l, ta, {q});
      }
      case Rule::or1_l:
      case Rule::or2_l:
        return ll_make(LLRule::plus_l, ta, {bang_left(p[0], a.left()), bang_left(p[1], a.right())});
      case Rule::imp1_l:
      case Rule::imp2_l: {
        LLFormula lolli = ta.operand();
        return ll_make(LLRule::bang_l, ta, {ll_make(LLRule::lolli_l, lolli, {to_b_left(p[0], a.right()), p[1]})});
      }
      case Rule::imp3_l: {
        // t(G), b(B) |- ?t(D)  and  t(A) |- t(A)
        LLFormula lolli = ta.operand();
        LLFormula t_x = t(a.left());
        LLDerivation step = ll_make(LLRule::lolli_l, lolli, {to_b_left(p[0], a.right()), ll_make(LLRule::ll_ax, t_x, {})});
        step = ll_make(LLRule::bang_l, ta, {step});
        step = quest_left_t(step, t_x);
        return ll_make(LLRule::ll_cut, LLFormula::quest(t_x), {p[1], step});
      }

      case Rule::and1_r:
      case Rule::and2_r:
      case Rule::and3_r:
      case Rule::and4_r: {
        const bool x_stoup = n.rule() == Rule::and1_r || n.rule() == Rule::and3_r;
        const bool y_stoup = n.rule() == Rule::and1_r || n.rule() == Rule::and4_r;
        return ll_make(LLRule::tensor_r, ta,
                       {bang_right(p[0], a.left(), x_stoup), bang_right(p[1], a.right(), y_stoup)});
      }
      case Rule::or1_r: return ll_make(LLRule::plus_r1, ta, {bang_right(p[0], a.left(), true)});
      case Rule::or2_r: return ll_make(LLRule::plus_r2, ta, {bang_right(p[0], a.right(), true)});
      case Rule::or3_r: return ll_make(LLRule::plus_r1, ta, {bang_right(p[0], a.left(), false)});
      case Rule::or4_r: return ll_make(LLRule::plus_r2, ta, {bang_right(p[0], a.right(), false)});
      case Rule::imp1_r:
      case Rule::imp2_r: {
        LLFormula lolli = ta.operand();
        LLDerivation q = p[0];
        if (n.rule() == Rule::imp1_r && policy_.contains(a.right()))
          q = ll_make(LLRule::quest_r, b(a.right()), {q});
        return bang_right_t(ll_make(LLRule::lolli_r, lolli, {q}), lolli);
      }
    }
    throw InternalError("unhandled rule");
  }

 private:
  LLFormula t(const Formula& f) const { return t_translate(f, policy_); }
  LLFormula b(const Formula& f) const { return b_translate(f, policy_); }

  // t(x) on the left becomes b(x).
  LLDerivation to_b_left(const LLDerivation& d, const Formula& x) const {
    if (!policy_.contains(x)) return d;
    return quest_left_t(d, t(x));
  }

  // t(x) on the left becomes !b(x).
  LLDerivation bang_left(const LLDerivation& d, const Formula& x) const {
    return ll_make(LLRule::bang_l, LLFormula::bang(b(x)), {to_b_left(d, x)});
  }

  // The component x, from the stoup as t(x) or from the body as ?t(x),
  // becomes !b(x) on the right.
  LLDerivation bang_right(const LLDerivation& d, const Formula& x, bool from_stoup) const {
    LLDerivation q = d;
    if (from_stoup && policy_.contains(x)) q = ll_make(LLRule::quest_r, b(x), {q});
    return bang_right_t(q, b(x));
  }

  const PPolicy& policy_;
};

}  // namespace

LLDerivation translate_derivation(const Derivation& d, const PPolicy& policy) {
  Derivation annotated = annotate(d, policy);
  LLDerivation out = Translator(policy).run(annotated);
  if (!(out.conclusion() == translate_sequent(d.conclusion(), policy)))
    throw InternalError("translation concluded " + print_ll_sequent(out.conclusion()));
  CheckReport rep = check_ll(out);
  if (!rep.ok) throw InternalError("translation produced an invalid LL derivation: " + rep.summary());
  return out;
}

}  // namespace mixed
