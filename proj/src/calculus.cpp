#include "mixed/calculus.hpp"

#include <algorithm>
#include <sstream>

#include "mixed/error.hpp"
#include "sequent_parser.hpp"

namespace mixed {

namespace {

struct RuleInfo {
  Rule rule;
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<RuleInfo, kRuleCount> kRules = {{
    {Rule::ax, "ax", 0},         {Rule::cut1, "cut1", 2},     {Rule::cut2, "cut2", 2},
    {Rule::der, "der", 1},       {Rule::c_l, "c_l", 1},       {Rule::c_r, "c_r", 1},
    {Rule::w_l, "w_l", 1},       {Rule::w_r, "w_r", 1},       {Rule::zero, "zero", 0},
    {Rule::bot, "bot", 0},       {Rule::and1_l, "and1_l", 1}, {Rule::and2_l, "and2_l", 1},
    {Rule::and1_r, "and1_r", 2}, {Rule::and2_r, "and2_r", 2}, {Rule::and3_r, "and3_r", 2},
    {Rule::and4_r, "and4_r", 2}, {Rule::or1_l, "or1_l", 2},   {Rule::or2_l, "or2_l", 2},
    {Rule::or1_r, "or1_r", 1},   {Rule::or2_r, "or2_r", 1},   {Rule::or3_r, "or3_r", 1},
    {Rule::or4_r, "or4_r", 1},   {Rule::imp1_l, "imp1_l", 2}, {Rule::imp2_l, "imp2_l", 2},
    {Rule::imp3_l, "imp3_l", 2}, {Rule::imp1_r, "imp1_r", 1}, {Rule::imp2_r, "imp2_r", 1},
}};

const RuleInfo& info(Rule r) { return kRules[static_cast<std::size_t>(r)]; }

using Kind = Formula::Kind;

Kind connective_of(Rule r) {
  switch (r) {
    case Rule::and1_l: case Rule::and2_l: case Rule::and1_r: case Rule::and2_r:
    case Rule::and3_r: case Rule::and4_r:
      return Kind::And;
    case Rule::or1_l: case Rule::or2_l: case Rule::or1_r: case Rule::or2_r:
    case Rule::or3_r: case Rule::or4_r:
      return Kind::Or;
    default:
      return Kind::Imp;
  }
}

std::string fs(const Formula& f) { return print_formula(f); }

}  // namespace

std::array<Rule, kRuleCount> all_rules() {
  std::array<Rule, kRuleCount> out{};
  for (std::size_t i = 0; i < kRuleCount; ++i) out[i] = kRules[i].rule;
  return out;
}

std::string_view rule_name(Rule r) { return info(r).name; }

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const RuleInfo& i : kRules)
    if (i.name == name) return i.rule;
  return std::nullopt;
}

std::size_t rule_arity(Rule r) { return info(r).arity; }

bool is_cut(Rule r) { return r == Rule::cut1 || r == Rule::cut2; }

bool is_right_logical(Rule r) {
  switch (r) {
    case Rule::and1_r: case Rule::and2_r: case Rule::and3_r: case Rule::and4_r:
    case Rule::or1_r: case Rule::or2_r: case Rule::or3_r: case Rule::or4_r:
    case Rule::imp1_r: case Rule::imp2_r:
      return true;
    default:
      return false;
  }
}

bool is_left_logical(Rule r) {
  switch (r) {
    case Rule::and1_l: case Rule::and2_l: case Rule::or1_l: case Rule::or2_l:
    case Rule::imp1_l: case Rule::imp2_l: case Rule::imp3_l:
      return true;
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// Sequent text.

PSequent parse_sequent(std::string_view text) {
  using namespace detail;
  TokenStream ts(tokenize(text));
  PSequent s;
  s.antecedent = FormulaBag(parse_formula_list(ts, Tok::Turnstile));
  ts.expect(Tok::Turnstile, "'|-'");
  s.body = FormulaBag(parse_formula_list(ts, Tok::Semi));
  ts.expect(Tok::Semi, "';' separating body and stoup");
  if (!ts.at(Tok::End)) s.stoup = parse_formula_at(ts);
  if (!ts.at(Tok::End)) ts.fail("the stoup holds at most one formula");
  return s;
}

std::string print_sequent(const PSequent& s) {
  std::string out = detail::join_formulas(s.antecedent);
  out += out.empty() ? "|-" : " |-";
  if (!s.body.empty()) out += " " + detail::join_formulas(s.body);
  out += " ;";
  if (s.stoup) out += " " + print_formula(*s.stoup);
  return out;
}

// ---------------------------------------------------------------------------

Derivation::Derivation(PSequent conclusion, Rule rule, std::vector<Derivation> premises,
                       std::optional<Formula> principal) {
  auto n = std::make_shared<Node>();
  n->conclusion = std::move(conclusion);
  n->rule = rule;
  n->premises = std::move(premises);
  n->principal = std::move(principal);
  for (const Derivation& p : n->premises) {
    n->nodes += p.node_count();
    n->height = std::max(n->height, p.height() + 1);
  }
  node_ = std::move(n);
}

bool operator==(const Derivation& a, const Derivation& b) {
  if (a.node_ == b.node_) return true;
  return a.rule() == b.rule() && a.conclusion() == b.conclusion() && a.principal() == b.principal() &&
         a.premises() == b.premises();
}

std::string path_string(const TreePath& p) {
  std::string out = "root";
  for (std::size_t i : p) out += "." + std::to_string(i);
  return out;
}

std::string CheckReport::summary() const {
  if (ok) return "ok";
  std::ostringstream os;
  for (const CheckFailure& f : failures) os << f.path << ": " << f.message << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Schema recombination.

std::optional<PSequent> infer_conclusion(Rule r, const Formula& a, const std::vector<PSequent>& prem,
                                         std::string* why) {
  auto fail = [&](std::string msg) -> std::optional<PSequent> {
    if (why) *why = std::move(msg);
    return std::nullopt;
  };
  if (prem.size() != rule_arity(r))
    return fail("rule " + std::string(rule_name(r)) + " expects " + std::to_string(rule_arity(r)) +
                " premise(s), got " + std::to_string(prem.size()));

  auto drop = [&](const FormulaBag& b, const Formula& f, const char* where) -> std::optional<FormulaBag> {
    auto out = b.without(f);
    if (!out) fail(fs(f) + " missing from premise " + where);
    return out;
  };
  auto stoup_is = [&](const PSequent& s, const Formula& f) { return s.stoup && *s.stoup == f; };

  switch (r) {
    case Rule::ax:
      return PSequent{FormulaBag{a}, {}, a};

    case Rule::cut1: {
      if (!stoup_is(prem[0], a)) return fail("left premise of cut1 must hold the cut formula in its stoup");
      auto g2 = drop(prem[1].antecedent, a, "antecedent");
      if (!g2) return std::nullopt;
      return PSequent{prem[0].antecedent + *g2, prem[0].body + prem[1].body, prem[1].stoup};
    }
    case Rule::cut2: {
      if (prem[1].stoup) return fail("right premise of cut2 must have an empty stoup");
      auto d1 = drop(prem[0].body, a, "body");
      auto g2 = drop(prem[1].antecedent, a, "antecedent");
      if (!d1 || !g2) return std::nullopt;
      return PSequent{prem[0].antecedent + *g2, *d1 + prem[1].body, prem[0].stoup};
    }
    case Rule::der:
      if (!stoup_is(prem[0], a)) return fail("der moves the stoup formula; premise stoup must be " + fs(a));
      return PSequent{prem[0].antecedent, prem[0].body.with(a), std::nullopt};
    case Rule::c_l: {
      if (prem[0].antecedent.count(a) < 2) return fail("c_l needs two copies of " + fs(a));
      return PSequent{*prem[0].antecedent.without(a), prem[0].body, prem[0].stoup};
    }
    case Rule::c_r: {
      if (prem[0].body.count(a) < 2) return fail("c_r needs two copies of " + fs(a));
      return PSequent{prem[0].antecedent, *prem[0].body.without(a), prem[0].stoup};
    }
    case Rule::w_l:
      return PSequent{prem[0].antecedent.with(a), prem[0].body, prem[0].stoup};
    case Rule::w_r:
      return PSequent{prem[0].antecedent, prem[0].body.with(a), prem[0].stoup};
    case Rule::zero:
      return fail("the 0 rule has no computed conclusion");
    case Rule::bot:
      if (!a.is(Kind::Bot)) return fail("bot rule acts on bot");
      return PSequent{FormulaBag{a}, {}, std::nullopt};
    default:
      break;
  }

  // Logical rules.
  if (a.kind() != connective_of(r))
    return fail(std::string(rule_name(r)) + " cannot act on " + fs(a));
  const Formula& x = a.left();
  const Formula& y = a.right();

  switch (r) {
    case Rule::and1_l:
    case Rule::and2_l: {
      const PSequent& p = prem[0];
      if (r == Rule::and1_l && !p.stoup) return fail("and1_l requires an occupied stoup");
      if (r == Rule::and2_l && p.stoup) return fail("and2_l requires an empty stoup");
      auto g = p.antecedent.without(x);
      if (g) g = g->without(y);
      if (!g) return fail("premise antecedent lacks the components of " + fs(a));
      return PSequent{g->with(a), p.body, p.stoup};
    }
    case Rule::and1_r:
    case Rule::and2_r:
    case Rule::and3_r:
    case Rule::and4_r: {
      const bool left_stoup = r == Rule::and1_r || r == Rule::and3_r;
      const bool right_stoup = r == Rule::and1_r || r == Rule::and4_r;
      FormulaBag d1 = prem[0].body;
      FormulaBag d2 = prem[1].body;
      if (left_stoup) {
        if (!stoup_is(prem[0], x)) return fail("left premise stoup must be " + fs(x));
      } else {
        if (prem[0].stoup) return fail("left premise stoup must be empty");
        auto d = drop(d1, x, "body");
        if (!d) return std::nullopt;
        d1 = *d;
      }
      if (right_stoup) {
        if (!stoup_is(prem[1], y)) return fail("right premise stoup must be " + fs(y));
      } else {
        if (prem[1].stoup) return fail("right premise stoup must be empty");
        auto d = drop(d2, y, "body");
        if (!d) return std::nullopt;
        d2 = *d;
      }
      return PSequent{prem[0].antecedent + prem[1].antecedent, d1 + d2, a};
    }
    case Rule::or1_l:
    case Rule::or2_l: {
      if (r == Rule::or1_l && !(prem[0].stoup && prem[1].stoup)) return fail("or1_l requires occupied stoups");
      if (r == Rule::or2_l && (prem[0].stoup || prem[1].stoup)) return fail("or2_l requires empty stoups");
      auto g1 = drop(prem[0].antecedent, x, "antecedent");
      auto g2 = drop(prem[1].antecedent, y, "antecedent");
      if (!g1 || !g2) return std::nullopt;
      if (!(*g1 == *g2) || !(prem[0].body == prem[1].body) || !(prem[0].stoup == prem[1].stoup))
        return fail("premises of " + std::string(rule_name(r)) + " must share their context");
      return PSequent{g1->with(a), prem[0].body, prem[0].stoup};
    }
    case Rule::or1_r:
    case Rule::or2_r: {
      const Formula& c = r == Rule::or1_r ? x : y;
      if (!stoup_is(prem[0], c)) return fail("premise stoup must be " + fs(c));
      return PSequent{prem[0].antecedent, prem[0].body, a};
    }
    case Rule::or3_r:
    case Rule::or4_r: {
      const Formula& c = r == Rule::or3_r ? x : y;
      if (prem[0].stoup) return fail("premise stoup must be empty");
      auto d = drop(prem[0].body, c, "body");
      if (!d) return std::nullopt;
      return PSequent{prem[0].antecedent, *d, a};
    }
    case Rule::imp1_l:
    case Rule::imp2_l:
    case Rule::imp3_l: {
      auto g1 = drop(prem[0].antecedent, y, "antecedent");
      if (!g1) return std::nullopt;
      FormulaBag gamma = g1->with(a) + prem[1].antecedent;
      if (r == Rule::imp1_l || r == Rule::imp2_l) {
        if (r == Rule::imp1_l && !prem[0].stoup) return fail("imp1_l requires an occupied stoup");
        if (r == Rule::imp2_l && prem[0].stoup) return fail("imp2_l requires an empty stoup");
        if (!stoup_is(prem[1], x)) return fail("right premise stoup must be " + fs(x));
        return PSequent{gamma, prem[0].body + prem[1].body, prem[0].stoup};
      }
      if (prem[0].stoup) return fail("imp3_l requires an empty stoup in the left premise");
      auto d2 = drop(prem[1].body, x, "body");
      if (!d2) return std::nullopt;
      return PSequent{gamma, prem[0].body + *d2, prem[1].stoup};
    }
    case Rule::imp1_r: {
      if (!stoup_is(prem[0], y)) return fail("premise stoup must be " + fs(y));
      auto g = drop(prem[0].antecedent, x, "antecedent");
      if (!g) return std::nullopt;
      return PSequent{*g, prem[0].body, a};
    }
    case Rule::imp2_r: {
      if (prem[0].stoup) return fail("premise stoup must be empty");
      auto g = drop(prem[0].antecedent, x, "antecedent");
      auto d = drop(prem[0].body, y, "body");
      if (!g || !d) return std::nullopt;
      return PSequent{*g, *d, a};
    }
    default:
      break;
  }
  return fail("unhandled rule");
}

// ---------------------------------------------------------------------------
// Checking.

namespace {

std::vector<Formula> of_kind(const FormulaBag& b, Kind k) {
  std::vector<Formula> out;
  for (const Formula& f : b.distinct())
    if (f.is(k)) out.push_back(f);
  return out;
}

// Formulas the rule could be acting on, judged from the node alone.
std::vector<Formula> candidates(const Derivation& d) {
  const PSequent& c = d.conclusion();
  std::vector<PSequent> prem;
  for (const Derivation& p : d.premises()) prem.push_back(p.conclusion());
  const Rule r = d.rule();
  switch (r) {
    case Rule::ax:
      if (c.stoup) return {*c.stoup};
      return {};
    case Rule::cut1:
    case Rule::der:
      if (!prem.empty() && prem[0].stoup) return {*prem[0].stoup};
      return {};
    case Rule::cut2:
      if (prem.size() == 2) return prem[0].body.common(prem[1].antecedent).distinct();
      return {};
    case Rule::c_l:
    case Rule::w_l:
      return c.antecedent.distinct();
    case Rule::c_r:
    case Rule::w_r:
      return c.body.distinct();
    case Rule::zero:
      return {Formula::zero()};
    case Rule::bot:
      return {Formula::bot()};
    default:
      break;
  }
  if (is_left_logical(r)) return of_kind(c.antecedent, connective_of(r));
  if (c.stoup && c.stoup->is(connective_of(r))) return {*c.stoup};
  return {};
}

// P-membership conditions attached to the rule itself.
std::optional<std::string> side_condition(const Derivation& d, const Formula& a, const PPolicy& policy) {
  auto in_p = [&](const Formula& f) { return policy.contains(f); };
  switch (d.rule()) {
    case Rule::der:
    case Rule::w_r:
      if (!in_p(a)) return "side condition A in P violated (A = " + fs(a) + ")";
      break;
    case Rule::zero:
      for (const Formula& f : d.conclusion().body)
        if (!in_p(f)) return "side condition Delta subset of P violated (" + fs(f) + ")";
      break;
    case Rule::and1_l:
    case Rule::or1_l:
      if (in_p(a.left()) || in_p(a.right()))
        return "side condition A not in P and B not in P violated (" + fs(a) + ")";
      break;
    case Rule::imp1_l:
      if (in_p(a.right())) return "side condition B not in P violated (B = " + fs(a.right()) + ")";
      break;
    default:
      break;
  }
  return std::nullopt;
}

// Returns the principal that makes the node a correct instance, or the
// reason none does.
std::optional<Formula> match_node(const Derivation& d, const PPolicy& policy, std::string& why,
                                  bool side_conditions = true) {
  const PSequent& c = d.conclusion();
  if (d.premises().size() != rule_arity(d.rule())) {
    why = "rule " + std::string(rule_name(d.rule())) + " expects " + std::to_string(rule_arity(d.rule())) +
          " premise(s), got " + std::to_string(d.premises().size());
    return std::nullopt;
  }
  std::vector<Formula> cands =
      d.principal() ? std::vector<Formula>{*d.principal()} : candidates(d);
  if (cands.empty()) {
    why = "no formula fits the " + std::string(rule_name(d.rule())) + " schema";
    return std::nullopt;
  }
  std::vector<PSequent> prem;
  for (const Derivation& p : d.premises()) prem.push_back(p.conclusion());

  std::string first_reason;
  for (const Formula& a : cands) {
    std::string reason;
    bool shape_ok = false;
    if (d.rule() == Rule::zero) {
      shape_ok = a.is(Kind::Zero) && c.antecedent.contains(a);
      if (!shape_ok) reason = "0 rule needs 0 in the antecedent";
    } else if (auto inferred = infer_conclusion(d.rule(), a, prem, &reason)) {
      shape_ok = *inferred == c;
      if (!shape_ok)
        reason = "conclusion does not match the " + std::string(rule_name(d.rule())) +
                 " schema (expected " + print_sequent(*inferred) + ")";
    }
    if (shape_ok) {
      if (auto sc = side_conditions ? side_condition(d, a, policy) : std::nullopt) {
        reason = *sc;
      } else {
        return a;
      }
    }
    if (first_reason.empty() || (shape_ok && first_reason.find("side condition") == std::string::npos))
      first_reason = reason;
  }
  why = first_reason;
  return std::nullopt;
}

void check_rec(const Derivation& d, const PPolicy& policy, TreePath& path, CheckReport& report) {
  for (const Formula& f : d.conclusion().body)
    if (!policy.contains(f)) report.fail(path_string(path), "body formula " + fs(f) + " is not in P");
  std::string why;
  if (!match_node(d, policy, why)) report.fail(path_string(path), why);
  for (std::size_t i = 0; i < d.premises().size(); ++i) {
    path.push_back(i);
    check_rec(d.premise(i), policy, path, report);
    path.pop_back();
  }
}

}  // namespace

CheckReport check_derivation(const Derivation& d, const PPolicy& policy) {
  CheckReport report;
  TreePath path;
  check_rec(d, policy, path, report);
  return report;
}

bool is_cut_free(const Derivation& d) {
  if (is_cut(d.rule())) return false;
  return std::all_of(d.premises().begin(), d.premises().end(), [](const Derivation& p) { return is_cut_free(p); });
}

std::optional<Formula> resolve_principal(const Derivation& node) {
  if (node.principal()) return node.principal();
  std::string why;
  return match_node(node, PPolicy::all(), why, /*side_conditions=*/false);
}

Derivation annotate(const Derivation& d, const PPolicy& policy) {
  std::vector<Derivation> prem;
  prem.reserve(d.premises().size());
  for (const Derivation& p : d.premises()) prem.push_back(annotate(p, policy));
  std::string why;
  for (const Formula& f : d.conclusion().body)
    if (!policy.contains(f)) throw PreconditionError("body formula " + fs(f) + " is not in P");
  auto a = match_node(d, policy, why);
  if (!a) throw PreconditionError("invalid " + std::string(rule_name(d.rule())) + " node: " + why);
  return Derivation(d.conclusion(), d.rule(), std::move(prem), *a);
}

// ---------------------------------------------------------------------------
// Builders.

Derivation make(Rule r, const Formula& principal, std::vector<Derivation> premises) {
  if (r == Rule::zero) throw PreconditionError("use make_zero for the 0 rule");
  std::vector<PSequent> prem;
  for (const Derivation& p : premises) prem.push_back(p.conclusion());
  std::string why;
  auto c = infer_conclusion(r, principal, prem, &why);
  if (!c) throw PreconditionError("cannot build " + std::string(rule_name(r)) + ": " + why);
  return Derivation(std::move(*c), r, std::move(premises), principal);
}

Derivation make_cut1(Derivation left, Derivation right) {
  if (!left.conclusion().stoup) throw PreconditionError("cut1 needs a stoup formula on the left");
  Formula a = *left.conclusion().stoup;
  return make(Rule::cut1, a, {std::move(left), std::move(right)});
}

Derivation make_zero(PSequent conclusion) {
  if (!conclusion.antecedent.contains(Formula::zero()))
    throw PreconditionError("0 rule needs 0 in the antecedent");
  return Derivation(std::move(conclusion), Rule::zero, {}, Formula::zero());
}

Derivation make_bot() { return make(Rule::bot, Formula::bot(), {}); }

Derivation make_ax(const Formula& a) { return make(Rule::ax, a, {}); }

Derivation weaken_all(Derivation d, const FormulaBag& gamma, const FormulaBag& delta) {
  for (const Formula& f : gamma) d = make(Rule::w_l, f, {std::move(d)});
  for (const Formula& f : delta) d = make(Rule::w_r, f, {std::move(d)});
  return d;
}

Derivation contract_all(Derivation d, const FormulaBag& gamma, const FormulaBag& delta) {
  for (const Formula& f : gamma) d = make(Rule::c_l, f, {std::move(d)});
  for (const Formula& f : delta) d = make(Rule::c_r, f, {std::move(d)});
  return d;
}

const Derivation& node_at(const Derivation& d, const TreePath& path) {
  const Derivation* cur = &d;
  for (std::size_t i : path) {
    if (i >= cur->premises().size()) throw PreconditionError("path " + path_string(path) + " leaves the tree");
    cur = &cur->premise(i);
  }
  return *cur;
}

namespace {

Derivation replace_rec(const Derivation& d, const TreePath& path, std::size_t depth, Derivation& repl) {
  if (depth == path.size()) return std::move(repl);
  std::vector<Derivation> prem = d.premises();
  std::size_t i = path[depth];
  if (i >= prem.size()) throw PreconditionError("path " + path_string(path) + " leaves the tree");
  prem[i] = replace_rec(prem[i], path, depth + 1, repl);
  return Derivation(d.conclusion(), d.rule(), std::move(prem), d.principal());
}

}  // namespace

Derivation replace_at(const Derivation& d, const TreePath& path, Derivation replacement) {
  return replace_rec(d, path, 0, replacement);
}

// ---------------------------------------------------------------------------
// Proof files.

Derivation proof_from_text(const ProofText& t) {
  auto r = rule_from_name(t.tag);
  if (!r) throw ParseError("unknown rule tag '" + t.tag + "'");
  std::vector<Derivation> prem;
  for (const ProofText& p : t.premises) prem.push_back(proof_from_text(p));
  std::optional<Formula> principal;
  if (t.principal) principal = parse_formula(*t.principal);
  return Derivation(parse_sequent(t.sequent), *r, std::move(prem), std::move(principal));
}

Derivation parse_proof(std::string_view text) { return proof_from_text(parse_proof_text(text)); }

ProofText proof_to_text(const Derivation& d) {
  ProofText t;
  t.tag = std::string(rule_name(d.rule()));
  t.sequent = print_sequent(d.conclusion());
  if (d.principal()) t.principal = print_formula(*d.principal());
  for (const Derivation& p : d.premises()) t.premises.push_back(proof_to_text(p));
  return t;
}

std::string print_proof(const Derivation& d) { return print_proof_text(proof_to_text(d)); }

}  // namespace mixed
