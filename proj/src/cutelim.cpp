#include "mixed/cutelim.hpp"

#include <algorithm>
#include <sstream>

#include "mixed/error.hpp"

namespace mixed {

std::string degree_string(const Degree& d) {
  return "(" + std::to_string(d.l) + "," + std::to_string(d.k) + ")";
}

std::string degree_string(const DerivationDegree& m) {
  std::string out = "{";
  for (const Degree& d : m) {
    if (out.size() > 1) out += " ";
    out += degree_string(d);
  }
  return out + "}";
}

namespace {

const Formula& principal_or_throw(const Derivation& node) {
  if (!node.principal()) throw InternalError("unannotated node reached the cut-elimination engine");
  return *node.principal();
}

Degree degree_of_cut(const Derivation& node) {
  const Formula& a = *resolve_principal(node);
  Degree deg{a.length(), 3};
  if (node.rule() == Rule::cut2) return deg;
  const Derivation& left = node.premise(0);
  const Derivation& right = node.premise(1);
  const bool left_principal = is_right_logical(left.rule());
  bool right_principal = false;
  if (is_left_logical(right.rule())) {
    auto rp = resolve_principal(right);
    right_principal = rp && *rp == a;
  }
  deg.k = left_principal ? (right_principal ? 0 : 1) : 2;
  return deg;
}

}  // namespace

Degree cut_degree(const Derivation& d, const TreePath& path) {
  const Derivation& node = node_at(d, path);
  if (!is_cut(node.rule())) throw PreconditionError("node at " + path_string(path) + " is not a cut");
  if (!resolve_principal(node)) throw PreconditionError("cut at " + path_string(path) + " is malformed");
  return degree_of_cut(node);
}

DerivationDegree derivation_degree(const Derivation& d) {
  std::vector<Degree> out;
  for_each_node(d, [&](const Derivation& n, const TreePath&) {
    if (is_cut(n.rule())) out.push_back(degree_of_cut(n));
  });
  return DerivationDegree(std::move(out));
}

bool multiset_greater(const DerivationDegree& m, const DerivationDegree& n) {
  // m - n and n - m, by multiplicity.
  std::vector<Degree> only_m, only_n;
  std::set_difference(m.begin(), m.end(), n.begin(), n.end(), std::back_inserter(only_m));
  std::set_difference(n.begin(), n.end(), m.begin(), m.end(), std::back_inserter(only_n));
  if (only_m.empty() && only_n.empty()) return false;
  for (const Degree& y : only_n) {
    if (std::none_of(only_m.begin(), only_m.end(), [&](const Degree& x) { return y < x; })) return false;
  }
  return true;
}

bool key_case_compatible(Rule left, Rule right) {
  switch (left) {
    case Rule::and1_r:
      return right == Rule::and1_l || right == Rule::and2_l;
    case Rule::and2_r:
    case Rule::and3_r:
    case Rule::and4_r:
      return right == Rule::and2_l;
    case Rule::or1_r:
    case Rule::or2_r:
      return right == Rule::or1_l || right == Rule::or2_l;
    case Rule::or3_r:
    case Rule::or4_r:
      return right == Rule::or2_l;
    case Rule::imp1_r:
      return right == Rule::imp1_l || right == Rule::imp2_l || right == Rule::imp3_l;
    case Rule::imp2_r:
      return right == Rule::imp2_l || right == Rule::imp3_l;
    default:
      return false;
  }
}

namespace {

// Formulas a premise carries beyond what it passes down from the
// conclusion's context.
struct Active {
  FormulaBag ant;
  FormulaBag body;
};

Active active_in_premise(const Derivation& node, std::size_t i) {
  const Rule r = node.rule();
  Active act;
  if (r == Rule::zero || r == Rule::ax || r == Rule::bot) return act;
  const Formula& a = principal_or_throw(node);
  auto x = [&] { return a.left(); };
  auto y = [&] { return a.right(); };
  switch (r) {
    case Rule::cut1:
      if (i == 1) act.ant.insert(a);
      break;
    case Rule::cut2:
      (i == 0 ? act.body : act.ant).insert(a);
      break;
    case Rule::c_l:
      act.ant.insert_n(a, 2);
      break;
    case Rule::c_r:
      act.body.insert_n(a, 2);
      break;
    case Rule::and1_l:
    case Rule::and2_l:
      act.ant.insert(x());
      act.ant.insert(y());
      break;
    case Rule::and2_r:
      act.body.insert(i == 0 ? x() : y());
      break;
    case Rule::and3_r:
      if (i == 1) act.body.insert(y());
      break;
    case Rule::and4_r:
      if (i == 0) act.body.insert(x());
      break;
    case Rule::or1_l:
    case Rule::or2_l:
      act.ant.insert(i == 0 ? x() : y());
      break;
    case Rule::or3_r:
      act.body.insert(x());
      break;
    case Rule::or4_r:
      act.body.insert(y());
      break;
    case Rule::imp1_l:
    case Rule::imp2_l:
    case Rule::imp3_l:
      if (i == 0) act.ant.insert(y());
      if (i == 1 && r == Rule::imp3_l) act.body.insert(x());
      break;
    case Rule::imp1_r:
      act.ant.insert(x());
      break;
    case Rule::imp2_r:
      act.ant.insert(x());
      act.body.insert(y());
      break;
    default:
      break;
  }
  return act;
}

bool is_additive(Rule r) { return r == Rule::or1_l || r == Rule::or2_l; }

enum class Zone { Antecedent, Body };

// How many of `n` traced occurrences of `a` (in the given zone of the
// conclusion) each premise receives.
std::vector<std::size_t> distribute(const Derivation& node, const Formula& a, std::size_t n, Zone zone) {
  const std::size_t m = node.premises().size();
  std::vector<std::size_t> out(m, 0);
  if (is_additive(node.rule())) {
    std::fill(out.begin(), out.end(), n);
    return out;
  }
  std::size_t left = n;
  for (std::size_t i = 0; i < m && left > 0; ++i) {
    const PSequent& p = node.premise(i).conclusion();
    Active act = active_in_premise(node, i);
    const FormulaBag& zone_bag = zone == Zone::Antecedent ? p.antecedent : p.body;
    const FormulaBag& act_bag = zone == Zone::Antecedent ? act.ant : act.body;
    std::size_t avail = zone_bag.count(a) - std::min(zone_bag.count(a), act_bag.count(a));
    out[i] = std::min(avail, left);
    left -= out[i];
  }
  if (left != 0) throw InternalError("traced occurrences of " + a.str() + " lost at a " +
                                     std::string(rule_name(node.rule())) + " node");
  return out;
}

Derivation remake(const Derivation& node, std::vector<Derivation> premises) {
  return make(node.rule(), principal_or_throw(node), std::move(premises));
}

FormulaBag repeat(const FormulaBag& b, std::size_t n) {
  FormulaBag out;
  for (std::size_t i = 0; i < n; ++i) out = out + b;
  return out;
}

// -- k = 1 -------------------------------------------------------------------
// `left` concludes G |- D ; A with A principal. Pushes it into `d`, removing
// n antecedent occurrences of A and adding n copies of G / D instead. New
// cuts appear only where A is principal of a left logical rule.
Derivation push_left(const Derivation& left, const Derivation& d, std::size_t n) {
  if (n == 0) return d;
  const Formula& a = *left.conclusion().stoup;
  const FormulaBag& gamma = left.conclusion().antecedent;
  const FormulaBag& delta = left.conclusion().body;
  const PSequent& c = d.conclusion();
  const Rule r = d.rule();

  switch (r) {
    case Rule::ax:
      if (n != 1) throw InternalError("axiom traced twice");
      return left;
    case Rule::zero: {
      FormulaBag ant = c.antecedent;
      for (std::size_t i = 0; i < n; ++i) ant.erase_one(a);
      if (!ant.contains(Formula::zero())) throw InternalError("cut formula 0 traced into a 0 axiom");
      return make_zero(PSequent{ant + repeat(gamma, n), c.body + repeat(delta, n), c.stoup});
    }
    case Rule::bot:
      throw InternalError("bot traced as a principal cut formula");
    default:
      break;
  }

  const Formula& p = principal_or_throw(d);
  if (p == a) {
    if (r == Rule::w_l) return weaken_all(push_left(left, d.premise(0), n - 1), gamma, delta);
    if (r == Rule::c_l) return contract_all(push_left(left, d.premise(0), n + 1), gamma, delta);
    if (is_left_logical(r)) {
      auto share = distribute(d, a, n - 1, Zone::Antecedent);
      std::vector<Derivation> prem;
      for (std::size_t i = 0; i < d.premises().size(); ++i) prem.push_back(push_left(left, d.premise(i), share[i]));
      return make_cut1(left, remake(d, std::move(prem)));
    }
  }
  auto share = distribute(d, a, n, Zone::Antecedent);
  std::vector<Derivation> prem;
  for (std::size_t i = 0; i < d.premises().size(); ++i) prem.push_back(push_left(left, d.premise(i), share[i]));
  return remake(d, std::move(prem));
}

// -- k = 2 -------------------------------------------------------------------
// `d` concludes G |- D ; A where A is not principal. Follows the stoup upwards
// and cuts `right` (G', A |- D' ; Pi) in wherever A gets introduced.
Derivation push_stoup(const Derivation& d, const Derivation& right) {
  const PSequent& c = d.conclusion();
  const Formula& a = *c.stoup;
  const PSequent& rc = right.conclusion();
  const Rule r = d.rule();
  const bool pi = rc.stoup.has_value();

  if (r == Rule::ax) return right;
  if (r == Rule::zero) {
    FormulaBag g2 = *rc.antecedent.without(a);
    return make_zero(PSequent{c.antecedent + g2, c.body + rc.body, rc.stoup});
  }
  if (is_right_logical(r)) return make_cut1(d, right);

  const Formula& p = principal_or_throw(d);
  switch (r) {
    case Rule::c_l:
    case Rule::c_r:
    case Rule::w_l:
    case Rule::w_r:
      return remake(d, {push_stoup(d.premise(0), right)});
    case Rule::and1_l:
      return make(pi ? Rule::and1_l : Rule::and2_l, p, {push_stoup(d.premise(0), right)});
    case Rule::or1_l:
      return make(pi ? Rule::or1_l : Rule::or2_l, p,
                  {push_stoup(d.premise(0), right), push_stoup(d.premise(1), right)});
    case Rule::imp1_l:
      return make(pi ? Rule::imp1_l : Rule::imp2_l, p, {push_stoup(d.premise(0), right), d.premise(1)});
    case Rule::imp3_l:
      return make(Rule::imp3_l, p, {d.premise(0), push_stoup(d.premise(1), right)});
    default:
      throw InternalError("stoup formula cannot come out of rule " + std::string(rule_name(r)));
  }
}

// -- k = 3 -------------------------------------------------------------------
// `right` concludes G', A |- D' ; (empty stoup). Pushes it into `d`, removing
// n body occurrences of A; every der on A becomes a cut1, every w_r on A
// weakenings, every c_r on A duplicates the traced occurrence.
Derivation push_body(const Derivation& d, std::size_t n, const Formula& a, const Derivation& right) {
  if (n == 0) return d;
  const PSequent& rc = right.conclusion();
  const FormulaBag gamma = *rc.antecedent.without(a);
  const FormulaBag& delta = rc.body;
  const PSequent& c = d.conclusion();
  const Rule r = d.rule();

  switch (r) {
    case Rule::ax:
    case Rule::bot:
      throw InternalError("traced body occurrence in an empty body");
    case Rule::zero: {
      FormulaBag body = c.body;
      for (std::size_t i = 0; i < n; ++i) body.erase_one(a);
      return make_zero(PSequent{c.antecedent + repeat(gamma, n), body + repeat(delta, n), c.stoup});
    }
    default:
      break;
  }

  const Formula& p = principal_or_throw(d);
  if (p == a) {
    if (r == Rule::der) return make_cut1(push_body(d.premise(0), n - 1, a, right), right);
    if (r == Rule::w_r) return weaken_all(push_body(d.premise(0), n - 1, a, right), gamma, delta);
    if (r == Rule::c_r) return contract_all(push_body(d.premise(0), n + 1, a, right), gamma, delta);
  }
  auto share = distribute(d, a, n, Zone::Body);
  std::vector<Derivation> prem;
  for (std::size_t i = 0; i < d.premises().size(); ++i) prem.push_back(push_body(d.premise(i), share[i], a, right));
  return remake(d, std::move(prem));
}

// -- k = 0 -------------------------------------------------------------------
Derivation key_case(const Derivation& left, const Derivation& right) {
  const Rule lr = left.rule();
  const Rule rr = right.rule();
  if (!key_case_compatible(lr, rr))
    throw InternalError("key case (" + std::string(rule_name(lr)) + ", " + std::string(rule_name(rr)) +
                        ") is excluded by the P side conditions");
  const Formula& a = principal_or_throw(left);
  const Formula& x = a.left();
  const Formula& y = a.right();

  auto cut_on = [](const Formula& f, const Derivation& l, const Derivation& r) {
    const bool in_stoup = l.conclusion().stoup && *l.conclusion().stoup == f;
    return make(in_stoup ? Rule::cut1 : Rule::cut2, f, {l, r});
  };

  switch (a.kind()) {
    case Formula::Kind::And: {
      Derivation inner = cut_on(x, left.premise(0), right.premise(0));
      return cut_on(y, left.premise(1), inner);
    }
    case Formula::Kind::Or: {
      const bool first = lr == Rule::or1_r || lr == Rule::or3_r;
      return cut_on(first ? x : y, left.premise(0), right.premise(first ? 0 : 1));
    }
    case Formula::Kind::Imp: {
      const Derivation& body = left.premise(0);   // G, X |- D ; Y   or   G, X |- D, Y ;
      const Derivation& r_b = right.premise(0);   // G_a, Y |- D_a ; ...
      const Derivation& r_a = right.premise(1);   // G_b |- D_b ; X   or   G_b |- D_b, X ; Pi
      // X sits in the body of r_a here, even if the stoup happens to hold X too.
      if (rr == Rule::imp3_l) return make(Rule::cut2, x, {r_a, cut_on(y, body, r_b)});
      return cut_on(y, cut_on(x, r_a, body), r_b);
    }
    default:
      throw InternalError("key case on an atomic formula");
  }
}

Derivation reduce_cut(const Derivation& node) {
  const Derivation& left = node.premise(0);
  const Derivation& right = node.premise(1);
  Derivation out = [&] {
    if (node.rule() == Rule::cut2) return push_body(left, 1, principal_or_throw(node), right);
    if (left.rule() == Rule::ax) return right;
    if (right.rule() == Rule::ax) return left;
    switch (degree_of_cut(node).k) {
      case 0: return key_case(left, right);
      case 1: return push_left(left, right, 1);
      default: return push_stoup(left, right);
    }
  }();
  if (!(out.conclusion() == node.conclusion()))
    throw InternalError("reduction changed the conclusion: " + print_sequent(node.conclusion()) + " became " +
                        print_sequent(out.conclusion()));
  return out;
}

bool find_rec(const Derivation& d, TreePath& path) {
  for (std::size_t i = 0; i < d.premises().size(); ++i) {
    path.push_back(i);
    if (find_rec(d.premise(i), path)) return true;
    path.pop_back();
  }
  return is_cut(d.rule());
}

Derivation reduce_annotated(const Derivation& d, const TreePath& path) {
  return replace_at(d, path, reduce_cut(node_at(d, path)));
}

}  // namespace

std::optional<TreePath> find_topmost_cut(const Derivation& d) {
  TreePath path;
  if (find_rec(d, path)) return path;
  return std::nullopt;
}

Derivation reduce_once(const Derivation& d, const PPolicy& policy) {
  auto path = find_topmost_cut(d);
  if (!path) throw PreconditionError("derivation contains no cut");
  return reduce_annotated(annotate(d, policy), *path);
}

Derivation normalize(const Derivation& d, const PPolicy& policy, const NormalizeOptions& opts) {
  Derivation cur = annotate(d, policy);
  std::size_t steps = 0;
  while (auto path = find_topmost_cut(cur)) {
    if (++steps > opts.step_budget)
      throw StepBudgetExceeded("normalization exceeded " + std::to_string(opts.step_budget) + " reductions");
    if (!opts.trace) {
      cur = reduce_annotated(cur, *path);
      continue;
    }
    ReductionStep step;
    step.step = steps;
    step.path = *path;
    step.cut = degree_of_cut(node_at(cur, *path));
    step.before = derivation_degree(cur);
    cur = reduce_annotated(cur, *path);
    step.after = derivation_degree(cur);
    opts.trace(step);
  }
  return cur;
}

bool verify_subformula_property(const Derivation& d) {
  if (!is_cut_free(d)) throw PreconditionError("subformula property is only claimed for cut-free derivations");
  FormulaSet allowed;
  const PSequent& root = d.conclusion();
  auto add = [&](const Formula& f) {
    FormulaSet s = subformulas(f);
    allowed.insert(s.begin(), s.end());
  };
  for (const Formula& f : root.antecedent) add(f);
  for (const Formula& f : root.body) add(f);
  if (root.stoup) add(*root.stoup);

  bool ok = true;
  for_each_node(d, [&](const Derivation& n, const TreePath&) {
    const PSequent& s = n.conclusion();
    for (const Formula& f : s.antecedent) ok = ok && allowed.contains(f);
    for (const Formula& f : s.body) ok = ok && allowed.contains(f);
    if (s.stoup) ok = ok && allowed.contains(*s.stoup);
  });
  return ok;
}

std::string_view witness_side_name(Witness::Side s) {
  switch (s) {
    case Witness::Side::StoupLeft: return "StoupLeft";
    case Witness::Side::StoupRight: return "StoupRight";
    case Witness::Side::BodyLeft: return "BodyLeft";
    case Witness::Side::BodyRight: return "BodyRight";
  }
  return "?";
}

Witness disjunction_witness(const Derivation& d, const PPolicy& policy) {
  const PSequent& c = d.conclusion();
  if (!c.antecedent.empty() || !c.body.empty() || !c.stoup || !c.stoup->is(Formula::Kind::Or))
    throw PreconditionError("disjunction witness needs a conclusion of the form |- ; A | B, got " + print_sequent(c));
  if (!is_cut_free(d)) throw PreconditionError("disjunction witness needs a cut-free derivation");
  CheckReport rep = check_derivation(d, policy);
  if (!rep.ok) throw PreconditionError("derivation does not check: " + rep.summary());
  switch (d.rule()) {
    case Rule::or1_r: return {Witness::Side::StoupLeft, d.premise(0)};
    case Rule::or2_r: return {Witness::Side::StoupRight, d.premise(0)};
    case Rule::or3_r: return {Witness::Side::BodyLeft, d.premise(0)};
    case Rule::or4_r: return {Witness::Side::BodyRight, d.premise(0)};
    default:
      throw InternalError("cut-free proof of |- ; A | B ends with " + std::string(rule_name(d.rule())));
  }
}

}  // namespace mixed
