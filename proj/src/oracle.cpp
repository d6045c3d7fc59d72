#include "mixed/oracle.hpp"

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "mixed/error.hpp"

namespace mixed {

namespace {

using Kind = Formula::Kind;

FormulaBag cap_bag(const FormulaBag& b, std::size_t cap) {
  std::vector<Formula> out;
  for (const Formula& f : b.distinct()) {
    std::size_t n = std::min(b.count(f), cap);
    for (std::size_t i = 0; i < n; ++i) out.push_back(f);
  }
  return FormulaBag(std::move(out));
}

struct Outcome {
  std::optional<Derivation> proof;
  bool loop_hit = false;
};

// ---------------------------------------------------------------------------
// ML_P

class MlpSearch {
 public:
  MlpSearch(const PPolicy& policy, const SearchConfig& cfg) : policy_(policy), cfg_(cfg) {}

  Outcome solve(const PSequent& s, std::size_t depth) {
    PSequent n{cap_bag(s.antecedent, cfg_.mult_cap), cap_bag(s.body, cfg_.mult_cap), s.stoup};
    Outcome o = search(n, depth);
    if (o.proof && !(n == s))
      o.proof = weaken_all(*o.proof, *s.antecedent.minus(n.antecedent), *s.body.minus(n.body));
    return o;
  }

 private:
  bool in_p(const Formula& f) const { return policy_.contains(f); }

  std::optional<Derivation> closure(const PSequent& s) {
    if (s.stoup && s.antecedent.contains(*s.stoup))
      return weaken_all(make_ax(*s.stoup), *s.antecedent.without(*s.stoup), s.body);
    if (s.antecedent.contains(Formula::zero())) return make_zero(s);
    if (!s.stoup && s.antecedent.contains(Formula::bot()))
      return weaken_all(make_bot(), *s.antecedent.without(Formula::bot()), s.body);
    if (!s.stoup) {
      for (const Formula& a : s.body.distinct()) {
        if (!s.antecedent.contains(a)) continue;
        Derivation d = make(Rule::der, a, {make_ax(a)});
        return weaken_all(d, *s.antecedent.without(a), *s.body.without(a));
      }
    }
    return std::nullopt;
  }

  Outcome search(const PSequent& s, std::size_t depth) {
    if (auto c = closure(s)) return {c, false};
    if (depth == 0) return {};
    const std::string key = print_sequent(s);
    if (auto it = proved_.find(key); it != proved_.end() && it->second.first <= depth) return {it->second.second, false};
    if (auto it = failed_.find(key); it != failed_.end() && it->second >= depth) return {};
    if (on_path_.contains(key)) return {std::nullopt, true};

    on_path_.insert(key);
    Outcome o = expand(s, depth - 1);
    on_path_.erase(key);
    if (o.proof) {
      proved_.emplace(key, std::make_pair(depth, *o.proof));
    } else if (!o.loop_hit) {
      auto& f = failed_[key];
      f = std::max(f, depth);
    }
    return o;
  }

  // Runs a one- or two-premise step; `build` assembles the proofs.
  template <typename Build>
  Outcome step(const std::vector<PSequent>& premises, std::size_t depth, Build build) {
    std::vector<Derivation> proofs;
    bool loop = false;
    for (const PSequent& p : premises) {
      Outcome o = solve(p, depth);
      loop = loop || o.loop_hit;
      if (!o.proof) return {std::nullopt, loop};
      proofs.push_back(*o.proof);
    }
    return {build(std::move(proofs)), loop};
  }

  Outcome expand(const PSequent& s, std::size_t depth) {
    const FormulaBag& g = s.antecedent;
    const FormulaBag& d = s.body;

    // Invertible steps.
    for (const Formula& f : g.distinct()) {
      if (!f.is(Kind::And) && !f.is(Kind::Or)) continue;
      const Formula& x = f.left();
      const Formula& y = f.right();
      if (s.stoup && (in_p(x) || in_p(y))) continue;
      FormulaBag rest = *g.without(f);
      if (f.is(Kind::And)) {
        Rule r = s.stoup ? Rule::and1_l : Rule::and2_l;
        return step({PSequent{rest.with(x).with(y), d, s.stoup}}, depth,
                    [&](std::vector<Derivation> p) { return make(r, f, std::move(p)); });
      }
      Rule r = s.stoup ? Rule::or1_l : Rule::or2_l;
      return step({PSequent{rest.with(x), d, s.stoup}, PSequent{rest.with(y), d, s.stoup}}, depth,
                  [&](std::vector<Derivation> p) { return make(r, f, std::move(p)); });
    }
    if (s.stoup && s.stoup->is(Kind::Imp)) {
      const Formula& c = *s.stoup;
      const Formula& x = c.left();
      const Formula& y = c.right();
      if (in_p(y))
        return step({PSequent{g.with(x), d.with(y), std::nullopt}}, depth,
                    [&](std::vector<Derivation> p) { return make(Rule::imp2_r, c, std::move(p)); });
      return step({PSequent{g.with(x), d, y}}, depth,
                  [&](std::vector<Derivation> p) { return make(Rule::imp1_r, c, std::move(p)); });
    }
    if (s.stoup && s.stoup->is(Kind::And)) {
      const Formula& c = *s.stoup;
      auto side = [&](const Formula& x) {
        return in_p(x) ? PSequent{g, d.with(x), std::nullopt} : PSequent{g, d, x};
      };
      const bool xb = in_p(c.left());
      const bool yb = in_p(c.right());
      Rule r = !xb && !yb ? Rule::and1_r : xb && yb ? Rule::and2_r : !xb ? Rule::and3_r : Rule::and4_r;
      return step({side(c.left()), side(c.right())}, depth, [&](std::vector<Derivation> p) {
        return contract_all(make(r, c, std::move(p)), g, d);
      });
    }

    bool loop = false;
    auto attempt = [&](Outcome o) -> std::optional<Derivation> {
      loop = loop || o.loop_hit;
      return o.proof;
    };

    // Choices.
    if (s.stoup && s.stoup->is(Kind::Or)) {
      const Formula& c = *s.stoup;
      for (int i = 0; i < 2; ++i) {
        const Formula& x = i == 0 ? c.left() : c.right();
        Rule r = in_p(x) ? (i == 0 ? Rule::or3_r : Rule::or4_r) : (i == 0 ? Rule::or1_r : Rule::or2_r);
        PSequent p = in_p(x) ? PSequent{g, d.with(x), std::nullopt} : PSequent{g, d, x};
        if (auto pr = attempt(step({p}, depth, [&](std::vector<Derivation> q) { return make(r, c, std::move(q)); })))
          return {pr, loop};
      }
    }
    for (const Formula& f : g.distinct()) {
      if (!f.is(Kind::Imp)) continue;
      const Formula& x = f.left();
      const Formula& y = f.right();
      FormulaBag with_y = g.without(f)->with(y);
      auto join = [&](Rule r) {
        return [&, r](std::vector<Derivation> p) { return contract_all(make(r, f, std::move(p)), g, d); };
      };
      if (s.stoup) {
        if (!in_p(y)) {
          if (auto pr = attempt(step({PSequent{with_y, d, s.stoup}, PSequent{g, d, x}}, depth, join(Rule::imp1_l))))
            return {pr, loop};
        }
        if (in_p(x)) {
          if (auto pr = attempt(step({PSequent{with_y, d, std::nullopt}, PSequent{g, d.with(x), s.stoup}}, depth,
                                     join(Rule::imp3_l))))
            return {pr, loop};
        }
      } else if (in_p(x)) {
        if (auto pr = attempt(step({PSequent{with_y, d, std::nullopt}, PSequent{g, d.with(x), std::nullopt}}, depth,
                                   join(Rule::imp3_l))))
          return {pr, loop};
      } else {
        if (auto pr = attempt(step({PSequent{with_y, d, std::nullopt}, PSequent{g, d, x}}, depth, join(Rule::imp2_l))))
          return {pr, loop};
      }
    }
    if (!s.stoup) {
      for (const Formula& a : d.distinct()) {
        if (a.is_atomic()) continue;
        auto build = [&](std::vector<Derivation> p) {
          return make(Rule::c_r, a, {make(Rule::der, a, std::move(p))});
        };
        if (auto pr = attempt(step({PSequent{g, d, a}}, depth, build))) return {pr, loop};
      }
    }
    return {std::nullopt, loop};
  }

  const PPolicy& policy_;
  SearchConfig cfg_;
  std::unordered_set<std::string> on_path_;
  std::unordered_map<std::string, std::pair<std::size_t, Derivation>> proved_;
  std::unordered_map<std::string, std::size_t> failed_;
};

// ---------------------------------------------------------------------------
// LJ

struct LJOutcome {
  std::optional<LJDerivation> proof;
  bool loop_hit = false;
};

LJDerivation lj_weaken(LJDerivation d, const FormulaBag& extra) {
  for (const Formula& f : extra) d = lj_make(LJRule::w_l, f, {std::move(d)});
  return d;
}

LJDerivation lj_contract(LJDerivation d, const FormulaBag& twice) {
  for (const Formula& f : twice) d = lj_make(LJRule::c_l, f, {std::move(d)});
  return d;
}

class LJSearch {
 public:
  explicit LJSearch(const SearchConfig& cfg) : cfg_(cfg) {}

  LJOutcome solve(const FormulaBag& g, const Formula& c, std::size_t depth) {
    FormulaBag n = cap_bag(g, cfg_.mult_cap);
    LJOutcome o = search(n, c, depth);
    if (o.proof && !(n == g)) o.proof = lj_weaken(*o.proof, *g.minus(n));
    return o;
  }

 private:
  LJOutcome search(const FormulaBag& g, const Formula& c, std::size_t depth) {
    if (g.contains(c)) return {lj_weaken(lj_make(LJRule::ax, c, {}), *g.without(c)), false};
    if (g.contains(Formula::zero())) return {lj_make_zero(LJSequent{g, c}), false};
    if (depth == 0) return {};
    const std::string key = print_lj_sequent(LJSequent{g, c});
    if (auto it = proved_.find(key); it != proved_.end() && it->second.first <= depth) return {it->second.second, false};
    if (auto it = failed_.find(key); it != failed_.end() && it->second >= depth) return {};
    if (on_path_.contains(key)) return {std::nullopt, true};
    on_path_.insert(key);
    LJOutcome o = expand(g, c, depth - 1);
    on_path_.erase(key);
    if (o.proof) {
      proved_.emplace(key, std::make_pair(depth, *o.proof));
    } else if (!o.loop_hit) {
      auto& f = failed_[key];
      f = std::max(f, depth);
    }
    return o;
  }

  template <typename Build>
  LJOutcome step(const std::vector<std::pair<FormulaBag, Formula>>& premises, std::size_t depth, Build build) {
    std::vector<LJDerivation> proofs;
    bool loop = false;
    for (const auto& [pg, pc] : premises) {
      LJOutcome o = solve(pg, pc, depth);
      loop = loop || o.loop_hit;
      if (!o.proof) return {std::nullopt, loop};
      proofs.push_back(*o.proof);
    }
    return {build(std::move(proofs)), loop};
  }

  LJOutcome expand(const FormulaBag& g, const Formula& c, std::size_t depth) {
    auto single = [](LJRule r, const Formula& f) {
      return [r, f](std::vector<LJDerivation> p) { return lj_make(r, f, std::move(p)); };
    };
    for (const Formula& f : g.distinct()) {
      FormulaBag rest = *g.without(f);
      if (f.is(Kind::And)) return step({{rest.with(f.left()).with(f.right()), c}}, depth, single(LJRule::and_l, f));
      if (f.is(Kind::Or))
        return step({{rest.with(f.left()), c}, {rest.with(f.right()), c}}, depth, single(LJRule::or_l, f));
    }
    if (c.is(Kind::Imp)) return step({{g.with(c.left()), c.right()}}, depth, single(LJRule::imp_r, c));
    if (c.is(Kind::And))
      return step({{g, c.left()}, {g, c.right()}}, depth, [&](std::vector<LJDerivation> p) {
        return lj_contract(lj_make(LJRule::and_r, c, std::move(p)), g);
      });

    bool loop = false;
    auto attempt = [&](LJOutcome o) -> std::optional<LJDerivation> {
      loop = loop || o.loop_hit;
      return o.proof;
    };
    if (c.is(Kind::Or)) {
      if (auto p = attempt(step({{g, c.left()}}, depth, single(LJRule::or1_r, c)))) return {p, loop};
      if (auto p = attempt(step({{g, c.right()}}, depth, single(LJRule::or2_r, c)))) return {p, loop};
    }
    for (const Formula& f : g.distinct()) {
      if (!f.is(Kind::Imp)) continue;
      FormulaBag rest = *g.without(f);
      auto build = [&](std::vector<LJDerivation> p) {
        // (rest, B |- C) and (g |- A) give rest, g, A -> B |- C.
        return lj_contract(lj_make(LJRule::imp_l, f, std::move(p)), g);
      };
      if (auto p = attempt(step({{rest.with(f.right()), c}, {g, f.left()}}, depth, build))) return {p, loop};
    }
    return {std::nullopt, loop};
  }

  SearchConfig cfg_;
  std::unordered_set<std::string> on_path_;
  std::unordered_map<std::string, std::pair<std::size_t, LJDerivation>> proved_;
  std::unordered_map<std::string, std::size_t> failed_;
};

// ---------------------------------------------------------------------------
// LK

LKDerivation lk_weaken(LKDerivation d, const FormulaBag& left, const FormulaBag& right) {
  for (const Formula& f : left) d = lk_make(LKRule::w_l, f, {std::move(d)});
  for (const Formula& f : right) d = lk_make(LKRule::w_r, f, {std::move(d)});
  return d;
}

LKDerivation lk_contract(LKDerivation d, const FormulaBag& left, const FormulaBag& right) {
  for (const Formula& f : left) d = lk_make(LKRule::c_l, f, {std::move(d)});
  for (const Formula& f : right) d = lk_make(LKRule::c_r, f, {std::move(d)});
  return d;
}

std::optional<LKDerivation> lk_search(const LKSequent& s) {
  const FormulaBag& g = s.left;
  const FormulaBag& d = s.right;
  for (const Formula& a : g.distinct())
    if (d.contains(a)) return lk_weaken(lk_make(LKRule::ax, a, {}), *g.without(a), *d.without(a));
  if (g.contains(Formula::bot())) return lk_weaken(lk_make(LKRule::bot, Formula::bot(), {}), *g.without(Formula::bot()), d);

  for (const Formula& f : g.distinct()) {
    if (f.is_atomic()) continue;
    FormulaBag rest = *g.without(f);
    const Formula& x = f.left();
    const Formula& y = f.right();
    switch (f.kind()) {
      case Kind::And: {
        auto p = lk_search(LKSequent{rest.with(x).with(y), d});
        if (!p) return std::nullopt;
        return lk_make(LKRule::and_l, f, {*p});
      }
      case Kind::Or: {
        auto p0 = lk_search(LKSequent{rest.with(x), d});
        if (!p0) return std::nullopt;
        auto p1 = lk_search(LKSequent{rest.with(y), d});
        if (!p1) return std::nullopt;
        return lk_make(LKRule::or_l, f, {*p0, *p1});
      }
      default: {
        auto p0 = lk_search(LKSequent{rest.with(y), d});
        if (!p0) return std::nullopt;
        auto p1 = lk_search(LKSequent{rest, d.with(x)});
        if (!p1) return std::nullopt;
        return lk_contract(lk_make(LKRule::imp_l, f, {*p0, *p1}), rest, d);
      }
    }
  }
  for (const Formula& f : d.distinct()) {
    if (f.is_atomic()) continue;
    FormulaBag rest = *d.without(f);
    const Formula& x = f.left();
    const Formula& y = f.right();
    switch (f.kind()) {
      case Kind::And: {
        auto p0 = lk_search(LKSequent{g, rest.with(x)});
        if (!p0) return std::nullopt;
        auto p1 = lk_search(LKSequent{g, rest.with(y)});
        if (!p1) return std::nullopt;
        return lk_contract(lk_make(LKRule::and_r, f, {*p0, *p1}), g, rest);
      }
      case Kind::Or: {
        auto p = lk_search(LKSequent{g, rest.with(x).with(y)});
        if (!p) return std::nullopt;
        LKDerivation q = lk_make(LKRule::or2_r, f, {lk_make(LKRule::or1_r, f, {*p})});
        return lk_make(LKRule::c_r, f, {q});
      }
      default: {
        auto p = lk_search(LKSequent{g.with(x), rest.with(y)});
        if (!p) return std::nullopt;
        return lk_make(LKRule::imp_r, f, {*p});
      }
    }
  }
  return std::nullopt;
}

bool eval(const Formula& f, const std::map<std::string, bool>& v) {
  switch (f.kind()) {
    case Kind::Bot: return false;
    case Kind::Var: return v.at(f.name());
    case Kind::And: return eval(f.left(), v) && eval(f.right(), v);
    case Kind::Or: return eval(f.left(), v) || eval(f.right(), v);
    case Kind::Imp: return !eval(f.left(), v) || eval(f.right(), v);
    case Kind::Zero: break;
  }
  throw PreconditionError("0 has no classical truth value here");
}

}  // namespace

std::optional<Derivation> prove_bounded(const PSequent& s, const PPolicy& policy, const SearchConfig& cfg) {
  if (cfg.depth == 0 || cfg.mult_cap == 0) throw PreconditionError("search bounds must be positive");
  for (const Formula& f : s.body)
    if (!policy.contains(f)) throw PreconditionError("body formula " + print_formula(f) + " is not in P");
  MlpSearch search(policy, cfg);
  return search.solve(s, cfg.depth).proof;
}

bool classical_valid(const Formula& f) {
  std::vector<std::string> names;
  for (const Formula& a : vars_of(f)) {
    if (a.is(Kind::Zero)) throw PreconditionError("classical_valid: 0 is not allowed");
    if (a.is(Kind::Var)) {
      if (a.var_class() != VarClass::Classical)
        throw PreconditionError("classical_valid: intuitionistic variable " + a.name());
      names.push_back(a.name());
    }
  }
  const std::size_t n = names.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::map<std::string, bool> v;
    for (std::size_t i = 0; i < n; ++i) v[names[i]] = (mask >> i) & 1;
    if (!eval(f, v)) return false;
  }
  return true;
}

std::optional<LJDerivation> lj_prove_bounded(const FormulaBag& gamma, const Formula& a, const SearchConfig& cfg) {
  if (cfg.depth == 0 || cfg.mult_cap == 0) throw PreconditionError("search bounds must be positive");
  LJSearch search(cfg);
  return search.solve(gamma, a, cfg.depth).proof;
}

std::optional<LKDerivation> lk_decide(const LKSequent& s) {
  auto has_zero = [](const FormulaBag& b) {
    return b.any_of([](const Formula& f) { return vars_of(f).contains(Formula::zero()); });
  };
  if (has_zero(s.left) || has_zero(s.right)) throw PreconditionError("LK sequents range over V and bot; 0 found");
  return lk_search(s);
}

std::vector<Formula> enumerate_formulas(const std::vector<Formula>& atoms, std::size_t max_symbols) {
  // by_size[n]: formulas with exactly n symbols.
  std::vector<std::vector<Formula>> by_size(max_symbols + 1);
  if (max_symbols >= 1) by_size[1] = atoms;
  for (std::size_t n = 3; n <= max_symbols; n += 2) {
    for (std::size_t l = 1; l + 1 < n; l += 2) {
      const std::size_t r = n - 1 - l;
      for (Kind k : {Kind::And, Kind::Or, Kind::Imp})
        for (const Formula& a : by_size[l])
          for (const Formula& b : by_size[r]) by_size[n].push_back(Formula::binary(k, a, b));
    }
  }
  std::vector<Formula> out;
  for (const auto& v : by_size) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace mixed
