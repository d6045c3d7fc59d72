#include "mixed/formula.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "formula_parser.hpp"

namespace mixed {

VarClass classify_identifier(std::string_view name) {
  return name.size() >= 2 && name.substr(name.size() - 2) == "_c" ? VarClass::Classical
                                                                   : VarClass::Intuitionistic;
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

}  // namespace

Formula Formula::zero() {
  static const Formula z = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Zero;
    n->hash = 11;
    n->touches_intuitionistic = true;
    return Formula(n);
  }();
  return z;
}

Formula Formula::bot() {
  static const Formula b = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Bot;
    n->hash = 13;
    n->touches_classical = true;
    return Formula(n);
  }();
  return b;
}

Formula Formula::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->cls = classify_identifier(name);
  n->hash = mix(17, std::hash<std::string>{}(name));
  n->touches_classical = n->cls == VarClass::Classical;
  n->touches_intuitionistic = !n->touches_classical;
  n->name = std::move(name);
  return Formula(n);
}

Formula Formula::binary(Kind k, Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->length = 1 + a.length() + b.length();
  n->hash = mix(mix(static_cast<std::size_t>(k), a.node_->hash), b.node_->hash);
  n->touches_classical = a.touches_classical() || b.touches_classical();
  n->touches_intuitionistic = a.touches_intuitionistic() || b.touches_intuitionistic();
  n->left = std::make_unique<Formula>(std::move(a));
  n->right = std::make_unique<Formula>(std::move(b));
  return Formula(n);
}

Formula Formula::conj(Formula a, Formula b) { return binary(Kind::And, std::move(a), std::move(b)); }
Formula Formula::disj(Formula a, Formula b) { return binary(Kind::Or, std::move(a), std::move(b)); }
Formula Formula::imp(Formula a, Formula b) { return binary(Kind::Imp, std::move(a), std::move(b)); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.length != y.length) return false;
  switch (x.kind) {
    case Formula::Kind::Zero:
    case Formula::Kind::Bot:
      return true;
    case Formula::Kind::Var:
      return x.name == y.name;
    default:
      return *x.left == *y.left && *x.right == *y.right;
  }
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  switch (x.kind) {
    case Formula::Kind::Zero:
    case Formula::Kind::Bot:
      return std::strong_ordering::equal;
    case Formula::Kind::Var:
      return x.name.compare(y.name) <=> 0;
    default:
      if (auto c = *x.left <=> *y.left; c != 0) return c;
      return *x.right <=> *y.right;
  }
}

// ---------------------------------------------------------------------------
// Printing. Precedence & > | > ->; & and | associate left, -> right.

namespace {

int prec(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Imp: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    default: return 4;
  }
}

void print_to(std::string& out, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Zero: out += '0'; return;
    case Formula::Kind::Bot: out += "bot"; return;
    case Formula::Kind::Var: out += f.name(); return;
    default: break;
  }
  const int p = prec(f);
  const bool right_assoc = f.is(Formula::Kind::Imp);
  const bool paren_l = prec(f.left()) < p || (right_assoc && prec(f.left()) == p);
  const bool paren_r = prec(f.right()) < p || (!right_assoc && prec(f.right()) == p);
  if (paren_l) out += '(';
  print_to(out, f.left());
  if (paren_l) out += ')';
  out += f.is(Formula::Kind::And) ? " & " : f.is(Formula::Kind::Or) ? " | " : " -> ";
  if (paren_r) out += '(';
  print_to(out, f.right());
  if (paren_r) out += ')';
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print_to(out, f);
  return out;
}

std::string Formula::str() const { return print_formula(*this); }

// ---------------------------------------------------------------------------
// Parsing.

namespace detail {

namespace {

Formula parse_imp(TokenStream& ts);

Formula parse_atom(TokenStream& ts) {
  const Token& t = ts.peek();
  switch (t.kind) {
    case Tok::Zero: ts.next(); return Formula::zero();
    case Tok::Bot: ts.next(); return Formula::bot();
    case Tok::Ident: {
      std::string name = t.text;
      ts.next();
      return Formula::var(std::move(name));
    }
    case Tok::LParen: {
      ts.next();
      Formula f = parse_imp(ts);
      ts.expect(Tok::RParen, "')'");
      return f;
    }
    default:
      ts.fail("expected a formula");
  }
}

Formula parse_and(TokenStream& ts) {
  Formula f = parse_atom(ts);
  while (ts.accept(Tok::And)) f = Formula::conj(f, parse_atom(ts));
  return f;
}

Formula parse_or(TokenStream& ts) {
  Formula f = parse_and(ts);
  while (ts.accept(Tok::Or)) f = Formula::disj(f, parse_and(ts));
  return f;
}

Formula parse_imp(TokenStream& ts) {
  Formula f = parse_or(ts);
  if (ts.accept(Tok::Arrow)) return Formula::imp(f, parse_imp(ts));
  return f;
}

}  // namespace

Formula parse_formula_at(TokenStream& ts) { return parse_imp(ts); }

}  // namespace detail

Formula parse_formula(std::string_view text) {
  detail::TokenStream ts(detail::tokenize(text));
  Formula f = detail::parse_formula_at(ts);
  if (!ts.at(detail::Tok::End)) ts.fail("unexpected trailing input");
  return f;
}

// ---------------------------------------------------------------------------

FormulaSet vars_of(const Formula& f) {
  FormulaSet out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is_atomic()) {
      out.insert(g);
    } else {
      walk(g.left());
      walk(g.right());
    }
  };
  walk(f);
  return out;
}

FormulaSet subformulas(const Formula& f) {
  FormulaSet out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (!out.insert(g).second) return;
    if (g.is_binary()) {
      walk(g.left());
      walk(g.right());
    }
  };
  walk(f);
  return out;
}

bool is_stable(const FormulaSet& s) {
  for (const Formula& f : s) {
    if (f.is_binary() && (!s.contains(f.left()) || !s.contains(f.right()))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

bool PPolicy::contains(const Formula& f) const {
  switch (kind_) {
    case Kind::All: return true;
    case Kind::BotOnly: return f.is(Formula::Kind::Bot);
    case Kind::ClassicalVars: return f.touches_classical();
    case Kind::Explicit: return members_.contains(f);
  }
  return false;
}

std::string PPolicy::describe() const {
  switch (kind_) {
    case Kind::All: return "all";
    case Kind::BotOnly: return "bot";
    case Kind::ClassicalVars: return "cvars";
    case Kind::Explicit: return "explicit(" + std::to_string(members_.size()) + " formulas)";
  }
  return "?";
}

FormulaSet read_formula_list(std::string_view text) {
  FormulaSet out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.insert(parse_formula(line));
  }
  return out;
}

PPolicy PPolicy::parse(std::string_view spec) {
  if (spec == "all") return all();
  if (spec == "bot") return bot_only();
  if (spec == "cvars") return classical_vars();
  if (spec.substr(0, 5) == "file:") {
    std::string path(spec.substr(5));
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read policy file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return explicit_set(read_formula_list(buf.str()));
  }
  throw ParseError("unknown policy '" + std::string(spec) + "' (expected all, bot, cvars or file:<path>)");
}

}  // namespace mixed
