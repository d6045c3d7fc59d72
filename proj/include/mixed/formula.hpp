#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "mixed/multiset.hpp"

namespace mixed {

// V_i vs V_c. Decided by the identifier alone: a trailing "_c" marks a
// classical variable.
enum class VarClass : std::uint8_t { Intuitionistic, Classical };

VarClass classify_identifier(std::string_view name);

// Immutable propositional formula over variables, 0 and bot with &, |, ->.
// Copies share structure.
class Formula {
 public:
  enum class Kind : std::uint8_t { Zero, Bot, Var, And, Or, Imp };

  static Formula zero();
  static Formula bot();
  static Formula var(std::string name);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula binary(Kind k, Formula a, Formula b);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  bool is_binary() const { return node_->kind >= Kind::And; }
  bool is_atomic() const { return !is_binary(); }

  // Only meaningful for Var.
  const std::string& name() const { return node_->name; }
  VarClass var_class() const { return node_->cls; }

  // Only meaningful for binary formulas.
  const Formula& left() const { return *node_->left; }
  const Formula& right() const { return *node_->right; }

  // Number of connective and atom/constant occurrences.
  std::size_t length() const { return node_->length; }

  // Some occurrence of a classical variable or bot.
  bool touches_classical() const { return node_->touches_classical; }
  // Some occurrence of an intuitionistic variable or 0.
  bool touches_intuitionistic() const { return node_->touches_intuitionistic; }

  std::string str() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    VarClass cls = VarClass::Intuitionistic;
    std::string name;
    std::unique_ptr<Formula> left;
    std::unique_ptr<Formula> right;
    std::size_t length = 1;
    std::size_t hash = 0;
    bool touches_classical = false;
    bool touches_intuitionistic = false;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

using FormulaSet = std::set<Formula>;
using FormulaBag = Multiset<Formula>;

Formula parse_formula(std::string_view text);
std::string print_formula(const Formula& f);

// Variables and constants (0, bot) occurring in f.
FormulaSet vars_of(const Formula& f);

// f together with all of its transitive subformulas.
FormulaSet subformulas(const Formula& f);

// For every c in {&, |, ->}: A c B in s implies A, B in s.
bool is_stable(const FormulaSet& s);

// Parameter set P of formulas on which classical reasoning is allowed.
class PPolicy {
 public:
  enum class Kind : std::uint8_t { All, BotOnly, ClassicalVars, Explicit };

  static PPolicy all() { return PPolicy(Kind::All, {}); }
  static PPolicy bot_only() { return PPolicy(Kind::BotOnly, {}); }
  static PPolicy classical_vars() { return PPolicy(Kind::ClassicalVars, {}); }
  static PPolicy explicit_set(FormulaSet members) { return PPolicy(Kind::Explicit, std::move(members)); }

  // Accepts "all", "bot", "cvars" or "file:<path>" (one formula per line,
  // blank lines and lines starting with '#' ignored).
  static PPolicy parse(std::string_view spec);

  bool contains(const Formula& f) const;
  Kind kind() const { return kind_; }
  const FormulaSet& members() const { return members_; }
  std::string describe() const;

 private:
  PPolicy(Kind k, FormulaSet m) : kind_(k), members_(std::move(m)) {}

  Kind kind_;
  FormulaSet members_;
};

inline bool p_member(const PPolicy& policy, const Formula& f) { return policy.contains(f); }

// Reads a formula list (one per line; '#' comments and blank lines skipped).
FormulaSet read_formula_list(std::string_view text);

}  // namespace mixed
