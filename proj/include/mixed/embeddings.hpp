#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "mixed/calculus.hpp"
#include "mixed/proof_tree.hpp"

namespace mixed {

// ---------------------------------------------------------------------------
// LK over V and bot.

enum class LKRule : std::uint8_t {
  ax, cut, c_l, c_r, w_l, w_r, and_l, and_r, or_l, or1_r, or2_r, imp_l, imp_r, bot,
};
inline constexpr std::size_t kLKRuleCount = 14;

struct LKSequent {
  FormulaBag left;
  FormulaBag right;
  friend bool operator==(const LKSequent&, const LKSequent&) = default;
};

using LKDerivation = ProofTree<LKSequent, LKRule, Formula>;

std::array<LKRule, kLKRuleCount> all_lk_rules();
std::string_view lk_rule_name(LKRule r);  // "lk.ax", ...
std::optional<LKRule> lk_rule_from_name(std::string_view tag);

LKSequent parse_lk_sequent(std::string_view text);
std::string print_lk_sequent(const LKSequent& s);

// and_r, cut and imp_l are multiplicative; or_l shares its context.
std::optional<LKSequent> lk_infer(LKRule r, const Formula& principal, const std::vector<LKSequent>& premises,
                                  std::string* why);
LKDerivation lk_make(LKRule r, const Formula& principal, std::vector<LKDerivation> premises);

CheckReport check_lk(const LKDerivation& d);

LKDerivation parse_lk_proof(std::string_view text);
std::string print_lk_proof(const LKDerivation& d);

// ---------------------------------------------------------------------------
// LJ over V and 0; exactly one succedent formula.

enum class LJRule : std::uint8_t {
  ax, cut, c_l, w_l, zero, and_l, and_r, or_l, or1_r, or2_r, imp_l, imp_r,
};
inline constexpr std::size_t kLJRuleCount = 12;

struct LJSequent {
  FormulaBag left;
  Formula right;
  friend bool operator==(const LJSequent&, const LJSequent&) = default;
};

using LJDerivation = ProofTree<LJSequent, LJRule, Formula>;

std::array<LJRule, kLJRuleCount> all_lj_rules();
std::string_view lj_rule_name(LJRule r);  // "lj.ax", ...
std::optional<LJRule> lj_rule_from_name(std::string_view tag);

// Throws ParseError unless the succedent is a single formula.
LJSequent parse_lj_sequent(std::string_view text);
std::string print_lj_sequent(const LJSequent& s);

std::optional<LJSequent> lj_infer(LJRule r, const Formula& principal, const std::vector<LJSequent>& premises,
                                  std::string* why);
LJDerivation lj_make(LJRule r, const Formula& principal, std::vector<LJDerivation> premises);
// Gamma, 0 |- C.
LJDerivation lj_make_zero(LJSequent conclusion);

CheckReport check_lj(const LJDerivation& d);

LJDerivation parse_lj_proof(std::string_view text);
std::string print_lj_proof(const LJDerivation& d);

// ---------------------------------------------------------------------------
// Translations.

// Every formula occurring anywhere in the tree.
FormulaSet formulas_of(const Derivation& d);
FormulaSet formulas_of(const LKDerivation& d);
FormulaSet formulas_of(const LJDerivation& d);

// Union of subformulas of the given formulas.
FormulaSet subformula_closure(const FormulaSet& s);

// Throws PreconditionError naming the first violated hypothesis:
// K stable, K subset of P, 0 not in K.
void require_lk_hypotheses(const FormulaSet& k_set, const PPolicy& policy);
// I stable, I and P disjoint, bot not in I.
void require_lj_hypotheses(const FormulaSet& i_set, const PPolicy& policy);

// Classical proof -> ML_P proof of G |- D ; with every right rule going
// through the stoup and straight back out by der. All formulas of d must
// lie in k_set.
Derivation lk_to_mlp(const LKDerivation& d, const PPolicy& policy, const FormulaSet& k_set);

// Fuses ';' into ',' and drops der.
LKDerivation mlp_to_lk(const Derivation& d, const PPolicy& policy, const FormulaSet& k_set);

// Intuitionistic proof -> ML_P proof of G |- ; A with empty bodies. With no
// i_set, the subformula closure of the formulas of d is used.
Derivation lj_to_mlp(const LJDerivation& d, const PPolicy& policy,
                     const std::optional<FormulaSet>& i_set = std::nullopt);

// Normalizes d, then maps the body-free normal form back to LJ.
LJDerivation mlp_to_lj(const Derivation& d, const PPolicy& policy, const FormulaSet& i_set);

}  // namespace mixed
