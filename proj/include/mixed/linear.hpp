#pragma once

#include <array>
#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "mixed/calculus.hpp"
#include "mixed/proof_tree.hpp"

namespace mixed {

// Formulas of the linear fragment: atoms, 0, tensor, plus, lolli, ! and ?.
class LLFormula {
 public:
  enum class Kind : std::uint8_t { Atom, Zero, Tensor, Plus, Lolli, Bang, Quest };

  static LLFormula atom(std::string name);
  static LLFormula zero();
  static LLFormula tensor(LLFormula a, LLFormula b);
  static LLFormula plus(LLFormula a, LLFormula b);
  static LLFormula lolli(LLFormula a, LLFormula b);
  static LLFormula bang(LLFormula a);
  static LLFormula quest(LLFormula a);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  const std::string& name() const { return node_->name; }
  // Binary formulas: both sides. Unary (!, ?): the operand is left().
  const LLFormula& left() const { return *node_->left; }
  const LLFormula& right() const { return *node_->right; }
  const LLFormula& operand() const { return *node_->left; }
  std::size_t size() const { return node_->size; }

  std::string str() const;

  friend bool operator==(const LLFormula& a, const LLFormula& b);
  friend std::strong_ordering operator<=>(const LLFormula& a, const LLFormula& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::unique_ptr<LLFormula> left;
    std::unique_ptr<LLFormula> right;
    std::size_t size = 1;
  };
  explicit LLFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static LLFormula make_node(Kind k, std::string name, const LLFormula* l, const LLFormula* r);

  std::shared_ptr<const Node> node_;
};

using LLBag = Multiset<LLFormula>;

LLFormula parse_ll_formula(std::string_view text);
std::string print_ll_formula(const LLFormula& f);

struct LLSequent {
  LLBag left;
  LLBag right;
  friend bool operator==(const LLSequent&, const LLSequent&) = default;
};

LLSequent parse_ll_sequent(std::string_view text);
std::string print_ll_sequent(const LLSequent& s);

enum class LLRule : std::uint8_t {
  ll_ax, ll_cut, zero_l,
  tensor_l, tensor_r, plus_l, plus_r1, plus_r2, lolli_l, lolli_r,
  bang_l, bang_r, bang_c, bang_w,
  quest_r, quest_l, quest_c, quest_w,
};
inline constexpr std::size_t kLLRuleCount = 18;

std::array<LLRule, kLLRuleCount> all_ll_rules();
std::string_view ll_rule_name(LLRule r);
std::optional<LLRule> ll_rule_from_name(std::string_view tag);

using LLDerivation = ProofTree<LLSequent, LLRule, LLFormula>;

// The principal is the introduced formula (the cut formula for ll_cut, the
// !A or ?A for exponential rules). lolli_l premises: (G, B |- D) then
// (G' |- D', A).
std::optional<LLSequent> ll_infer(LLRule r, const LLFormula& principal, const std::vector<LLSequent>& premises,
                                  std::string* why);
LLDerivation ll_make(LLRule r, const LLFormula& principal, std::vector<LLDerivation> premises);
// G, 0 |- D.
LLDerivation ll_make_zero(LLSequent conclusion);

CheckReport check_ll(const LLDerivation& d);

LLDerivation parse_ll_proof(std::string_view text);
std::string print_ll_proof(const LLDerivation& d);

// ---------------------------------------------------------------------------
// Translations of formulas.

LLFormula t_translate(const Formula& a, const PPolicy& policy);
LLFormula b_translate(const Formula& a, const PPolicy& policy);

// t(G) |- ?t(D), t(S) for a P-sequent G |- D ; S.
LLSequent translate_sequent(const PSequent& s, const PPolicy& policy);

// 0, a !-formula, or a tensor/plus of two !-formulas.
bool is_bang_like(const LLFormula& f);

// ---------------------------------------------------------------------------
// Proof transformers.

// d concludes G, A * B |- D; returns a derivation of G, A, B |- D.
LLDerivation invert_tensor_l(const LLDerivation& d, const LLFormula& tensor);
// d concludes G, A + B |- D; returns derivations of G, A |- D and G, B |- D.
std::pair<LLDerivation, LLDerivation> invert_plus_l(const LLDerivation& d, const LLFormula& plus);

// G, f, f |- D  to  G, f |- D, for f of !-like shape.
LLDerivation contract_ll(const LLDerivation& d, const LLFormula& f);
// G |- D  to  G, f |- D, for f of !-like shape.
LLDerivation weaken_ll(const LLDerivation& d, const LLFormula& f);

LLDerivation contract_t(const LLDerivation& d, const Formula& a, const PPolicy& policy);
LLDerivation weaken_t(const LLDerivation& d, const Formula& a, const PPolicy& policy);
// G, a |- ?D  to  G, ?a |- ?D, where G consists of !-like formulas.
LLDerivation quest_left_t(const LLDerivation& d, const LLFormula& a);
// G |- ?D, a  to  G |- ?D, !a, where G consists of !-like formulas.
LLDerivation bang_right_t(const LLDerivation& d, const LLFormula& a);

// A valid P-derivation of G |- D ; S to an LL derivation of t(G) |- ?t(D), t(S).
LLDerivation translate_derivation(const Derivation& d, const PPolicy& policy);

}  // namespace mixed
