#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mixed/formula.hpp"
#include "mixed/sexpr.hpp"

namespace mixed {

// The 27 rules of the mixed calculus. Exchange is implicit (multisets).
enum class Rule : std::uint8_t {
  ax, cut1, cut2,
  der, c_l, c_r, w_l, w_r,
  zero, bot,
  and1_l, and2_l, and1_r, and2_r, and3_r, and4_r,
  or1_l, or2_l, or1_r, or2_r, or3_r, or4_r,
  imp1_l, imp2_l, imp3_l, imp1_r, imp2_r,
};

inline constexpr std::size_t kRuleCount = 27;

std::array<Rule, kRuleCount> all_rules();
std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);
std::size_t rule_arity(Rule r);
bool is_cut(Rule r);
// and*_r, or*_r, imp*_r: the principal formula sits in the conclusion's stoup.
bool is_right_logical(Rule r);
// and*_l, or*_l, imp*_l: the principal formula sits in the antecedent.
bool is_left_logical(Rule r);

// Gamma |- Delta ; Pi with |Pi| <= 1.
struct PSequent {
  FormulaBag antecedent;
  FormulaBag body;
  std::optional<Formula> stoup;

  friend bool operator==(const PSequent&, const PSequent&) = default;
};

// Text form "G |- D ; S" with comma-separated lists.
PSequent parse_sequent(std::string_view text);
std::string print_sequent(const PSequent& s);

// Rule-labelled proof tree. Immutable; copies share subtrees.
class Derivation {
 public:
  Derivation(PSequent conclusion, Rule rule, std::vector<Derivation> premises,
             std::optional<Formula> principal = std::nullopt);

  const PSequent& conclusion() const { return node_->conclusion; }
  Rule rule() const { return node_->rule; }
  const std::vector<Derivation>& premises() const { return node_->premises; }
  const Derivation& premise(std::size_t i) const { return node_->premises.at(i); }
  // The occurrence the rule acts on: the cut formula for cuts, the
  // contracted/weakened/derelicted formula for structural rules, the
  // compound formula for logical rules.
  const std::optional<Formula>& principal() const { return node_->principal; }

  std::size_t node_count() const { return node_->nodes; }
  std::size_t height() const { return node_->height; }

  friend bool operator==(const Derivation& a, const Derivation& b);

 private:
  struct Node {
    PSequent conclusion;
    Rule rule;
    std::vector<Derivation> premises;
    std::optional<Formula> principal;
    std::size_t nodes = 1;
    std::size_t height = 1;
  };
  std::shared_ptr<const Node> node_;
};

inline const PSequent& conclusion(const Derivation& d) { return d.conclusion(); }

using TreePath = std::vector<std::size_t>;
// "root", "root.1.0", ...
std::string path_string(const TreePath& p);

struct CheckFailure {
  std::string path;
  std::string message;
};

struct CheckReport {
  bool ok = true;
  std::vector<CheckFailure> failures;

  void fail(std::string path, std::string message) {
    ok = false;
    failures.push_back({std::move(path), std::move(message)});
  }
  std::string summary() const;
};

CheckReport check_derivation(const Derivation& d, const PPolicy& policy);

bool is_cut_free(const Derivation& d);

// The formula the node acts on: its annotation, or else the first candidate
// whose schema recombination reproduces the conclusion (P side conditions
// are ignored).
std::optional<Formula> resolve_principal(const Derivation& node);

// Copy of d where every node carries its resolved principal annotation.
// Throws PreconditionError if d does not check under policy.
Derivation annotate(const Derivation& d, const PPolicy& policy);

// Node construction with the conclusion computed from the premises and
// the acted-on formula. Side conditions on P are not checked here; throws
// PreconditionError when the premises do not fit the schema.
Derivation make(Rule r, const Formula& principal, std::vector<Derivation> premises);
Derivation make_cut1(Derivation left, Derivation right);
Derivation make_zero(PSequent conclusion);
Derivation make_bot();
Derivation make_ax(const Formula& a);

// Applies w_l for every formula of gamma and w_r for every formula of delta.
Derivation weaken_all(Derivation d, const FormulaBag& gamma, const FormulaBag& delta);
// Applies c_l once per formula of gamma and c_r once per formula of delta;
// d must conclude with gamma, delta present twice.
Derivation contract_all(Derivation d, const FormulaBag& gamma, const FormulaBag& delta);

// The conclusion the schema prescribes, or nullopt with `why` filled in.
std::optional<PSequent> infer_conclusion(Rule r, const Formula& principal,
                                         const std::vector<PSequent>& premises, std::string* why);

// Proof files.
Derivation parse_proof(std::string_view text);
Derivation proof_from_text(const ProofText& t);
std::string print_proof(const Derivation& d);
ProofText proof_to_text(const Derivation& d);

// Visits every node in pre-order with its path.
template <typename F>
void for_each_node(const Derivation& d, F&& f, TreePath& path) {
  f(d, path);
  for (std::size_t i = 0; i < d.premises().size(); ++i) {
    path.push_back(i);
    for_each_node(d.premise(i), f, path);
    path.pop_back();
  }
}

template <typename F>
void for_each_node(const Derivation& d, F&& f) {
  TreePath path;
  for_each_node(d, f, path);
}

const Derivation& node_at(const Derivation& d, const TreePath& path);
Derivation replace_at(const Derivation& d, const TreePath& path, Derivation replacement);

}  // namespace mixed
