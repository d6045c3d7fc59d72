#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

#include "mixed/calculus.hpp"

namespace mixed {

// Cut measure: length of the cut formula, then the class k in {0,1,2,3}.
struct Degree {
  std::size_t l = 0;
  int k = 0;

  friend auto operator<=>(const Degree&, const Degree&) = default;
};

using DerivationDegree = Multiset<Degree>;

std::string degree_string(const Degree& d);
std::string degree_string(const DerivationDegree& m);

// Throws PreconditionError if `path` does not address a cut node.
Degree cut_degree(const Derivation& d, const TreePath& path);
DerivationDegree derivation_degree(const Derivation& d);

// Dershowitz-Manna extension of the lexicographic order on degrees.
bool multiset_greater(const DerivationDegree& m, const DerivationDegree& n);

// Pairs (last left-premise rule, last right-premise rule) for which a cut1
// with both cut formulas principal has a key reduction.
bool key_case_compatible(Rule left, Rule right);

// Leftmost cut whose premises are cut-free, in post-order.
std::optional<TreePath> find_topmost_cut(const Derivation& d);

// Reduces the leftmost topmost cut. Throws PreconditionError when d has no
// cut or does not check under policy.
Derivation reduce_once(const Derivation& d, const PPolicy& policy);

class StepBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReductionStep {
  std::size_t step = 0;
  TreePath path;
  Degree cut;
  DerivationDegree before;
  DerivationDegree after;
};

struct NormalizeOptions {
  std::size_t step_budget = 1'000'000;
  // Called after every reduction; computing `before`/`after` costs a full
  // traversal, so they are only filled in when a callback is set.
  std::function<void(const ReductionStep&)> trace;
};

Derivation normalize(const Derivation& d, const PPolicy& policy, const NormalizeOptions& opts = {});

// Every formula in d is a subformula of some formula of the root sequent.
// Throws PreconditionError if d contains a cut.
bool verify_subformula_property(const Derivation& d);

struct Witness {
  enum class Side { StoupLeft, StoupRight, BodyLeft, BodyRight };
  Side side;
  Derivation proof;
};

std::string_view witness_side_name(Witness::Side s);

// d must be cut-free, valid under policy, and conclude |- ; A | B.
Witness disjunction_witness(const Derivation& d, const PPolicy& policy);

}  // namespace mixed
