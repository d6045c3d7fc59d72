#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mixed/calculus.hpp"
#include "mixed/embeddings.hpp"

namespace mixed {

struct SearchConfig {
  // Logical steps allowed along any branch.
  std::size_t depth = 10;
  // Copies of one formula kept in the antecedent (and body) during search.
  std::size_t mult_cap = 2;
};

// Bounded backward search for a cut-free derivation. Absence is not a
// refutation.
std::optional<Derivation> prove_bounded(const PSequent& s, const PPolicy& policy, const SearchConfig& cfg = {});

// Truth-table validity over classical variables and bot. Throws
// PreconditionError on 0 or intuitionistic variables.
bool classical_valid(const Formula& f);

// Bounded backward search in cut-free LJ with loop checking.
std::optional<LJDerivation> lj_prove_bounded(const FormulaBag& gamma, const Formula& a, const SearchConfig& cfg = {});

// Complete search in cut-free LK (terminating: every step shrinks the
// sequent). Throws PreconditionError if 0 occurs.
std::optional<LKDerivation> lk_decide(const LKSequent& s);

// All formulas over `atoms` (variables, 0 or bot) with at most max_symbols
// symbols, ordered by size.
std::vector<Formula> enumerate_formulas(const std::vector<Formula>& atoms, std::size_t max_symbols);

}  // namespace mixed
