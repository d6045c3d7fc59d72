#pragma once

#include <random>
#include <string>
#include <vector>

#include "mixed/calculus.hpp"
#include "mixed/embeddings.hpp"

namespace mixed::testing {

struct NamedProof {
  std::string name;
  Derivation proof;
  PPolicy policy;
};

Formula F(const char* text);

// Cut-free fixtures; together they use every rule tag except the cuts,
// which appear in a handful of extra fixtures.
std::vector<NamedProof> fixture_corpus();

struct CutProof {
  std::string name;
  Derivation proof;
  PPolicy policy;
  int expected_k;  // class of the first topmost cut
};

// Copies of d whose root conclusion lost one formula occurrence, one per
// distinct formula of the antecedent, body and stoup.
std::vector<Derivation> single_deletions(const Derivation& d);

// Proofs with cuts covering k = 0..3 and every compatible key-case pair.
std::vector<CutProof> cut_corpus();

// The displayed imp3_l shape with promotable contexts (A, B in P).
Derivation imp3_l_fixture();

// ---------------------------------------------------------------------------
// Random material.

Formula random_formula(std::mt19937& rng, const std::vector<Formula>& atoms, int max_depth);

// Random cut-free derivations found by the bounded oracle for random goals.
std::vector<NamedProof> random_proofs(std::mt19937& rng, std::size_t count);

// Random derivations with cuts built by joining two oracle proofs.
std::vector<NamedProof> random_cut_proofs(std::mt19937& rng, std::size_t count);

// Random valid LK proofs over x_c, y_c, bot, some with cuts.
std::vector<LKDerivation> random_lk_proofs(std::mt19937& rng, std::size_t count);

// Random LJ proofs over p, q, 0, some with cuts.
std::vector<LJDerivation> random_lj_proofs(std::mt19937& rng, std::size_t count);

}  // namespace mixed::testing
