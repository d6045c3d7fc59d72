#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace mixed {

// Immutable rule-labelled tree shared by the auxiliary calculi (LK, LJ, LL).
template <typename Seq, typename R, typename F>
class ProofTree {
 public:
  using Sequent = Seq;
  using RuleTag = R;
  using FormulaT = F;

  ProofTree(Seq conclusion, R rule, std::vector<ProofTree> premises, std::optional<F> principal = std::nullopt) {
    auto n = std::make_shared<Node>(Node{std::move(conclusion), rule, std::move(premises), std::move(principal)});
    for (const ProofTree& p : n->premises) {
      n->nodes += p.node_count();
      n->height = std::max(n->height, p.height() + 1);
    }
    node_ = std::move(n);
  }

  const Seq& conclusion() const { return node_->conclusion; }
  R rule() const { return node_->rule; }
  const std::vector<ProofTree>& premises() const { return node_->premises; }
  const ProofTree& premise(std::size_t i) const { return node_->premises.at(i); }
  const std::optional<F>& principal() const { return node_->principal; }
  std::size_t node_count() const { return node_->nodes; }
  std::size_t height() const { return node_->height; }

  friend bool operator==(const ProofTree& a, const ProofTree& b) {
    if (a.node_ == b.node_) return true;
    return a.rule() == b.rule() && a.conclusion() == b.conclusion() && a.principal() == b.principal() &&
           a.premises() == b.premises();
  }

  template <typename Fn>
  void visit(Fn&& fn) const {
    fn(*this);
    for (const ProofTree& p : premises()) p.visit(fn);
  }

 private:
  struct Node {
    Seq conclusion;
    R rule;
    std::vector<ProofTree> premises;
    std::optional<F> principal;
    std::size_t nodes = 1;
    std::size_t height = 1;
  };
  std::shared_ptr<const Node> node_;
};

}  // namespace mixed
