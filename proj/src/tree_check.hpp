#pragma once

#include <string>
#include <vector>

#include "mixed/calculus.hpp"

namespace mixed::detail {

// Tries each candidate principal (or the annotation) against `infer` and
// reports the first reason none reproduces the node's conclusion.
template <typename Tree, typename Infer, typename F>
bool match_candidates(const Tree& node, const std::vector<F>& candidates, Infer&& infer, std::string& why) {
  using Seq = typename Tree::Sequent;
  std::vector<Seq> prem;
  for (const Tree& p : node.premises()) prem.push_back(p.conclusion());
  std::vector<F> cands = node.principal() ? std::vector<F>{*node.principal()} : candidates;
  if (cands.empty()) {
    why = "no formula fits the rule schema";
    return false;
  }
  std::string first;
  for (const F& a : cands) {
    std::string reason;
    if (auto c = infer(node.rule(), a, prem, &reason)) {
      if (*c == node.conclusion()) return true;
      reason = "conclusion does not match the rule schema";
    }
    if (first.empty()) first = reason;
  }
  why = first;
  return false;
}

template <typename Tree, typename Match>
void check_tree(const Tree& d, Match&& match, TreePath& path, CheckReport& report) {
  std::string why;
  if (!match(d, why)) report.fail(path_string(path), why);
  for (std::size_t i = 0; i < d.premises().size(); ++i) {
    path.push_back(i);
    check_tree(d.premise(i), match, path, report);
    path.pop_back();
  }
}

}  // namespace mixed::detail
