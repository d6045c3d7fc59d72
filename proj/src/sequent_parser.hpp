#pragma once

#include <vector>

#include "formula_parser.hpp"

namespace mixed::detail {

// Comma-separated, possibly empty, list of formulas ending before `stop`
// (or End).
inline std::vector<Formula> parse_formula_list(TokenStream& ts, Tok stop) {
  std::vector<Formula> out;
  if (ts.at(stop) || ts.at(Tok::End)) return out;
  out.push_back(parse_formula_at(ts));
  while (ts.accept(Tok::Comma)) out.push_back(parse_formula_at(ts));
  return out;
}

inline std::string join_formulas(const FormulaBag& b) {
  std::string out;
  for (const Formula& f : b) {
    if (!out.empty()) out += ", ";
    out += print_formula(f);
  }
  return out;
}

}  // namespace mixed::detail
