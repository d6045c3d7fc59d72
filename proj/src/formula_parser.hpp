#pragma once

#include "lexer.hpp"
#include "mixed/formula.hpp"

namespace mixed::detail {

// Parses one formula starting at the cursor; stops before any token that
// cannot continue it (',', ';', '|-', ')' or end).
Formula parse_formula_at(TokenStream& ts);

}  // namespace mixed::detail
