#pragma once

#include "paramsynth/ratfunc/rational_function.h"

#include <string_view>

namespace paramsynth {

// expr := term (('+'|'-') term)*
// term := factor (('*'|'/') factor)*
// factor := atom ('^' int)? | '-' factor
// atom := RATIONAL | DECIMAL | IDENT | '(' expr ')'
// Identifiers must already be in the pool unless allowNewVariables is set.
// Errors are ParseError with line 0 and a 1-based column.
RationalFunction parseExpression(std::string_view text, VariablePool& pool, bool allowNewVariables);
RationalFunction parseExpression(std::string_view text, VariablePool const& pool);

}  // namespace paramsynth
