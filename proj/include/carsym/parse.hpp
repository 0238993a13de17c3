#pragma once

#include <string_view>

#include "carsym/expression.hpp"

namespace carsym {

// Grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := scalar ('*' factor)* | factor ('*' factor)*
//   factor := 'a' '(' dyadic ')' | 'ad' '(' dyadic ')' | '(' expr ')'
//   dyadic := int | int '/' pow2
//   scalar := float | float 'i' | '(' float ',' float ')'
// Throws ParseError with a 1-based column on rejection.
CarPolynomial parse_expression(std::string_view text);

}  // namespace carsym
