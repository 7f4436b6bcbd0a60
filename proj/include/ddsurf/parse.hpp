#pragma once

// Text form of polynomials.
//
// Grammar (whitespace is ignored between tokens):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' INTEGER)?
//   primary := INTEGER | INTEGER '/' INTEGER | VARIABLE | '(' expr ')'
//
// Multiplication is always explicit.  Printing emits terms highest first in
// the lexicographic order, so print(parse(print(p))) == print(p).

#include <string>
#include <string_view>

#include "ddsurf/polynomial.hpp"

namespace ddsurf {

/// Throws InputError with the 1-based column of the offending token.
template <Field F>
Polynomial<F> parse_poly(std::string_view text, const F& field,
                         const Variables& vars = Variables::standard());

template <Field F>
std::string to_string(const Polynomial<F>& p, const Variables& vars = Variables::standard());

}  // namespace ddsurf
