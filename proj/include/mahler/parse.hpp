#pragma once

#include <string>
#include <string_view>

#include "mahler/group.hpp"
#include "mahler/group_ring.hpp"

namespace mahler {

/// Parsed polynomial: terms in source order, each a coefficient times a word.
using PolyExpr = WordPoly;

/// Grammar (whitespace ignored):
///   poly   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*'? factor)*
///   factor := coeff | gen ['^' int]
///   coeff  := number ['i'] | 'i' | '(' ['+'|'-'] number ['i'] [('+'|'-') [number] 'i'] ')'
///   number := digits ['.' digits] ['/' digits]
///   gen    := 'x' | 'y' | 'x1' .. 'x9'
///   int    := ['+'|'-'] digits | '(' ['+'|'-'] digits ')'
/// x and x1 name generator 0, y and x2 generator 1, xk generator k-1.
/// Throws ParseError with the offset of the offending character.
PolyExpr parse_poly(std::string_view src);

/// Prints a polynomial in a form parse_poly reads back to an equal value.
std::string format_poly(const PolyExpr& poly);

/// Z^l, Z, Z/n and products joined by 'x' (Z/3xZ/2, ZxZ/4), Dm, Dinf, Dicm,
/// Dicinf, Fl, Ca*Cb*... Throws ParseError.
GroupSpec parse_group(std::string_view src);

}  // namespace mahler
