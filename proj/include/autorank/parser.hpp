#pragma once

#include <string_view>

#include "autorank/formula.hpp"

namespace autorank {

/// Parses the textual predicate syntax used by the CLI `decide` command.
///
///   formula := impl ('<=>' impl)*
///   impl    := or ('=>' impl)?
///   or      := and ('|' and)*
///   and     := unary ('&' unary)*
///   unary   := '~' unary | ('E' | 'A') ident (',' ident)* ':' formula
///            | '(' formula ')' | 'true' | 'false' | macro | atom
///   atom    := 'x[' term ']' ('=' | '!=') (number | 'x[' term ']')
///            | term ('=' | '!=' | '<' | '<=' | '>' | '>=') term
///   term    := summand ('+' summand)*
///   summand := number | ident | number '*' ident | number ident
///   macro   := factoreq(i,j,n) | period(i,n,p) | match(i,j,m,r)
///            | earliestfac(i,j,n) | prefx(i,j,x,y) | suffx(i,j,x,y) | prim(i,n)
///            | unbounded(i,r)
///
/// Throws Error("parse") with a column on malformed input.
Formula parse_formula(std::string_view text);

}  // namespace autorank
