#pragma once

#include <string>

#include "fcl/ast.hpp"

namespace fcl {

/// Parses a full program into a BlockExpr of top-level expressions.
///
/// Precedence, lowest to highest: `<-`, `%>%`, comparison, additive,
/// multiplicative, unary minus, call. `%>%` and the binary operators are
/// left-associative; `<-` is right-associative and its target must be an
/// identifier. Newlines separate statements at the top level and inside
/// braces, and are insignificant inside parentheses, so an expression may
/// continue across lines when a call or an infix operator is still open.
ExprPtr parse(const std::string& source);

} // namespace fcl
