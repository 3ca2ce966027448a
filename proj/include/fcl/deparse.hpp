#pragma once

#include <string>

#include "fcl/ast.hpp"

namespace fcl {

/// Renders an AST back to canonical source text: one space after commas and
/// around `=` in named arguments, spaces around binary operators, lambdas as
/// `function (p1, p2 = d) body`. Parentheses are reinserted only where the
/// grammar requires them, so parse(deparse(e)) is structurally equal to e.
/// A BlockExpr passed directly is treated as a program and rendered as
/// newline-separated statements; nested blocks render braced.
std::string deparse(const ExprPtr& expr);

/// `function (p1, p2 = d) body` — the rendering used for closures.
std::string deparse_function(const std::vector<Param>& params, const ExprPtr& body);

/// Shortest decimal text that reads back as exactly `value`.
std::string deparse_number(double value);

/// Indented one-node-per-line tree dump, for the `ast` subcommand and `:ast`.
std::string ast_dump(const ExprPtr& expr);

} // namespace fcl
