#pragma once

#include <string>
#include <vector>

#include "fcl/ast.hpp"

namespace fcl {

/// Free (unbound) symbols of an expression, in first-occurrence depth-first
/// order, deduplicated. A symbol is free unless it is the head of a call or
/// bound by an enclosing lambda parameter; named-argument names and
/// assignment targets are not symbols. Pure AST analysis, no environment.
std::vector<std::string> free_symbols(const ExprPtr& expr);

} // namespace fcl
