#pragma once

#include <string>

#include "fcl/value.hpp"

namespace fcl {

/// Renders a value the way the REPL and script runner print it: vectors with
/// `[i]` index prefixes (strings quoted, names shown above values), matrices
/// with `[i,]` / `[,j]` labels, 7 significant digits for numbers. Functions
/// print as their deparsed source.
std::string format_value(const Value& value);

/// One number, 7 significant digits.
std::string format_number(double v);

} // namespace fcl
