#pragma once

#include "fcl/ast.hpp"
#include "fcl/env.hpp"
#include "fcl/value.hpp"

namespace fcl {

/// The stage_list special form: evaluates each operand to a function and
/// records its source text as the stage label. Result is a Pipeline value.
Value eval_stage_list(const std::vector<Arg>& operands, const EnvPtr& env);

/// Function-list chaining. Each stage is wrapped in a unary closure
/// (`function (value) f(value)`), the same runtime shape a magrittr-style
/// pipeline stores in `_function_list`; applying the result runs the wrappers
/// in order via freduce. No composition occurs and no stage is evaluated at
/// construction time.
ChainedFunction chain(const Pipeline& pipeline);

/// chain() wrapped as an applicable function value.
Value chain_value(const Pipeline& pipeline);

/// Applies the stored functions in run order: v := f(v) for each f.
/// A failing stage rethrows with its one-based index prepended.
Value freduce(const Value& x, const ChainedFunction& chained);

/// Direct-nesting baseline: a single closure whose body is the syntactically
/// nested call fk(...f1(x)...), built once. Stages written as resolvable
/// names are called by name; anything else is bound to an internal name.
Value nest(const Pipeline& pipeline, const EnvPtr& env);

/// True composition via one fc() construction: the body nests the stage
/// calls directly and the last stage receives the nested expression as its
/// named pipe parameter — `fc(fk, pk = fk-1(...f1(x)...))`.
Value compose_pipeline(const Pipeline& pipeline, const EnvPtr& env);

/// Composes the contiguous slice [first, last] with the %>% operator
/// (left-associative fold). A slice of length one is the stage itself.
Value pipe_fold(const Pipeline& pipeline, std::size_t first, std::size_t last,
                const EnvPtr& env);

} // namespace fcl
