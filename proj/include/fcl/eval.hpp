#pragma once

#include "fcl/ast.hpp"
#include "fcl/env.hpp"
#include "fcl/value.hpp"

namespace fcl {

/// Standard evaluation: literals self-evaluate, symbols resolve through the
/// environment chain, Assign defines in the local frame and returns the
/// value, Lambda captures env, Call evaluates the head and dispatches via
/// apply (fc and stage_list are special forms whose operands arrive
/// unevaluated), Pipe builds a composition, Block returns its last value.
Value eval(const ExprPtr& expr, const EnvPtr& env);

/// Calls a function value. Matching binds exact names first, then fills the
/// remaining formals positionally; unfilled formals become missing slots.
/// For closures a missing slot with a default evaluates the default in the
/// call frame; a missing slot without one raises MissingArgError when the
/// body first reads it.
Value apply(const Value& fn, const Args& args);

/// The matching step on its own: one slot per formal, every argument bound
/// or ArityError raised.
std::vector<ArgSlot> match_args(const std::vector<Formal>& formals, const Args& args,
                                const std::string& fn_name);

} // namespace fcl
