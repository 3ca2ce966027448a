#pragma once

#include "fcl/ast.hpp"
#include "fcl/env.hpp"
#include "fcl/value.hpp"

namespace fcl {

/// State of one fc construction: the environment the returned closure will
/// capture and the generator for internal binding names.
///
/// `env` starts as the calling environment. The first internal binding
/// upgrades it to a fresh child frame, so the returned closure's own frame
/// only ever holds internal bindings (evaluated sub-compositions and
/// anonymous functions).
struct FcBuild {
    explicit FcBuild(EnvPtr call_env) : call_env(std::move(call_env)), env(this->call_env) {}

    EnvPtr call_env;
    EnvPtr env;
    int seq = 0;

    /// `internal_anon_func`, then `internal_anon_func_2`, ... skipping any
    /// candidate already resolvable through the environment chain.
    std::string next_internal_name();

    /// Binds a function value under the next internal name and returns it.
    std::string bind_internal(const Value& fn);

    bool created_fresh_env() const { return env != call_env; }

private:
    void ensure_fresh_env();
};

/// The fc special form. `operands` are the unevaluated call arguments: the
/// function operand first, then the named argument expressions.
///
/// Builds a closure whose signature is the unassigned default-free formals of
/// the function (in formal order) followed by the free symbols of the
/// argument expressions (first occurrence order), and whose body is a single
/// call passing promoted formals positionally and the named arguments, in
/// user order, by name. Formals with defaults that were not assigned are
/// omitted from the call so the callee sees them as missing.
Value eval_fc(const std::vector<Arg>& operands, const EnvPtr& env);

/// The %>% operator: fc-backed composition of two functions. The right
/// function's first default-free formal (or first formal) receives the left
/// function's result; each side is referenced by name when written as a bare
/// symbol, otherwise its value is bound to an internal name.
Value eval_pipe(const ExprPtr& lhs, const ExprPtr& rhs, const EnvPtr& env);

/// The pipe's parameter choice for a callee: first formal without a default,
/// else the first formal. PipeError when there are no formals.
std::string first_pipe_param(const Value& fn);

} // namespace fcl
