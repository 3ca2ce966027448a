#include "fcl/compose.hpp"

#include <algorithm>

#include "fcl/eval.hpp"
#include "fcl/free_symbols.hpp"

namespace fcl {

namespace {

const char* kInternalBase = "internal_anon_func";

bool is_fc_call(const Expr& e) {
    const CallExpr* call = e.get<CallExpr>();
    if (!call) return false;
    const SymbolRef* head = call->head->get<SymbolRef>();
    return head && head->name == "fc";
}

bool is_function_value(const Value& v) {
    return v.is_function() && !v.function_ref().special();
}

/// Pre-evaluates every `fc(...)` sub-composition that sits in call-head
/// position, replacing it with a call to a freshly bound internal name.
/// Lambda literals that are immediately called stay verbatim, as does
/// everything beneath them. A stray `fc` symbol anywhere else is an error:
/// the composition would capture the special form itself.
class ArgRewriter {
public:
    explicit ArgRewriter(FcBuild& build) : build_(build) {}

    ExprPtr rewrite(const ExprPtr& e) {
        if (const CallExpr* call = e->get<CallExpr>()) {
            if (is_fc_call(*call->head)) {
                Value sub = eval(call->head, build_.call_env);
                std::string name = build_.bind_internal(sub);
                return call_expr(symbol_expr(name), rewrite_args(call->args));
            }
            if (is_fc_call(*e))
                throw FclError(ErrorKind::Fc,
                               "fc() inside an argument expression must be called; "
                               "a bare fc(...) value cannot be captured");
            ExprPtr head = call->head->is<SymbolRef>() ? call->head : rewrite(call->head);
            return call_expr(std::move(head), rewrite_args(call->args));
        }
        if (const SymbolRef* sym = e->get<SymbolRef>()) {
            if (sym->name == "fc")
                throw FclError(ErrorKind::Fc,
                               "the symbol 'fc' may only appear as an applied call "
                               "inside fc() arguments");
            return e;
        }
        if (e->is<LambdaExpr>())
            return e; // kept inline verbatim
        if (const PipeExpr* pipe = e->get<PipeExpr>())
            return make_expr(PipeExpr{rewrite(pipe->lhs), rewrite(pipe->rhs)});
        if (const AssignExpr* assign = e->get<AssignExpr>())
            return make_expr(AssignExpr{assign->target, rewrite(assign->value)});
        if (const BlockExpr* block = e->get<BlockExpr>()) {
            std::vector<ExprPtr> exprs;
            exprs.reserve(block->exprs.size());
            for (const ExprPtr& stmt : block->exprs)
                exprs.push_back(rewrite(stmt));
            return make_expr(BlockExpr{std::move(exprs)});
        }
        return e; // literals
    }

private:
    FcBuild& build_;

    std::vector<Arg> rewrite_args(const std::vector<Arg>& args) {
        std::vector<Arg> out;
        out.reserve(args.size());
        for (const Arg& arg : args)
            out.push_back(Arg{arg.name, rewrite(arg.expr)});
        return out;
    }
};

struct ResolvedFunc {
    std::string name; // how the body refers to it
    Value value;
};

ResolvedFunc resolve_func_operand(const ExprPtr& func_expr, FcBuild& build) {
    if (const SymbolRef* sym = func_expr->get<SymbolRef>()) {
        const Value* found = build.call_env->lookup(sym->name);
        if (!found)
            throw FclError(ErrorKind::Name, "object '" + sym->name + "' not found");
        if (!is_function_value(*found))
            throw FclError(ErrorKind::Type,
                           "first operand to fc() must be a function; '" + sym->name +
                               "' is a " + found->kind_name());
        return ResolvedFunc{sym->name, *found};
    }
    if (func_expr->is<LambdaExpr>() || is_fc_call(*func_expr)) {
        Value v = eval(func_expr, build.call_env);
        if (!is_function_value(v))
            throw FclError(ErrorKind::Type, "first operand to fc() did not evaluate to a function");
        std::string name = build.bind_internal(v);
        return ResolvedFunc{std::move(name), std::move(v)};
    }
    throw FclError(ErrorKind::Type,
                   "first operand to fc() must be a function name, an anonymous function, "
                   "or a call to fc()");
}

} // namespace

void FcBuild::ensure_fresh_env() {
    if (env == call_env)
        env = Environment::make(call_env, /*fc_generated=*/true);
}

std::string FcBuild::next_internal_name() {
    while (true) {
        ++seq;
        std::string candidate =
            seq == 1 ? std::string(kInternalBase)
                     : std::string(kInternalBase) + "_" + std::to_string(seq);
        if (!env->bound_in_chain(candidate)) return candidate;
    }
}

std::string FcBuild::bind_internal(const Value& fn) {
    ensure_fresh_env();
    std::string name = next_internal_name();
    env->define(name, fn);
    return name;
}

Value eval_fc(const std::vector<Arg>& operands, const EnvPtr& env) {
    if (operands.empty())
        throw FclError(ErrorKind::Fc, "fc() requires a function operand");
    if (operands.front().name)
        throw FclError(ErrorKind::Fc, "the first operand to fc() must be the function itself");
    for (std::size_t i = 1; i < operands.size(); ++i)
        if (!operands[i].name)
            throw FclError(ErrorKind::Fc, "All parameter arguments must be named.");

    FcBuild build(env);
    ResolvedFunc func = resolve_func_operand(operands.front().expr, build);

    std::vector<Formal> formals = function_formals(func.value);
    bool variadic = false;
    if (const Builtin* b = func.value.function_ref().builtin())
        variadic = b->variadic;

    // Rewrite the named argument expressions, evaluating nested compositions.
    ArgRewriter rewriter(build);
    std::vector<Arg> named;
    named.reserve(operands.size() - 1);
    for (std::size_t i = 1; i < operands.size(); ++i) {
        const Arg& op = operands[i];
        if (op.expr->is<LambdaExpr>())
            throw FclError(ErrorKind::Fc,
                           "argument '" + *op.name +
                               "': anonymous function declarations may not be passed to fc(); "
                               "call the function or bind it to a name first");
        if (!variadic &&
            std::none_of(formals.begin(), formals.end(),
                         [&](const Formal& f) { return f.name == *op.name; }))
            throw FclError(ErrorKind::Fc, "argument '" + *op.name +
                                              "' does not match any parameter of '" +
                                              func.name + "'");
        named.push_back(Arg{op.name, rewriter.rewrite(op.expr)});
    }

    // Signature: unassigned default-free formals in formal order, then the
    // free symbols of the argument expressions in first-occurrence order.
    std::vector<std::string> signature;
    auto is_named_arg = [&](const std::string& formal) {
        return std::any_of(named.begin(), named.end(),
                           [&](const Arg& a) { return *a.name == formal; });
    };
    if (!variadic)
        for (const Formal& f : formals)
            if (!f.has_default && !is_named_arg(f.name))
                signature.push_back(f.name);
    for (const Arg& arg : named)
        for (const std::string& sym : free_symbols(arg.expr))
            if (std::find(signature.begin(), signature.end(), sym) == signature.end())
                signature.push_back(sym);

    // Body: one call, promoted formals positional first, named args after in
    // user order. Unassigned formals with defaults are omitted entirely so
    // the callee sees them as missing.
    std::vector<Arg> body_args;
    std::size_t promoted =
        variadic ? 0
                 : static_cast<std::size_t>(std::count_if(
                       formals.begin(), formals.end(), [&](const Formal& f) {
                           return !f.has_default && !is_named_arg(f.name);
                       }));
    for (std::size_t i = 0; i < promoted; ++i)
        body_args.push_back(Arg{std::nullopt, symbol_expr(signature[i])});
    for (const Arg& arg : named)
        body_args.push_back(arg);
    ExprPtr body = call_expr(symbol_expr(func.name), std::move(body_args));

    std::vector<Param> params;
    params.reserve(signature.size());
    for (const std::string& name : signature)
        params.push_back(Param{name, nullptr});
    return Value::closure(std::move(params), std::move(body), build.env);
}

std::string first_pipe_param(const Value& fn) {
    std::vector<Formal> formals = function_formals(fn);
    for (const Formal& f : formals)
        if (!f.has_default) return f.name;
    if (!formals.empty()) return formals.front().name;
    throw FclError(ErrorKind::Pipe, "%>% target function has no parameters");
}

namespace {

struct PipeOperand {
    std::optional<std::string> symbol;
    Value value;
};

PipeOperand resolve_pipe_operand(const ExprPtr& e, const EnvPtr& env, const char* side) {
    PipeOperand op;
    if (const SymbolRef* sym = e->get<SymbolRef>()) {
        const Value* found = env->lookup(sym->name);
        if (!found)
            throw FclError(ErrorKind::Name, "object '" + sym->name + "' not found");
        op.symbol = sym->name;
        op.value = *found;
    } else {
        op.value = eval(e, env);
    }
    if (!is_function_value(op.value))
        throw FclError(ErrorKind::Pipe, std::string(side) +
                                            " of %>% must evaluate to a function, not a " +
                                            op.value.kind_name());
    return op;
}

} // namespace

Value eval_pipe(const ExprPtr& lhs, const ExprPtr& rhs, const EnvPtr& env) {
    PipeOperand left = resolve_pipe_operand(lhs, env, "the left-hand side");
    PipeOperand right = resolve_pipe_operand(rhs, env, "the right-hand side");

    std::string param = first_pipe_param(right.value);

    // The target function binds first (it is the composed-over function),
    // then the left operand, matching fc's own resolution order.
    FcBuild build(env);
    std::string target_name = right.symbol ? *right.symbol : build.bind_internal(right.value);
    std::string source_name = left.symbol ? *left.symbol : build.bind_internal(left.value);

    ExprPtr inner = call_expr(symbol_expr(source_name), {Arg{std::nullopt, symbol_expr(param)}});
    ExprPtr body = call_expr(symbol_expr(target_name), {Arg{param, std::move(inner)}});
    return Value::closure({Param{param, nullptr}}, std::move(body), build.env);
}

} // namespace fcl
