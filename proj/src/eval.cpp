#include "fcl/eval.hpp"

#include "fcl/compose.hpp"
#include "fcl/strategies.hpp"

namespace fcl {

namespace {

// Converts runaway recursion (a closure calling itself without a base case)
// into a language error instead of exhausting the process stack.
constexpr int kMaxEvalDepth = 3000;
thread_local int g_eval_depth = 0;

struct EvalDepthGuard {
    EvalDepthGuard() {
        if (++g_eval_depth > kMaxEvalDepth) {
            --g_eval_depth;
            throw FclError(ErrorKind::Domain, "evaluation nested too deeply");
        }
    }
    ~EvalDepthGuard() { --g_eval_depth; }
};

} // namespace

std::vector<ArgSlot> match_args(const std::vector<Formal>& formals, const Args& args,
                                const std::string& fn_name) {
    std::vector<ArgSlot> slots(formals.size());
    std::vector<bool> filled(formals.size(), false);

    // Exact name matches claim their formals first.
    for (const auto& [name, value] : args) {
        if (!name) continue;
        bool found = false;
        for (std::size_t i = 0; i < formals.size(); ++i) {
            if (formals[i].name != *name) continue;
            if (filled[i])
                throw FclError(ErrorKind::Arity,
                               "argument '" + *name + "' given more than once to '" + fn_name + "'");
            slots[i].bound = value;
            filled[i] = true;
            found = true;
            break;
        }
        if (!found)
            throw FclError(ErrorKind::Arity,
                           "unknown argument '" + *name + "' to '" + fn_name + "'");
    }

    // Remaining positional arguments fill remaining formals in order.
    std::size_t next = 0;
    for (const auto& [name, value] : args) {
        if (name) continue;
        while (next < formals.size() && filled[next]) ++next;
        if (next == formals.size())
            throw FclError(ErrorKind::Arity, "too many arguments to '" + fn_name + "'");
        slots[next].bound = value;
        filled[next] = true;
    }

    return slots;
}

namespace {

Value apply_closure(const Closure& closure, const Args& args) {
    std::vector<Formal> formals;
    formals.reserve(closure.params.size());
    for (const Param& p : closure.params)
        formals.push_back(Formal{p.name, p.default_expr != nullptr});
    std::vector<ArgSlot> slots = match_args(formals, args, "function");

    EnvPtr frame = Environment::make(closure.env);
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (!slots[i].missing())
            frame->define(closure.params[i].name, slots[i].get());
    // Defaults evaluate in the call frame, left to right, so a default may
    // refer to parameters bound before it.
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!slots[i].missing()) continue;
        if (closure.params[i].default_expr)
            frame->define(closure.params[i].name, eval(closure.params[i].default_expr, frame));
        else
            frame->define(closure.params[i].name, Value::missing_marker());
    }
    return eval(closure.body, frame);
}

} // namespace

Value apply(const Value& fn, const Args& args) {
    if (!fn.is_function())
        throw FclError(ErrorKind::Type,
                       std::string("attempt to call a non-function value (") + fn.kind_name() + ")");
    const Function& f = fn.function_ref();
    if (const Closure* closure = f.closure())
        return apply_closure(*closure, args);
    if (const Builtin* builtin = f.builtin()) {
        if (builtin->variadic)
            return builtin->variadic_fn(args);
        std::vector<ArgSlot> slots = match_args(builtin->formals, args, builtin->name);
        return builtin->fn(slots);
    }
    if (const ChainedFunction* chained = f.chained()) {
        std::vector<ArgSlot> slots = match_args(function_formals(fn), args, "function list");
        return freduce(slots[0].require("value", "function list"), *chained);
    }
    throw FclError(ErrorKind::Type, "special form cannot be applied as a value");
}

Value eval(const ExprPtr& expr, const EnvPtr& env) {
    EvalDepthGuard depth_guard;
    if (const NumberLit* n = expr->get<NumberLit>())
        return Value::number(n->value);
    if (const StringLit* s = expr->get<StringLit>())
        return Value::string(s->value);
    if (const BoolLit* b = expr->get<BoolLit>())
        return Value::boolean(b->value);
    if (expr->is<NullLit>())
        return Value::null();
    if (const SymbolRef* sym = expr->get<SymbolRef>()) {
        const Value* found = env->lookup(sym->name);
        if (!found)
            throw FclError(ErrorKind::Name, "object '" + sym->name + "' not found");
        if (found->is_missing_marker())
            throw FclError(ErrorKind::MissingArg,
                           "argument '" + sym->name + "' is missing, with no default");
        return *found;
    }
    if (const AssignExpr* assign = expr->get<AssignExpr>()) {
        Value v = eval(assign->value, env);
        env->define(assign->target, v);
        return v;
    }
    if (const LambdaExpr* fn = expr->get<LambdaExpr>())
        return Value::closure(fn->params, fn->body, env);
    if (const CallExpr* call = expr->get<CallExpr>()) {
        Value head = eval(call->head, env);
        if (head.is_function()) {
            if (const SpecialForm* form = head.function_ref().special()) {
                switch (*form) {
                case SpecialForm::Fc: return eval_fc(call->args, env);
                case SpecialForm::StageList: return eval_stage_list(call->args, env);
                }
            }
        }
        Args args;
        args.reserve(call->args.size());
        for (const Arg& arg : call->args)
            args.emplace_back(arg.name, eval(arg.expr, env));
        return fcl::apply(head, args);
    }
    if (const PipeExpr* pipe = expr->get<PipeExpr>())
        return eval_pipe(pipe->lhs, pipe->rhs, env);
    if (const BlockExpr* block = expr->get<BlockExpr>()) {
        Value last = Value::null();
        for (const ExprPtr& stmt : block->exprs)
            last = eval(stmt, env);
        return last;
    }
    throw FclError(ErrorKind::Type, "cannot evaluate expression");
}

} // namespace fcl
