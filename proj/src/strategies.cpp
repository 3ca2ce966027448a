#include "fcl/strategies.hpp"

#include <cctype>
#include <set>

#include "fcl/compose.hpp"
#include "fcl/deparse.hpp"
#include "fcl/eval.hpp"

namespace fcl {

namespace {

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_' || s[0] == '.'))
        return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'))
            return false;
    return s != "function" && s != "TRUE" && s != "FALSE" && s != "NULL";
}

bool stage_accepts_one_argument(const Value& fn) {
    const Function& f = fn.function_ref();
    if (const Builtin* b = f.builtin())
        if (b->variadic) return true;
    return !function_formals(fn).empty();
}

/// Expressions referring to the pipeline stages. A stage whose label is a
/// plain identifier that still resolves to the same function value is
/// referenced by name; everything else gets an internal binding in a child
/// frame. Labels in `avoid` are never used as names (they would be shadowed
/// by a parameter of the function being built).
struct StageRefs {
    std::vector<ExprPtr> exprs;
    EnvPtr env;
};

StageRefs stage_refs(const Pipeline& pipeline, const EnvPtr& env,
                     const std::set<std::string>& avoid) {
    StageRefs refs;
    FcBuild build(env);
    for (std::size_t i = 0; i < pipeline.stages.size(); ++i) {
        const std::string& label = pipeline.labels[i];
        const Value& stage = pipeline.stages[i];
        if (is_identifier(label) && !avoid.count(label)) {
            const Value* found = env->lookup(label);
            if (found && found->identity() == stage.identity()) {
                refs.exprs.push_back(symbol_expr(label));
                continue;
            }
        }
        refs.exprs.push_back(symbol_expr(build.bind_internal(stage)));
    }
    refs.env = build.env;
    return refs;
}

std::set<std::string> pipe_params_of(const Pipeline& pipeline) {
    std::set<std::string> params;
    for (const Value& stage : pipeline.stages)
        params.insert(first_pipe_param(stage));
    return params;
}

} // namespace

Value eval_stage_list(const std::vector<Arg>& operands, const EnvPtr& env) {
    if (operands.empty())
        throw FclError(ErrorKind::Domain, "stage_list() requires at least one stage");
    Pipeline pipeline;
    for (const Arg& op : operands) {
        if (op.name)
            throw FclError(ErrorKind::Domain, "stage_list() arguments must be unnamed");
        Value stage = eval(op.expr, env);
        if (!stage.is_function() || stage.function_ref().special())
            throw FclError(ErrorKind::Type,
                           "stage '" + deparse(op.expr) + "' is not a function");
        if (!stage_accepts_one_argument(stage))
            throw FclError(ErrorKind::Domain,
                           "stage '" + deparse(op.expr) + "' does not accept an argument");
        pipeline.stages.push_back(std::move(stage));
        pipeline.labels.push_back(deparse(op.expr));
    }
    return Value::pipeline(std::move(pipeline));
}

ChainedFunction chain(const Pipeline& pipeline) {
    ChainedFunction chained;
    chained.function_list.reserve(pipeline.stages.size());
    for (std::size_t i = 0; i < pipeline.stages.size(); ++i) {
        const std::string& label = pipeline.labels[i];
        std::string ref = is_identifier(label) && label != "value" ? label : "f";
        EnvPtr env = Environment::make();
        env->define(ref, pipeline.stages[i]);
        ExprPtr body = call_expr(symbol_expr(ref), {Arg{std::nullopt, symbol_expr("value")}});
        chained.function_list.push_back(
            Value::closure({Param{"value", nullptr}}, std::move(body), std::move(env)));
    }
    return chained;
}

Value chain_value(const Pipeline& pipeline) {
    return Value::chained(chain(pipeline));
}

Value freduce(const Value& x, const ChainedFunction& chained) {
    Value v = x;
    for (std::size_t i = 0; i < chained.function_list.size(); ++i) {
        try {
            v = fcl::apply(chained.function_list[i], {{std::nullopt, v}});
        } catch (const FclError& e) {
            throw FclError(e.kind(),
                           "pipeline stage " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return v;
}

Value nest(const Pipeline& pipeline, const EnvPtr& env) {
    StageRefs refs = stage_refs(pipeline, env, {"x"});
    ExprPtr body = symbol_expr("x");
    for (const ExprPtr& ref : refs.exprs)
        body = call_expr(ref, {Arg{std::nullopt, std::move(body)}});
    return Value::closure({Param{"x", nullptr}}, std::move(body), refs.env);
}

Value compose_pipeline(const Pipeline& pipeline, const EnvPtr& env) {
    std::set<std::string> avoid = {"x"};
    StageRefs refs = stage_refs(pipeline, env, avoid);
    const std::size_t k = refs.exprs.size();

    std::vector<Arg> fc_args;
    if (k == 1) {
        fc_args.push_back(Arg{std::nullopt, refs.exprs[0]});
    } else {
        ExprPtr inner = call_expr(refs.exprs[0], {Arg{std::nullopt, symbol_expr("x")}});
        for (std::size_t i = 1; i + 1 < k; ++i)
            inner = call_expr(refs.exprs[i], {Arg{std::nullopt, std::move(inner)}});
        std::string param = first_pipe_param(pipeline.stages.back());
        fc_args.push_back(Arg{std::nullopt, refs.exprs[k - 1]});
        fc_args.push_back(Arg{param, std::move(inner)});
    }
    ExprPtr fc_call = call_expr(symbol_expr("fc"), std::move(fc_args));
    return eval(fc_call, refs.env);
}

Value pipe_fold(const Pipeline& pipeline, std::size_t first, std::size_t last,
                const EnvPtr& env) {
    if (first > last || last >= pipeline.stages.size())
        throw FclError(ErrorKind::Domain, "invalid pipeline slice");
    if (first == last)
        return pipeline.stages[first];
    StageRefs refs = stage_refs(pipeline, env, pipe_params_of(pipeline));
    ExprPtr expr = refs.exprs[first];
    for (std::size_t i = first + 1; i <= last; ++i)
        expr = make_expr(PipeExpr{std::move(expr), refs.exprs[i]});
    return eval(expr, refs.env);
}

} // namespace fcl
