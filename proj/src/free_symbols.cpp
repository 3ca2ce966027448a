#include "fcl/free_symbols.hpp"

#include <algorithm>
#include <unordered_set>

namespace fcl {

namespace {

class Collector {
public:
    std::vector<std::string> run(const ExprPtr& expr) {
        walk(expr);
        return std::move(found_);
    }

private:
    std::vector<std::string> found_;
    std::unordered_set<std::string> seen_;
    std::vector<std::string> bound_; // lambda parameters in scope

    bool is_bound(const std::string& name) const {
        return std::find(bound_.begin(), bound_.end(), name) != bound_.end();
    }

    void collect(const std::string& name) {
        if (is_bound(name)) return;
        if (seen_.insert(name).second) found_.push_back(name);
    }

    void walk(const ExprPtr& e) {
        if (const SymbolRef* sym = e->get<SymbolRef>()) {
            collect(sym->name);
        } else if (const CallExpr* call = e->get<CallExpr>()) {
            if (!call->head->is<SymbolRef>()) // symbol heads are never free symbols
                walk(call->head);
            for (const Arg& arg : call->args)
                walk(arg.expr);
        } else if (const LambdaExpr* fn = e->get<LambdaExpr>()) {
            std::size_t mark = bound_.size();
            for (const Param& p : fn->params)
                bound_.push_back(p.name);
            for (const Param& p : fn->params)
                if (p.default_expr) walk(p.default_expr);
            walk(fn->body);
            bound_.resize(mark);
        } else if (const PipeExpr* pipe = e->get<PipeExpr>()) {
            walk(pipe->lhs);
            walk(pipe->rhs);
        } else if (const AssignExpr* assign = e->get<AssignExpr>()) {
            walk(assign->value);
        } else if (const BlockExpr* block = e->get<BlockExpr>()) {
            for (const ExprPtr& stmt : block->exprs)
                walk(stmt);
        }
        // literals contribute nothing
    }
};

} // namespace

std::vector<std::string> free_symbols(const ExprPtr& expr) {
    return Collector().run(expr);
}

} // namespace fcl
