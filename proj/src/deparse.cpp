#include "fcl/deparse.hpp"

#include <charconv>
#include <cmath>

namespace fcl {

namespace {

// Higher binds tighter. Mirrors the parser's climbing order.
enum Prec : int {
    PrecNone = 0,
    PrecAssign = 1,
    PrecPipe = 2,
    PrecCompare = 3,
    PrecAdd = 4,
    PrecMul = 5,
    PrecUnary = 6,
    PrecPostfix = 7,
    PrecPrimary = 8,
};

int binary_prec(const std::string& op) {
    if (op == "+" || op == "-") return PrecAdd;
    if (op == "*" || op == "/") return PrecMul;
    if (op == ">" || op == "<" || op == ">=" || op == "<=" || op == "==" || op == "!=")
        return PrecCompare;
    return PrecNone;
}

// A call that renders as infix: operator symbol head, two positional args.
const CallExpr* as_binary_op(const Expr& e, int* prec_out) {
    const CallExpr* call = e.get<CallExpr>();
    if (!call || call->args.size() != 2) return nullptr;
    const SymbolRef* head = call->head->get<SymbolRef>();
    if (!head) return nullptr;
    int p = binary_prec(head->name);
    if (p == PrecNone) return nullptr;
    if (call->args[0].name || call->args[1].name) return nullptr;
    *prec_out = p;
    return call;
}

const CallExpr* as_unary_minus(const Expr& e) {
    const CallExpr* call = e.get<CallExpr>();
    if (!call || call->args.size() != 1 || call->args[0].name) return nullptr;
    const SymbolRef* head = call->head->get<SymbolRef>();
    if (!head || head->name != "-") return nullptr;
    return call;
}

class Deparser {
public:
    std::string render_program(const ExprPtr& e) {
        if (const BlockExpr* block = e->get<BlockExpr>()) {
            std::string out;
            for (std::size_t i = 0; i < block->exprs.size(); ++i) {
                if (i) out += '\n';
                render(block->exprs[i], PrecNone, true);
                out += take();
            }
            return out;
        }
        render(e, PrecNone, true);
        return take();
    }

    std::string render_function(const std::vector<Param>& params, const ExprPtr& body) {
        lambda(params, body);
        return take();
    }

private:
    std::string out_;
    int indent_ = 0;

    std::string take() { return std::move(out_); }
    void emit(const std::string& s) { out_ += s; }
    void emit(char c) { out_ += c; }
    void newline() {
        out_ += '\n';
        out_.append(static_cast<std::size_t>(indent_) * 4, ' ');
    }

    int prec_of(const Expr& e) {
        int p = PrecNone;
        if (as_binary_op(e, &p)) return p;
        if (as_unary_minus(e)) return PrecUnary;
        if (e.is<AssignExpr>()) return PrecAssign;
        if (e.is<PipeExpr>()) return PrecPipe;
        if (e.is<CallExpr>()) return PrecPostfix;
        if (e.is<LambdaExpr>()) return PrecPrimary; // greedy tail; handled separately
        if (const NumberLit* n = e.get<NumberLit>())
            return std::signbit(n->value) ? PrecUnary : PrecPrimary;
        return PrecPrimary;
    }

    // `tail` marks slots where a lambda (or assignment) may extend to the end
    // of the enclosing expression without changing the parse.
    void render(const ExprPtr& e, int min_prec, bool tail) {
        bool parens = false;
        if (e->is<LambdaExpr>())
            parens = !tail;
        else if (e->is<AssignExpr>())
            parens = min_prec > PrecNone;
        else
            parens = prec_of(*e) < min_prec;
        if (parens) emit('(');
        render_node(e);
        if (parens) emit(')');
    }

    void render_node(const ExprPtr& e) {
        int op_prec = PrecNone;
        if (const NumberLit* n = e->get<NumberLit>()) {
            emit(deparse_number(n->value));
        } else if (const StringLit* s = e->get<StringLit>()) {
            emit(quote_string(s->value));
        } else if (const BoolLit* b = e->get<BoolLit>()) {
            emit(b->value ? "TRUE" : "FALSE");
        } else if (e->is<NullLit>()) {
            emit("NULL");
        } else if (const SymbolRef* sym = e->get<SymbolRef>()) {
            emit(sym->name);
        } else if (const CallExpr* bin = as_binary_op(*e, &op_prec)) {
            render(bin->args[0].expr, op_prec, false);
            emit(' ');
            emit(bin->head->get<SymbolRef>()->name);
            emit(' ');
            render(bin->args[1].expr, op_prec + 1, true);
        } else if (const CallExpr* neg = as_unary_minus(*e)) {
            emit('-');
            render(neg->args[0].expr, PrecUnary, true);
        } else if (const CallExpr* call = e->get<CallExpr>()) {
            render(call->head, PrecPostfix, false);
            emit('(');
            for (std::size_t i = 0; i < call->args.size(); ++i) {
                if (i) emit(", ");
                if (call->args[i].name) {
                    emit(*call->args[i].name);
                    emit(" = ");
                }
                render(call->args[i].expr, PrecNone, true);
            }
            emit(')');
        } else if (const LambdaExpr* fn = e->get<LambdaExpr>()) {
            lambda(fn->params, fn->body);
        } else if (const PipeExpr* pipe = e->get<PipeExpr>()) {
            render(pipe->lhs, PrecPipe, false);
            emit(" %>% ");
            render(pipe->rhs, PrecPipe + 1, true);
        } else if (const AssignExpr* assign = e->get<AssignExpr>()) {
            emit(assign->target);
            emit(" <- ");
            render(assign->value, PrecNone, true);
        } else if (const BlockExpr* block = e->get<BlockExpr>()) {
            emit('{');
            ++indent_;
            for (const ExprPtr& stmt : block->exprs) {
                newline();
                render(stmt, PrecNone, true);
            }
            --indent_;
            newline();
            emit('}');
        }
    }

    void lambda(const std::vector<Param>& params, const ExprPtr& body) {
        emit("function (");
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (i) emit(", ");
            emit(params[i].name);
            if (params[i].default_expr) {
                emit(" = ");
                render(params[i].default_expr, PrecNone, true);
            }
        }
        emit(") ");
        render(body, PrecNone, true);
    }

    static std::string quote_string(const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
            }
        }
        out += '"';
        return out;
    }
};

class AstDumper {
public:
    std::string dump(const ExprPtr& e) {
        node(e, 0, "");
        return std::move(out_);
    }

private:
    std::string out_;

    void line(int depth, const std::string& text) {
        out_.append(static_cast<std::size_t>(depth) * 2, ' ');
        out_ += text;
        out_ += '\n';
    }

    void node(const ExprPtr& e, int depth, const std::string& label) {
        std::string prefix = label.empty() ? "" : label + ": ";
        if (const NumberLit* n = e->get<NumberLit>()) {
            line(depth, prefix + "Number " + deparse_number(n->value));
        } else if (const StringLit* s = e->get<StringLit>()) {
            line(depth, prefix + "String " + deparse(string_expr(s->value)));
        } else if (const BoolLit* b = e->get<BoolLit>()) {
            line(depth, prefix + std::string("Bool ") + (b->value ? "TRUE" : "FALSE"));
        } else if (e->is<NullLit>()) {
            line(depth, prefix + "Null");
        } else if (const SymbolRef* sym = e->get<SymbolRef>()) {
            line(depth, prefix + "Symbol " + sym->name);
        } else if (const CallExpr* call = e->get<CallExpr>()) {
            line(depth, prefix + "Call");
            node(call->head, depth + 1, "head");
            for (const Arg& arg : call->args)
                node(arg.expr, depth + 1, arg.name ? "arg " + *arg.name : "arg");
        } else if (const LambdaExpr* fn = e->get<LambdaExpr>()) {
            line(depth, prefix + "Lambda");
            for (const Param& p : fn->params) {
                if (p.default_expr)
                    node(p.default_expr, depth + 1, "param " + p.name + " =");
                else
                    line(depth + 1, "param " + p.name);
            }
            node(fn->body, depth + 1, "body");
        } else if (const PipeExpr* pipe = e->get<PipeExpr>()) {
            line(depth, prefix + "Pipe");
            node(pipe->lhs, depth + 1, "lhs");
            node(pipe->rhs, depth + 1, "rhs");
        } else if (const AssignExpr* assign = e->get<AssignExpr>()) {
            line(depth, prefix + "Assign " + assign->target);
            node(assign->value, depth + 1, "value");
        } else if (const BlockExpr* block = e->get<BlockExpr>()) {
            line(depth, prefix + "Block");
            for (const ExprPtr& stmt : block->exprs)
                node(stmt, depth + 1, "");
        }
    }
};

} // namespace

std::string deparse(const ExprPtr& expr) {
    return Deparser().render_program(expr);
}

std::string deparse_function(const std::vector<Param>& params, const ExprPtr& body) {
    return Deparser().render_function(params, body);
}

std::string deparse_number(double value) {
    char buf[64];
    std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string ast_dump(const ExprPtr& expr) {
    return AstDumper().dump(expr);
}

} // namespace fcl
