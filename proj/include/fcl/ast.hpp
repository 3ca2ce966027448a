#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fcl {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// One call-site argument: `expr` or `name = expr`.
struct Arg {
    std::optional<std::string> name;
    ExprPtr expr;
};

/// One declared parameter: `name` or `name = default`.
struct Param {
    std::string name;
    ExprPtr default_expr; // null when the parameter has no default
};

struct NumberLit { double value; };
struct StringLit { std::string value; };
struct BoolLit   { bool value; };
struct NullLit   {};
struct SymbolRef { std::string name; };
struct CallExpr  { ExprPtr head; std::vector<Arg> args; };
struct LambdaExpr { std::vector<Param> params; ExprPtr body; };
struct PipeExpr  { ExprPtr lhs; ExprPtr rhs; };
struct AssignExpr { std::string target; ExprPtr value; };
struct BlockExpr { std::vector<ExprPtr> exprs; };

/// Immutable AST node. Binary operators are represented as CallExpr with an
/// operator-named SymbolRef head and two positional args; unary minus is the
/// same with one arg.
struct Expr {
    using Node = std::variant<NumberLit, StringLit, BoolLit, NullLit, SymbolRef,
                              CallExpr, LambdaExpr, PipeExpr, AssignExpr, BlockExpr>;
    Node node;

    template <typename T>
    const T* get() const { return std::get_if<T>(&node); }
    template <typename T>
    bool is() const { return std::holds_alternative<T>(node); }
};

inline ExprPtr make_expr(Expr::Node node) {
    return std::make_shared<const Expr>(Expr{std::move(node)});
}

inline ExprPtr number_expr(double v) { return make_expr(NumberLit{v}); }
inline ExprPtr string_expr(std::string v) { return make_expr(StringLit{std::move(v)}); }
inline ExprPtr bool_expr(bool v) { return make_expr(BoolLit{v}); }
inline ExprPtr null_expr() { return make_expr(NullLit{}); }
inline ExprPtr symbol_expr(std::string name) { return make_expr(SymbolRef{std::move(name)}); }
inline ExprPtr call_expr(ExprPtr head, std::vector<Arg> args) {
    return make_expr(CallExpr{std::move(head), std::move(args)});
}

/// Structural equality; spans are not stored on nodes, so there is nothing to
/// ignore. Null ExprPtrs compare equal to each other only.
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

} // namespace fcl
