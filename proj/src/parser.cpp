#include "fcl/parser.hpp"

#include <cstdlib>
#include <set>

#include "fcl/token.hpp"

namespace fcl {

namespace {

bool is_compare_op(const std::string& s) {
    return s == ">" || s == "<" || s == ">=" || s == "<=" || s == "==" || s == "!=";
}

class Parser {
public:
    explicit Parser(const std::string& source)
        : source_(source), tokens_(tokenize(source)) {}

    ExprPtr parse_program() {
        std::vector<ExprPtr> exprs = parse_statements(nullptr);
        return make_expr(BlockExpr{std::move(exprs)});
    }

private:
    static constexpr int kMaxDepth = 2000;

    const std::string& source_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::vector<char> groups_; // open '(' and '{' nesting
    int depth_ = 0;

    struct DepthGuard {
        Parser& parser;
        explicit DepthGuard(Parser& p) : parser(p) {
            if (++parser.depth_ > kMaxDepth)
                parser.error("expression is nested too deeply");
        }
        ~DepthGuard() { --parser.depth_; }
    };

    bool at_end() const { return pos_ >= tokens_.size(); }
    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_++]; }

    bool newlines_significant() const {
        return groups_.empty() || groups_.back() == '{';
    }

    // True when the gap before token `pos_` contains a line break.
    bool newline_before_current() const {
        if (at_end()) return true;
        std::size_t from = pos_ == 0 ? 0 : tokens_[pos_ - 1].span.end_offset;
        std::size_t to = tokens_[pos_].span.start_offset;
        for (std::size_t i = from; i < to; ++i)
            if (source_[i] == '\n') return true;
        return false;
    }

    // An infix/postfix continuation stops at a statement boundary.
    bool continuation_blocked() const {
        return newlines_significant() && newline_before_current();
    }

    [[noreturn]] void error(const std::string& msg) const {
        SourceSpan span{source_.size(), source_.size()};
        if (!at_end()) span = peek().span;
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < span.start_offset && i < source_.size(); ++i) {
            if (source_[i] == '\n') { ++line; col = 1; }
            else ++col;
        }
        throw FclError(ErrorKind::Parse,
                       std::to_string(line) + ":" + std::to_string(col) + ": " + msg, span);
    }

    bool check(TokenKind kind, const char* text) const {
        return !at_end() && peek().is(kind, text);
    }

    void expect(TokenKind kind, const char* text, const char* what) {
        if (!check(kind, text))
            error(std::string("expected ") + what +
                  (at_end() ? " but found end of input"
                            : " but found '" + peek().lexeme + "'"));
        advance();
    }

    // terminator == nullptr means "until end of input".
    std::vector<ExprPtr> parse_statements(const char* terminator) {
        std::vector<ExprPtr> exprs;
        while (true) {
            while (check(TokenKind::Punct, ";")) advance();
            if (terminator ? check(TokenKind::Punct, terminator) : at_end()) break;
            if (at_end())
                error(std::string("expected '") + terminator + "' but found end of input");
            exprs.push_back(parse_expr());
            if (terminator ? check(TokenKind::Punct, terminator) : at_end()) break;
            if (check(TokenKind::Punct, ";")) continue;
            if (newline_before_current()) continue;
            error("expected a newline or ';' between expressions");
        }
        return exprs;
    }

    ExprPtr parse_expr() {
        DepthGuard guard(*this);
        return parse_assign();
    }

    ExprPtr parse_assign() {
        ExprPtr lhs = parse_pipe();
        if (check(TokenKind::Operator, "<-") && !continuation_blocked()) {
            const SymbolRef* sym = lhs->get<SymbolRef>();
            if (!sym)
                error("left-hand side of <- must be an identifier");
            advance();
            ExprPtr value = parse_assign();
            return make_expr(AssignExpr{sym->name, std::move(value)});
        }
        return lhs;
    }

    ExprPtr parse_pipe() {
        ExprPtr lhs = parse_compare();
        while (check(TokenKind::Operator, "%>%") && !continuation_blocked()) {
            advance();
            ExprPtr rhs = parse_compare();
            lhs = make_expr(PipeExpr{std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    ExprPtr op_call(const std::string& op, ExprPtr a, ExprPtr b) {
        return call_expr(symbol_expr(op), {Arg{std::nullopt, std::move(a)},
                                           Arg{std::nullopt, std::move(b)}});
    }

    ExprPtr parse_compare() {
        ExprPtr lhs = parse_additive();
        while (!at_end() && peek().kind == TokenKind::Operator && is_compare_op(peek().lexeme) &&
               !continuation_blocked()) {
            std::string op = advance().lexeme;
            lhs = op_call(op, std::move(lhs), parse_additive());
        }
        return lhs;
    }

    ExprPtr parse_additive() {
        ExprPtr lhs = parse_multiplicative();
        while ((check(TokenKind::Operator, "+") || check(TokenKind::Operator, "-")) &&
               !continuation_blocked()) {
            std::string op = advance().lexeme;
            lhs = op_call(op, std::move(lhs), parse_multiplicative());
        }
        return lhs;
    }

    ExprPtr parse_multiplicative() {
        ExprPtr lhs = parse_unary();
        while ((check(TokenKind::Operator, "*") || check(TokenKind::Operator, "/")) &&
               !continuation_blocked()) {
            std::string op = advance().lexeme;
            lhs = op_call(op, std::move(lhs), parse_unary());
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        int negations = 0;
        while (check(TokenKind::Operator, "-")) {
            advance();
            ++negations;
        }
        ExprPtr operand = parse_postfix();
        for (int i = 0; i < negations; ++i) {
            if (const NumberLit* num = operand->get<NumberLit>())
                operand = number_expr(-num->value); // fold literal negation
            else
                operand = call_expr(symbol_expr("-"), {Arg{std::nullopt, std::move(operand)}});
        }
        return operand;
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_primary();
        while (check(TokenKind::Punct, "(") && !continuation_blocked()) {
            advance();
            groups_.push_back('(');
            std::vector<Arg> args = parse_args();
            groups_.pop_back();
            expect(TokenKind::Punct, ")", "')'");
            e = call_expr(std::move(e), std::move(args));
        }
        return e;
    }

    std::vector<Arg> parse_args() {
        std::vector<Arg> args;
        std::set<std::string> named;
        if (check(TokenKind::Punct, ")")) return args;
        while (true) {
            Arg arg;
            if (!at_end() && peek().kind == TokenKind::Identifier &&
                pos_ + 1 < tokens_.size() && tokens_[pos_ + 1].is(TokenKind::Operator, "=")) {
                arg.name = advance().lexeme;
                advance(); // '='
                if (!named.insert(*arg.name).second)
                    error("duplicate argument name '" + *arg.name + "'");
            }
            arg.expr = parse_expr();
            args.push_back(std::move(arg));
            if (check(TokenKind::Punct, ",")) { advance(); continue; }
            break;
        }
        return args;
    }

    ExprPtr parse_primary() {
        if (at_end()) error("expected an expression but found end of input");
        const Token& tok = peek();
        switch (tok.kind) {
        case TokenKind::Number: {
            advance();
            return number_expr(std::strtod(tok.lexeme.c_str(), nullptr));
        }
        case TokenKind::String: {
            advance();
            return string_expr(decode_string(tok));
        }
        case TokenKind::Identifier:
            advance();
            return symbol_expr(tok.lexeme);
        case TokenKind::Keyword:
            if (tok.lexeme == "TRUE") { advance(); return bool_expr(true); }
            if (tok.lexeme == "FALSE") { advance(); return bool_expr(false); }
            if (tok.lexeme == "NULL") { advance(); return null_expr(); }
            if (tok.lexeme == "function") return parse_lambda();
            error("unexpected keyword '" + tok.lexeme + "'");
        case TokenKind::Punct:
            if (tok.lexeme == "(") {
                advance();
                groups_.push_back('(');
                ExprPtr inner = parse_expr();
                groups_.pop_back();
                expect(TokenKind::Punct, ")", "')'");
                return inner;
            }
            if (tok.lexeme == "{") {
                advance();
                groups_.push_back('{');
                std::vector<ExprPtr> exprs = parse_statements("}");
                groups_.pop_back();
                expect(TokenKind::Punct, "}", "'}'");
                return make_expr(BlockExpr{std::move(exprs)});
            }
            error("expected an expression but found '" + tok.lexeme + "'");
        default:
            error("expected an expression but found '" + tok.lexeme + "'");
        }
    }

    ExprPtr parse_lambda() {
        advance(); // 'function'
        expect(TokenKind::Punct, "(", "'(' after 'function'");
        groups_.push_back('(');
        std::vector<Param> params;
        std::set<std::string> seen;
        if (!check(TokenKind::Punct, ")")) {
            while (true) {
                if (at_end() || peek().kind != TokenKind::Identifier)
                    error("expected a parameter name");
                Param p;
                p.name = advance().lexeme;
                if (!seen.insert(p.name).second)
                    error("duplicate parameter name '" + p.name + "'");
                if (check(TokenKind::Operator, "=")) {
                    advance();
                    p.default_expr = parse_expr();
                }
                params.push_back(std::move(p));
                if (check(TokenKind::Punct, ",")) { advance(); continue; }
                break;
            }
        }
        groups_.pop_back();
        expect(TokenKind::Punct, ")", "')'");
        ExprPtr body = parse_expr();
        return make_expr(LambdaExpr{std::move(params), std::move(body)});
    }

    std::string decode_string(const Token& tok) {
        const std::string& lex = tok.lexeme;
        std::string out;
        // Lexer guarantees surrounding quotes and valid escapes.
        for (std::size_t i = 1; i + 1 < lex.size(); ++i) {
            char c = lex[i];
            if (c == '\\') {
                char e = lex[++i];
                switch (e) {
                case '\\': out += '\\'; break;
                case '"': out += '"'; break;
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                }
            } else {
                out += c;
            }
        }
        return out;
    }
};

} // namespace

ExprPtr parse(const std::string& source) {
    return Parser(source).parse_program();
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->node.index() != b->node.index()) return false;
    if (const NumberLit* x = a->get<NumberLit>())
        return x->value == b->get<NumberLit>()->value;
    if (const StringLit* x = a->get<StringLit>())
        return x->value == b->get<StringLit>()->value;
    if (const BoolLit* x = a->get<BoolLit>())
        return x->value == b->get<BoolLit>()->value;
    if (a->is<NullLit>())
        return true;
    if (const SymbolRef* x = a->get<SymbolRef>())
        return x->name == b->get<SymbolRef>()->name;
    if (const CallExpr* x = a->get<CallExpr>()) {
        const CallExpr* y = b->get<CallExpr>();
        if (!expr_equal(x->head, y->head) || x->args.size() != y->args.size()) return false;
        for (std::size_t i = 0; i < x->args.size(); ++i) {
            if (x->args[i].name != y->args[i].name) return false;
            if (!expr_equal(x->args[i].expr, y->args[i].expr)) return false;
        }
        return true;
    }
    if (const LambdaExpr* x = a->get<LambdaExpr>()) {
        const LambdaExpr* y = b->get<LambdaExpr>();
        if (x->params.size() != y->params.size()) return false;
        for (std::size_t i = 0; i < x->params.size(); ++i) {
            if (x->params[i].name != y->params[i].name) return false;
            if (!expr_equal(x->params[i].default_expr, y->params[i].default_expr)) return false;
        }
        return expr_equal(x->body, y->body);
    }
    if (const PipeExpr* x = a->get<PipeExpr>()) {
        const PipeExpr* y = b->get<PipeExpr>();
        return expr_equal(x->lhs, y->lhs) && expr_equal(x->rhs, y->rhs);
    }
    if (const AssignExpr* x = a->get<AssignExpr>()) {
        const AssignExpr* y = b->get<AssignExpr>();
        return x->target == y->target && expr_equal(x->value, y->value);
    }
    if (const BlockExpr* x = a->get<BlockExpr>()) {
        const BlockExpr* y = b->get<BlockExpr>();
        if (x->exprs.size() != y->exprs.size()) return false;
        for (std::size_t i = 0; i < x->exprs.size(); ++i)
            if (!expr_equal(x->exprs[i], y->exprs[i])) return false;
        return true;
    }
    return false;
}

} // namespace fcl
