#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corpus.hpp"
#include "fcl/deparse.hpp"
#include "fcl/free_symbols.hpp"
#include "fcl/parser.hpp"
#include "fcl/token.hpp"

using namespace fcl;
using fcl_test::corpus;

namespace {

const Expr& only_stmt(const ExprPtr& program) {
    const BlockExpr* block = program->get<BlockExpr>();
    REQUIRE(block);
    REQUIRE(block->exprs.size() == 1);
    return *block->exprs.front();
}

ExprPtr parse_expr1(const std::string& src) {
    ExprPtr program = parse(src);
    const BlockExpr* block = program->get<BlockExpr>();
    REQUIRE(block->exprs.size() == 1);
    return block->exprs.front();
}

} // namespace

TEST_CASE("tokenize fc call") {
    std::vector<Token> tokens = tokenize("fc(head, n=50)");
    REQUIRE(tokens.size() == 8);
    CHECK(tokens[0].kind == TokenKind::Identifier);
    CHECK(tokens[0].lexeme == "fc");
    CHECK(tokens[1].is(TokenKind::Punct, "("));
    CHECK(tokens[2].is(TokenKind::Identifier, "head"));
    CHECK(tokens[3].is(TokenKind::Punct, ","));
    CHECK(tokens[4].is(TokenKind::Identifier, "n"));
    CHECK(tokens[5].is(TokenKind::Operator, "="));
    CHECK(tokens[6].is(TokenKind::Number, "50"));
    CHECK(tokens[7].is(TokenKind::Punct, ")"));
}

TEST_CASE("tokenize empty source") {
    CHECK(tokenize("").empty());
}

TEST_CASE("hash inside a string is not a comment") {
    std::vector<Token> tokens = tokenize("x <- \"a#b\"");
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[0].is(TokenKind::Identifier, "x"));
    CHECK(tokens[1].is(TokenKind::Operator, "<-"));
    CHECK(tokens[2].kind == TokenKind::String);
    CHECK(tokens[2].lexeme == "\"a#b\"");
}

TEST_CASE("comments and whitespace are skipped") {
    std::vector<Token> tokens = tokenize("x # trailing comment\n# whole line\ny");
    REQUIRE(tokens.size() == 2);
    CHECK(tokens[0].lexeme == "x");
    CHECK(tokens[1].lexeme == "y");
}

namespace {

// True when a gap between tokens is nothing but whitespace and comments, so
// lexemes plus gaps reconstruct the source.
bool gap_is_skippable(const std::string& src, std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) {
        char c = src[i];
        if (c == '#') {
            while (i < to && src[i] != '\n') ++i;
            continue;
        }
        if (c != ' ' && c != '\t' && c != '\r' && c != '\n') return false;
    }
    return true;
}

} // namespace

TEST_CASE("token lexemes plus skipped gaps reconstruct the source") {
    for (const std::string& src : corpus()) {
        std::vector<Token> tokens = tokenize(src);
        std::size_t cursor = 0;
        for (const Token& tok : tokens) {
            CHECK(tok.span.start_offset <= tok.span.end_offset);
            CHECK(tok.span.end_offset <= src.size());
            CHECK(src.substr(tok.span.start_offset,
                             tok.span.end_offset - tok.span.start_offset) == tok.lexeme);
            CHECK(tok.span.start_offset >= cursor);
            CHECK(gap_is_skippable(src, cursor, tok.span.start_offset));
            cursor = tok.span.end_offset;
        }
        CHECK(gap_is_skippable(src, cursor, src.size()));
    }
}

TEST_CASE("lex errors carry spans") {
    CHECK_THROWS_AS(tokenize("\"abc"), FclError);
    try {
        tokenize("x <- \"abc");
    } catch (const FclError& e) {
        CHECK(e.kind() == ErrorKind::Lex);
        REQUIRE(e.span().has_value());
        CHECK(e.span()->start_offset == 5);
    }
    CHECK_THROWS_AS(tokenize("a @ b"), FclError);
    CHECK_THROWS_AS(tokenize("\"bad \\s escape\""), FclError);
    CHECK_THROWS_AS(tokenize("a % b"), FclError);
    CHECK_THROWS_AS(tokenize("!x"), FclError);
}

TEST_CASE("parse nested fc example") {
    ExprPtr e = parse_expr1("fc(log, x=sqrt(x))");
    const CallExpr* call = e->get<CallExpr>();
    REQUIRE(call);
    CHECK(call->head->get<SymbolRef>()->name == "fc");
    REQUIRE(call->args.size() == 2);
    CHECK(!call->args[0].name);
    CHECK(call->args[0].expr->get<SymbolRef>()->name == "log");
    REQUIRE(call->args[1].name);
    CHECK(*call->args[1].name == "x");
    const CallExpr* inner = call->args[1].expr->get<CallExpr>();
    REQUIRE(inner);
    CHECK(inner->head->get<SymbolRef>()->name == "sqrt");
    REQUIRE(inner->args.size() == 1);
    CHECK(inner->args[0].expr->get<SymbolRef>()->name == "x");
}

TEST_CASE("pipe is left-associative") {
    CHECK(expr_equal(parse("a %>% b %>% c"), parse("(a %>% b) %>% c")));
    CHECK(!expr_equal(parse("a %>% b %>% c"), parse("a %>% (b %>% c)")));
}

TEST_CASE("literal program") {
    ExprPtr program = parse("42");
    const NumberLit* n = only_stmt(program).get<NumberLit>();
    REQUIRE(n);
    CHECK(n->value == 42.0);
}

TEST_CASE("operator precedence") {
    CHECK(expr_equal(parse("1 + 2 * 3"), parse("1 + (2 * 3)")));
    CHECK(expr_equal(parse("a - b - c"), parse("(a - b) - c")));
    CHECK(expr_equal(parse("a > b + 1"), parse("a > (b + 1)")));
    CHECK(expr_equal(parse("x <- a %>% b"), parse("x <- (a %>% b)")));
    CHECK(expr_equal(parse("-x * y"), parse("(-x) * y")));
    CHECK(expr_equal(parse("-f(x)"), parse("-(f(x))")));
}

TEST_CASE("unary minus folds number literals") {
    const NumberLit* n = parse_expr1("-5")->get<NumberLit>();
    REQUIRE(n);
    CHECK(n->value == -5.0);
    // binary minus is unaffected
    ExprPtr diff = parse_expr1("2-5");
    const CallExpr* call = diff->get<CallExpr>();
    REQUIRE(call);
    CHECK(call->head->get<SymbolRef>()->name == "-");
    CHECK(call->args.size() == 2);
}

TEST_CASE("assignment is right-associative with identifier targets") {
    ExprPtr e = parse_expr1("a <- b <- 5");
    const AssignExpr* outer = e->get<AssignExpr>();
    REQUIRE(outer);
    CHECK(outer->target == "a");
    const AssignExpr* inner = outer->value->get<AssignExpr>();
    REQUIRE(inner);
    CHECK(inner->target == "b");
    CHECK_THROWS_AS(parse("f(x) <- 5"), FclError);
}

TEST_CASE("arrow lexes greedily") {
    CHECK(parse_expr1("x <-5")->is<AssignExpr>());
    const CallExpr* cmp = parse_expr1("x < -5")->get<CallExpr>();
    REQUIRE(cmp);
    CHECK(cmp->head->get<SymbolRef>()->name == "<");
}

TEST_CASE("duplicate names are parse errors") {
    CHECK_THROWS_AS(parse("f(a = 1, a = 2)"), FclError);
    CHECK_THROWS_AS(parse("function(x, x) x"), FclError);
    try {
        parse("f(a = 1, a = 2)");
    } catch (const FclError& e) {
        CHECK(e.kind() == ErrorKind::Parse);
        CHECK(e.span().has_value());
    }
}

TEST_CASE("parse errors mention the expected token") {
    try {
        parse("f(a, b");
        FAIL("expected a parse error");
    } catch (const FclError& e) {
        CHECK(std::string(e.what()).find("expected") != std::string::npos);
    }
}

TEST_CASE("newlines separate statements") {
    const BlockExpr* two = parse("a\nb")->get<BlockExpr>();
    REQUIRE(two);
    CHECK(two->exprs.size() == 2);
    CHECK_THROWS_AS(parse("a b"), FclError);
    // a call paren on a new line starts a new statement
    const BlockExpr* split = parse("f\n(x)")->get<BlockExpr>();
    REQUIRE(split);
    CHECK(split->exprs.size() == 2);
    // but newlines inside parentheses are insignificant
    const BlockExpr* joined = parse("f(a,\n   b)")->get<BlockExpr>();
    REQUIRE(joined);
    CHECK(joined->exprs.size() == 1);
    // a trailing operator continues the expression
    CHECK(expr_equal(parse("a %>%\n  b"), parse("a %>% b")));
    // an operator at the start of a line does not
    const BlockExpr* stopped = parse("a\n-b")->get<BlockExpr>();
    REQUIRE(stopped);
    CHECK(stopped->exprs.size() == 2);
}

TEST_CASE("deep nesting is a parse error, not a crash") {
    auto wrapped = [](int depth) {
        std::string src(depth, '(');
        src += "x";
        src.append(depth, ')');
        return src;
    };
    CHECK(expr_equal(parse(wrapped(200)), parse("x")));
    try {
        parse(wrapped(5000));
        FAIL("expected ParseError");
    } catch (const FclError& e) {
        CHECK(e.kind() == ErrorKind::Parse);
        CHECK(std::string(e.what()).find("too deeply") != std::string::npos);
    }
}

TEST_CASE("semicolons separate statements inside braces") {
    ExprPtr e = parse_expr1("{ 1; 2; 3 }");
    const BlockExpr* block = e->get<BlockExpr>();
    REQUIRE(block);
    CHECK(block->exprs.size() == 3);
}

TEST_CASE("deparse basics") {
    CHECK(deparse(parse("x")) == "x");
    CHECK(deparse(parse("50")) == "50");
    CHECK(deparse(parse("1.5")) == "1.5");
    CHECK(deparse(parse("-5")) == "-5");
    CHECK(deparse(parse("TRUE")) == "TRUE");
    CHECK(deparse(parse("NULL")) == "NULL");
    CHECK(deparse(parse("\"a\\\"b\\n\"")) == "\"a\\\"b\\n\"");
    CHECK(deparse(parse("f( a,b , c=1 )")) == "f(a, b, c = 1)");
    CHECK(deparse(parse("1+2*3")) == "1 + 2 * 3");
    CHECK(deparse(parse("(1+2)*3")) == "(1 + 2) * 3");
    CHECK(deparse(parse("round(nrow(x)/2)")) == "round(nrow(x) / 2)");
    CHECK(deparse(parse("function(x,n=6) head(x,n)")) == "function (x, n = 6) head(x, n)");
    CHECK(deparse(parse("a%>%b%>%c")) == "a %>% b %>% c");
    CHECK(deparse(parse("a %>% (b %>% c)")) == "a %>% (b %>% c)");
    CHECK(deparse(parse("(function(x) x)(y)")) == "(function (x) x)(y)");
    CHECK(deparse(parse("(function(x) x) %>% g")) == "(function (x) x) %>% g");
    CHECK(deparse(parse("x<-1")) == "x <- 1");
    CHECK(deparse(parse("f(a)(b)")) == "f(a)(b)");
    CHECK(deparse(parse("(x <- 5) + 2")) == "(x <- 5) + 2");
}

TEST_CASE("deparse renders blocks with indentation") {
    std::string out = deparse(parse("function(x) { a\n b }"));
    CHECK(out == "function (x) {\n    a\n    b\n}");
    CHECK(expr_equal(parse(out), parse("function(x) { a\n b }")));
}

TEST_CASE("round trip over the corpus") {
    for (const std::string& src : corpus()) {
        ExprPtr first = parse(src);
        std::string rendered = deparse(first);
        ExprPtr second = parse(rendered);
        CHECK_MESSAGE(expr_equal(first, second), "not a fixpoint: ", src, "\n -> ", rendered);
        // deparse is itself a fixpoint on canonical text
        CHECK(deparse(second) == rendered);
    }
}

TEST_CASE("free symbols: call heads are excluded") {
    auto syms = free_symbols(parse("round(nrow(x)/2)"));
    REQUIRE(syms.size() == 1);
    CHECK(syms[0] == "x");
}

TEST_CASE("free symbols: lambda parameters bind") {
    auto syms = free_symbols(parse("(function(x) x)(y)"));
    REQUIRE(syms.size() == 1);
    CHECK(syms[0] == "y");
    CHECK(free_symbols(parse("function(a, b = a) a + b")).empty());
    auto defaults = free_symbols(parse("function(a, b = c) a"));
    REQUIRE(defaults.size() == 1);
    CHECK(defaults[0] == "c");
}

TEST_CASE("free symbols: composed wrapper signature case") {
    auto syms = free_symbols(parse("head50(object)"));
    REQUIRE(syms.size() == 1);
    CHECK(syms[0] == "object");
}

TEST_CASE("free symbols: order and deduplication") {
    auto syms = free_symbols(parse("g(a, b) + h(a) + c"));
    REQUIRE(syms.size() == 3);
    CHECK(syms[0] == "a");
    CHECK(syms[1] == "b");
    CHECK(syms[2] == "c");
}

TEST_CASE("free symbols: named-argument names and assign targets are not symbols") {
    auto named = free_symbols(parse("f(n = k)"));
    REQUIRE(named.size() == 1);
    CHECK(named[0] == "k");
    auto assigned = free_symbols(parse("y <- z"));
    REQUIRE(assigned.size() == 1);
    CHECK(assigned[0] == "z");
}

TEST_CASE("free symbols: pipe operands are analyzed") {
    auto syms = free_symbols(parse("a %>% b"));
    REQUIRE(syms.size() == 2);
    CHECK(syms[0] == "a");
    CHECK(syms[1] == "b");
}

TEST_CASE("free symbols are invariant under deparse and reparse") {
    for (const std::string& src : corpus()) {
        ExprPtr e = parse(src);
        CHECK(free_symbols(e) == free_symbols(parse(deparse(e))));
    }
}

TEST_CASE("free symbols of a closed lambda are empty") {
    CHECK(free_symbols(parse("function(x) sqrt(x)")).empty());
    CHECK(free_symbols(parse("function(v) { trimws(gsub(grep(v, pattern=\"a\", "
                             "value=TRUE), pattern=\"b\", replacement=\"c\")) }"))
              .empty());
}
