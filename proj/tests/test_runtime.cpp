#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fcl/diagnostics.hpp"
#include "fcl/print.hpp"
#include "test_support.hpp"

using namespace fcl;
using namespace fcl_test;

// Independent oracle: ln(sqrt(10)) = ln(10)/2, computed with 40-digit
// arithmetic and frozen here.
static const double kHalfLn10 = 1.151292546497022842;

TEST_CASE("literals evaluate to themselves") {
    CHECK(number_elems(eval_str("42")) == std::vector<double>{42});
    CHECK(string_elems(eval_str("\"hi\"")) == std::vector<std::string>{"hi"});
    CHECK(eval_str("TRUE").bools_ref().elems == std::vector<bool>{true});
    CHECK(eval_str("NULL").is_null());
}

TEST_CASE("sqrt is elementwise") {
    CHECK(number_elems(eval_str("sqrt(c(4, 9))")) == std::vector<double>{2, 3});
}

TEST_CASE("unresolved symbols raise NameError") {
    EnvPtr empty = Environment::make();
    try {
        eval_str("x", empty);
        FAIL("expected NameError");
    } catch (const FclError& e) {
        CHECK(e.kind() == ErrorKind::Name);
        CHECK(std::string(e.what()) == "object 'x' not found");
    }
}

TEST_CASE("log of sqrt matches the frozen oracle") {
    double v = number_elems(eval_str("log(sqrt(10))"))[0];
    CHECK(std::fabs(v - kHalfLn10) <= 1e-10);
}

TEST_CASE("assignment defines locally and returns the value") {
    EnvPtr env = fresh_env();
    Value v = eval_str("x <- 7", env);
    CHECK(number_elems(v) == std::vector<double>{7});
    CHECK(number_elems(eval_str("x", env)) == std::vector<double>{7});
    // chained assignment threads the value through
    eval_str("a <- b <- 3", env);
    CHECK(number_elems(eval_str("a + b", env)) == std::vector<double>{6});
}

TEST_CASE("blocks return the last value") {
    CHECK(number_elems(eval_str("{ 1; 2; 3 }")) == std::vector<double>{3});
    CHECK(eval_str("{}").is_null());
}

TEST_CASE("closures capture their environment") {
    EnvPtr env = fresh_env();
    eval_str("k <- 10\nadd_k <- function(x) x + k", env);
    CHECK(number_elems(eval_str("add_k(5)", env)) == std::vector<double>{15});
    // later rebinding is visible (reference, not snapshot)
    eval_str("k <- 20", env);
    CHECK(number_elems(eval_str("add_k(5)", env)) == std::vector<double>{25});
}

TEST_CASE("missing argument is only an error on access") {
    EnvPtr env = fresh_env();
    eval_str("first <- function(x, y) x", env);
    CHECK(number_elems(eval_str("first(1)", env)) == std::vector<double>{1});
    eval_str("second <- function(x, y) y", env);
    try {
        eval_str("second(1)", env);
        FAIL("expected MissingArgError");
    } catch (const FclError& e) {
        CHECK(e.kind() == ErrorKind::MissingArg);
        CHECK(std::string(e.what()).find("'y'") != std::string::npos);
    }
}

TEST_CASE("defaults evaluate in the call frame") {
    EnvPtr env = fresh_env();
    eval_str("f <- function(a, b = a + 1) b", env);
    CHECK(number_elems(eval_str("f(1)", env)) == std::vector<double>{2});
    CHECK(number_elems(eval_str("f(1, 10)", env)) == std::vector<double>{10});
}

TEST_CASE("runaway recursion is a language error, not a crash") {
    EnvPtr env = fresh_env();
    eval_str("loop <- function(x) loop(x)", env);
    try {
        eval_str("loop(1)", env);
        FAIL("expected a depth error");
    } catch (const FclError& e) {
        CHECK(std::string(e.what()).find("nested too deeply") != std::string::npos);
    }
    // the depth counter unwinds, so the session keeps working afterwards
    CHECK(number_elems(eval_str("1 + 1", env)) == std::vector<double>{2});
}

TEST_CASE("calling a non-function is a TypeError") {
    try {
        eval_str("x <- 5\nx(1)");
        FAIL("expected TypeError");
    } catch (const FclError& e) {
        CHECK(e.kind() == ErrorKind::Type);
    }
}

TEST_CASE("head takes six elements by default") {
    Value v = eval_str("head(c(1,2,3,4,5,6,7,8,9,10))");
    // oracle: direct slice
    CHECK(number_elems(v) == std::vector<double>({1, 2, 3, 4, 5, 6}));
    CHECK(number_elems(eval_str("head(c(1,2,3), 50)")) == std::vector<double>({1, 2, 3}));
    CHECK(number_elems(eval_str("head(c(1,2,3), n = 2)")) == std::vector<double>({1, 2}));
}

TEST_CASE("head of tables and matrices takes rows") {
    EnvPtr env = fresh_env();
    env->define("t", make_flower_table(10));
    Value h = eval_str("head(t, 3)", env);
    CHECK(h.table_ref().nrow() == 3);
    CHECK(h.table_ref().columns.size() == 5);

    Value m = eval_str("head(matrix(c(1,2,3,4,5,6), ncol = 2), 2)", env);
    CHECK(m.matrix_ref().nrow == 2);
    CHECK(m.matrix_ref().ncol == 2);
    CHECK(m.matrix_ref().data == std::vector<double>({1, 2, 4, 5}));
}

TEST_CASE("argument matching: names first, then positions") {
    // gsub formals are (pattern, replacement, x); the positional argument
    // lands on x because the other two are taken by name.
    Value v = eval_str("gsub(\"banana\", pattern = \"a\", replacement = \"o\")");
    CHECK(string_elems(v) == std::vector<std::string>{"bonono"});
}

TEST_CASE("argument matching errors") {
    CHECK_THROWS_AS(eval_str("head(c(1), 2, 3)"), FclError); // too many positional
    try {
        eval_str("head(c(1), m = 2)"); // unknown name
        FAIL("expected ArityError");
    } catch (const FclError& e) {
        CHECK(e.kind() == ErrorKind::Arity);
    }
}

TEST_CASE("matching totality under random formals and arguments") {
    XorShift rng(42);
    const std::vector<std::string> pool = {"a", "b", "c", "d", "e", "f"};
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Formal> formals;
        std::size_t nf = 1 + rng.below(5);
        for (std::size_t i = 0; i < nf; ++i)
            formals.push_back(Formal{pool[i], rng.below(2) == 0});

        Args args;
        std::size_t na = rng.below(nf + 3);
        for (std::size_t i = 0; i < na; ++i) {
            if (rng.below(3) == 0)
                args.emplace_back(pool[rng.below(pool.size())], Value::number(1));
            else
                args.emplace_back(std::nullopt, Value::number(2));
        }

        try {
            std::vector<ArgSlot> slots = match_args(formals, args, "fn");
            REQUIRE(slots.size() == formals.size());
            std::size_t bound = 0;
            for (const ArgSlot& s : slots)
                if (!s.missing()) ++bound;
            CHECK(bound == args.size()); // nothing silently dropped
        } catch (const FclError& e) {
            CHECK(e.kind() == ErrorKind::Arity);
        }
    }
}

TEST_CASE("matrix derives the missing dimension") {
    Value m = eval_str("matrix(c(1,2,3,4,5,6,7,8,9), ncol = 3)");
    CHECK(m.matrix_ref().nrow == 3);
    CHECK(m.matrix_ref().ncol == 3);
    // column-major fill
    CHECK(m.matrix_ref().data == std::vector<double>({1, 2, 3, 4, 5, 6, 7, 8, 9}));

    Value r = eval_str("matrix(c(1,2,3,4,5,6), nrow = 3)");
    CHECK(r.matrix_ref().ncol == 2);

    Value d = eval_str("matrix(c(1,2,3,4))");
    CHECK(d.matrix_ref().nrow == 4);
    CHECK(d.matrix_ref().ncol == 1);
}

TEST_CASE("matrix truncates with a warning when both dims are bound") {
    WarningCapture warnings;
    Value m = eval_str("matrix(c(1,2,3,4,5,6,7,8,9), nrow = 1, ncol = 3)");
    CHECK(m.matrix_ref().nrow == 1);
    CHECK(m.matrix_ref().ncol == 3);
    CHECK(m.matrix_ref().data == std::vector<double>({1, 2, 3}));
    REQUIRE(warnings.messages().size() == 1);
    CHECK(warnings.messages()[0].find("discarded") != std::string::npos);
}

TEST_CASE("matrix refuses to recycle") {
    try {
        eval_str("matrix(c(1,2,3), nrow = 2, ncol = 3)");
        FAIL("expected DomainError");
    } catch (const FclError& e) {
        CHECK(e.kind() == ErrorKind::Domain);
        CHECK(std::string(e.what()).find("recycling") != std::string::npos);
    }
    CHECK_THROWS_AS(eval_str("matrix(c(1,2,3), ncol = 2)"), FclError); // not divisible
    CHECK_THROWS_AS(eval_str("matrix(nrow = 2)"), FclError);          // no data, no NA
}

TEST_CASE("matrix byrow fills row-wise") {
    Value m = eval_str("matrix(c(1,2,3,4,5,6), nrow = 2, byrow = TRUE)");
    // rows (1,2,3) and (4,5,6): column-major storage 1,4,2,5,3,6
    CHECK(m.matrix_ref().data == std::vector<double>({1, 4, 2, 5, 3, 6}));
}

TEST_CASE("summary of a numeric vector") {
    Value s = eval_str("summary(c(1,2,3,4,5,6,7,8,9,10))");
    const NumberVec& v = s.numbers_ref();
    // type-7 quantiles of 1..10, frozen from an independent computation
    CHECK(v.elems == std::vector<double>({1, 3.25, 5.5, 5.5, 7.75, 10}));
    REQUIRE(v.names.has_value());
    CHECK(*v.names == std::vector<std::string>(
                          {"Min.", "1st Qu.", "Median", "Mean", "3rd Qu.", "Max."}));
    // quartiles of 1..4 interpolate
    CHECK(number_elems(eval_str("summary(c(1,2,3,4))")) ==
          std::vector<double>({1, 1.75, 2.5, 2.5, 3.25, 4}));
}

TEST_CASE("summary of a singleton repeats the element") {
    CHECK(number_elems(eval_str("summary(c(7))")) ==
          std::vector<double>({7, 7, 7, 7, 7, 7}));
}

TEST_CASE("summary of a table summarizes numeric columns only") {
    EnvPtr env = fresh_env();
    env->define("t", make_flower_table(12));
    Value s = eval_str("summary(t)", env);
    const Table& t = s.table_ref();
    CHECK(t.columns.size() == 4); // Species is not numeric
    CHECK(t.columns[0].first == "Sepal.Length");
    CHECK(t.nrow() == 6);
    CHECK_THROWS_AS(eval_str("summary(c(\"a\"))"), FclError);
}

TEST_CASE("c concatenates and names elements") {
    Value v = eval_str("c(a = 1, b = 2)");
    REQUIRE(v.numbers_ref().names.has_value());
    CHECK(*v.numbers_ref().names == std::vector<std::string>({"a", "b"}));

    CHECK(number_elems(eval_str("c(c(1, 2), 3)")) == std::vector<double>({1, 2, 3}));
    CHECK(eval_str("c()").is_null());
    CHECK(number_elems(eval_str("c(1, NULL, 2)")) == std::vector<double>({1, 2}));

    Value multi = eval_str("c(q = c(1, 2), 3)");
    CHECK(*multi.numbers_ref().names == std::vector<std::string>({"q1", "q2", ""}));
    CHECK_THROWS_AS(eval_str("c(1, \"a\")"), FclError);
}

TEST_CASE("length, nrow and ncol") {
    CHECK(number_elems(eval_str("length(c(1,2,3))")) == std::vector<double>{3});
    CHECK(number_elems(eval_str("length(NULL)")) == std::vector<double>{0});
    CHECK(number_elems(eval_str("length(matrix(c(1,2,3,4)))")) == std::vector<double>{4});
    CHECK(eval_str("nrow(c(1,2))").is_null());
    EnvPtr env = fresh_env();
    env->define("t", make_flower_table(9));
    CHECK(number_elems(eval_str("nrow(t)", env)) == std::vector<double>{9});
    CHECK(number_elems(eval_str("ncol(t)", env)) == std::vector<double>{5});
}

TEST_CASE("round is half-to-even") {
    CHECK(number_elems(eval_str("round(0.5)")) == std::vector<double>{0});
    CHECK(number_elems(eval_str("round(1.5)")) == std::vector<double>{2});
    CHECK(number_elems(eval_str("round(2.5)")) == std::vector<double>{2});
    CHECK(number_elems(eval_str("round(-1.5)")) == std::vector<double>{-2});
    // 1.25 * 10 is exact in binary, so the tie is real and breaks to even
    CHECK(number_elems(eval_str("round(1.25, digits = 1)")) == std::vector<double>{1.2});
    CHECK(number_elems(eval_str("round(1234, digits = -2)")) == std::vector<double>{1200});
}

TEST_CASE("grep finds indices or values") {
    EnvPtr env = fresh_env();
    eval_str("x <- c(\"<td class = 'address'>24 Hillhouse Ave.</td>\",\n"
             "       \"<td class = 'city'>New Haven</td>\",\n"
             "       \"</table>\")",
             env);
    CHECK(number_elems(eval_str("grep(x, pattern=\"<[^/]*>\")", env)) ==
          std::vector<double>({1, 2}));
    Value v = eval_str("grep(x, pattern=\"<[^/]*>\", value=TRUE)", env);
    REQUIRE(string_elems(v).size() == 2);
    CHECK(string_elems(v)[0] == "<td class = 'address'>24 Hillhouse Ave.</td>");
    CHECK(string_elems(eval_str("grep(c(\"a\"), pattern=\"zzz\", value=TRUE)")).empty());
    CHECK_THROWS_AS(eval_str("grep(c(\"a\"), pattern=\"[\")"), FclError);
}

TEST_CASE("gsub replaces globally with backreferences") {
    CHECK(string_elems(eval_str(
              "gsub(\".*>(.*)<.*\", \"\\\\1\", \"<td class = 'city'>New Haven</td>\")")) ==
          std::vector<std::string>{"New Haven"});
    CHECK(string_elems(eval_str("gsub(\"a\", \"b\", \"banana\")")) ==
          std::vector<std::string>{"bbnbnb"});
    CHECK(string_elems(eval_str("gsub(\"(a)(b)\", \"\\\\2\\\\1\", \"abab\")")) ==
          std::vector<std::string>{"baba"});
    // empty matches still make progress
    CHECK(string_elems(eval_str("gsub(\"x*\", \"-\", \"abc\")")) ==
          std::vector<std::string>{"-a-b-c-"});
}

TEST_CASE("trimws strips both ends") {
    CHECK(string_elems(eval_str("trimws(c(\"  a b \", \"\\t x\\n\"))")) ==
          std::vector<std::string>({"a b", "x"}));
}

TEST_CASE("table helpers") {
    EnvPtr env = fresh_env();
    env->define("t", make_flower_table(5));
    CHECK(string_elems(eval_str("grepl_cols(t, \"Sepal\")", env)) ==
          std::vector<std::string>({"Sepal.Length", "Sepal.Width"}));

    Value sel = eval_str("select_cols(t, grepl_cols(t, \"Sepal\"))", env);
    CHECK(sel.table_ref().columns.size() == 2);
    CHECK_THROWS_AS(eval_str("select_cols(t, c(\"nope\"))", env), FclError);

    Value rev = eval_str("reorder_rows(t, rev_index(nrow(t)))", env);
    const NumberVec& orig = env->lookup("t")->table_ref().columns[0].second.numbers_ref();
    const NumberVec& got = rev.table_ref().columns[0].second.numbers_ref();
    REQUIRE(got.elems.size() == orig.elems.size());
    for (std::size_t i = 0; i < got.elems.size(); ++i)
        CHECK(got.elems[i] == orig.elems[orig.elems.size() - 1 - i]);
    CHECK_THROWS_AS(eval_str("reorder_rows(t, c(99))", env), FclError);

    CHECK(number_elems(eval_str("rev_index(4)")) == std::vector<double>({4, 3, 2, 1}));
    CHECK(number_elems(eval_str("rev_index(0)")).empty());
}

TEST_CASE("table constructor validates its columns") {
    Value t = eval_str("table(a = c(1, 2), b = c(\"x\", \"y\"))");
    CHECK(t.table_ref().columns.size() == 2);
    CHECK(t.table_ref().nrow() == 2);
    CHECK_THROWS_AS(eval_str("table(a = c(1, 2), b = c(1))"), FclError);
    CHECK_THROWS_AS(eval_str("table(c(1, 2))"), FclError);
    CHECK_THROWS_AS(eval_str("table(a = c(1), a = c(2))"), FclError);
}

TEST_CASE("arithmetic broadcasts scalars but does not recycle") {
    CHECK(number_elems(eval_str("c(1, 2, 3) + 1")) == std::vector<double>({2, 3, 4}));
    CHECK(number_elems(eval_str("2 * c(1, 2)")) == std::vector<double>({2, 4}));
    CHECK(number_elems(eval_str("c(1, 2) - c(1, 2)")) == std::vector<double>({0, 0}));
    try {
        eval_str("c(1, 2, 3) + c(1, 2)");
        FAIL("expected DomainError");
    } catch (const FclError& e) {
        CHECK(e.kind() == ErrorKind::Domain);
    }
    CHECK(number_elems(eval_str("1 / 0")) == std::vector<double>{HUGE_VAL});
    CHECK(number_elems(eval_str("-c(1, -2)")) == std::vector<double>({-1, 2}));
}

TEST_CASE("comparisons work elementwise") {
    CHECK(eval_str("c(1, 5, 3) > 2").bools_ref().elems ==
          std::vector<bool>({false, true, true}));
    CHECK(eval_str("\"a\" < \"b\"").bools_ref().elems == std::vector<bool>{true});
    CHECK(eval_str("TRUE == FALSE").bools_ref().elems == std::vector<bool>{false});
    CHECK_THROWS_AS(eval_str("TRUE < FALSE"), FclError);
    CHECK_THROWS_AS(eval_str("1 == \"a\""), FclError);
}

TEST_CASE("base environment bindings") {
    EnvPtr base = base_environment();
    REQUIRE(base->lookup("log"));
    CHECK(base->lookup("log")->function_ref().builtin() != nullptr);
    REQUIRE(base->lookup("fc"));
    REQUIRE(base->lookup("fc")->function_ref().special() != nullptr);
    CHECK(*base->lookup("fc")->function_ref().special() == SpecialForm::Fc);
    CHECK(base->lookup("undefined_thing") == nullptr);
}

TEST_CASE("value printing") {
    CHECK(format_value(eval_str("NULL")) == "NULL");
    CHECK(format_value(eval_str("log(sqrt(10))")) == "[1] 1.151293");
    CHECK(format_value(eval_str("c(\"a\", \"b\")")) == "[1] \"a\" \"b\"");
    std::string m = format_value(eval_str("matrix(c(1, 2, 3, 4), ncol = 2)"));
    CHECK(m.find("[,1]") != std::string::npos);
    CHECK(m.find("[2,]") != std::string::npos);
    CHECK(format_value(eval_str("fc(head, n = 50)")) == "function (x) head(x, n = 50)");
}

TEST_CASE("warnings go to the diagnostic handler") {
    WarningCapture warnings;
    emit_warning("check");
    REQUIRE(warnings.messages().size() == 1);
    CHECK(warnings.messages()[0] == "check");
}
