#include "fcl/builtins.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

#include "fcl/diagnostics.hpp"
#include "fcl/value.hpp"

namespace fcl {

namespace {

[[noreturn]] void domain_error(const std::string& msg) {
    throw FclError(ErrorKind::Domain, msg);
}

[[noreturn]] void type_error(const std::string& msg) {
    throw FclError(ErrorKind::Type, msg);
}

double scalar_number(const Value& v, const std::string& what) {
    const NumberVec* vec = v.if_numbers();
    if (!vec || vec->elems.size() != 1)
        type_error(what + " must be a single number, not a " + v.kind_name());
    return vec->elems[0];
}

std::string scalar_string(const Value& v, const std::string& what) {
    const StringVec* vec = v.if_strings();
    if (!vec || vec->elems.size() != 1)
        type_error(what + " must be a single string, not a " + v.kind_name());
    return vec->elems[0];
}

bool scalar_bool(const Value& v, const std::string& what) {
    const BoolVec* vec = v.if_bools();
    if (!vec || vec->elems.size() != 1)
        type_error(what + " must be TRUE or FALSE, not a " + v.kind_name());
    return vec->elems[0];
}

// Non-negative integral count, truncated toward zero like R's head().
std::size_t scalar_count(const Value& v, const std::string& what) {
    double n = std::trunc(scalar_number(v, what));
    if (n < 0 || std::isnan(n))
        domain_error(what + " must be non-negative");
    return static_cast<std::size_t>(n);
}

Names slice_names(const Names& names, const std::vector<std::size_t>& idx) {
    if (!names) return std::nullopt;
    std::vector<std::string> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back((*names)[i]);
    return out;
}

template <typename Vec, typename Maker>
Value take_vector(const Vec& v, std::size_t n, Maker make) {
    n = std::min(n, v.elems.size());
    auto elems = decltype(v.elems)(v.elems.begin(),
                                   v.elems.begin() + static_cast<std::ptrdiff_t>(n));
    Names names;
    if (v.names)
        names = std::vector<std::string>(v.names->begin(),
                                         v.names->begin() + static_cast<std::ptrdiff_t>(n));
    return make(std::move(elems), std::move(names));
}

Value index_column(const Value& column, const std::vector<std::size_t>& idx) {
    if (const NumberVec* v = column.if_numbers()) {
        std::vector<double> elems;
        elems.reserve(idx.size());
        for (std::size_t i : idx) elems.push_back(v->elems[i]);
        return Value::numbers(std::move(elems), slice_names(v->names, idx));
    }
    if (const StringVec* v = column.if_strings()) {
        std::vector<std::string> elems;
        elems.reserve(idx.size());
        for (std::size_t i : idx) elems.push_back(v->elems[i]);
        return Value::strings(std::move(elems), slice_names(v->names, idx));
    }
    if (const BoolVec* v = column.if_bools()) {
        std::vector<bool> elems;
        elems.reserve(idx.size());
        for (std::size_t i : idx) elems.push_back(v->elems[i]);
        return Value::bools(std::move(elems), slice_names(v->names, idx));
    }
    type_error("table columns must be vectors");
}

std::vector<std::size_t> first_n(std::size_t total, std::size_t n) {
    std::vector<std::size_t> idx(std::min(total, n));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return idx;
}

// ---- elementwise numeric and comparison machinery ----

Value map_numbers(const Value& v, const std::string& fn, double (*op)(double)) {
    const NumberVec* vec = v.if_numbers();
    if (!vec)
        type_error("non-numeric argument to '" + fn + "' (" + v.kind_name() + ")");
    std::vector<double> out;
    out.reserve(vec->elems.size());
    for (double x : vec->elems) out.push_back(op(x));
    return Value::numbers(std::move(out), vec->names);
}

// Lengths must match, or one side must be a scalar; there is no recycling.
std::size_t broadcast_length(std::size_t a, std::size_t b, const std::string& op) {
    if (a == 0 || b == 0) return 0;
    if (a == b) return a;
    if (a == 1) return b;
    if (b == 1) return a;
    domain_error("operand lengths " + std::to_string(a) + " and " + std::to_string(b) +
                 " do not match in '" + op + "'");
}

Value numeric_binop(const std::string& op, const Value& a, const Value& b,
                    double (*fn)(double, double)) {
    const NumberVec* x = a.if_numbers();
    const NumberVec* y = b.if_numbers();
    if (!x || !y)
        type_error("non-numeric argument to binary operator '" + op + "'");
    std::size_t n = broadcast_length(x->elems.size(), y->elems.size(), op);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = fn(x->elems[x->elems.size() == 1 ? 0 : i],
                    y->elems[y->elems.size() == 1 ? 0 : i]);
    return Value::numbers(std::move(out));
}

enum class CompareOp { Lt, Gt, Le, Ge, Eq, Ne };

template <typename T>
bool compare_one(CompareOp op, const T& a, const T& b) {
    switch (op) {
    case CompareOp::Lt: return a < b;
    case CompareOp::Gt: return a > b;
    case CompareOp::Le: return a <= b;
    case CompareOp::Ge: return a >= b;
    case CompareOp::Eq: return a == b;
    case CompareOp::Ne: return a != b;
    }
    return false;
}

Value compare_values(const std::string& name, CompareOp op, const Value& a, const Value& b) {
    if (a.if_numbers() && b.if_numbers()) {
        const NumberVec* x = a.if_numbers();
        const NumberVec* y = b.if_numbers();
        std::size_t n = broadcast_length(x->elems.size(), y->elems.size(), name);
        std::vector<bool> out(n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = compare_one(op, x->elems[x->elems.size() == 1 ? 0 : i],
                                 y->elems[y->elems.size() == 1 ? 0 : i]);
        return Value::bools(std::move(out));
    }
    if (a.if_strings() && b.if_strings()) {
        const StringVec* x = a.if_strings();
        const StringVec* y = b.if_strings();
        std::size_t n = broadcast_length(x->elems.size(), y->elems.size(), name);
        std::vector<bool> out(n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = compare_one(op, x->elems[x->elems.size() == 1 ? 0 : i],
                                 y->elems[y->elems.size() == 1 ? 0 : i]);
        return Value::bools(std::move(out));
    }
    if (a.if_bools() && b.if_bools() && (op == CompareOp::Eq || op == CompareOp::Ne)) {
        const BoolVec* x = a.if_bools();
        const BoolVec* y = b.if_bools();
        std::size_t n = broadcast_length(x->elems.size(), y->elems.size(), name);
        std::vector<bool> out(n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = compare_one(op, static_cast<bool>(x->elems[x->elems.size() == 1 ? 0 : i]),
                                 static_cast<bool>(y->elems[y->elems.size() == 1 ? 0 : i]));
        return Value::bools(std::move(out));
    }
    type_error("cannot compare a " + std::string(a.kind_name()) + " with a " + b.kind_name() +
               " using '" + name + "'");
}

// ---- regular expressions ----

std::regex compile_regex(const std::string& pattern) {
    try {
        return std::regex(pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
        domain_error("invalid regular expression '" + pattern + "': " + e.what());
    }
}

// Replacement text with \1..\9 capture-group backreferences and \\ escapes.
std::string expand_replacement(const std::string& repl, const std::smatch& m) {
    std::string out;
    for (std::size_t i = 0; i < repl.size(); ++i) {
        char c = repl[i];
        if (c == '\\' && i + 1 < repl.size()) {
            char next = repl[++i];
            if (next >= '1' && next <= '9') {
                std::size_t group = static_cast<std::size_t>(next - '0');
                if (group < m.size()) out += m[group].str();
            } else {
                out += next;
            }
        } else {
            out += c;
        }
    }
    return out;
}

std::string gsub_one(const std::regex& re, const std::string& repl, const std::string& s) {
    std::string out;
    std::size_t pos = 0;
    std::smatch m;
    while (pos <= s.size()) {
        std::string suffix = s.substr(pos);
        if (!std::regex_search(suffix, m, re)) break;
        std::size_t at = pos + static_cast<std::size_t>(m.position(0));
        std::size_t len = static_cast<std::size_t>(m.length(0));
        out += s.substr(pos, at - pos);
        out += expand_replacement(repl, m);
        if (len == 0) { // an empty match must still make progress
            if (at < s.size()) out += s[at];
            pos = at + 1;
        } else {
            pos = at + len;
        }
    }
    out += s.substr(std::min(pos, s.size()));
    return out;
}

// ---- summary ----

const std::vector<std::string>& summary_labels() {
    static const std::vector<std::string> labels = {"Min.",   "1st Qu.", "Median",
                                                    "Mean",   "3rd Qu.", "Max."};
    return labels;
}

double quantile_linear(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    double h = static_cast<double>(n - 1) * p;
    std::size_t lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= n) return sorted[n - 1];
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

Value summary_numbers(const NumberVec& v) {
    if (v.elems.empty())
        domain_error("summary() of an empty numeric vector");
    std::vector<double> sorted = v.elems;
    std::sort(sorted.begin(), sorted.end());
    double mean = 0;
    for (double x : v.elems) mean += x;
    mean /= static_cast<double>(v.elems.size());
    std::vector<double> stats = {sorted.front(),
                                 quantile_linear(sorted, 0.25),
                                 quantile_linear(sorted, 0.5),
                                 mean,
                                 quantile_linear(sorted, 0.75),
                                 sorted.back()};
    return Value::numbers(std::move(stats), summary_labels());
}

// ---- matrix ----

Value matrix_impl(const std::vector<ArgSlot>& slots) {
    if (slots[0].missing())
        domain_error("matrix() requires 'data' (there is no NA value)");
    const NumberVec* data = slots[0].get().if_numbers();
    if (!data)
        type_error("matrix 'data' must be a numeric vector");
    const std::size_t len = data->elems.size();

    bool have_nrow = !slots[1].missing();
    bool have_ncol = !slots[2].missing();
    bool byrow = slots[3].missing() ? false : scalar_bool(slots[3].get(), "byrow");

    std::size_t nrow = 0, ncol = 0;
    if (!have_nrow && !have_ncol) {
        nrow = len;
        ncol = 1;
    } else if (have_nrow && !have_ncol) {
        nrow = scalar_count(slots[1].get(), "nrow");
        if (nrow == 0 || len % nrow != 0)
            domain_error("data length " + std::to_string(len) +
                         " is not a multiple of nrow " + std::to_string(nrow));
        ncol = len / nrow;
    } else if (!have_nrow && have_ncol) {
        ncol = scalar_count(slots[2].get(), "ncol");
        if (ncol == 0 || len % ncol != 0)
            domain_error("data length " + std::to_string(len) +
                         " is not a multiple of ncol " + std::to_string(ncol));
        nrow = len / ncol;
    } else {
        nrow = scalar_count(slots[1].get(), "nrow");
        ncol = scalar_count(slots[2].get(), "ncol");
        std::size_t cells = nrow * ncol;
        if (cells > len)
            domain_error("matrix of " + std::to_string(nrow) + " x " + std::to_string(ncol) +
                         " needs " + std::to_string(cells) + " values but data has only " +
                         std::to_string(len) + " (no recycling)");
        if (cells < len)
            emit_warning("data length " + std::to_string(len) + " exceeds matrix size " +
                         std::to_string(cells) + "; extra elements discarded");
    }

    std::size_t cells = nrow * ncol;
    std::vector<double> storage(cells);
    if (byrow) {
        for (std::size_t r = 0; r < nrow; ++r)
            for (std::size_t c = 0; c < ncol; ++c)
                storage[r + c * nrow] = data->elems[r * ncol + c];
    } else {
        std::copy(data->elems.begin(), data->elems.begin() + static_cast<std::ptrdiff_t>(cells),
                  storage.begin());
    }
    return Value::matrix(std::move(storage), nrow, ncol);
}

// ---- builtin table ----

void define_builtin(const EnvPtr& env, std::string name, std::vector<Formal> formals,
                    std::function<Value(const std::vector<ArgSlot>&)> fn) {
    Builtin b;
    b.name = name;
    b.formals = std::move(formals);
    b.fn = std::move(fn);
    env->define(name, Value::builtin(std::move(b)));
}

void define_variadic(const EnvPtr& env, std::string name,
                     std::function<Value(const Args&)> fn) {
    Builtin b;
    b.name = name;
    b.variadic = true;
    b.variadic_fn = std::move(fn);
    env->define(name, Value::builtin(std::move(b)));
}

Value concat_impl(const Args& args) {
    enum { None, Num, Str, Bool } kind = None;
    bool want_names = false;
    for (const auto& [name, v] : args) {
        if (v.is_null()) continue;
        int k = v.if_numbers() ? Num : v.if_strings() ? Str : v.if_bools() ? Bool : None;
        if (k == None)
            type_error(std::string("cannot concatenate a ") + v.kind_name());
        if (kind == None) kind = static_cast<decltype(kind)>(k);
        else if (kind != k)
            type_error("cannot concatenate values of different kinds");
        if (name) want_names = true;
        if (v.if_numbers() && v.if_numbers()->names) want_names = true;
        if (v.if_strings() && v.if_strings()->names) want_names = true;
        if (v.if_bools() && v.if_bools()->names) want_names = true;
    }
    if (kind == None) return Value::null();

    std::vector<std::string> names;
    auto push_names = [&](const std::optional<std::string>& top, const Names& inner,
                          std::size_t count) {
        if (!want_names) return;
        for (std::size_t j = 0; j < count; ++j) {
            if (top)
                names.push_back(count == 1 ? *top : *top + std::to_string(j + 1));
            else
                names.push_back(inner ? (*inner)[j] : "");
        }
    };

    if (kind == Num) {
        std::vector<double> elems;
        for (const auto& [name, v] : args) {
            if (v.is_null()) continue;
            const NumberVec& vec = v.numbers_ref();
            elems.insert(elems.end(), vec.elems.begin(), vec.elems.end());
            push_names(name, vec.names, vec.elems.size());
        }
        return Value::numbers(std::move(elems),
                              want_names ? Names(std::move(names)) : std::nullopt);
    }
    if (kind == Str) {
        std::vector<std::string> elems;
        for (const auto& [name, v] : args) {
            if (v.is_null()) continue;
            const StringVec& vec = v.strings_ref();
            elems.insert(elems.end(), vec.elems.begin(), vec.elems.end());
            push_names(name, vec.names, vec.elems.size());
        }
        return Value::strings(std::move(elems),
                              want_names ? Names(std::move(names)) : std::nullopt);
    }
    std::vector<bool> elems;
    for (const auto& [name, v] : args) {
        if (v.is_null()) continue;
        const BoolVec& vec = v.bools_ref();
        elems.insert(elems.end(), vec.elems.begin(), vec.elems.end());
        push_names(name, vec.names, vec.elems.size());
    }
    return Value::bools(std::move(elems), want_names ? Names(std::move(names)) : std::nullopt);
}

Value head_impl(const std::vector<ArgSlot>& slots) {
    const Value& x = slots[0].require("x", "head");
    std::size_t n = slots[1].missing() ? 6 : scalar_count(slots[1].get(), "n");
    if (const NumberVec* v = x.if_numbers())
        return take_vector(*v, n, &Value::numbers);
    if (const StringVec* v = x.if_strings())
        return take_vector(*v, n, &Value::strings);
    if (const BoolVec* v = x.if_bools())
        return take_vector(*v, n, &Value::bools);
    if (x.kind() == ValueKind::Matrix) {
        const Matrix& m = x.matrix_ref();
        std::size_t rows = std::min(n, m.nrow);
        std::vector<double> data(rows * m.ncol);
        for (std::size_t c = 0; c < m.ncol; ++c)
            for (std::size_t r = 0; r < rows; ++r)
                data[r + c * rows] = m.data[r + c * m.nrow];
        return Value::matrix(std::move(data), rows, m.ncol);
    }
    if (x.kind() == ValueKind::Table) {
        const Table& t = x.table_ref();
        std::vector<std::size_t> idx = first_n(t.nrow(), n);
        std::vector<std::pair<std::string, Value>> columns;
        columns.reserve(t.columns.size());
        for (const auto& [name, col] : t.columns)
            columns.emplace_back(name, index_column(col, idx));
        return Value::table(std::move(columns));
    }
    type_error(std::string("head() does not support a ") + x.kind_name());
}

Value summary_impl(const std::vector<ArgSlot>& slots) {
    const Value& object = slots[0].require("object", "summary");
    if (const NumberVec* v = object.if_numbers())
        return summary_numbers(*v);
    if (object.kind() == ValueKind::Table) {
        const Table& t = object.table_ref();
        std::vector<std::pair<std::string, Value>> columns;
        for (const auto& [name, col] : t.columns)
            if (const NumberVec* v = col.if_numbers())
                columns.emplace_back(name, summary_numbers(*v));
        return Value::table(std::move(columns));
    }
    type_error(std::string("summary() does not support a ") + object.kind_name());
}

std::vector<std::size_t> row_indices(const Value& idx_value, std::size_t nrow,
                                     const std::string& what) {
    const NumberVec* idx = idx_value.if_numbers();
    if (!idx)
        type_error(what + " must be a numeric vector of 1-based row indices");
    std::vector<std::size_t> out;
    out.reserve(idx->elems.size());
    for (double d : idx->elems) {
        double t = std::trunc(d);
        if (t < 1 || t > static_cast<double>(nrow))
            domain_error(what + " index " + std::to_string(d) + " is out of range 1.." +
                         std::to_string(nrow));
        out.push_back(static_cast<std::size_t>(t) - 1);
    }
    return out;
}

void register_operators(const EnvPtr& env) {
    auto arith = [&](const std::string& name, double (*fn)(double, double)) {
        define_builtin(env, name, {Formal{"e1"}, Formal{"e2"}},
                       [name, fn](const std::vector<ArgSlot>& slots) {
                           return numeric_binop(name, slots[0].require("e1", name),
                                                slots[1].require("e2", name), fn);
                       });
    };
    arith("+", [](double a, double b) { return a + b; });
    arith("*", [](double a, double b) { return a * b; });
    arith("/", [](double a, double b) { return a / b; });

    // `-` is both binary subtraction and unary negation.
    define_builtin(env, "-", {Formal{"e1"}, Formal{"e2", true}},
                   [](const std::vector<ArgSlot>& slots) {
                       const Value& a = slots[0].require("e1", "-");
                       if (slots[1].missing())
                           return map_numbers(a, "-", [](double x) { return -x; });
                       return numeric_binop("-", a, slots[1].get(),
                                            [](double x, double y) { return x - y; });
                   });

    auto cmp = [&](const std::string& name, CompareOp op) {
        define_builtin(env, name, {Formal{"e1"}, Formal{"e2"}},
                       [name, op](const std::vector<ArgSlot>& slots) {
                           return compare_values(name, op, slots[0].require("e1", name),
                                                 slots[1].require("e2", name));
                       });
    };
    cmp("<", CompareOp::Lt);
    cmp(">", CompareOp::Gt);
    cmp("<=", CompareOp::Le);
    cmp(">=", CompareOp::Ge);
    cmp("==", CompareOp::Eq);
    cmp("!=", CompareOp::Ne);
}

} // namespace

EnvPtr base_environment() {
    EnvPtr env = Environment::make();

    env->define("fc", Value::special(SpecialForm::Fc));
    env->define("stage_list", Value::special(SpecialForm::StageList));

    define_builtin(env, "log", {Formal{"x"}}, [](const std::vector<ArgSlot>& slots) {
        return map_numbers(slots[0].require("x", "log"), "log",
                           [](double x) { return std::log(x); });
    });
    define_builtin(env, "sqrt", {Formal{"x"}}, [](const std::vector<ArgSlot>& slots) {
        return map_numbers(slots[0].require("x", "sqrt"), "sqrt",
                           [](double x) { return std::sqrt(x); });
    });
    define_builtin(env, "round", {Formal{"x"}, Formal{"digits", true}},
                   [](const std::vector<ArgSlot>& slots) {
                       double digits = slots[1].missing()
                                           ? 0.0
                                           : std::trunc(scalar_number(slots[1].get(), "digits"));
                       double scale = std::pow(10.0, digits);
                       const Value& x = slots[0].require("x", "round");
                       const NumberVec* vec = x.if_numbers();
                       if (!vec) type_error("non-numeric argument to 'round'");
                       std::vector<double> out;
                       out.reserve(vec->elems.size());
                       for (double v : vec->elems)
                           out.push_back(std::nearbyint(v * scale) / scale); // half to even
                       return Value::numbers(std::move(out), vec->names);
                   });

    define_variadic(env, "c", concat_impl);

    define_builtin(env, "length", {Formal{"x"}}, [](const std::vector<ArgSlot>& slots) {
        const Value& x = slots[0].require("x", "length");
        switch (x.kind()) {
        case ValueKind::Numbers: return Value::number(static_cast<double>(x.numbers_ref().elems.size()));
        case ValueKind::Strings: return Value::number(static_cast<double>(x.strings_ref().elems.size()));
        case ValueKind::Bools: return Value::number(static_cast<double>(x.bools_ref().elems.size()));
        case ValueKind::Matrix: return Value::number(static_cast<double>(x.matrix_ref().data.size()));
        case ValueKind::Table: return Value::number(static_cast<double>(x.table_ref().columns.size()));
        case ValueKind::Null: return Value::number(0);
        case ValueKind::Function: return Value::number(1);
        case ValueKind::Pipeline:
            return Value::number(static_cast<double>(x.pipeline_ref().stages.size()));
        default: type_error("length() is not defined for this value");
        }
    });

    define_builtin(env, "head", {Formal{"x"}, Formal{"n", true}}, head_impl);

    define_builtin(env, "nrow", {Formal{"x"}}, [](const std::vector<ArgSlot>& slots) {
        const Value& x = slots[0].require("x", "nrow");
        if (x.kind() == ValueKind::Matrix)
            return Value::number(static_cast<double>(x.matrix_ref().nrow));
        if (x.kind() == ValueKind::Table)
            return Value::number(static_cast<double>(x.table_ref().nrow()));
        return Value::null();
    });
    define_builtin(env, "ncol", {Formal{"x"}}, [](const std::vector<ArgSlot>& slots) {
        const Value& x = slots[0].require("x", "ncol");
        if (x.kind() == ValueKind::Matrix)
            return Value::number(static_cast<double>(x.matrix_ref().ncol));
        if (x.kind() == ValueKind::Table)
            return Value::number(static_cast<double>(x.table_ref().columns.size()));
        return Value::null();
    });

    define_builtin(env, "matrix",
                   {Formal{"data", true}, Formal{"nrow", true}, Formal{"ncol", true},
                    Formal{"byrow", true}},
                   matrix_impl);

    define_builtin(env, "grep", {Formal{"x"}, Formal{"pattern"}, Formal{"value", true}},
                   [](const std::vector<ArgSlot>& slots) {
                       const Value& xv = slots[0].require("x", "grep");
                       const StringVec* x = xv.if_strings();
                       if (!x) type_error("grep() requires a string vector");
                       std::regex re =
                           compile_regex(scalar_string(slots[1].require("pattern", "grep"), "pattern"));
                       bool value = slots[2].missing() ? false
                                                       : scalar_bool(slots[2].get(), "value");
                       std::vector<std::size_t> hits;
                       for (std::size_t i = 0; i < x->elems.size(); ++i)
                           if (std::regex_search(x->elems[i], re)) hits.push_back(i);
                       if (value) {
                           std::vector<std::string> elems;
                           elems.reserve(hits.size());
                           for (std::size_t i : hits) elems.push_back(x->elems[i]);
                           return Value::strings(std::move(elems), slice_names(x->names, hits));
                       }
                       std::vector<double> idx;
                       idx.reserve(hits.size());
                       for (std::size_t i : hits) idx.push_back(static_cast<double>(i + 1));
                       return Value::numbers(std::move(idx));
                   });

    define_builtin(env, "gsub", {Formal{"pattern"}, Formal{"replacement"}, Formal{"x"}},
                   [](const std::vector<ArgSlot>& slots) {
                       std::regex re = compile_regex(
                           scalar_string(slots[0].require("pattern", "gsub"), "pattern"));
                       std::string repl =
                           scalar_string(slots[1].require("replacement", "gsub"), "replacement");
                       const Value& xv = slots[2].require("x", "gsub");
                       const StringVec* x = xv.if_strings();
                       if (!x) type_error("gsub() requires a string vector");
                       std::vector<std::string> out;
                       out.reserve(x->elems.size());
                       for (const std::string& s : x->elems)
                           out.push_back(gsub_one(re, repl, s));
                       return Value::strings(std::move(out), x->names);
                   });

    define_builtin(env, "trimws", {Formal{"x"}}, [](const std::vector<ArgSlot>& slots) {
        const Value& xv = slots[0].require("x", "trimws");
        const StringVec* x = xv.if_strings();
        if (!x) type_error("trimws() requires a string vector");
        std::vector<std::string> out;
        out.reserve(x->elems.size());
        for (const std::string& s : x->elems) {
            std::size_t b = s.find_first_not_of(" \t\r\n");
            std::size_t e = s.find_last_not_of(" \t\r\n");
            out.push_back(b == std::string::npos ? "" : s.substr(b, e - b + 1));
        }
        return Value::strings(std::move(out), x->names);
    });

    define_builtin(env, "grepl_cols", {Formal{"x"}, Formal{"pattern"}},
                   [](const std::vector<ArgSlot>& slots) {
                       const Table& t = slots[0].require("x", "grepl_cols").table_ref();
                       std::regex re = compile_regex(scalar_string(
                           slots[1].require("pattern", "grepl_cols"), "pattern"));
                       std::vector<std::string> out;
                       for (const auto& [name, col] : t.columns)
                           if (std::regex_search(name, re)) out.push_back(name);
                       return Value::strings(std::move(out));
                   });

    define_builtin(env, "select_cols", {Formal{"x"}, Formal{"cols"}},
                   [](const std::vector<ArgSlot>& slots) {
                       const Table& t = slots[0].require("x", "select_cols").table_ref();
                       const Value& cols = slots[1].require("cols", "select_cols");
                       std::vector<std::pair<std::string, Value>> out;
                       if (const StringVec* names = cols.if_strings()) {
                           for (const std::string& want : names->elems) {
                               auto it = std::find_if(t.columns.begin(), t.columns.end(),
                                                      [&](const auto& c) { return c.first == want; });
                               if (it == t.columns.end())
                                   domain_error("unknown column '" + want + "'");
                               out.push_back(*it);
                           }
                       } else if (const NumberVec* idx = cols.if_numbers()) {
                           for (double d : idx->elems) {
                               double i = std::trunc(d);
                               if (i < 1 || i > static_cast<double>(t.columns.size()))
                                   domain_error("column index " + std::to_string(d) +
                                                " is out of range");
                               out.push_back(t.columns[static_cast<std::size_t>(i) - 1]);
                           }
                       } else {
                           type_error("'cols' must be column names or 1-based indices");
                       }
                       return Value::table(std::move(out));
                   });

    define_builtin(env, "reorder_rows", {Formal{"x"}, Formal{"idx"}},
                   [](const std::vector<ArgSlot>& slots) {
                       const Table& t = slots[0].require("x", "reorder_rows").table_ref();
                       std::vector<std::size_t> idx = row_indices(
                           slots[1].require("idx", "reorder_rows"), t.nrow(), "row");
                       std::vector<std::pair<std::string, Value>> columns;
                       columns.reserve(t.columns.size());
                       for (const auto& [name, col] : t.columns)
                           columns.emplace_back(name, index_column(col, idx));
                       return Value::table(std::move(columns));
                   });

    define_builtin(env, "rev_index", {Formal{"n"}}, [](const std::vector<ArgSlot>& slots) {
        std::size_t n = scalar_count(slots[0].require("n", "rev_index"), "n");
        std::vector<double> out;
        out.reserve(n);
        for (std::size_t i = n; i >= 1; --i) out.push_back(static_cast<double>(i));
        return Value::numbers(std::move(out));
    });

    define_builtin(env, "summary", {Formal{"object"}}, summary_impl);

    // Table constructor: table(name = vector, ...). Column names are required
    // and must be distinct; all columns must have the same length.
    define_variadic(env, "table", [](const Args& args) {
        std::vector<std::pair<std::string, Value>> columns;
        std::optional<std::size_t> nrow;
        for (const auto& [name, v] : args) {
            if (!name)
                domain_error("table() arguments must be named (the column names)");
            std::size_t len = 0;
            if (const NumberVec* vec = v.if_numbers()) len = vec->elems.size();
            else if (const StringVec* vec = v.if_strings()) len = vec->elems.size();
            else if (const BoolVec* vec = v.if_bools()) len = vec->elems.size();
            else type_error("table column '" + *name + "' must be a vector");
            if (nrow && *nrow != len)
                domain_error("table columns must have equal lengths (" +
                             std::to_string(*nrow) + " vs " + std::to_string(len) + ")");
            nrow = len;
            if (std::any_of(columns.begin(), columns.end(),
                            [&](const auto& c) { return c.first == *name; }))
                domain_error("duplicate column name '" + *name + "'");
            columns.emplace_back(*name, v);
        }
        return Value::table(std::move(columns));
    });

    register_operators(env);
    return env;
}

} // namespace fcl
