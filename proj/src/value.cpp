#include "fcl/value.hpp"

#include <cmath>

namespace fcl {

namespace {

std::shared_ptr<const ValueData> wrap(std::variant<NullTag, MissingTag, NumberVec, StringVec,
                                                   BoolVec, Matrix, Table, Function, Pipeline> v) {
    return std::make_shared<const ValueData>(ValueData{std::move(v)});
}

const std::shared_ptr<const ValueData>& null_data() {
    static const std::shared_ptr<const ValueData> instance = wrap(NullTag{});
    return instance;
}

const std::shared_ptr<const ValueData>& missing_data() {
    static const std::shared_ptr<const ValueData> instance = wrap(MissingTag{});
    return instance;
}

} // namespace

Value::Value() : data_(null_data()) {}

Value Value::null() { return Value(null_data()); }
Value Value::missing_marker() { return Value(missing_data()); }
Value Value::number(double v) { return numbers({v}); }
Value Value::numbers(std::vector<double> elems, Names names) {
    return Value(wrap(NumberVec{std::move(elems), std::move(names)}));
}
Value Value::string(std::string s) {
    std::vector<std::string> elems;
    elems.push_back(std::move(s));
    return strings(std::move(elems));
}
Value Value::strings(std::vector<std::string> elems, Names names) {
    return Value(wrap(StringVec{std::move(elems), std::move(names)}));
}
Value Value::boolean(bool b) { return bools({b}); }
Value Value::bools(std::vector<bool> elems, Names names) {
    return Value(wrap(BoolVec{std::move(elems), std::move(names)}));
}
Value Value::matrix(std::vector<double> data, std::size_t nrow, std::size_t ncol) {
    return Value(wrap(Matrix{std::move(data), nrow, ncol}));
}
Value Value::table(std::vector<std::pair<std::string, Value>> columns) {
    return Value(wrap(Table{std::move(columns)}));
}
Value Value::closure(std::vector<Param> params, ExprPtr body, EnvPtr env) {
    return Value(wrap(Function{
        std::make_shared<const Closure>(Closure{std::move(params), std::move(body), std::move(env)})}));
}
Value Value::builtin(Builtin b) {
    return Value(wrap(Function{std::make_shared<const Builtin>(std::move(b))}));
}
Value Value::chained(ChainedFunction cf) {
    return Value(wrap(Function{std::make_shared<const ChainedFunction>(std::move(cf))}));
}
Value Value::pipeline(Pipeline p) {
    return Value(wrap(std::move(p)));
}
Value Value::special(SpecialForm form) {
    return Value(wrap(Function{form}));
}

ValueKind Value::kind() const {
    return static_cast<ValueKind>(data_->v.index());
}

const char* Value::kind_name() const {
    switch (kind()) {
    case ValueKind::Null: return "NULL";
    case ValueKind::Missing: return "missing";
    case ValueKind::Numbers: return "numeric vector";
    case ValueKind::Strings: return "string vector";
    case ValueKind::Bools: return "logical vector";
    case ValueKind::Matrix: return "matrix";
    case ValueKind::Table: return "table";
    case ValueKind::Function: return "function";
    case ValueKind::Pipeline: return "pipeline";
    }
    return "value";
}

namespace {

template <typename T>
const T& get_or_throw(const ValueData& data, const char* wanted, const char* got) {
    const T* p = std::get_if<T>(&data.v);
    if (!p)
        throw FclError(ErrorKind::Type,
                       std::string("expected a ") + wanted + " but got a " + got);
    return *p;
}

} // namespace

const NumberVec& Value::numbers_ref() const {
    return get_or_throw<NumberVec>(*data_, "numeric vector", kind_name());
}
const StringVec& Value::strings_ref() const {
    return get_or_throw<StringVec>(*data_, "string vector", kind_name());
}
const BoolVec& Value::bools_ref() const {
    return get_or_throw<BoolVec>(*data_, "logical vector", kind_name());
}
const Matrix& Value::matrix_ref() const {
    return get_or_throw<Matrix>(*data_, "matrix", kind_name());
}
const Table& Value::table_ref() const {
    return get_or_throw<Table>(*data_, "table", kind_name());
}
const Function& Value::function_ref() const {
    return get_or_throw<Function>(*data_, "function", kind_name());
}
const Pipeline& Value::pipeline_ref() const {
    return get_or_throw<Pipeline>(*data_, "pipeline", kind_name());
}

const NumberVec* Value::if_numbers() const { return std::get_if<NumberVec>(&data_->v); }
const StringVec* Value::if_strings() const { return std::get_if<StringVec>(&data_->v); }
const BoolVec* Value::if_bools() const { return std::get_if<BoolVec>(&data_->v); }

std::size_t Table::nrow() const {
    if (columns.empty()) return 0;
    const Value& first = columns.front().second;
    if (const NumberVec* v = first.if_numbers()) return v->elems.size();
    if (const StringVec* v = first.if_strings()) return v->elems.size();
    if (const BoolVec* v = first.if_bools()) return v->elems.size();
    return 0;
}

const Value& ArgSlot::require(const std::string& arg, const std::string& fn) const {
    if (missing())
        throw FclError(ErrorKind::MissingArg,
                       "argument '" + arg + "' is missing, with no default, in call to '" + fn + "'");
    return *bound;
}

std::vector<Formal> function_formals(const Value& fn) {
    const Function& f = fn.function_ref();
    if (const Closure* closure = f.closure()) {
        std::vector<Formal> formals;
        formals.reserve(closure->params.size());
        for (const Param& p : closure->params)
            formals.push_back(Formal{p.name, p.default_expr != nullptr});
        return formals;
    }
    if (const Builtin* builtin = f.builtin())
        return builtin->formals;
    if (f.chained())
        return {Formal{"value", false}};
    throw FclError(ErrorKind::Type, "special forms have no formals");
}

namespace {

bool numbers_close(double a, double b, double rel_tol) {
    if (a == b) return true;
    if (std::isnan(a) && std::isnan(b)) return true;
    if (rel_tol == 0.0) return false;
    double scale = std::max(std::fabs(a), std::fabs(b));
    return std::fabs(a - b) <= rel_tol * scale;
}

bool names_equal(const Names& a, const Names& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || *a == *b;
}

} // namespace

bool value_equal(const Value& a, const Value& b, double rel_tol) {
    if (a.identity() == b.identity()) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case ValueKind::Null:
    case ValueKind::Missing:
        return true;
    case ValueKind::Numbers: {
        const NumberVec& x = a.numbers_ref();
        const NumberVec& y = b.numbers_ref();
        if (x.elems.size() != y.elems.size() || !names_equal(x.names, y.names)) return false;
        for (std::size_t i = 0; i < x.elems.size(); ++i)
            if (!numbers_close(x.elems[i], y.elems[i], rel_tol)) return false;
        return true;
    }
    case ValueKind::Strings: {
        const StringVec& x = a.strings_ref();
        const StringVec& y = b.strings_ref();
        return x.elems == y.elems && names_equal(x.names, y.names);
    }
    case ValueKind::Bools: {
        const BoolVec& x = a.bools_ref();
        const BoolVec& y = b.bools_ref();
        return x.elems == y.elems && names_equal(x.names, y.names);
    }
    case ValueKind::Matrix: {
        const Matrix& x = a.matrix_ref();
        const Matrix& y = b.matrix_ref();
        if (x.nrow != y.nrow || x.ncol != y.ncol) return false;
        for (std::size_t i = 0; i < x.data.size(); ++i)
            if (!numbers_close(x.data[i], y.data[i], rel_tol)) return false;
        return true;
    }
    case ValueKind::Table: {
        const Table& x = a.table_ref();
        const Table& y = b.table_ref();
        if (x.columns.size() != y.columns.size()) return false;
        for (std::size_t i = 0; i < x.columns.size(); ++i) {
            if (x.columns[i].first != y.columns[i].first) return false;
            if (!value_equal(x.columns[i].second, y.columns[i].second, rel_tol)) return false;
        }
        return true;
    }
    case ValueKind::Function:
    case ValueKind::Pipeline:
        return false; // identity compared above
    }
    return false;
}

} // namespace fcl
