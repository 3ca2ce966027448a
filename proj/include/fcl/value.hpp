#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fcl/ast.hpp"
#include "fcl/errors.hpp"

namespace fcl {

struct Environment;
using EnvPtr = std::shared_ptr<Environment>;

using Names = std::optional<std::vector<std::string>>;

struct NumberVec;
struct StringVec;
struct BoolVec;
struct Matrix;
struct Table;
struct Function;
struct Pipeline;
struct Closure;
struct Builtin;
struct ChainedFunction;
struct ValueData;

/// Evaluator-recognized special forms; their call operands arrive unevaluated.
enum class SpecialForm { Fc, StageList };

enum class ValueKind {
    Null,
    Missing,
    Numbers,
    Strings,
    Bools,
    Matrix,
    Table,
    Function,
    Pipeline,
};

/// Immutable runtime value; copying shares the payload.
class Value {
public:
    Value(); // Null

    static Value null();
    static Value missing_marker();
    static Value number(double v);
    static Value numbers(std::vector<double> elems, Names names = std::nullopt);
    static Value string(std::string s);
    static Value strings(std::vector<std::string> elems, Names names = std::nullopt);
    static Value boolean(bool b);
    static Value bools(std::vector<bool> elems, Names names = std::nullopt);
    static Value matrix(std::vector<double> data, std::size_t nrow, std::size_t ncol);
    static Value table(std::vector<std::pair<std::string, Value>> columns);
    static Value closure(std::vector<Param> params, ExprPtr body, EnvPtr env);
    static Value builtin(Builtin b);
    static Value chained(ChainedFunction cf);
    static Value pipeline(Pipeline p);
    static Value special(SpecialForm form);

    ValueKind kind() const;
    const char* kind_name() const;

    bool is_null() const { return kind() == ValueKind::Null; }
    bool is_missing_marker() const { return kind() == ValueKind::Missing; }
    bool is_function() const { return kind() == ValueKind::Function; }

    const NumberVec& numbers_ref() const;
    const StringVec& strings_ref() const;
    const BoolVec& bools_ref() const;
    const Matrix& matrix_ref() const;
    const Table& table_ref() const;
    const Function& function_ref() const;
    const Pipeline& pipeline_ref() const;

    const NumberVec* if_numbers() const;
    const StringVec* if_strings() const;
    const BoolVec* if_bools() const;

    /// Payload identity, used to recognize "same function object".
    const void* identity() const { return data_.get(); }

private:
    explicit Value(std::shared_ptr<const ValueData> data) : data_(std::move(data)) {}
    std::shared_ptr<const ValueData> data_;
};

struct NumberVec {
    std::vector<double> elems;
    Names names;
};

struct StringVec {
    std::vector<std::string> elems;
    Names names;
};

struct BoolVec {
    std::vector<bool> elems;
    Names names;
};

/// Column-major numeric matrix: data.size() == nrow * ncol.
struct Matrix {
    std::vector<double> data;
    std::size_t nrow = 0;
    std::size_t ncol = 0;
};

struct Table {
    std::vector<std::pair<std::string, Value>> columns; // each column is a vector value
    std::size_t nrow() const;
};

/// User function: parameter list, body expression and captured environment.
struct Closure {
    std::vector<Param> params;
    ExprPtr body;
    EnvPtr env;
};

/// Builtin formal; default values live inside the builtin's own logic, the
/// flag only drives argument matching and signature derivation.
struct Formal {
    std::string name;
    bool has_default = false;
};

/// A bound argument or an unfilled (missing) slot.
struct ArgSlot {
    std::optional<Value> bound;

    bool missing() const { return !bound.has_value(); }
    const Value& get() const { return *bound; }
    const Value& require(const std::string& arg, const std::string& fn) const;
};

/// Evaluated call-site arguments in order, with optional names.
using Args = std::vector<std::pair<std::optional<std::string>, Value>>;

struct Builtin {
    std::string name;
    std::vector<Formal> formals;
    bool variadic = false;
    std::function<Value(const std::vector<ArgSlot>&)> fn;  // when !variadic
    std::function<Value(const Args&)> variadic_fn;         // when variadic
};

/// Stored list of unary functions applied in run order by freduce; no
/// composition takes place.
struct ChainedFunction {
    std::vector<Value> function_list;
};

/// Declared pipeline for the benchmark strategies: stage function values plus
/// the source text of each stage expression.
struct Pipeline {
    std::vector<Value> stages;
    std::vector<std::string> labels;
};

struct Function {
    std::variant<std::shared_ptr<const Closure>,
                 std::shared_ptr<const Builtin>,
                 std::shared_ptr<const ChainedFunction>,
                 SpecialForm>
        impl;

    const Closure* closure() const {
        auto* p = std::get_if<std::shared_ptr<const Closure>>(&impl);
        return p ? p->get() : nullptr;
    }
    const Builtin* builtin() const {
        auto* p = std::get_if<std::shared_ptr<const Builtin>>(&impl);
        return p ? p->get() : nullptr;
    }
    const ChainedFunction* chained() const {
        auto* p = std::get_if<std::shared_ptr<const ChainedFunction>>(&impl);
        return p ? p->get() : nullptr;
    }
    const SpecialForm* special() const { return std::get_if<SpecialForm>(&impl); }
};

struct NullTag {};
struct MissingTag {};

struct ValueData {
    std::variant<NullTag, MissingTag, NumberVec, StringVec, BoolVec, Matrix, Table,
                 Function, Pipeline>
        v;
};

/// Formals of any callable: closure params, builtin formals, or the implicit
/// single `value` formal of a chained function list. Throws TypeError for
/// special forms and non-functions.
std::vector<Formal> function_formals(const Value& fn);

/// Deep structural equality. Numbers compare within `rel_tol` relative
/// tolerance (exact when rel_tol == 0); NaNs compare equal to NaNs; function
/// values compare by identity.
bool value_equal(const Value& a, const Value& b, double rel_tol = 0.0);

} // namespace fcl
