#include "fcl/print.hpp"

#include <cmath>
#include <cstdio>

#include "fcl/deparse.hpp"

namespace fcl {

namespace {

constexpr std::size_t kLineWidth = 80;

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

template <typename Vec, typename Fmt>
std::vector<std::string> format_elems(const Vec& v, Fmt fmt) {
    std::vector<std::string> out;
    out.reserve(v.elems.size());
    for (std::size_t i = 0; i < v.elems.size(); ++i) out.push_back(fmt(v.elems[i]));
    return out;
}

// R-style vector layout: chunks prefixed with the index of their first
// element; for named vectors the names ride on a line above the values.
std::string format_vector(const std::vector<std::string>& elems, const Names& names,
                          const char* empty_label) {
    if (elems.empty()) return empty_label;

    std::size_t cell = 0;
    for (const std::string& e : elems) cell = std::max(cell, e.size());
    if (names)
        for (const std::string& n : *names) cell = std::max(cell, n.size());

    if (names) {
        // Named vectors print name/value column pairs; index prefixes are
        // redundant and omitted, matching R.
        std::string name_line, value_line, out;
        std::size_t used = 0;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            std::size_t need = cell + (used ? 1 : 0);
            if (used && used + need > kLineWidth) {
                out += name_line + "\n" + value_line + "\n";
                name_line.clear();
                value_line.clear();
                used = 0;
            }
            if (used) { name_line += ' '; value_line += ' '; }
            name_line += pad_left((*names)[i], cell);
            value_line += pad_left(elems[i], cell);
            used += need;
        }
        out += name_line + "\n" + value_line;
        return out;
    }

    std::size_t prefix_width = std::to_string(elems.size()).size() + 2; // "[k]"
    std::size_t per_line = std::max<std::size_t>(1, (kLineWidth - prefix_width) / (cell + 1));
    std::string out;
    for (std::size_t i = 0; i < elems.size(); i += per_line) {
        if (i) out += '\n';
        out += pad_left("[" + std::to_string(i + 1) + "]", prefix_width);
        for (std::size_t j = i; j < std::min(elems.size(), i + per_line); ++j) {
            out += ' ';
            out += pad_left(elems[j], cell);
        }
    }
    return out;
}

std::string format_matrix(const Matrix& m) {
    if (m.nrow == 0 || m.ncol == 0)
        return "<" + std::to_string(m.nrow) + " x " + std::to_string(m.ncol) + " matrix>";
    std::vector<std::string> cells(m.data.size());
    for (std::size_t i = 0; i < m.data.size(); ++i) cells[i] = format_number(m.data[i]);

    std::vector<std::size_t> col_width(m.ncol);
    for (std::size_t c = 0; c < m.ncol; ++c) {
        col_width[c] = ("[," + std::to_string(c + 1) + "]").size();
        for (std::size_t r = 0; r < m.nrow; ++r)
            col_width[c] = std::max(col_width[c], cells[r + c * m.nrow].size());
    }
    std::size_t row_label = ("[" + std::to_string(m.nrow) + ",]").size();

    std::string out(row_label, ' ');
    for (std::size_t c = 0; c < m.ncol; ++c) {
        out += ' ';
        out += pad_left("[," + std::to_string(c + 1) + "]", col_width[c]);
    }
    for (std::size_t r = 0; r < m.nrow; ++r) {
        out += '\n';
        out += pad_left("[" + std::to_string(r + 1) + ",]", row_label);
        for (std::size_t c = 0; c < m.ncol; ++c) {
            out += ' ';
            out += pad_left(cells[r + c * m.nrow], col_width[c]);
        }
    }
    return out;
}

std::vector<std::string> column_cells(const Value& col) {
    if (const NumberVec* v = col.if_numbers())
        return format_elems(*v, [](double d) { return format_number(d); });
    if (const StringVec* v = col.if_strings())
        return format_elems(*v, [](const std::string& s) { return s; });
    if (const BoolVec* v = col.if_bools())
        return format_elems(*v, [](bool b) { return std::string(b ? "TRUE" : "FALSE"); });
    return {};
}

const Names* column_names(const Value& col) {
    if (const NumberVec* v = col.if_numbers()) return &v->names;
    if (const StringVec* v = col.if_strings()) return &v->names;
    if (const BoolVec* v = col.if_bools()) return &v->names;
    return nullptr;
}

std::string format_table(const Table& t) {
    if (t.columns.empty()) return "<empty table>";
    std::size_t nrow = t.nrow();

    // When every column carries the same element names (summary tables),
    // those names label the rows instead of indices.
    std::vector<std::string> row_labels;
    const Names* shared = column_names(t.columns.front().second);
    bool use_names = shared && *shared;
    for (const auto& [name, col] : t.columns) {
        const Names* names = column_names(col);
        if (!names || !*names || (shared && *shared && **names != **shared)) use_names = false;
    }
    for (std::size_t r = 0; r < nrow; ++r)
        row_labels.push_back(use_names ? (**shared)[r] : std::to_string(r + 1));

    std::size_t label_width = 0;
    for (const std::string& l : row_labels) label_width = std::max(label_width, l.size());

    std::vector<std::vector<std::string>> cols;
    std::vector<std::size_t> widths;
    for (const auto& [name, col] : t.columns) {
        std::vector<std::string> cells = column_cells(col);
        std::size_t w = name.size();
        for (const std::string& cell : cells) w = std::max(w, cell.size());
        cols.push_back(std::move(cells));
        widths.push_back(w);
    }

    std::string out(label_width, ' ');
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        out += ' ';
        out += pad_left(t.columns[c].first, widths[c]);
    }
    for (std::size_t r = 0; r < nrow; ++r) {
        out += '\n';
        out += pad_left(row_labels[r], label_width);
        for (std::size_t c = 0; c < cols.size(); ++c) {
            out += ' ';
            out += pad_left(cols[c][r], widths[c]);
        }
    }
    return out;
}

std::string format_function(const Function& f) {
    if (const Closure* closure = f.closure())
        return deparse_function(closure->params, closure->body);
    if (const Builtin* builtin = f.builtin()) {
        std::string out = "function (";
        if (builtin->variadic) {
            out += "...";
        } else {
            for (std::size_t i = 0; i < builtin->formals.size(); ++i) {
                if (i) out += ", ";
                out += builtin->formals[i].name;
                if (builtin->formals[i].has_default) out += " = ...";
            }
        }
        out += ") <builtin " + builtin->name + ">";
        return out;
    }
    if (const ChainedFunction* chained = f.chained())
        return "<function list of " + std::to_string(chained->function_list.size()) + " stages>";
    if (const SpecialForm* form = f.special())
        return *form == SpecialForm::Fc ? "<special form fc>" : "<special form stage_list>";
    return "<function>";
}

} // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.7g", v);
    return buf;
}

std::string format_value(const Value& value) {
    switch (value.kind()) {
    case ValueKind::Null:
        return "NULL";
    case ValueKind::Missing:
        return "<missing>";
    case ValueKind::Numbers: {
        const NumberVec& v = value.numbers_ref();
        return format_vector(format_elems(v, [](double d) { return format_number(d); }),
                             v.names, "numeric(0)");
    }
    case ValueKind::Strings: {
        const StringVec& v = value.strings_ref();
        return format_vector(format_elems(v, [](const std::string& s) { return quote(s); }),
                             v.names, "character(0)");
    }
    case ValueKind::Bools: {
        const BoolVec& v = value.bools_ref();
        return format_vector(
            format_elems(v, [](bool b) { return std::string(b ? "TRUE" : "FALSE"); }),
            v.names, "logical(0)");
    }
    case ValueKind::Matrix:
        return format_matrix(value.matrix_ref());
    case ValueKind::Table:
        return format_table(value.table_ref());
    case ValueKind::Function:
        return format_function(value.function_ref());
    case ValueKind::Pipeline: {
        const Pipeline& p = value.pipeline_ref();
        std::string out = "<pipeline: ";
        for (std::size_t i = 0; i < p.labels.size(); ++i) {
            if (i) out += " %>% ";
            out += p.labels[i];
        }
        return out + ">";
    }
    }
    return "<value>";
}

} // namespace fcl
