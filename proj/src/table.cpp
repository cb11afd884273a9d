#include "causal/table.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "causal/errors.hpp"

namespace causal {

std::string to_string(ColumnKind kind) {
    switch (kind) {
        case ColumnKind::numeric: return "numeric";
        case ColumnKind::nominal: return "nominal";
        case ColumnKind::ordinal: return "ordinal";
    }
    return "unknown";
}

bool Column::has_missing() const {
    return std::any_of(values.begin(), values.end(), [](const Cell& c) { return !c.has_value(); });
}

double Column::numeric_at(std::size_t row) const {
    return std::get<double>(*values.at(row));
}

const std::string& Column::label_at(std::size_t row) const {
    return std::get<std::string>(*values.at(row));
}

Table::Table(std::vector<Column> columns, std::size_t row_count)
    : columns_(std::move(columns)), row_count_(row_count) {
    std::set<std::string> seen;
    for (const auto& col : columns_) {
        if (!seen.insert(col.name).second) {
            throw SchemaError("duplicate column name '" + col.name + "'");
        }
        if (col.values.size() != row_count_) {
            throw StructuralError("column '" + col.name + "' has " +
                                  std::to_string(col.values.size()) + " values, expected " +
                                  std::to_string(row_count_));
        }
        if (col.kind == ColumnKind::ordinal) {
            std::set<std::string> lv(col.levels.begin(), col.levels.end());
            if (lv.size() != col.levels.size()) {
                throw SchemaError("ordinal column '" + col.name + "' repeats a level");
            }
            for (const Cell& c : col.values) {
                if (c && !lv.count(std::get<std::string>(*c))) {
                    throw SchemaError("ordinal column '" + col.name + "' holds value '" +
                                      std::get<std::string>(*c) + "' outside its declared levels");
                }
            }
        }
    }
}

const Column& Table::column(const std::string& name) const {
    for (const auto& col : columns_) {
        if (col.name == name) return col;
    }
    throw LookupError("no column named '" + name + "'");
}

bool Table::has_column(const std::string& name) const {
    return std::any_of(columns_.begin(), columns_.end(),
                       [&](const Column& c) { return c.name == name; });
}

bool Table::has_missing() const {
    return std::any_of(columns_.begin(), columns_.end(),
                       [](const Column& c) { return c.has_missing(); });
}

namespace {

// RFC-4180 field splitter; tracks line numbers for error messages and
// tolerates quoted commas/newlines and doubled quotes.
struct CsvReader {
    const std::string& text;
    std::size_t pos = 0;
    std::size_t line = 1;

    bool done() const { return pos >= text.size(); }

    std::vector<std::string> next_record() {
        std::vector<std::string> fields;
        std::string field;
        bool quoted = false;
        const std::size_t record_line = line;
        while (pos < text.size()) {
            const char c = text[pos];
            if (quoted) {
                if (c == '"') {
                    if (pos + 1 < text.size() && text[pos + 1] == '"') {
                        field += '"';
                        pos += 2;
                    } else {
                        quoted = false;
                        ++pos;
                    }
                } else {
                    if (c == '\n') ++line;
                    field += c;
                    ++pos;
                }
                continue;
            }
            if (c == '"' && field.empty()) {
                quoted = true;
                ++pos;
            } else if (c == ',') {
                fields.push_back(std::move(field));
                field.clear();
                ++pos;
            } else if (c == '\n' || c == '\r') {
                if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
                ++pos;
                ++line;
                fields.push_back(std::move(field));
                return fields;
            } else {
                field += c;
                ++pos;
            }
        }
        if (quoted) {
            throw StructuralError("unterminated quoted field starting near line " +
                                  std::to_string(record_line));
        }
        fields.push_back(std::move(field));
        return fields;
    }
};

bool parse_number(const std::string& s, double& out) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    if (begin == end) return false;
    const char* first = s.data() + begin;
    const char* last = s.data() + end;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

Table parse_csv(const std::string& text, const CsvOptions& options) {
    CsvReader reader{text};
    if (reader.done()) throw StructuralError("empty CSV input");

    const std::vector<std::string> header = reader.next_record();
    {
        std::set<std::string> seen;
        for (const auto& name : header) {
            if (!seen.insert(name).second) {
                throw SchemaError("duplicate header '" + name + "'");
            }
        }
    }

    const std::set<std::string> missing(options.missing_tokens.begin(),
                                        options.missing_tokens.end());
    std::vector<std::vector<std::optional<std::string>>> raw(header.size());
    std::size_t rows = 0;
    while (!reader.done()) {
        const std::size_t record_line = reader.line;
        std::vector<std::string> record = reader.next_record();
        if (record.size() != header.size()) {
            throw StructuralError("line " + std::to_string(record_line) + ": expected " +
                                  std::to_string(header.size()) + " fields, found " +
                                  std::to_string(record.size()));
        }
        for (std::size_t j = 0; j < record.size(); ++j) {
            if (missing.count(record[j])) {
                raw[j].emplace_back(std::nullopt);
            } else {
                raw[j].emplace_back(std::move(record[j]));
            }
        }
        ++rows;
    }

    std::vector<Column> columns;
    columns.reserve(header.size());
    for (std::size_t j = 0; j < header.size(); ++j) {
        Column col;
        col.name = header[j];
        const auto hint = options.hints.find(col.name);

        bool all_numeric = true;
        for (const auto& cell : raw[j]) {
            double ignored;
            if (cell && !parse_number(*cell, ignored)) {
                all_numeric = false;
                break;
            }
        }
        if (hint != options.hints.end()) {
            col.kind = hint->second.kind;
        } else {
            col.kind = all_numeric ? ColumnKind::numeric : ColumnKind::nominal;
        }
        if (col.kind == ColumnKind::numeric && !all_numeric) {
            throw SchemaError("column '" + col.name + "' hinted numeric but holds text");
        }

        col.values.reserve(rows);
        for (const auto& cell : raw[j]) {
            if (!cell) {
                col.values.emplace_back(std::nullopt);
            } else if (col.kind == ColumnKind::numeric) {
                double x = 0.0;
                parse_number(*cell, x);
                col.values.emplace_back(CellValue{x});
            } else {
                col.values.emplace_back(CellValue{*cell});
            }
        }
        if (col.kind == ColumnKind::ordinal) {
            if (hint != options.hints.end() && !hint->second.levels.empty()) {
                col.levels = hint->second.levels;
            } else {
                std::set<std::string> distinct;
                for (const auto& cell : col.values) {
                    if (cell) distinct.insert(std::get<std::string>(*cell));
                }
                col.levels.assign(distinct.begin(), distinct.end());
            }
        }
        columns.push_back(std::move(col));
    }
    return Table(std::move(columns), rows);
}

Table load_csv(const std::string& path, const CsvOptions& options) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw StructuralError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_csv(buf.str(), options);
}

namespace {

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string quoted = "\"";
    for (const char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string format_cell(const Cell& cell) {
    if (!cell) return "";
    if (std::holds_alternative<double>(*cell)) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(*cell));
        return buf;
    }
    return csv_quote(std::get<std::string>(*cell));
}

}  // namespace

std::string to_csv(const Table& table) {
    std::ostringstream out;
    for (std::size_t j = 0; j < table.column_count(); ++j) {
        if (j) out << ',';
        out << csv_quote(table.column(j).name);
    }
    out << '\n';
    for (std::size_t i = 0; i < table.row_count(); ++i) {
        for (std::size_t j = 0; j < table.column_count(); ++j) {
            if (j) out << ',';
            out << format_cell(table.column(j).values[i]);
        }
        out << '\n';
    }
    return out.str();
}

void save_csv(const Table& table, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw StructuralError("cannot write '" + path + "'");
    f << to_csv(table);
}

Table impute(const Table& table) {
    std::vector<ImputationCount> ignored;
    return impute(table, ignored);
}

Table impute(const Table& table, std::vector<ImputationCount>& counts) {
    counts.clear();
    std::vector<Column> columns;
    columns.reserve(table.column_count());
    for (const Column& col : table.columns()) {
        Column filled = col;
        std::size_t missing = 0;
        if (col.kind == ColumnKind::numeric) {
            double sum = 0.0;
            std::size_t n = 0;
            for (const Cell& c : col.values) {
                if (c) {
                    sum += std::get<double>(*c);
                    ++n;
                }
            }
            if (n == 0) {
                throw UnimputableColumnError("column '" + col.name + "' has no observed values");
            }
            const double mean = sum / static_cast<double>(n);
            for (Cell& c : filled.values) {
                if (!c) {
                    c = CellValue{mean};
                    ++missing;
                }
            }
        } else {
            // Mode; ties broken by first occurrence in column order.
            std::map<std::string, std::size_t> freq;
            std::vector<std::string> order;
            for (const Cell& c : col.values) {
                if (!c) continue;
                const std::string& label = std::get<std::string>(*c);
                if (freq[label]++ == 0) order.push_back(label);
            }
            if (order.empty()) {
                throw UnimputableColumnError("column '" + col.name + "' has no observed values");
            }
            std::string mode = order.front();
            for (const std::string& label : order) {
                if (freq[label] > freq[mode]) mode = label;
            }
            for (Cell& c : filled.values) {
                if (!c) {
                    c = CellValue{mode};
                    ++missing;
                }
            }
        }
        if (missing > 0) counts.push_back({col.name, missing});
        columns.push_back(std::move(filled));
    }
    return Table(std::move(columns), table.row_count());
}

void EncodingPlan::set(const std::string& column, ColumnDirective directive) {
    directives_[column] = std::move(directive);
}

const ColumnDirective& EncodingPlan::directive(const std::string& column) const {
    const auto it = directives_.find(column);
    if (it == directives_.end()) {
        throw SchemaError("encoding plan does not cover column '" + column + "'");
    }
    return it->second;
}

bool EncodingPlan::covers(const std::string& column) const {
    return directives_.count(column) > 0;
}

EncodingPlan EncodingPlan::infer(const Table& table, const std::vector<std::string>& drop_redundant,
                                 const std::vector<std::string>& drop_irrelevant) {
    for (const auto& name : drop_redundant) {
        if (!table.has_column(name)) throw SchemaError("drop list names unknown column '" + name + "'");
    }
    for (const auto& name : drop_irrelevant) {
        if (!table.has_column(name)) throw SchemaError("drop list names unknown column '" + name + "'");
    }
    const std::set<std::string> redundant(drop_redundant.begin(), drop_redundant.end());
    const std::set<std::string> irrelevant(drop_irrelevant.begin(), drop_irrelevant.end());
    EncodingPlan plan;
    for (const Column& col : table.columns()) {
        if (redundant.count(col.name)) {
            plan.set(col.name, Drop{DropReason::redundant});
            continue;
        }
        if (irrelevant.count(col.name)) {
            plan.set(col.name, Drop{DropReason::irrelevant});
            continue;
        }
        switch (col.kind) {
            case ColumnKind::numeric:
                plan.set(col.name, Passthrough{});
                break;
            case ColumnKind::nominal: {
                std::set<std::string> distinct;
                for (const Cell& c : col.values) {
                    if (c) distinct.insert(std::get<std::string>(*c));
                }
                plan.set(col.name, OneHot{{distinct.begin(), distinct.end()}});
                break;
            }
            case ColumnKind::ordinal: {
                OrdinalMap m;
                int code = 0;
                for (const std::string& level : col.levels) {
                    m.codes.emplace_back(level, code++);
                }
                plan.set(col.name, std::move(m));
                break;
            }
        }
    }
    return plan;
}

NumericMatrix encode(const Table& table, const EncodingPlan& plan) {
    if (table.has_missing()) {
        throw PreconditionError("encode requires an imputed table with no missing cells");
    }
    for (const Column& col : table.columns()) {
        if (!plan.covers(col.name)) {
            throw SchemaError("encoding plan does not cover column '" + col.name + "'");
        }
    }

    const std::size_t n = table.row_count();
    std::vector<std::string> names;
    std::vector<Eigen::VectorXd> cols;

    for (const Column& col : table.columns()) {
        const ColumnDirective& directive = plan.directive(col.name);
        if (std::holds_alternative<Drop>(directive)) continue;

        if (std::holds_alternative<Passthrough>(directive)) {
            if (col.kind != ColumnKind::numeric) {
                throw SchemaError("passthrough directive on non-numeric column '" + col.name + "'");
            }
            Eigen::VectorXd v(n);
            for (std::size_t i = 0; i < n; ++i) v[static_cast<Eigen::Index>(i)] = col.numeric_at(i);
            names.push_back(col.name);
            cols.push_back(std::move(v));
        } else if (const auto* onehot = std::get_if<OneHot>(&directive)) {
            std::map<std::string, std::size_t> slot;
            for (std::size_t k = 0; k < onehot->categories.size(); ++k) {
                slot[onehot->categories[k]] = k;
            }
            std::vector<Eigen::VectorXd> indicators(onehot->categories.size(),
                                                    Eigen::VectorXd::Zero(n));
            for (std::size_t i = 0; i < n; ++i) {
                const std::string& label = col.label_at(i);
                const auto it = slot.find(label);
                if (it == slot.end()) {
                    throw EncodingError("column '" + col.name + "': category '" + label +
                                        "' not in encoding plan");
                }
                indicators[it->second][static_cast<Eigen::Index>(i)] = 1.0;
            }
            for (std::size_t k = 0; k < onehot->categories.size(); ++k) {
                names.push_back(col.name + "_" + onehot->categories[k]);
                cols.push_back(std::move(indicators[k]));
            }
        } else if (const auto* ordinal = std::get_if<OrdinalMap>(&directive)) {
            std::map<std::string, int> code(ordinal->codes.begin(), ordinal->codes.end());
            if (code.size() != ordinal->codes.size()) {
                throw SchemaError("ordinal map for '" + col.name + "' repeats a level");
            }
            {
                // Order-preserving and injective over the declared order.
                int prev = std::numeric_limits<int>::min();
                for (const auto& [level, value] : ordinal->codes) {
                    if (value <= prev) {
                        throw SchemaError("ordinal map for '" + col.name +
                                          "' is not strictly increasing");
                    }
                    prev = value;
                }
            }
            Eigen::VectorXd v(n);
            for (std::size_t i = 0; i < n; ++i) {
                const std::string& label = col.label_at(i);
                const auto it = code.find(label);
                if (it == code.end()) {
                    throw EncodingError("column '" + col.name + "': level '" + label +
                                        "' not in encoding plan");
                }
                v[static_cast<Eigen::Index>(i)] = it->second;
            }
            names.push_back(col.name);
            cols.push_back(std::move(v));
        }
    }

    NumericMatrix out;
    out.column_names = std::move(names);
    out.data.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        out.data.col(static_cast<Eigen::Index>(j)) = cols[j];
    }
    out.standardized = false;
    out.validate();
    return out;
}

NumericMatrix load_numeric_csv(const std::string& path) {
    const Table t = load_csv(path, CsvOptions{{""}, {}});
    NumericMatrix out;
    out.data.resize(static_cast<Eigen::Index>(t.row_count()),
                    static_cast<Eigen::Index>(t.column_count()));
    for (std::size_t j = 0; j < t.column_count(); ++j) {
        const Column& col = t.column(j);
        if (col.kind != ColumnKind::numeric || col.has_missing()) {
            throw SchemaError("column '" + col.name + "' is not fully numeric");
        }
        out.column_names.push_back(col.name);
        for (std::size_t i = 0; i < t.row_count(); ++i) {
            out.data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                col.numeric_at(i);
        }
    }
    out.validate();
    return out;
}

}  // namespace causal
