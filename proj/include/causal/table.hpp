#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "causal/numeric_matrix.hpp"

namespace causal {

enum class ColumnKind { numeric, nominal, ordinal };

std::string to_string(ColumnKind kind);

/// A cell is either a number (numeric columns) or a category label
/// (nominal/ordinal columns); std::nullopt marks a missing value.
using CellValue = std::variant<double, std::string>;
using Cell = std::optional<CellValue>;

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::numeric;
    std::vector<Cell> values;
    /// Ordinal columns carry their level order, lowest first. Must cover
    /// every distinct observed value.
    std::vector<std::string> levels;

    bool has_missing() const;
    double numeric_at(std::size_t row) const;
    const std::string& label_at(std::size_t row) const;
};

/// Immutable rectangular table of typed, possibly missing cells.
class Table {
  public:
    Table() = default;
    Table(std::vector<Column> columns, std::size_t row_count);

    std::size_t row_count() const { return row_count_; }
    std::size_t column_count() const { return columns_.size(); }
    const std::vector<Column>& columns() const { return columns_; }
    const Column& column(std::size_t i) const { return columns_.at(i); }
    const Column& column(const std::string& name) const;
    bool has_column(const std::string& name) const;
    bool has_missing() const;

  private:
    std::vector<Column> columns_;
    std::size_t row_count_ = 0;
};

struct ColumnHint {
    ColumnKind kind = ColumnKind::nominal;
    /// Optional explicit ordinal level order; when empty, levels default to
    /// the sorted distinct observed values.
    std::vector<std::string> levels;
};

using KindHints = std::map<std::string, ColumnHint>;

struct CsvOptions {
    /// Tokens (besides the empty cell) treated as missing.
    std::vector<std::string> missing_tokens = {"", "NA", "NaN", "null"};
    KindHints hints;
};

/// Reads an RFC-4180-style CSV with a header row. Column kinds are inferred:
/// every non-missing cell parseable as a number -> numeric; otherwise nominal
/// unless hinted ordinal.
Table load_csv(const std::string& path, const CsvOptions& options = {});
Table parse_csv(const std::string& text, const CsvOptions& options = {});
void save_csv(const Table& table, const std::string& path);
std::string to_csv(const Table& table);

/// Mean-imputes numeric columns and mode-imputes nominal/ordinal columns
/// (ties broken by first occurrence in column order).
Table impute(const Table& table);

struct ImputationCount {
    std::string column;
    std::size_t imputed = 0;
};

/// As impute(), also reporting how many cells each column had filled.
Table impute(const Table& table, std::vector<ImputationCount>& counts);

enum class DropReason { redundant, irrelevant };

struct Passthrough {};
struct OneHot {
    std::vector<std::string> categories;
};
struct OrdinalMap {
    /// Order-preserving injective level -> integer code map.
    std::vector<std::pair<std::string, int>> codes;
};
struct Drop {
    DropReason reason = DropReason::irrelevant;
};

using ColumnDirective = std::variant<Passthrough, OneHot, OrdinalMap, Drop>;

/// One directive per table column, keyed by column name.
class EncodingPlan {
  public:
    void set(const std::string& column, ColumnDirective directive);
    const ColumnDirective& directive(const std::string& column) const;
    bool covers(const std::string& column) const;

    /// Passthrough for numeric columns, full one-hot (sorted categories) for
    /// nominal, level-order integer codes for ordinal; `drop` columns get a
    /// Drop directive.
    static EncodingPlan infer(const Table& table,
                              const std::vector<std::string>& drop_redundant = {},
                              const std::vector<std::string>& drop_irrelevant = {});

  private:
    std::map<std::string, ColumnDirective> directives_;
};

/// Encodes a fully-imputed table into a numeric design matrix. One-hot
/// columns are named `<col>_<category>` with no reference level dropped.
NumericMatrix encode(const Table& table, const EncodingPlan& plan);

}  // namespace causal
