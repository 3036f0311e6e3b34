// ============================================================================
// report.hpp -- tabular reports rendered as CSV or JSON.
//
// CSV: comma separated, header row, LF endings, '.' decimal point, doubles at
// 9 significant digits. JSON: an array of row objects with the same keys.
// Probabilities travel with a natural-log companion column so values below
// double range still carry their exponent.
// ============================================================================
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fpr::report {

using Cell = std::variant<std::monostate, std::int64_t, double, bool, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  bool operator==(const Table&) const = default;
};

enum class Format { Csv, Json };

/// 9 significant digits, shortest form; "inf", "-inf", "nan" for non-finite.
std::string format_number(double value);

std::string render_cell(const Cell& cell);

std::string to_csv(const Table& table);
std::string to_json(const Table& table);
std::string render(const Table& table, Format format);

/// Parses CSV emitted by to_csv(). Cells are typed back as int, double, bool,
/// empty or string.
Table parse_csv(std::string_view text, std::string name = {});

/// Accumulates one row while building the header on the first call.
class RowBuilder {
 public:
  explicit RowBuilder(Table& table) : table_(table) {}

  RowBuilder& add(std::string_view column, Cell value);

  /// Adds `column` plus `column_ln` holding ln(value) from `log_value`.
  RowBuilder& add_probability(std::string_view column, double value, double log_value);

  /// Commits the row; the header must match earlier rows.
  void finish();

 private:
  Table& table_;
  std::vector<std::string> columns_;
  std::vector<Cell> cells_;
};

}  // namespace fpr::report
