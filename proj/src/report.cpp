#include "fpr/report.hpp"

#include <charconv>
#include <limits>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fpr::report {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  out.push_back(std::move(field));
  return out;
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

Cell parse_cell(const std::string& text) {
  if (text.empty()) return std::monostate{};
  if (text == "true") return true;
  if (text == "false") return false;
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  const char* first = text.data();
  const char* last = text.data() + text.size();
  std::int64_t i = 0;
  if (auto [p, ec] = std::from_chars(first, last, i); ec == std::errc{} && p == last) {
    return i;
  }
  double d = 0.0;
  if (auto [p, ec] = std::from_chars(first, last, d); ec == std::errc{} && p == last) {
    return d;
  }
  return text;
}

nlohmann::ordered_json cell_to_json(const Cell& cell) {
  return std::visit(
      overloaded{
          [](std::monostate) { return nlohmann::ordered_json(nullptr); },
          [](std::int64_t v) { return nlohmann::ordered_json(v); },
          [](bool v) { return nlohmann::ordered_json(v); },
          [](const std::string& v) { return nlohmann::ordered_json(v); },
          [](double v) {
            // Round to the printed precision so CSV and JSON carry one value.
            if (!std::isfinite(v)) return nlohmann::ordered_json(format_number(v));
            const std::string s = format_number(v);
            double rounded = 0.0;
            std::from_chars(s.data(), s.data() + s.size(), rounded);
            return nlohmann::ordered_json(rounded);
          },
      },
      cell);
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 9);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return {buf, end};
}

std::string render_cell(const Cell& cell) {
  return std::visit(overloaded{
                        [](std::monostate) { return std::string{}; },
                        [](std::int64_t v) { return std::to_string(v); },
                        [](bool v) { return std::string(v ? "true" : "false"); },
                        [](const std::string& v) { return quote_if_needed(v); },
                        [](double v) { return format_number(v); },
                    },
                    cell);
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out.push_back(',');
    out += quote_if_needed(table.columns[i]);
  }
  out.push_back('\n');
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(',');
      out += render_cell(row[i]);
    }
    out.push_back('\n');
  }
  return out;
}

std::string to_json(const Table& table) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      obj[table.columns[i]] = cell_to_json(row[i]);
    }
    rows.push_back(obj);
  }
  return rows.dump(2) + "\n";
}

std::string render(const Table& table, Format format) {
  return format == Format::Csv ? to_csv(table) : to_json(table);
}

Table parse_csv(std::string_view text, std::string name) {
  Table table;
  table.name = std::move(name);
  bool header = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    auto fields = split_fields(line);
    if (header) {
      table.columns = std::move(fields);
      header = false;
      continue;
    }
    if (fields.size() != table.columns.size()) {
      throw std::invalid_argument("CSV row has " + std::to_string(fields.size()) +
                                  " fields, header has " +
                                  std::to_string(table.columns.size()));
    }
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_cell(f));
    table.rows.push_back(std::move(row));
  }
  return table;
}

RowBuilder& RowBuilder::add(std::string_view column, Cell value) {
  columns_.emplace_back(column);
  cells_.push_back(std::move(value));
  return *this;
}

RowBuilder& RowBuilder::add_probability(std::string_view column, double value,
                                        double log_value) {
  add(column, value);
  return add(std::string(column) + "_ln", log_value);
}

void RowBuilder::finish() {
  if (table_.columns.empty() && table_.rows.empty()) {
    table_.columns = columns_;
  } else if (table_.columns != columns_) {
    throw std::logic_error("report row does not match the table header");
  }
  table_.rows.push_back(std::move(cells_));
  columns_.clear();
  cells_.clear();
}

}  // namespace fpr::report
