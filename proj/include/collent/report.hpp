#pragma once

// Plain tabular output shared by every CLI subcommand.
//
// CSV: first line "# <schema>", then the header row, then one line per row;
// '.' decimal separator, "%.17g", LF endings. Missing cells are empty.
// JSON: {"schema": ..., "columns": [...], "rows": [{column: value, ...}]};
// missing cells are null, non-finite numbers are the strings "inf", "-inf",
// "nan".

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "collent/errors.hpp"

namespace collent::report {

/// eps below this is written as exactly 0.
inline constexpr double kEpsilonOutputFloor = 1e-12;

inline double clean_epsilon(double epsilon) {
  return epsilon < kEpsilonOutputFloor ? 0.0 : epsilon;
}

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::string schema;  // e.g. "collent-sweep/1"
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
      throw std::logic_error("row width " + std::to_string(row.size()) + " does not match " +
                             std::to_string(columns.size()) + " columns");
    }
    rows.push_back(std::move(row));
  }
};

inline Cell optional_cell(const std::optional<double>& x) {
  if (x) return Cell{*x};
  return Cell{};
}

namespace detail {

inline std::string csv_cell(const Cell& cell) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& v) const {
      if (v.find_first_of(",\"\n") == std::string::npos) return v;
      std::string out = "\"";
      for (char c : v) {
        if (c == '"') out += '"';
        out += c;
      }
      return out + '"';
    }
  } visitor;
  return std::visit(visitor, cell);
}

inline nlohmann::ordered_json json_cell(const Cell& cell) {
  struct {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(double v) const {
      if (!std::isfinite(v)) return format_double(v);
      return v;
    }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  } visitor;
  return std::visit(visitor, cell);
}

}  // namespace detail

inline std::string to_csv(const Table& table) {
  std::string out = "# " + table.schema + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += detail::csv_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline std::string to_json(const Table& table) {
  nlohmann::ordered_json doc;
  doc["schema"] = table.schema;
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = detail::json_cell(row[i]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

enum class Format { kCsv, kJson };

inline Format parse_format(std::string_view text) {
  if (text == "csv") return Format::kCsv;
  if (text == "json") return Format::kJson;
  throw DomainError("unknown output format '" + std::string(text) + "' (csv or json)");
}

inline std::string render(const Table& table, Format format) {
  return format == Format::kCsv ? to_csv(table) : to_json(table);
}

/// Writes the whole document at once; an empty path means `fallback`.
inline void emit(const std::string& text, const std::string& path, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    fallback.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw DomainError("cannot open output file '" + path + "'");
  file << text;
  if (!file) throw DomainError("failed writing output file '" + path + "'");
}

}  // namespace collent::report
