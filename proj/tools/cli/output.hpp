#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "accel/csv.hpp"
#include "run_config.hpp"

namespace accel::cli {

/// Rectangular numeric output; the first column is an index (t or kappa).
struct Table {
  HeaderFields meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Key-value output (bounds, certificates, summaries).
struct Record {
  using Value = std::variant<double, bool, std::string>;
  HeaderFields meta;
  std::vector<std::pair<std::string, Value>> fields;

  void add(std::string key, Value v) { fields.emplace_back(std::move(key), std::move(v)); }
};

/// CSV: "# key: value" header lines, column names, 17-digit values.
/// JSON: {"meta": {...}, "columns": [...], "rows": [[...], ...]}.
void write_table(std::ostream& os, const Table& table, OutputFormat format);

/// CSV: header lines then "key,value" rows. JSON: {"meta": {...}, key: value, ...}.
void write_record(std::ostream& os, const Record& record, OutputFormat format);

}  // namespace accel::cli
