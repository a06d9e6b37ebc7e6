#include "output.hpp"

#include <cmath>
#include <ostream>

#include "json.hpp"

namespace accel::cli {

namespace {

using nlohmann::ordered_json;

ordered_json meta_json(const HeaderFields& meta) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : meta) j[k] = v;
  return j;
}

// JSON has no inf/nan; emit them as strings.
ordered_json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

}  // namespace

void write_table(std::ostream& os, const Table& table, OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    write_header_comments(os, table.meta);
    write_csv_row(os, table.columns);
    for (const auto& row : table.rows) {
      std::vector<std::string> cells;
      cells.reserve(row.size());
      for (double v : row) cells.push_back(format_double(v));
      write_csv_row(os, cells);
    }
    return;
  }
  ordered_json j;
  j["meta"] = meta_json(table.meta);
  j["columns"] = table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r = ordered_json::array();
    for (double v : row) r.push_back(number_json(v));
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  os << j.dump(2) << '\n';
}

void write_record(std::ostream& os, const Record& record, OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    write_header_comments(os, record.meta);
    write_csv_row(os, std::vector<std::string>{"key", "value"});
    for (const auto& [k, v] : record.fields) {
      std::string cell;
      if (const auto* d = std::get_if<double>(&v)) cell = format_double(*d);
      else if (const auto* b = std::get_if<bool>(&v)) cell = *b ? "true" : "false";
      else cell = std::get<std::string>(v);
      write_csv_row(os, std::vector<std::string>{k, cell});
    }
    return;
  }
  ordered_json j;
  j["meta"] = meta_json(record.meta);
  for (const auto& [k, v] : record.fields) {
    if (const auto* d = std::get_if<double>(&v)) j[k] = number_json(*d);
    else if (const auto* b = std::get_if<bool>(&v)) j[k] = *b;
    else j[k] = std::get<std::string>(v);
  }
  os << j.dump(2) << '\n';
}

}  // namespace accel::cli
