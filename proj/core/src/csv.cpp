#include "accel/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <system_error>

#include "accel/error.hpp"

namespace accel {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_header_comments(std::ostream& os, const HeaderFields& fields) {
  for (const auto& [key, value] : fields) os << "# " << key << ": " << value << '\n';
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}

void write_csv_row(std::ostream& os, std::size_t t, const std::vector<double>& values) {
  os << t;
  for (double v : values) os << ',' << format_double(v);
  os << '\n';
}

void write_transient_csv(std::ostream& os, const TransientReport& report, std::size_t rows) {
  write_csv_row(os, std::vector<std::string>{"t", "phi_norm", "theorem1_curve", "balanced_max", "peak"});
  const std::size_t n = std::min(rows, report.t.size());
  for (std::size_t i = 0; i < n; ++i) {
    os << report.t[i] << ',' << format_double(report.phi_norm[i]) << ','
       << format_double(report.envelope[i]) << ',' << format_double(report.balanced_max[i]) << ','
       << (report.t[i] == report.t_max ? 1 : 0) << '\n';
  }
}

std::vector<double> read_values(std::istream& is) {
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ',' || line[pos] == ' ' || line[pos] == '\t' ||
                                   line[pos] == '\r' || line[pos] == ';')) {
        ++pos;
      }
      if (pos >= line.size()) break;
      double v = 0.0;
      const char* begin = line.data() + pos;
      const char* end = line.data() + line.size();
      if (*begin == '+') ++begin;
      auto [ptr, ec] = std::from_chars(begin, end, v);
      const bool delimited = ptr == end || *ptr == ',' || *ptr == ' ' || *ptr == '\t' ||
                             *ptr == '\r' || *ptr == ';';
      if (ec != std::errc() || !delimited) {
        throw Error(ErrorCode::kInvalidArgument,
                    "malformed number on line " + std::to_string(lineno) + ": " + line);
      }
      out.push_back(v);
      pos = static_cast<std::size_t>(ptr - line.data());
    }
  }
  return out;
}

}  // namespace accel
