#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "accel/transient.hpp"

namespace accel {

/// Shortest form that round-trips, capped at 17 significant digits.
std::string format_double(double v);

using HeaderFields = std::vector<std::pair<std::string, std::string>>;

/// Writes "# key: value" lines.
void write_header_comments(std::ostream& os, const HeaderFields& fields);

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells);
void write_csv_row(std::ostream& os, std::size_t t, const std::vector<double>& values);

/// Columns t, phi_norm, theorem1_curve, balanced_max, peak for the first `rows` samples of
/// the report; the peak column is 1 on the row t == report.t_max.
void write_transient_csv(std::ostream& os, const TransientReport& report, std::size_t rows);

/// Reads numbers separated by commas, whitespace or newlines; lines starting
/// with '#' are skipped. Throws kInvalidArgument on a malformed token.
std::vector<double> read_values(std::istream& is);

}  // namespace accel
