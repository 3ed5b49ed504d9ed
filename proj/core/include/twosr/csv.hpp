#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>

namespace twosr {

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double value);

/// Writes the artifact preamble: a "# <tool> <version> <kind>" line followed
/// by the column header row.
void write_csv_header(std::ostream& out, std::string_view kind,
                      std::initializer_list<std::string_view> columns);

/// Appends comma-separated numbers terminated by a newline.
void write_csv_row(std::ostream& out, std::initializer_list<double> values);

}  // namespace twosr
