#include "twosr/csv.hpp"

#include <array>
#include <charconv>
#include <ostream>

#include "twosr/version.hpp"

namespace twosr {

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

void write_csv_header(std::ostream& out, std::string_view kind,
                      std::initializer_list<std::string_view> columns) {
  out << "# " << kToolName << ' ' << kVersion << ' ' << kind << '\n';
  bool first = true;
  for (auto c : columns) {
    if (!first) out << ',';
    out << c;
    first = false;
  }
  out << '\n';
}

void write_csv_row(std::ostream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    out << format_number(v);
    first = false;
  }
  out << '\n';
}

}  // namespace twosr
