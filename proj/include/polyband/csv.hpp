#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polyband {

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "%.15g" with '.' as decimal separator regardless of locale; "inf" for infinity.
std::string format_number(double x);
double parse_number(std::string_view field);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  CsvTable() = default;
  explicit CsvTable(std::vector<std::string> columns) : header(std::move(columns)) {}

  void add_row(std::vector<std::string> row);
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
  std::vector<double> numbers(std::string_view name) const;
  bool empty() const { return rows.empty(); }

  std::string str() const;
  void write(std::ostream& out) const;
  void write_file(const std::string& path) const;

  /// Plain comma-separated fields, no quoting; header required.
  static CsvTable parse(std::string_view text);
  static CsvTable read_file(const std::string& path);
};

}  // namespace polyband
