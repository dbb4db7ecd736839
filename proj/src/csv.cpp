#include "polyband/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace polyband {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[32];
  // snprintf honours LC_NUMERIC; patch a ',' decimal point just in case
  std::snprintf(buf, sizeof buf, "%.15g", x);
  std::string s(buf);
  for (char& c : s)
    if (c == ',') c = '.';
  return s;
}

double parse_number(std::string_view field) {
  if (field == "inf") return INFINITY;
  if (field == "-inf") return -INFINITY;
  double v = 0.0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end) throw CsvError("not a number: '" + std::string(field) + "'");
  return v;
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size())
    throw CsvError("row has " + std::to_string(row.size()) + " fields, header has " + std::to_string(header.size()));
  rows.push_back(std::move(row));
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw CsvError("missing column '" + std::string(name) + "'");
}

bool CsvTable::has_column(std::string_view name) const {
  for (const auto& h : header)
    if (h == name) return true;
  return false;
}

std::vector<double> CsvTable::numbers(std::string_view name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(parse_number(r[c]));
  return out;
}

void CsvTable::write(std::ostream& out) const {
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

std::string CsvTable::str() const {
  std::ostringstream out;
  write(out);
  return out.str();
}

void CsvTable::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  write(out);
  if (!out) throw std::ios_base::failure("write to '" + path + "' failed");
}

CsvTable CsvTable::parse(std::string_view text) {
  CsvTable t;
  std::size_t pos = 0;
  int line_no = 0;
  bool have_header = false;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      std::size_t comma = line.find(',', start);
      fields.emplace_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!have_header) {
      t.header = std::move(fields);
      have_header = true;
    } else if (fields.size() != t.header.size()) {
      throw CsvError("line " + std::to_string(line_no) + ": expected " + std::to_string(t.header.size()) +
                     " fields, got " + std::to_string(fields.size()));
    } else {
      t.rows.push_back(std::move(fields));
    }
  }
  if (!have_header) throw CsvError("missing header row");
  return t;
}

CsvTable CsvTable::read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace polyband
