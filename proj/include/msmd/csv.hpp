#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "msmd/common.hpp"

namespace msmd {

// 12 significant digits, the precision of every real written to CSV.
inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os) { row(header); }

  void comment(std::string_view text) { os_ << "# " << text << '\n'; }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ',';
      os_ << cells[i];
    }
    os_ << '\n';
  }

 private:
  std::ostream& os_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> comments;

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw InputError("csv: no column '" + std::string(name) + "'");
  }
  double real(std::size_t row, std::string_view name) const { return std::stod(rows.at(row).at(column(name))); }
  long long integer(std::size_t row, std::string_view name) const { return std::stoll(rows.at(row).at(column(name))); }
  const std::string& cell(std::size_t row, std::string_view name) const { return rows.at(row).at(column(name)); }
};

// Reads comma-separated rows (no quoting). Lines starting with '#' are
// collected as comments; the first other line is the header. Every row must
// have as many cells as the header.
inline CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      t.comments.push_back(line.size() > 2 ? line.substr(2) : std::string());
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw InputError("csv: row " + std::to_string(t.rows.size() + 1) + " has " + std::to_string(cells.size()) +
                       " cells, header has " + std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  if (!have_header) throw InputError("csv: missing header");
  return t;
}

inline CsvTable parse_csv(const std::string& text) {
  std::istringstream is(text);
  return read_csv(is);
}

}  // namespace msmd
