#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace qbell::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  /// Empty for the primary table; otherwise the companion file suffix.
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// Shortest form with 17 significant digits, '.' separator.
std::string format_double(double x);
std::string format_cell(Cell const& cell);

/// Header line plus rows, comma separated, LF terminated.
void write_csv(std::ostream& out, Table const& table);

}  // namespace qbell::cli
