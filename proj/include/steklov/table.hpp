#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace steklov {

// A rectangular table with typed cells; the CSV/JSON emission contract of
// the CLI. Doubles are rendered with 17 significant digits so a re-parse
// reproduces the exact bit pattern.
struct Table {
  using Cell = std::variant<std::int64_t, double, std::string>;

  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

std::string format_cell(const Table::Cell& c);

std::string to_csv(const Table& t);

// meta: flat key/value pairs echoed into the JSON "meta" object.
std::string to_json(const Table& t,
                    const std::vector<std::pair<std::string, std::string>>& meta);

// Parses CSV produced by to_csv back into string fields (header + rows).
std::vector<std::vector<std::string>> read_csv(const std::string& text);

}  // namespace steklov
