#include "steklov/table.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace steklov {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("Table::add_row: column count mismatch");
  rows.push_back(std::move(row));
}

std::string format_cell(const Table::Cell& c) {
  if (std::holds_alternative<std::int64_t>(c))
    return std::to_string(std::get<std::int64_t>(c));
  if (std::holds_alternative<double>(c)) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(c));
    return buf;
  }
  return std::get<std::string>(c);
}

std::string to_csv(const Table& t) {
  std::ostringstream out;
  for (size_t i = 0; i < t.columns.size(); ++i)
    out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_cell(row[i]);
    out << "\n";
  }
  return out.str();
}

std::string to_json(const Table& t,
                    const std::vector<std::pair<std::string, std::string>>& meta) {
  nlohmann::ordered_json doc;
  auto& m = doc["meta"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  auto& records = doc["records"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json rec;
    for (size_t i = 0; i < row.size(); ++i) {
      const auto& c = row[i];
      if (std::holds_alternative<std::int64_t>(c))
        rec[t.columns[i]] = std::get<std::int64_t>(c);
      else if (std::holds_alternative<double>(c))
        // Serialized via the same 17-digit path as CSV for determinism.
        rec[t.columns[i]] = nlohmann::ordered_json::parse(format_cell(c));
      else
        rec[t.columns[i]] = std::get<std::string>(c);
    }
    records.push_back(std::move(rec));
  }
  return doc.dump(2) + "\n";
}

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    out.push_back(std::move(fields));
  }
  return out;
}

}  // namespace steklov
