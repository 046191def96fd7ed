#include "mobius/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace mobius {

Table::Table(std::string schema, std::vector<std::string> columns, int version)
    : schema_(std::move(schema)), columns_(std::move(columns)), version_(version) {}

void Table::add_row(std::vector<Cell> cells) {
  if (cells.size() != columns_.size()) {
    throw std::invalid_argument("row width " + std::to_string(cells.size()) +
                                " does not match schema " + schema_);
  }
  rows_.push_back(std::move(cells));
}

Table::Cell Table::format_cell(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

void Table::write_csv(std::ostream& os) const {
  os << "# schema " << schema_ << "/" << version_ << "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    os << (i ? "," : "") << columns_[i];
  }
  os << "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << quote(row[i]);
    }
    os << "\n";
  }
}

nlohmann::json Table::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : rows_) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[columns_[i]] = row[i];
    rows.push_back(std::move(obj));
  }
  return {{"schema", schema_}, {"version", version_}, {"rows", std::move(rows)}};
}

}  // namespace mobius
