#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace mobius {

// A rectangular report with a named, versioned schema. Emitted as CSV (with
// a leading "# schema name/version" line) or as a JSON mirror.
class Table {
 public:
  Table(std::string schema, std::vector<std::string> columns, int version = 1);

  using Cell = std::string;
  void add_row(std::vector<Cell> cells);

  template <class... Ts>
  void add(const Ts&... values) {
    add_row({format_cell(values)...});
  }

  const std::string& schema() const { return schema_; }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  void write_csv(std::ostream& os) const;
  nlohmann::json to_json() const;

  static Cell format_cell(const std::string& s) { return s; }
  static Cell format_cell(const char* s) { return s; }
  static Cell format_cell(bool b) { return b ? "true" : "false"; }
  static Cell format_cell(double x);
  template <class T>
    requires std::is_integral_v<T>
  static Cell format_cell(T x) {
    return std::to_string(x);
  }

 private:
  std::string schema_;
  std::vector<std::string> columns_;
  int version_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace mobius
