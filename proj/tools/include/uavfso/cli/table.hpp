#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace uavfso::cli {

using Cell = std::variant<std::monostate, double, std::string>;

/// CSV table: `# key: value` metadata lines, a header row naming the
/// columns, then data rows of the same width.
class OutputTable {
 public:
  explicit OutputTable(std::vector<std::string> columns);

  void add_metadata(std::string key, std::string value);
  /// Throws std::invalid_argument if the row width differs from the header.
  void add_row(std::vector<Cell> row);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return metadata_; }

  void write(std::ostream& os) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

/// Numbers with 9 significant digits, empty cells as nothing, strings quoted
/// when they contain a comma, quote or line break.
std::string format_cell(const Cell& c);

/// Writes to `path`, or to stdout when path is empty or "-". Throws
/// std::runtime_error with the system reason if the file cannot be written.
void emit(const OutputTable& t, const std::string& path);

}  // namespace uavfso::cli
