#include "uavfso/cli/table.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace uavfso::cli {

OutputTable::OutputTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void OutputTable::add_metadata(std::string key, std::string value) { metadata_.emplace_back(std::move(key), std::move(value)); }

void OutputTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw std::invalid_argument("table row has " + std::to_string(row.size()) + " fields, header has " +
                                std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(row));
}

std::string format_cell(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return "";
  if (const double* d = std::get_if<double>(&c)) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", *d);
    return buf;
  }
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  q += '"';
  return q;
}

void OutputTable::write(std::ostream& os) const {
  for (const auto& [k, v] : metadata_) {
    std::string value = v;
    for (char& ch : value) {
      if (ch == '\n' || ch == '\r') ch = ' ';
    }
    os << "# " << k << ": " << value << '\n';
  }
  for (std::size_t j = 0; j < columns_.size(); ++j) os << (j ? "," : "") << format_cell(columns_[j]);
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << format_cell(row[j]);
    os << '\n';
  }
}

void emit(const OutputTable& t, const std::string& path) {
  if (path.empty() || path == "-") {
    t.write(std::cout);
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("write to stdout failed");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing: " + std::strerror(errno));
  t.write(out);
  out.close();
  if (!out) throw std::runtime_error("write to '" + path + "' failed: " + std::strerror(errno));
}

}  // namespace uavfso::cli
