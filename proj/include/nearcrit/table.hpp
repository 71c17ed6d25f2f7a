#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nearcrit {

/// One CSV cell. Integers are written as plain decimals, reals with 17
/// significant digits (always carrying a '.' or an exponent), strings quoted.
using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;  // "# key = value" lines
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_meta(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
  }
  /// Throws std::invalid_argument when the row width differs from the header.
  void add_row(std::vector<Cell> row);
  std::size_t column(const std::string& name) const;
  /// Numeric value of a cell (integers converted); throws for strings.
  double number(std::size_t row, const std::string& name) const;

  friend bool operator==(const Table&, const Table&) = default;
};

std::string format_real(double v);
std::string to_csv(const Table& table);
/// Throws std::runtime_error on malformed input.
Table parse_csv(const std::string& text);

/// Writes to a temporary file next to `path` and renames it into place, so a
/// failed run never leaves a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
void write_csv(const std::filesystem::path& path, const Table& table);
Table read_csv(const std::filesystem::path& path);

}  // namespace nearcrit
