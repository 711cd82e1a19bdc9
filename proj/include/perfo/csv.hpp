#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace perfo {

/// Numeric table with a header row, written with 17 significant digits.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Formats every cell with %.17g; throws NumericalError on a non-finite cell.
std::string format_csv(const CsvTable& table);

/// Writes through a temporary file in the same directory and renames it over path.
void write_atomic(const std::filesystem::path& path, const std::string& contents);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

}  // namespace perfo
