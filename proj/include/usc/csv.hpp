#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace usc::io {

/// 12 significant digits, period decimal separator.
std::string format_number(double v);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Column index, or -1.
  int column(std::string_view name) const;
};

/// Numeric CSV with one header line. Lines starting with '#' and blank lines
/// are skipped. Errors name the file and line.
CsvTable read_csv(const std::filesystem::path& path);

/// `preamble` lines are emitted first, each prefixed with "# ".
std::string to_csv(const CsvTable& table, const std::vector<std::string>& preamble = {});

}  // namespace usc::io
