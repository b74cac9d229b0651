#pragma once

// RFC-4180 CSV output: header row, '.' decimal separator, reals with 17
// significant digits so every double round-trips exactly.

#include <fstream>
#include <string>
#include <vector>

namespace spdm {

/// 17-significant-digit rendering ("%.17g"); NaN is written as "nan".
std::string format_real(double x);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string csv_escape(const std::string& field);

class CsvWriter {
 public:
  /// Opens `path` for writing (truncating) and writes the header row.
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  CsvWriter& field(double x);
  CsvWriter& field(long long x);
  CsvWriter& field(std::size_t x) { return field(static_cast<long long>(x)); }
  CsvWriter& field(int x) { return field(static_cast<long long>(x)); }
  CsvWriter& field(bool x);
  CsvWriter& field(const std::string& s);
  CsvWriter& field(const char* s) { return field(std::string(s)); }
  /// Writes the row; throws (and drops it) if its width differs from the header.
  void end_row();
  void close();

  const std::string& path() const { return path_; }

 private:
  void separator();

  std::string path_;
  std::ofstream out_;
  std::size_t width_;
  std::size_t column_ = 0;
  std::string row_;  // fields of the row in progress
};

/// Reads a CSV written by CsvWriter (no embedded newlines inside quoted
/// fields). Returns header and rows as strings.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws ConfigError when absent.
  std::size_t column(const std::string& name) const;
};
CsvTable read_csv(const std::string& path);

}  // namespace spdm
