#pragma once

// Locale-independent CSV output.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mlconn {

/// 17 significant digits, '.' separator, independent of the global locale.
std::string format_real(double value);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  const std::vector<std::string>& header() const noexcept { return header_; }
  std::size_t row_count() const noexcept { return rows_.size(); }

  /// Starts a new row; fill it with the cell() overloads.
  CsvTable& row();
  CsvTable& cell(double value);
  CsvTable& cell(int value);
  CsvTable& cell(std::int64_t value);
  CsvTable& cell(std::string_view text);

  /// Throws kSizeMismatch if any row is not as wide as the header.
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace mlconn
