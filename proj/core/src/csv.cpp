#include "mlconn/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "mlconn/error.hpp"

namespace mlconn {

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row() {
  rows_.emplace_back();
  rows_.back().reserve(header_.size());
  return *this;
}

CsvTable& CsvTable::cell(double value) { return cell(std::string_view(format_real(value))); }

CsvTable& CsvTable::cell(int value) { return cell(static_cast<std::int64_t>(value)); }

CsvTable& CsvTable::cell(std::int64_t value) {
  return cell(std::string_view(std::to_string(value)));
}

CsvTable& CsvTable::cell(std::string_view text) {
  if (rows_.empty()) row();
  std::string out;
  if (text.find_first_of(",\"\n\r") != std::string_view::npos) {
    out.push_back('"');
    for (const char ch : text) {
      if (ch == '"') out.push_back('"');
      out.push_back(ch);
    }
    out.push_back('"');
  } else {
    out.assign(text);
  }
  rows_.back().push_back(std::move(out));
  return *this;
}

std::string CsvTable::str() const {
  std::string out;
  const auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out.push_back(',');
      out += cells[k];
    }
    out.push_back('\n');
  };
  emit(header_);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].size() != header_.size()) {
      throw Error(ErrorKind::kSizeMismatch,
                  "csv row " + std::to_string(r) + " has " + std::to_string(rows_[r].size()) +
                      " cells, header has " + std::to_string(header_.size()));
    }
    emit(rows_[r]);
  }
  return out;
}

}  // namespace mlconn
