#pragma once

// CSV output: UTF-8, LF line endings, '.' decimal separator, floats with 17
// significant digits. Empty cells mark values that do not apply.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace twophase::cli {

using CsvCell = std::variant<std::monostate, double, std::int64_t, std::string>;

std::string format_double(double v);
std::string format_cell(const CsvCell& cell);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  void row(const std::vector<CsvCell>& cells);
  void flush() { out_.flush(); }

 private:
  void write_line(const std::vector<std::string>& fields);

  std::ofstream out_;
  std::size_t columns_;
};

template <typename T>
CsvCell optional_cell(const std::optional<T>& v) {
  if (!v) return std::monostate{};
  if constexpr (std::is_floating_point_v<T>) {
    return static_cast<double>(*v);
  } else {
    return static_cast<std::int64_t>(*v);
  }
}

}  // namespace twophase::cli
