#pragma once

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rca {

/// Error raised while reading a CSV input; carries the 1-based line number.
class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Numbers are printed with 12 significant digits. Infinities print as "inf"/"-inf" and
/// undefined values as "undefined".
[[nodiscard]] std::string format_number(double v);

/// Inverse of format_number. Throws std::invalid_argument on malformed input.
[[nodiscard]] double parse_number(std::string_view text);

[[nodiscard]] std::vector<std::string> split_fields(std::string_view line, char sep);

/// Minimal reader for comma-separated files with a header row. Blank lines and lines
/// starting with '#' are skipped. Fields may be double-quoted.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  [[nodiscard]] const std::vector<std::string>& header() const noexcept { return header_; }
  /// Reads the header; throws if it is missing.
  const std::vector<std::string>& read_header();
  /// Reads the header and returns the column index of each required name in order.
  std::vector<std::size_t> require_header(std::initializer_list<std::string_view> names);
  /// Next data row; returns false at end of input. Rows must match the header width.
  bool next(std::vector<std::string>& row);
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

  [[nodiscard]] double number(const std::vector<std::string>& row, std::size_t column) const;

 private:
  bool next_raw(std::vector<std::string>& row);

  std::istream& in_;
  std::vector<std::string> header_;
  std::size_t line_ = 0;
};

/// Writes `content` to `path` through a temporary sibling file and a rename, so readers
/// never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

[[nodiscard]] std::string read_file(const std::filesystem::path& path);

/// 64-bit FNV-1a of `bytes` as 16 hex digits; used to fingerprint files in manifests.
[[nodiscard]] std::string content_hash(std::string_view bytes);

}  // namespace rca
