#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scimap {

/// Canonical journal-title key shared by the registry, the basemap and the
/// WoS tally: ASCII uppercase, internal whitespace collapsed to one space,
/// leading/trailing whitespace and trailing periods removed.
std::string normalize_title(std::string_view title);

/// Splits one CSV record. Fields may be double-quoted; `""` inside quotes is
/// a literal quote. Returns nullopt on an unterminated quote.
std::optional<std::vector<std::string>> split_csv_line(std::string_view line);

/// Quotes a CSV field only when it contains a comma, quote or newline.
std::string csv_field(std::string_view value);

/// Line reader that strips a UTF-8 BOM on the first line and a trailing CR.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}
  bool next(std::string& line);
  std::size_t line_number() const noexcept { return line_number_; }

 private:
  std::istream& in_;
  std::size_t line_number_ = 0;
};

std::optional<std::int64_t> parse_int(std::string_view s);
std::optional<double> parse_double(std::string_view s);

/// Fixed-point formatting with `-0` folded to `0`.
std::string format_fixed(double value, int decimals);

/// Shortest representation that round-trips to the same double.
std::string format_exact(double value);

/// Resolution key: at most two decimals, trailing zeros dropped (1, 1.5, 0.25).
std::string gamma_key(double gamma);

std::string_view trim(std::string_view s);

}  // namespace scimap
