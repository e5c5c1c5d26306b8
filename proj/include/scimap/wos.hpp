#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace scimap {

/// Publications per journal in a Web of Science tagged export.
struct WosTally {
  /// normalized title -> number of records
  std::map<std::string, std::int64_t> counts;
  std::int64_t record_count = 0;
  std::int64_t records_without_journal = 0;
  std::vector<std::string> warnings;

  std::int64_t matched_total() const;
};

/// Streaming parse of the classic tagged format (PT ... ER records, EF at
/// the end). Only SO carries data; other tags are skipped.
WosTally parse_wos(std::istream& in);
WosTally parse_wos_file(const std::filesystem::path& path);

/// Writes a minimal export with one record per publication, in map order.
void write_wos_export(std::ostream& out, const std::map<std::string, std::int64_t>& counts);

}  // namespace scimap
