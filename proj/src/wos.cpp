#include "scimap/wos.hpp"

#include <istream>
#include <optional>
#include <ostream>

#include <fmt/format.h>

#include "scimap/error.hpp"
#include "scimap/io.hpp"
#include "scimap/text.hpp"

namespace scimap {

std::int64_t WosTally::matched_total() const {
  std::int64_t total = 0;
  for (const auto& [title, n] : counts) total += n;
  return total;
}

WosTally parse_wos(std::istream& in) {
  WosTally tally;
  LineReader reader(in);
  std::string line;

  bool in_record = false;
  std::size_t record_start = 0;
  std::optional<std::string> source;
  bool source_seen = false;
  // the tag that continuation lines extend
  std::string last_tag;
  bool ended = false;

  auto close_record = [&] {
    ++tally.record_count;
    if (source && !normalize_title(*source).empty()) {
      ++tally.counts[normalize_title(*source)];
    } else {
      ++tally.records_without_journal;
    }
    in_record = false;
    source.reset();
    source_seen = false;
    last_tag.clear();
  };

  while (reader.next(line)) {
    if (trim(line).empty()) continue;
    if (line.starts_with("   ")) {
      if (in_record && last_tag == "SO" && source) {
        *source += ' ';
        *source += trim(line);
      }
      continue;
    }
    const std::string tag = line.substr(0, std::min<std::size_t>(2, line.size()));
    const std::string_view value = line.size() > 3 ? std::string_view(line).substr(3) : std::string_view();
    if (tag == "EF") {
      if (in_record) {
        throw Error(ErrorCode::UnterminatedRecord,
                    fmt::format("record starting at line {} has no ER before EF at line {}", record_start,
                                reader.line_number()));
      }
      ended = true;
      break;
    }
    if (tag == "PT") {
      if (in_record) {
        throw Error(ErrorCode::UnterminatedRecord,
                    fmt::format("record starting at line {} has no ER before the next PT at line {}", record_start,
                                reader.line_number()));
      }
      in_record = true;
      record_start = reader.line_number();
      last_tag = tag;
      continue;
    }
    if (!in_record) continue;  // FN, VR and anything else between records
    if (tag == "ER") {
      close_record();
      continue;
    }
    last_tag = tag;
    if (tag == "SO") {
      if (source_seen) {
        tally.warnings.push_back(
            fmt::format("line {}: second SO in record starting at line {} ignored", reader.line_number(), record_start));
        last_tag = "SO-dup";
        continue;
      }
      source_seen = true;
      source = std::string(trim(value));
    }
  }
  if (in_record) {
    throw Error(ErrorCode::UnterminatedRecord,
                fmt::format("record starting at line {} is not closed by ER (end of file at line {})", record_start,
                            reader.line_number()));
  }
  if (!ended) {
    throw Error(ErrorCode::MissingEndOfFile, fmt::format("no EF line before end of file at line {}", reader.line_number()));
  }
  return tally;
}

WosTally parse_wos_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_wos(in);
}

void write_wos_export(std::ostream& out, const std::map<std::string, std::int64_t>& counts) {
  out << "FN Clarivate Analytics Web of Science\nVR 1.0\n";
  for (const auto& [title, n] : counts) {
    for (std::int64_t k = 0; k < n; ++k) out << "PT J\nSO " << title << "\nER\n\n";
  }
  out << "EF\n";
}

}  // namespace scimap
