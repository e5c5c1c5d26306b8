#include "scimap/citation_matrix.hpp"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>

#include "scimap/error.hpp"
#include "scimap/io.hpp"
#include "scimap/text.hpp"

namespace scimap {

JournalRegistry::JournalRegistry(std::vector<JournalRecord> records) : records_(std::move(records)) {
  by_title_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (r.id != static_cast<int>(i) + 1) {
      throw Error(ErrorCode::MalformedRegistry,
                  fmt::format("journal ids must be contiguous from 1; expected {} but found {}", i + 1, r.id));
    }
    std::string key = normalize_title(r.full_title);
    if (key.empty()) {
      throw Error(ErrorCode::MalformedRegistry, fmt::format("journal {} has an empty title", r.id));
    }
    auto [it, inserted] = by_title_.emplace(std::move(key), r.id);
    if (!inserted) {
      throw Error(ErrorCode::MalformedRegistry,
                  fmt::format("journals {} and {} share the normalized title '{}'", it->second, r.id, it->first));
    }
  }
}

const JournalRecord& JournalRegistry::at(int id) const {
  if (!contains(id)) throw Error(ErrorCode::UnknownJournalId, fmt::format("unknown journal id {}", id));
  return records_[static_cast<std::size_t>(id - 1)];
}

std::optional<int> JournalRegistry::find_by_title(const std::string& title) const {
  auto it = by_title_.find(normalize_title(title));
  if (it == by_title_.end()) return std::nullopt;
  return it->second;
}

CitationMatrix::CitationMatrix(JournalRegistry registry, std::vector<CitationEntry> entries)
    : registry_(std::move(registry)), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (!registry_.contains(e.citing) || !registry_.contains(e.cited)) {
      throw Error(ErrorCode::UnknownJournalId,
                  fmt::format("entry ({}, {}) references a journal outside 1..{}", e.citing, e.cited, n()));
    }
    if (e.count <= 0) {
      throw Error(ErrorCode::NonPositiveCount,
                  fmt::format("entry ({}, {}) has count {}", e.citing, e.cited, e.count));
    }
  }
  std::sort(entries_.begin(), entries_.end(), [](const CitationEntry& a, const CitationEntry& b) {
    return a.citing != b.citing ? a.citing < b.citing : a.cited < b.cited;
  });
  auto dup = std::adjacent_find(entries_.begin(), entries_.end(), [](const CitationEntry& a, const CitationEntry& b) {
    return a.citing == b.citing && a.cited == b.cited;
  });
  if (dup != entries_.end()) {
    throw Error(ErrorCode::DuplicateEntry, fmt::format("duplicate entry ({}, {})", dup->citing, dup->cited));
  }
}

Eigen::SparseMatrix<double, Eigen::RowMajor> CitationMatrix::to_sparse() const {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(entries_.size());
  for (const auto& e : entries_) {
    triplets.emplace_back(e.citing - 1, e.cited - 1, static_cast<double>(e.count));
  }
  const auto size = static_cast<Eigen::Index>(n());
  Eigen::SparseMatrix<double, Eigen::RowMajor> out(size, size);
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

namespace {

void expect_header(LineReader& reader, std::string_view expected, std::string_view what) {
  std::string line;
  if (!reader.next(line) || trim(line) != expected) {
    throw Error(ErrorCode::MalformedRow, fmt::format("{}: expected header '{}'", what, expected));
  }
}

}  // namespace

JournalRegistry read_journals(std::istream& in) {
  LineReader reader(in);
  expect_header(reader, "id,full_title,abbrev", "journals");
  std::vector<JournalRecord> records;
  std::string line;
  while (reader.next(line)) {
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (!fields || fields->size() != 3) {
      throw Error(ErrorCode::MalformedRow, fmt::format("journals line {}: expected 3 fields", reader.line_number()));
    }
    auto id = parse_int((*fields)[0]);
    if (!id) {
      throw Error(ErrorCode::MalformedRow, fmt::format("journals line {}: bad id '{}'", reader.line_number(), (*fields)[0]));
    }
    records.push_back({static_cast<int>(*id), (*fields)[1], (*fields)[2]});
  }
  return JournalRegistry(std::move(records));
}

CitationMatrix read_citation_matrix(JournalRegistry registry, std::istream& triplets) {
  LineReader reader(triplets);
  expect_header(reader, "citing_id,cited_id,count", "triplets");
  std::vector<CitationEntry> entries;
  std::string line;
  while (reader.next(line)) {
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (!fields || fields->size() != 3) {
      throw Error(ErrorCode::MalformedRow, fmt::format("triplets line {}: expected 3 fields", reader.line_number()));
    }
    auto citing = parse_int((*fields)[0]);
    auto cited = parse_int((*fields)[1]);
    auto count = parse_int((*fields)[2]);
    if (!citing || !cited || !count) {
      throw Error(ErrorCode::MalformedRow, fmt::format("triplets line {}: unparsable value", reader.line_number()));
    }
    entries.push_back({static_cast<int>(*citing), static_cast<int>(*cited), *count});
  }
  return CitationMatrix(std::move(registry), std::move(entries));
}

CitationMatrix load_citation_matrix(const std::filesystem::path& journals_path,
                                    const std::filesystem::path& triplets_path) {
  auto journals = open_input(journals_path);
  auto triplets = open_input(triplets_path);
  return read_citation_matrix(read_journals(journals), triplets);
}

void write_journals(std::ostream& out, const JournalRegistry& registry) {
  out << "id,full_title,abbrev\n";
  for (const auto& r : registry.records()) {
    out << r.id << ',' << csv_field(r.full_title) << ',' << csv_field(r.abbrev) << '\n';
  }
}

void write_triplets(std::ostream& out, const CitationMatrix& m) {
  out << "citing_id,cited_id,count\n";
  for (const auto& e : m.entries()) out << e.citing << ',' << e.cited << ',' << e.count << '\n';
}

void save_citation_matrix(const CitationMatrix& m, const std::filesystem::path& journals_path,
                          const std::filesystem::path& triplets_path) {
  {
    auto out = open_output(journals_path);
    write_journals(out, m.registry());
    finish_output(out, journals_path);
  }
  auto out = open_output(triplets_path);
  write_triplets(out, m);
  finish_output(out, triplets_path);
}

MatrixStats matrix_stats(const CitationMatrix& m) {
  MatrixStats s;
  s.n = m.n();
  s.nonzero_count = m.entries().size();
  for (const auto& e : m.entries()) s.grand_total += e.count;
  if (s.n > 0) s.fill_rate = static_cast<double>(s.nonzero_count) / (static_cast<double>(s.n) * static_cast<double>(s.n));
  if (s.nonzero_count > 0) s.mean_nonzero = static_cast<double>(s.grand_total) / static_cast<double>(s.nonzero_count);
  return s;
}

}  // namespace scimap
