#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/SparseCore>

namespace scimap {

struct JournalRecord {
  int id = 0;
  std::string full_title;
  std::string abbrev;
};

/// Journals keyed by contiguous ids 1..n with unique normalized titles.
class JournalRegistry {
 public:
  JournalRegistry() = default;
  /// Throws MalformedRegistry when ids are not 1..n in order or titles collide.
  explicit JournalRegistry(std::vector<JournalRecord> records);

  std::size_t size() const noexcept { return records_.size(); }
  bool contains(int id) const noexcept { return id >= 1 && id <= static_cast<int>(records_.size()); }
  const JournalRecord& at(int id) const;
  const std::vector<JournalRecord>& records() const noexcept { return records_; }
  std::optional<int> find_by_title(const std::string& title) const;

 private:
  std::vector<JournalRecord> records_;
  std::unordered_map<std::string, int> by_title_;
};

struct CitationEntry {
  int citing = 0;
  int cited = 0;
  std::int64_t count = 0;

  friend bool operator==(const CitationEntry&, const CitationEntry&) = default;
};

struct MatrixStats {
  std::size_t n = 0;
  std::size_t nonzero_count = 0;
  std::int64_t grand_total = 0;
  double fill_rate = 0.0;
  double mean_nonzero = 0.0;
};

/// Aggregated journal-journal citation counts, citing (row) -> cited (column).
/// Entries are kept sorted by (citing, cited); the object is immutable.
class CitationMatrix {
 public:
  /// Validates ids, counts and duplicates; entries may arrive in any order.
  CitationMatrix(JournalRegistry registry, std::vector<CitationEntry> entries);

  std::size_t n() const noexcept { return registry_.size(); }
  const JournalRegistry& registry() const noexcept { return registry_; }
  const std::vector<CitationEntry>& entries() const noexcept { return entries_; }

  /// Row-major sparse view with 0-based indices (journal id - 1).
  Eigen::SparseMatrix<double, Eigen::RowMajor> to_sparse() const;

 private:
  JournalRegistry registry_;
  std::vector<CitationEntry> entries_;
};

JournalRegistry read_journals(std::istream& in);
CitationMatrix read_citation_matrix(JournalRegistry registry, std::istream& triplets);

CitationMatrix load_citation_matrix(const std::filesystem::path& journals_path,
                                    const std::filesystem::path& triplets_path);

void write_journals(std::ostream& out, const JournalRegistry& registry);
void write_triplets(std::ostream& out, const CitationMatrix& m);
void save_citation_matrix(const CitationMatrix& m, const std::filesystem::path& journals_path,
                          const std::filesystem::path& triplets_path);

MatrixStats matrix_stats(const CitationMatrix& m);

}  // namespace scimap
