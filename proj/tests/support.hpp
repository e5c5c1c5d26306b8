#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "scimap/citation_matrix.hpp"
#include "scimap/layout.hpp"
#include "scimap/synthetic.hpp"

namespace support {

namespace fs = std::filesystem;

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            fmt::format("scimap-test-{}-{}", static_cast<long>(::getpid()), counter.fetch_add(1));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline scimap::JournalRegistry registry_of(int n) {
  std::vector<scimap::JournalRecord> records;
  for (int id = 1; id <= n; ++id) records.push_back({id, scimap::synthetic_title(id), fmt::format("J {}", id)});
  return scimap::JournalRegistry(std::move(records));
}

// n x n counts, each cell nonzero with the given density.
inline scimap::CitationMatrix random_matrix(scimap::SeededUniform& rng, int n, double density) {
  std::vector<scimap::CitationEntry> entries;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (rng.next() < density) entries.push_back({i, j, 1 + static_cast<std::int64_t>(rng.below(20))});
    }
  }
  return scimap::CitationMatrix(registry_of(n), std::move(entries));
}

inline scimap::Coordinates random_points(scimap::SeededUniform& rng, int n, double scale = 1.0) {
  scimap::Coordinates x(n, 2);
  for (int i = 0; i < n; ++i) {
    x(i, 0) = scale * (2.0 * rng.next() - 1.0);
    x(i, 1) = scale * (2.0 * rng.next() - 1.0);
  }
  return x;
}

inline Eigen::MatrixXd euclidean(const scimap::Coordinates& x) {
  const auto n = x.rows();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) d(i, j) = (x.row(i) - x.row(j)).norm();
  }
  return d;
}

inline std::vector<int> iota_ids(int n) {
  std::vector<int> ids(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i + 1;
  return ids;
}

}  // namespace support
