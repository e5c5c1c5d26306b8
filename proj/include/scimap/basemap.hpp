#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scimap/citation_matrix.hpp"
#include "scimap/clustering.hpp"
#include "scimap/layout.hpp"

namespace scimap {

struct BasemapRow {
  int id = 0;
  std::string full_title;
  std::string normalized_title;
  double x = 0.0;
  double y = 0.0;
  /// One community id per resolution, parallel to Basemap::gammas().
  std::vector<int> clusters;
  double weight = 1.0;

  friend bool operator==(const BasemapRow&, const BasemapRow&) = default;
};

/// Persisted journal map: coordinates plus clusterings at one or more
/// resolutions, keyed by normalized title for overlay matching.
class Basemap {
 public:
  Basemap() = default;
  Basemap(std::vector<double> gammas, std::vector<BasemapRow> rows, std::map<std::string, std::string> provenance = {});

  const std::vector<double>& gammas() const noexcept { return gammas_; }
  const std::vector<BasemapRow>& rows() const noexcept { return rows_; }
  const std::map<std::string, std::string>& provenance() const noexcept { return provenance_; }
  void set_provenance(std::string key, std::string value) { provenance_[std::move(key)] = std::move(value); }

  /// Column index of gamma, matched on its two-decimal key.
  std::optional<std::size_t> gamma_index(double gamma) const;
  std::size_t require_gamma(double gamma) const;
  const BasemapRow* find_title(const std::string& normalized_title) const;
  const BasemapRow* find_id(int id) const;

  friend bool operator==(const Basemap&, const Basemap&) = default;

 private:
  std::vector<double> gammas_;
  std::vector<BasemapRow> rows_;
  std::map<std::string, std::string> provenance_;
  std::map<std::string, std::size_t> by_title_;
  std::map<int, std::size_t> by_id_;
};

Basemap build_basemap(const SimilarityGraph& g, const Layout& layout, const std::vector<Clustering>& clusterings,
                      const JournalRegistry& registry);

void write_basemap(std::ostream& out, const Basemap& b);
Basemap read_basemap(std::istream& in);

/// Writes the CSV plus a `<path>.meta.json` sidecar holding provenance.
void save_basemap(const Basemap& b, const std::filesystem::path& path);
/// Reads the CSV and, when present, its provenance sidecar.
Basemap load_basemap(const std::filesystem::path& path);

std::filesystem::path provenance_sidecar(const std::filesystem::path& path);

}  // namespace scimap
