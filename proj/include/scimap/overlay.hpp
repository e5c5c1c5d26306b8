#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "scimap/basemap.hpp"
#include "scimap/wos.hpp"

namespace scimap {

/// Node size for n publications: log10(n + 1), so a single publication stays visible.
double log_weight(std::int64_t n);

struct OverlayRow {
  int id = 0;
  std::string full_title;
  double x = 0.0;
  double y = 0.0;
  int cluster = 0;
  std::int64_t n_publ = 0;
  double weight = 0.0;
};

/// A document set projected onto a basemap. Coordinates and clusters are
/// copied from the basemap; weights are never rescaled.
struct OverlaySet {
  std::string name;
  double gamma = 1.0;
  std::vector<OverlayRow> rows;  // basemap row order
  std::vector<std::pair<std::string, std::int64_t>> unmatched;  // sorted by title

  std::int64_t matched_total() const;
  std::int64_t unmatched_total() const;
};

OverlaySet build_overlay(const WosTally& tally, const Basemap& basemap, double gamma, std::string name = "overlay");

struct OverlayOutputs {
  std::filesystem::path map_file;
  std::filesystem::path table_file;
  std::vector<std::string> warnings;
};

/// Writes the VOS map file (`map_name`) and overlay_table.csv into dir.
/// An empty overlay still gets header-only files and an EmptyOverlay warning.
OverlayOutputs write_overlay_outputs(const OverlaySet& overlay, const std::filesystem::path& dir,
                                     const std::string& map_name = "overlay_map.txt");

void write_overlay_table(std::ostream& out, const OverlaySet& overlay);

/// Re-joins an overlay_table.csv with its basemap (by title) so it can be
/// bundled; npubl is authoritative, weight is taken as written.
OverlaySet read_overlay_table(std::istream& in, const Basemap& basemap, double gamma, std::string name);

}  // namespace scimap
