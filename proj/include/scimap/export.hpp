#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "scimap/basemap.hpp"
#include "scimap/clustering.hpp"
#include "scimap/layout.hpp"
#include "scimap/overlay.hpp"

namespace scimap {

// All writers emit LF line endings, `.` decimals, 6-decimal coordinates and
// edge weights, 5-decimal node weights. Identical input gives identical bytes.

/// Journal titles for the graph's nodes, or the ids themselves without a registry.
std::vector<std::string> journal_labels(const SimilarityGraph& g, const JournalRegistry* registry);

// ---- Pajek ---------------------------------------------------------------

struct PajekGraph {
  std::vector<std::string> labels;
  /// Present when every vertex line carries coordinates.
  std::optional<Coordinates> coords;
  std::vector<WeightedEdge> edges;
};

void write_pajek(std::ostream& out, const SimilarityGraph& g, const Layout* layout,
                 std::span<const std::string> labels);
void write_pajek(const SimilarityGraph& g, const Layout* layout, std::span<const std::string> labels,
                 const std::filesystem::path& path);
PajekGraph read_pajek(std::istream& in);

// ---- VOSviewer map -------------------------------------------------------

struct VosMapRow {
  int id = 0;
  std::string label;
  double x = 0.0;
  double y = 0.0;
  int cluster = 0;
  double weight = 1.0;

  friend bool operator==(const VosMapRow&, const VosMapRow&) = default;
};

std::vector<VosMapRow> vos_rows(const Basemap& basemap, double gamma);
std::vector<VosMapRow> vos_rows(const OverlaySet& overlay);

/// Tab-separated `id label x y cluster weight`. Labels with tabs or line
/// breaks are rejected with InvalidLabel.
void write_vos_map(std::ostream& out, std::span<const VosMapRow> rows);
void write_vos_map(std::span<const VosMapRow> rows, const std::filesystem::path& path);
std::vector<VosMapRow> read_vos_map(std::istream& in);

// ---- GEXF ----------------------------------------------------------------

/// GEXF 1.2: node positions in viz:position, the community as a declared
/// integer node attribute, weighted undirected edges.
void write_gexf(std::ostream& out, const SimilarityGraph& g, const Layout& layout, const Clustering& clustering,
                std::span<const std::string> labels);
void write_gexf(const SimilarityGraph& g, const Layout& layout, const Clustering& clustering,
                std::span<const std::string> labels, const std::filesystem::path& path);

std::string xml_escape(std::string_view s);

// ---- viewer bundle -------------------------------------------------------

struct BundleNode {
  int id = 0;
  std::string label;
  double x = 0.0;
  double y = 0.0;
  std::map<std::string, int> clusters;  // gamma key -> community
  double base_weight = 1.0;

  friend bool operator==(const BundleNode&, const BundleNode&) = default;
};

struct BundleOverlayRow {
  std::int64_t n_publ = 0;
  double weight = 0.0;

  friend bool operator==(const BundleOverlayRow&, const BundleOverlayRow&) = default;
};

struct BundleOverlay {
  std::string name;
  std::string gamma;
  std::map<int, BundleOverlayRow> rows;

  friend bool operator==(const BundleOverlay&, const BundleOverlay&) = default;
};

struct ViewerBundle {
  static constexpr int kSchemaVersion = 1;

  int schema_version = kSchemaVersion;
  std::vector<std::string> gammas;  // basemap column order
  std::vector<BundleNode> nodes;
  std::vector<BundleOverlay> overlays;
  std::map<std::string, std::string> meta;

  friend bool operator==(const ViewerBundle&, const ViewerBundle&) = default;
};

/// Throws OverlayBasemapMismatch if an overlay names a journal the basemap lacks.
ViewerBundle make_bundle(const Basemap& basemap, const std::vector<OverlaySet>& overlays);

nlohmann::json bundle_to_json(const ViewerBundle& bundle);
/// Validates the schema (MalformedFile naming the offending field).
ViewerBundle bundle_from_json(const nlohmann::json& doc);

void write_bundle(std::ostream& out, const ViewerBundle& bundle);
void write_bundle(const Basemap& basemap, const std::vector<OverlaySet>& overlays, const std::filesystem::path& path);
ViewerBundle read_bundle(std::istream& in);

}  // namespace scimap
