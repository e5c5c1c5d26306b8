#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "scimap/clustering.hpp"
#include "scimap/layout.hpp"
#include "scimap/similarity.hpp"

// On-disk intermediates passed between pipeline stages. Values are written
// in shortest round-trip form so a downstream stage sees exactly the doubles
// the upstream stage computed. Lines starting with '#' hold provenance.

namespace scimap {

using Provenance = std::map<std::string, std::string>;

void write_graph_file(std::ostream& out, const SimilarityGraph& g);
SimilarityGraph read_graph_file(std::istream& in);
void save_graph(const SimilarityGraph& g, const std::filesystem::path& path);
SimilarityGraph load_graph(const std::filesystem::path& path);

void write_layout_file(std::ostream& out, const Layout& layout, const Provenance& extra = {});
Layout read_layout_file(std::istream& in);
void save_layout(const Layout& layout, const std::filesystem::path& path, const Provenance& extra = {});
Layout load_layout(const std::filesystem::path& path);

/// id,cluster_g<gamma>... with per-resolution seed and modularity comments.
void write_clusters_file(std::ostream& out, const std::vector<Clustering>& clusterings);
std::vector<Clustering> read_clusters_file(std::istream& in);
void save_clusters(const std::vector<Clustering>& clusterings, const std::filesystem::path& path);
std::vector<Clustering> load_clusters(const std::filesystem::path& path);

}  // namespace scimap
