#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/SparseCore>

#include "scimap/citation_matrix.hpp"

namespace scimap {

/// cited compares column profiles (how a journal is cited); citing compares
/// row profiles (how it cites).
enum class Direction { cited, citing };

std::string_view to_string(Direction d) noexcept;
std::optional<Direction> parse_direction(std::string_view s) noexcept;

/// Undirected edge between 0-based node indices, `u < v`.
struct WeightedEdge {
  int u = 0;
  int v = 0;
  double weight = 0.0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Thresholded cosine graph. Nodes carry journal ids (strictly ascending);
/// edges are sorted by (u, v) and every weight lies in (threshold, 1].
class SimilarityGraph {
 public:
  SimilarityGraph() = default;
  SimilarityGraph(std::vector<int> node_ids, std::vector<WeightedEdge> edges, double threshold,
                  Direction direction);

  std::size_t node_count() const noexcept { return node_ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<int>& node_ids() const noexcept { return node_ids_; }
  const std::vector<WeightedEdge>& edges() const noexcept { return edges_; }
  double threshold() const noexcept { return threshold_; }
  Direction direction() const noexcept { return direction_; }

  std::optional<int> index_of(int journal_id) const;

  /// Symmetric weighted adjacency, zero diagonal.
  Eigen::SparseMatrix<double> adjacency() const;

 private:
  std::vector<int> node_ids_;
  std::vector<WeightedEdge> edges_;
  double threshold_ = 0.0;
  Direction direction_ = Direction::cited;
};

/// All-pairs cosine between journal profiles, keeping pairs with cosine > tau.
/// Work is organized over an inverted index on the shared dimension; the dot
/// product for every pair is accumulated in ascending dimension order, so
/// results do not depend on thread scheduling.
SimilarityGraph cosine_normalize(const CitationMatrix& m, Direction dir, double tau = 0.0);

SimilarityGraph threshold_graph(const SimilarityGraph& g, double tau);

}  // namespace scimap
