#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "scimap/similarity.hpp"

namespace scimap {

/// Compressed adjacency lists; neighbors of each node sorted ascending.
struct Csr {
  std::vector<std::size_t> offsets;  // size n + 1
  std::vector<int> neighbors;
  std::vector<double> weights;

  std::size_t node_count() const noexcept { return offsets.empty() ? 0 : offsets.size() - 1; }
};

Csr to_csr(const SimilarityGraph& g);

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n);
  int find(int x);
  bool unite(int a, int b);
  std::size_t size_of(int x) { return size_[static_cast<std::size_t>(find(x))]; }

 private:
  std::vector<int> parent_;
  std::vector<std::size_t> size_;
};

/// Component label per node, labels numbered 0.. in order of each
/// component's smallest node index.
std::vector<int> connected_components(const SimilarityGraph& g);

struct ComponentResult {
  SimilarityGraph graph;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  double node_fraction = 0.0;
};

/// Induced subgraph on the largest component; equal sizes resolve to the
/// component holding the smallest node id.
ComponentResult largest_component(const SimilarityGraph& g);

/// Pairwise target distances for a layout. Observed pairs (graph edges)
/// carry 1 - cosine; every other off-diagonal pair carries the cap.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  /// Every off-diagonal pair of a symmetric, zero-diagonal matrix is observed.
  static DistanceMatrix from_dense(std::vector<int> node_ids, const Eigen::MatrixXd& d);

  std::size_t size() const noexcept { return node_ids_.size(); }
  const std::vector<int>& node_ids() const noexcept { return node_ids_; }
  double cap() const noexcept { return cap_; }

  double operator()(int i, int j) const;
  bool observed(int i, int j) const;

  /// Writes row i of the full matrix into out (size n).
  void fill_row(int i, std::span<double> out) const;

  /// Observed neighbors of i with their distances.
  std::span<const int> observed_neighbors(int i) const;
  std::span<const double> observed_distances(int i) const;

  Eigen::MatrixXd to_dense() const;

 private:
  friend DistanceMatrix to_distance(const SimilarityGraph& g, double d_max);

  std::vector<int> node_ids_;
  double cap_ = 1.0;
  Csr observed_;
};

DistanceMatrix to_distance(const SimilarityGraph& g, double d_max = 1.0);

}  // namespace scimap
