#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "scimap/similarity.hpp"

namespace scimap {

struct Clustering {
  std::vector<int> node_ids;
  /// Community per node (parallel to node_ids), dense ids from 1 numbered in
  /// order of each community's first node.
  std::vector<int> assignment;
  double gamma = 1.0;
  std::uint64_t seed = 0;
  double modularity = 0.0;
  int community_count = 0;
};

/// Q = (1/2m) sum_ij [A_ij - gamma k_i k_j / 2m] delta(c_i, c_j) over the
/// cosine-weighted adjacency. Labels must be positive; their values only
/// matter through equality.
double modularity(const SimilarityGraph& g, std::span<const int> assignment, double gamma = 1.0);

/// Multilevel local moving with graph aggregation. Each level visits nodes in
/// a seeded permutation; a node moves only for a strictly larger gain than
/// staying, and equal gains go to the smallest community id. Deterministic in
/// (g, gamma, seed).
Clustering louvain(const SimilarityGraph& g, double gamma = 1.0, std::uint64_t seed = 1);

/// Relabels arbitrary labels to dense ids from 1 in order of first occurrence.
std::vector<int> canonical_labels(std::span<const int> labels);

}  // namespace scimap
