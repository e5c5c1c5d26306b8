#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "scimap/citation_matrix.hpp"
#include "scimap/similarity.hpp"

// Synthetic stand-ins for the proprietary journal data: citation matrices
// with planted journal groups, planted-partition graphs, and document sets.

namespace scimap {

struct PlantedMatrixSpec {
  int journals = 9000;
  int blocks = 40;
  /// Chance that a journal in the same group cites a given journal.
  double p_in = 0.375;
  /// Chance for a journal in the next group (cyclically) to cite it.
  double p_adjacent = 0.02;
  /// Chance for any other journal to cite it.
  double p_out = 0.001;
  /// Mean of the geometric part of a nonzero count (count = 1 + extra).
  double mean_extra = 4.0;
  /// Self-citation count = 1 + geometric with this mean; 0 disables.
  double self_mean = 10.0;
  std::uint64_t seed = 2009;
};

struct PlantedMatrix {
  CitationMatrix matrix;
  /// Planted group per journal (index id - 1), groups numbered from 0.
  std::vector<int> block;
};

/// Journals are assigned to groups in contiguous id ranges.
PlantedMatrix planted_citation_matrix(const PlantedMatrixSpec& spec);

std::string synthetic_title(int id);

/// Unit-weight planted partition: `blocks` groups of `block_size` nodes,
/// each intra pair linked with p_in, each inter pair with p_out.
SimilarityGraph planted_partition_graph(int blocks, int block_size, double p_in, double p_out, std::uint64_t seed);

/// Publication counts for a random subset of titles (n >= 1 each), plus
/// `unknown` titles outside the registry.
std::map<std::string, std::int64_t> synthetic_document_set(const JournalRegistry& registry, int journals,
                                                           int unknown, std::uint64_t seed);

}  // namespace scimap
