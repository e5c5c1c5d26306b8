#include "scimap/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "scimap/error.hpp"
#include "scimap/layout.hpp"

namespace scimap {

namespace {

// Number of failures before the first success, p in (0, 1].
std::int64_t geometric_gap(SeededUniform& rng, double p) {
  if (p >= 1.0) return 0;
  const double u = 1.0 - rng.next();  // (0, 1]
  return static_cast<std::int64_t>(std::floor(std::log(u) / std::log1p(-p)));
}

std::int64_t geometric_count(SeededUniform& rng, double mean) {
  if (mean <= 0.0) return 0;
  return geometric_gap(rng, 1.0 / (1.0 + mean));
}

// Calls fn(k) for each k in [begin, end) kept independently with probability p.
template <typename Fn>
void bernoulli_scan(SeededUniform& rng, int begin, int end, double p, Fn&& fn) {
  if (p <= 0.0) return;
  std::int64_t k = begin + geometric_gap(rng, p);
  while (k < end) {
    fn(static_cast<int>(k));
    k += 1 + geometric_gap(rng, p);
  }
}

}  // namespace

std::string synthetic_title(int id) {
  static constexpr const char* kFields[] = {"ASTROPHYSICS", "ECOLOGY",   "ECONOMICS",   "GENETICS",
                                            "LINGUISTICS",  "NEUROLOGY", "OPTICS",      "SOCIOLOGY",
                                            "TOPOLOGY",     "VIROLOGY",  "METALLURGY",  "PSYCHOLOGY"};
  return fmt::format("Journal of {} {:05d}", kFields[static_cast<std::size_t>(id) % std::size(kFields)], id);
}

PlantedMatrix planted_citation_matrix(const PlantedMatrixSpec& spec) {
  if (spec.journals < 1 || spec.blocks < 1 || spec.blocks > spec.journals) {
    throw Error(ErrorCode::InvalidArgument, "need 1 <= blocks <= journals");
  }
  const int n = spec.journals;
  std::vector<JournalRecord> records;
  records.reserve(static_cast<std::size_t>(n));
  for (int id = 1; id <= n; ++id) records.push_back({id, synthetic_title(id), fmt::format("J SYN {:05d}", id)});

  PlantedMatrix out{CitationMatrix(JournalRegistry(std::move(records)), {}), std::vector<int>(static_cast<std::size_t>(n))};
  auto first_of = [&](int b) { return static_cast<int>(static_cast<std::int64_t>(b) * n / spec.blocks); };
  for (int b = 0; b < spec.blocks; ++b) {
    for (int j = first_of(b); j < first_of(b + 1); ++j) out.block[static_cast<std::size_t>(j)] = b;
  }

  SeededUniform rng(spec.seed);
  std::vector<CitationEntry> entries;
  // column by column: who cites journal j
  for (int j = 0; j < n; ++j) {
    const int b = out.block[static_cast<std::size_t>(j)];
    const int next = (b + 1) % spec.blocks;
    auto cite = [&](int i) {
      if (i == j) return;
      entries.push_back({i + 1, j + 1, 1 + geometric_count(rng, spec.mean_extra)});
    };
    bernoulli_scan(rng, first_of(b), first_of(b + 1), spec.p_in, cite);
    if (next != b) bernoulli_scan(rng, first_of(next), first_of(next + 1), spec.p_adjacent, cite);
    // everything else, skipping the two groups above
    bernoulli_scan(rng, 0, n, spec.p_out, [&](int i) {
      const int bi = out.block[static_cast<std::size_t>(i)];
      if (bi != b && bi != next) cite(i);
    });
    if (spec.self_mean > 0.0) entries.push_back({j + 1, j + 1, 1 + geometric_count(rng, spec.self_mean)});
  }
  JournalRegistry registry = out.matrix.registry();
  out.matrix = CitationMatrix(std::move(registry), std::move(entries));
  return out;
}

SimilarityGraph planted_partition_graph(int blocks, int block_size, double p_in, double p_out, std::uint64_t seed) {
  const int n = blocks * block_size;
  SeededUniform rng(seed);
  std::vector<WeightedEdge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double p = (u / block_size == v / block_size) ? p_in : p_out;
      if (rng.next() < p) edges.push_back({u, v, 1.0});
    }
  }
  std::vector<int> ids(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i + 1;
  return SimilarityGraph(std::move(ids), std::move(edges), 0.0, Direction::cited);
}

std::map<std::string, std::int64_t> synthetic_document_set(const JournalRegistry& registry, int journals, int unknown,
                                                           std::uint64_t seed) {
  SeededUniform rng(seed);
  std::map<std::string, std::int64_t> counts;
  const auto n = registry.size();
  for (int k = 0; k < journals && n > 0; ++k) {
    const int id = static_cast<int>(rng.below(n)) + 1;
    counts[registry.at(id).full_title] += 1 + geometric_count(rng, 3.0);
  }
  for (int k = 0; k < unknown; ++k) counts[fmt::format("Proceedings of Nowhere {}", k + 1)] += 1 + geometric_count(rng, 1.0);
  return counts;
}

}  // namespace scimap
