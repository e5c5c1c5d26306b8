#include "scimap/clustering.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include <fmt/format.h>

#include "scimap/error.hpp"
#include "scimap/graph.hpp"
#include "scimap/layout.hpp"

namespace scimap {

std::vector<int> canonical_labels(std::span<const int> labels) {
  std::unordered_map<int, int> remap;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = remap.emplace(labels[i], static_cast<int>(remap.size()) + 1);
    out[i] = it->second;
  }
  return out;
}

double modularity(const SimilarityGraph& g, std::span<const int> assignment, double gamma) {
  const std::size_t n = g.node_count();
  if (assignment.size() != n) {
    throw Error(ErrorCode::UnassignedNode,
                fmt::format("assignment covers {} nodes but the graph has {}", assignment.size(), n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (assignment[i] < 1) {
      throw Error(ErrorCode::UnassignedNode, fmt::format("node {} has no community", g.node_ids()[i]));
    }
  }
  if (g.edge_count() == 0) throw Error(ErrorCode::EmptyEdgeSet, "modularity is undefined without edges");

  const auto labels = canonical_labels(assignment);
  const auto communities = static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end()));
  std::vector<double> degree(n, 0.0);
  std::vector<double> internal(communities + 1, 0.0);
  double two_m = 0.0;
  for (const auto& e : g.edges()) {
    degree[static_cast<std::size_t>(e.u)] += e.weight;
    degree[static_cast<std::size_t>(e.v)] += e.weight;
    two_m += 2.0 * e.weight;
    if (labels[static_cast<std::size_t>(e.u)] == labels[static_cast<std::size_t>(e.v)]) {
      internal[static_cast<std::size_t>(labels[static_cast<std::size_t>(e.u)])] += 2.0 * e.weight;
    }
  }
  std::vector<double> total(communities + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) total[static_cast<std::size_t>(labels[i])] += degree[i];
  double q = 0.0;
  for (std::size_t c = 1; c <= communities; ++c) {
    q += internal[c] - gamma * total[c] * total[c] / two_m;
  }
  return q / two_m;
}

namespace {

// Weighted graph at one aggregation level. `loops[i]` is A_ii, which for an
// aggregated node holds every ordered internal pair of its members.
struct LevelGraph {
  Csr adj;
  std::vector<double> loops;
  std::vector<double> degree;

  std::size_t size() const { return loops.size(); }
};

LevelGraph base_level(const SimilarityGraph& g) {
  LevelGraph lg;
  lg.adj = to_csr(g);
  const auto n = g.node_count();
  lg.loops.assign(n, 0.0);
  lg.degree.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto k = lg.adj.offsets[i]; k < lg.adj.offsets[i + 1]; ++k) lg.degree[i] += lg.adj.weights[k];
  }
  return lg;
}

std::vector<int> seeded_permutation(std::size_t n, SeededUniform& rng) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

// Local moving phase; returns the number of moves made.
std::size_t move_nodes(const LevelGraph& lg, double gamma, double two_m, SeededUniform& rng,
                       std::vector<int>& community) {
  const std::size_t n = lg.size();
  community.resize(n);
  std::iota(community.begin(), community.end(), 0);
  std::vector<double> total(lg.degree);
  const auto order = seeded_permutation(n, rng);

  std::vector<double> link(n, 0.0);
  std::vector<int> touched;
  std::size_t moves = 0;
  // Every move strictly raises Q, so passes end; the cap only guards
  // against floating-point ping-pong between exactly tied states.
  constexpr int kMaxPasses = 1000;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    std::size_t pass_moves = 0;
    for (int node : order) {
      const auto i = static_cast<std::size_t>(node);
      const double ki = lg.degree[i];
      const int current = community[i];
      for (auto k = lg.adj.offsets[i]; k < lg.adj.offsets[i + 1]; ++k) {
        const int c = community[static_cast<std::size_t>(lg.adj.neighbors[k])];
        if (link[static_cast<std::size_t>(c)] == 0.0) touched.push_back(c);
        link[static_cast<std::size_t>(c)] += lg.adj.weights[k];
      }
      total[static_cast<std::size_t>(current)] -= ki;
      auto gain = [&](int c) {
        const auto uc = static_cast<std::size_t>(c);
        return link[uc] - gamma * total[uc] * ki / two_m;
      };
      int best = current;
      double best_gain = gain(current);
      std::sort(touched.begin(), touched.end());
      for (int c : touched) {
        if (c == current) continue;
        const double gc = gain(c);
        if (gc > best_gain) {
          best = c;
          best_gain = gc;
        }
      }
      total[static_cast<std::size_t>(best)] += ki;
      if (best != current) {
        community[i] = best;
        ++pass_moves;
      }
      for (int c : touched) link[static_cast<std::size_t>(c)] = 0.0;
      touched.clear();
    }
    moves += pass_moves;
    if (pass_moves == 0) break;
  }
  return moves;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<int>& community, int count) {
  const auto c_count = static_cast<std::size_t>(count);
  LevelGraph out;
  out.loops.assign(c_count, 0.0);
  struct Link {
    int from, to;
    double weight;
  };
  std::vector<Link> links;
  for (std::size_t i = 0; i < lg.size(); ++i) {
    const int ci = community[i];
    out.loops[static_cast<std::size_t>(ci)] += lg.loops[i];
    for (auto k = lg.adj.offsets[i]; k < lg.adj.offsets[i + 1]; ++k) {
      const int cj = community[static_cast<std::size_t>(lg.adj.neighbors[k])];
      if (ci == cj) {
        out.loops[static_cast<std::size_t>(ci)] += lg.adj.weights[k];
      } else {
        links.push_back({ci, cj, lg.adj.weights[k]});
      }
    }
  }
  std::stable_sort(links.begin(), links.end(),
                   [](const Link& a, const Link& b) { return a.from != b.from ? a.from < b.from : a.to < b.to; });
  out.adj.offsets.assign(c_count + 1, 0);
  for (std::size_t k = 0; k < links.size();) {
    double w = 0.0;
    std::size_t e = k;
    for (; e < links.size() && links[e].from == links[k].from && links[e].to == links[k].to; ++e) w += links[e].weight;
    out.adj.neighbors.push_back(links[k].to);
    out.adj.weights.push_back(w);
    ++out.adj.offsets[static_cast<std::size_t>(links[k].from) + 1];
    k = e;
  }
  std::partial_sum(out.adj.offsets.begin(), out.adj.offsets.end(), out.adj.offsets.begin());
  out.degree = out.loops;
  for (std::size_t c = 0; c < c_count; ++c) {
    for (auto k = out.adj.offsets[c]; k < out.adj.offsets[c + 1]; ++k) out.degree[c] += out.adj.weights[k];
  }
  return out;
}

}  // namespace

Clustering louvain(const SimilarityGraph& g, double gamma, std::uint64_t seed) {
  if (!(gamma > 0.0)) throw Error(ErrorCode::NonPositiveGamma, fmt::format("gamma {} must be positive", gamma));
  if (g.edge_count() == 0) throw Error(ErrorCode::EmptyEdgeSet, "louvain needs at least one edge");

  double two_m = 0.0;
  for (const auto& e : g.edges()) two_m += 2.0 * e.weight;

  SeededUniform rng(seed);
  LevelGraph level = base_level(g);
  // membership[i]: node i's community at the current level
  std::vector<int> membership(g.node_count());
  std::iota(membership.begin(), membership.end(), 0);

  std::vector<int> community;
  for (;;) {
    if (move_nodes(level, gamma, two_m, rng, community) == 0) break;
    const auto dense = canonical_labels(community);
    const int count = *std::max_element(dense.begin(), dense.end());
    std::vector<int> zero_based(dense.size());
    for (std::size_t c = 0; c < dense.size(); ++c) zero_based[c] = dense[c] - 1;
    for (auto& m : membership) m = zero_based[static_cast<std::size_t>(m)];
    level = aggregate(level, zero_based, count);
  }

  Clustering out;
  out.node_ids = g.node_ids();
  out.assignment = canonical_labels(membership);
  out.gamma = gamma;
  out.seed = seed;
  out.community_count = out.assignment.empty() ? 0 : *std::max_element(out.assignment.begin(), out.assignment.end());
  out.modularity = modularity(g, out.assignment, gamma);
  return out;
}

}  // namespace scimap
