#include "scimap/similarity.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "scimap/error.hpp"
#include "scimap/parallel.hpp"

namespace scimap {

std::string_view to_string(Direction d) noexcept {
  return d == Direction::cited ? "cited" : "citing";
}

std::optional<Direction> parse_direction(std::string_view s) noexcept {
  if (s == "cited") return Direction::cited;
  if (s == "citing") return Direction::citing;
  return std::nullopt;
}

SimilarityGraph::SimilarityGraph(std::vector<int> node_ids, std::vector<WeightedEdge> edges, double threshold,
                                 Direction direction)
    : node_ids_(std::move(node_ids)), edges_(std::move(edges)), threshold_(threshold), direction_(direction) {
  if (!(threshold_ >= 0.0 && threshold_ < 1.0)) {
    throw Error(ErrorCode::InvalidThreshold, fmt::format("threshold {} outside [0, 1)", threshold_));
  }
  if (std::adjacent_find(node_ids_.begin(), node_ids_.end(), std::greater_equal<>()) != node_ids_.end()) {
    throw Error(ErrorCode::InvalidArgument, "node ids must be strictly ascending");
  }
  const int n = static_cast<int>(node_ids_.size());
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto& e = edges_[k];
    if (e.u < 0 || e.v >= n || e.u >= e.v) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("edge ({}, {}) is not an ordered pair of nodes", e.u, e.v));
    }
    if (!(e.weight > threshold_ && e.weight <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("edge ({}, {}) weight {} outside ({}, 1]", e.u, e.v, e.weight, threshold_));
    }
    if (k > 0) {
      const auto& p = edges_[k - 1];
      if (p.u > e.u || (p.u == e.u && p.v >= e.v)) {
        throw Error(ErrorCode::InvalidArgument, "edges must be sorted by (u, v) without duplicates");
      }
    }
  }
}

std::optional<int> SimilarityGraph::index_of(int journal_id) const {
  auto it = std::lower_bound(node_ids_.begin(), node_ids_.end(), journal_id);
  if (it == node_ids_.end() || *it != journal_id) return std::nullopt;
  return static_cast<int>(it - node_ids_.begin());
}

Eigen::SparseMatrix<double> SimilarityGraph::adjacency() const {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(2 * edges_.size());
  for (const auto& e : edges_) {
    t.emplace_back(e.u, e.v, e.weight);
    t.emplace_back(e.v, e.u, e.weight);
  }
  const auto n = static_cast<Eigen::Index>(node_ids_.size());
  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

namespace {

// Profiles are the outer vectors of `profiles`; `postings` is the same matrix
// in the other storage order so its outer vectors are the shared dimensions.
template <typename ProfileMatrix, typename PostingMatrix>
std::vector<WeightedEdge> all_pairs_cosine(const ProfileMatrix& profiles, const PostingMatrix& postings, double tau) {
  const auto n = static_cast<std::size_t>(profiles.outerSize());

  // squared norms; sqrt of the product keeps identical profiles at exactly 1
  std::vector<double> norm2(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (typename ProfileMatrix::InnerIterator it(profiles, static_cast<Eigen::Index>(i)); it; ++it) {
      s += it.value() * it.value();
    }
    norm2[i] = s;
  }

  struct Scratch {
    std::vector<double> acc;
    std::vector<int> touched;
  };
  std::vector<std::vector<WeightedEdge>> rows(n);
  const double* post_values = postings.valuePtr();
  const auto* post_index = postings.innerIndexPtr();
  const auto* post_outer = postings.outerIndexPtr();

  parallel_for_with(
      n, [n] { return Scratch{std::vector<double>(n, 0.0), {}}; },
      [&](std::size_t i, Scratch& s) {
        if (norm2[i] == 0.0) return;
        const int ii = static_cast<int>(i);
        for (typename ProfileMatrix::InnerIterator it(profiles, ii); it; ++it) {
          const auto k = it.index();
          const double vik = it.value();
          const auto* begin = post_index + post_outer[k];
          const auto* end = post_index + post_outer[k + 1];
          // postings are sorted by profile index: only pairs j > i
          for (const auto* p = std::upper_bound(begin, end, ii); p != end; ++p) {
            const auto j = static_cast<std::size_t>(*p);
            if (s.acc[j] == 0.0) s.touched.push_back(static_cast<int>(j));
            s.acc[j] += vik * post_values[p - post_index];
          }
        }
        std::sort(s.touched.begin(), s.touched.end());
        auto& out = rows[i];
        for (int j : s.touched) {
          const double c = std::min(1.0, s.acc[static_cast<std::size_t>(j)] / std::sqrt(norm2[i] * norm2[static_cast<std::size_t>(j)]));
          if (c > tau) out.push_back({ii, j, c});
          s.acc[static_cast<std::size_t>(j)] = 0.0;
        }
        s.touched.clear();
      });

  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  std::vector<WeightedEdge> edges;
  edges.reserve(total);
  for (auto& r : rows) {
    edges.insert(edges.end(), r.begin(), r.end());
    std::vector<WeightedEdge>().swap(r);
  }
  return edges;
}

}  // namespace

SimilarityGraph cosine_normalize(const CitationMatrix& m, Direction dir, double tau) {
  if (m.n() == 0) throw Error(ErrorCode::EmptyMatrix, "citation matrix has no journals");
  if (!(tau >= 0.0 && tau < 1.0)) {
    throw Error(ErrorCode::InvalidThreshold, fmt::format("threshold {} outside [0, 1)", tau));
  }
  const Eigen::SparseMatrix<double, Eigen::RowMajor> rows = m.to_sparse();
  const Eigen::SparseMatrix<double, Eigen::ColMajor> cols = rows;

  std::vector<WeightedEdge> edges =
      dir == Direction::citing ? all_pairs_cosine(rows, cols, tau) : all_pairs_cosine(cols, rows, tau);

  std::vector<int> ids(m.n());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i) + 1;
  return SimilarityGraph(std::move(ids), std::move(edges), tau, dir);
}

SimilarityGraph threshold_graph(const SimilarityGraph& g, double tau) {
  if (!(tau >= 0.0 && tau < 1.0)) {
    throw Error(ErrorCode::InvalidThreshold, fmt::format("threshold {} outside [0, 1)", tau));
  }
  if (tau < g.threshold()) {
    throw Error(ErrorCode::ThresholdBelowCurrent,
                fmt::format("cannot lower threshold from {} to {}", g.threshold(), tau));
  }
  std::vector<WeightedEdge> kept;
  for (const auto& e : g.edges()) {
    if (e.weight > tau) kept.push_back(e);
  }
  return SimilarityGraph(g.node_ids(), std::move(kept), tau, g.direction());
}

}  // namespace scimap
