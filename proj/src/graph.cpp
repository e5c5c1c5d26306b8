#include "scimap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "scimap/error.hpp"

namespace scimap {

Csr to_csr(const SimilarityGraph& g) {
  const std::size_t n = g.node_count();
  Csr csr;
  csr.offsets.assign(n + 1, 0);
  for (const auto& e : g.edges()) {
    ++csr.offsets[static_cast<std::size_t>(e.u) + 1];
    ++csr.offsets[static_cast<std::size_t>(e.v) + 1];
  }
  std::partial_sum(csr.offsets.begin(), csr.offsets.end(), csr.offsets.begin());
  csr.neighbors.resize(csr.offsets.back());
  csr.weights.resize(csr.offsets.back());
  std::vector<std::size_t> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
  // (u, v)-sorted edges deliver each node's lower neighbors first, in
  // ascending order, then its higher ones: every list comes out sorted.
  for (const auto& e : g.edges()) {
    auto& cu = cursor[static_cast<std::size_t>(e.u)];
    csr.neighbors[cu] = e.v;
    csr.weights[cu++] = e.weight;
    auto& cv = cursor[static_cast<std::size_t>(e.v)];
    csr.neighbors[cv] = e.u;
    csr.weights[cv++] = e.weight;
  }
  return csr;
}

DisjointSet::DisjointSet(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int DisjointSet::find(int x) {
  auto ux = static_cast<std::size_t>(x);
  while (parent_[ux] != static_cast<int>(ux)) {
    parent_[ux] = parent_[static_cast<std::size_t>(parent_[ux])];
    ux = static_cast<std::size_t>(parent_[ux]);
  }
  return static_cast<int>(ux);
}

bool DisjointSet::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)]) std::swap(a, b);
  parent_[static_cast<std::size_t>(b)] = a;
  size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
  return true;
}

std::vector<int> connected_components(const SimilarityGraph& g) {
  const std::size_t n = g.node_count();
  DisjointSet ds(n);
  for (const auto& e : g.edges()) ds.unite(e.u, e.v);
  std::vector<int> label(n, -1);
  std::vector<int> root_label(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<std::size_t>(ds.find(static_cast<int>(i)));
    if (root_label[r] < 0) root_label[r] = next++;
    label[i] = root_label[r];
  }
  return label;
}

ComponentResult largest_component(const SimilarityGraph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) throw Error(ErrorCode::EmptyGraph, "graph has no nodes");
  const auto label = connected_components(g);
  const int count = *std::max_element(label.begin(), label.end()) + 1;
  std::vector<std::size_t> sizes(static_cast<std::size_t>(count), 0);
  for (int l : label) ++sizes[static_cast<std::size_t>(l)];
  // labels are ordered by smallest member, so the first maximum wins ties
  const int best = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  std::vector<int> remap(n, -1);
  std::vector<int> ids;
  ids.reserve(sizes[static_cast<std::size_t>(best)]);
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] == best) {
      remap[i] = static_cast<int>(ids.size());
      ids.push_back(g.node_ids()[i]);
    }
  }
  std::vector<WeightedEdge> edges;
  for (const auto& e : g.edges()) {
    if (label[static_cast<std::size_t>(e.u)] == best) {
      edges.push_back({remap[static_cast<std::size_t>(e.u)], remap[static_cast<std::size_t>(e.v)], e.weight});
    }
  }
  ComponentResult result;
  result.node_count = ids.size();
  result.edge_count = edges.size();
  result.node_fraction = static_cast<double>(ids.size()) / static_cast<double>(n);
  result.graph = SimilarityGraph(std::move(ids), std::move(edges), g.threshold(), g.direction());
  return result;
}

DistanceMatrix DistanceMatrix::from_dense(std::vector<int> node_ids, const Eigen::MatrixXd& d) {
  const auto n = static_cast<Eigen::Index>(node_ids.size());
  if (d.rows() != n || d.cols() != n) {
    throw Error(ErrorCode::NodeSetMismatch, "distance matrix shape does not match the node list");
  }
  DistanceMatrix out;
  out.node_ids_ = std::move(node_ids);
  out.cap_ = n > 1 ? d.maxCoeff() : 1.0;
  out.observed_.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) throw Error(ErrorCode::InvalidArgument, "distance matrix diagonal must be zero");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      if (d(i, j) != d(j, i) || !(d(i, j) >= 0.0) || !std::isfinite(d(i, j))) {
        throw Error(ErrorCode::InvalidArgument, "distance matrix must be symmetric, finite and non-negative");
      }
      out.observed_.neighbors.push_back(static_cast<int>(j));
      out.observed_.weights.push_back(d(i, j));
    }
    out.observed_.offsets[static_cast<std::size_t>(i) + 1] = out.observed_.neighbors.size();
  }
  return out;
}

double DistanceMatrix::operator()(int i, int j) const {
  if (i == j) return 0.0;
  const auto nb = observed_neighbors(i);
  auto it = std::lower_bound(nb.begin(), nb.end(), j);
  if (it != nb.end() && *it == j) return observed_distances(i)[static_cast<std::size_t>(it - nb.begin())];
  return cap_;
}

bool DistanceMatrix::observed(int i, int j) const {
  const auto nb = observed_neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

void DistanceMatrix::fill_row(int i, std::span<double> out) const {
  std::fill(out.begin(), out.end(), cap_);
  out[static_cast<std::size_t>(i)] = 0.0;
  const auto nb = observed_neighbors(i);
  const auto dist = observed_distances(i);
  for (std::size_t k = 0; k < nb.size(); ++k) out[static_cast<std::size_t>(nb[k])] = dist[k];
}

std::span<const int> DistanceMatrix::observed_neighbors(int i) const {
  const auto b = observed_.offsets[static_cast<std::size_t>(i)];
  const auto e = observed_.offsets[static_cast<std::size_t>(i) + 1];
  return {observed_.neighbors.data() + b, e - b};
}

std::span<const double> DistanceMatrix::observed_distances(int i) const {
  const auto b = observed_.offsets[static_cast<std::size_t>(i)];
  const auto e = observed_.offsets[static_cast<std::size_t>(i) + 1];
  return {observed_.weights.data() + b, e - b};
}

Eigen::MatrixXd DistanceMatrix::to_dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd d(n, n);
  std::vector<double> row(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    fill_row(static_cast<int>(i), row);
    d.row(i) = Eigen::Map<const Eigen::RowVectorXd>(row.data(), n);
  }
  return d;
}

DistanceMatrix to_distance(const SimilarityGraph& g, double d_max) {
  if (g.node_count() == 0) throw Error(ErrorCode::EmptyGraph, "graph has no nodes");
  if (!(d_max > 0.0) || !std::isfinite(d_max)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("distance cap {} must be positive", d_max));
  }
  const auto label = connected_components(g);
  if (*std::max_element(label.begin(), label.end()) > 0) {
    throw Error(ErrorCode::DisconnectedInput, "graph is disconnected; extract the largest component first");
  }
  DistanceMatrix out;
  out.node_ids_ = g.node_ids();
  out.cap_ = d_max;
  out.observed_ = to_csr(g);
  for (auto& w : out.observed_.weights) w = 1.0 - w;
  return out;
}

}  // namespace scimap
