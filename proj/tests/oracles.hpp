#pragma once

// Brute-force reference implementations. Deliberately naive: dense matrices,
// double loops over ordered pairs, exhaustive enumeration.

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "scimap/citation_matrix.hpp"
#include "scimap/layout.hpp"
#include "scimap/similarity.hpp"

namespace oracle {

inline Eigen::MatrixXd dense_counts(const scimap::CitationMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.n());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : m.entries()) a(e.citing - 1, e.cited - 1) += static_cast<double>(e.count);
  return a;
}

// Cosine between every pair of profiles; 0 when either profile is empty.
inline Eigen::MatrixXd cosine(const scimap::CitationMatrix& m, scimap::Direction dir) {
  Eigen::MatrixXd a = dense_counts(m);
  if (dir == scimap::Direction::citing) a.transposeInPlace();  // profiles become columns
  const auto n = a.cols();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index v = 0; v < n; ++v) {
      double dot = 0.0, nu = 0.0, nv = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        dot += a(i, u) * a(i, v);
        nu += a(i, u) * a(i, u);
        nv += a(i, v) * a(i, v);
      }
      if (nu > 0.0 && nv > 0.0) c(u, v) = dot / (std::sqrt(nu) * std::sqrt(nv));
    }
  }
  return c;
}

inline Eigen::MatrixXd dense_adjacency(const scimap::SimilarityGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    a(e.u, e.v) += e.weight;
    a(e.v, e.u) += e.weight;
  }
  return a;
}

// Q = (1/2m) sum_ij [A_ij - gamma k_i k_j / 2m] delta(c_i, c_j)
inline double modularity(const scimap::SimilarityGraph& g, const std::vector<int>& c, double gamma) {
  const Eigen::MatrixXd a = dense_adjacency(g);
  const Eigen::VectorXd k = a.rowwise().sum();
  const double two_m = a.sum();
  double q = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (c[static_cast<std::size_t>(i)] != c[static_cast<std::size_t>(j)]) continue;
      q += a(i, j) - gamma * k(i) * k(j) / two_m;
    }
  }
  return q / two_m;
}

// Calls fn for every set partition of n items as a restricted growth string
// (labels from 1).
inline void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> labels(static_cast<std::size_t>(n), 1);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      fn(labels);
      return;
    }
    for (int l = 1; l <= used + 1; ++l) {
      labels[static_cast<std::size_t>(i)] = l;
      rec(i + 1, std::max(used, l));
    }
  };
  if (n == 0) {
    fn(labels);
    return;
  }
  rec(1, 1);
}

struct BestPartition {
  double q = -2.0;
  std::vector<int> labels;
};

inline BestPartition best_partition(const scimap::SimilarityGraph& g, double gamma) {
  BestPartition best;
  for_each_partition(static_cast<int>(g.node_count()), [&](const std::vector<int>& c) {
    const double q = modularity(g, c, gamma);
    if (q > best.q + 1e-12) best = {q, c};
  });
  return best;
}

// Stress over ordered pairs i != j, straight from the definitions.
// Accumulated in long double so the reference error stays well below the
// tolerances it is compared at.
inline double kruskal(const scimap::Coordinates& x, const Eigen::MatrixXd& d) {
  long double num = 0.0L, den = 0.0L;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.rows(); ++j) {
      if (i == j) continue;
      const double dist = std::hypot(x(i, 0) - x(j, 0), x(i, 1) - x(j, 1));
      const long double r = static_cast<long double>(dist) - d(i, j);
      num += r * r;
      den += static_cast<long double>(d(i, j)) * d(i, j);
    }
  }
  return static_cast<double>(std::sqrt(num / den));
}

// Each unordered pair once: the ordered sum halved.
inline double kamada_kawai(const scimap::Coordinates& x, const Eigen::MatrixXd& d) {
  long double s = 0.0L;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.rows(); ++j) {
      if (i == j) continue;
      const double dist = std::hypot(x(i, 0) - x(j, 0), x(i, 1) - x(j, 1));
      const long double r = static_cast<long double>(dist) - d(i, j);
      s += r * r / (static_cast<long double>(d(i, j)) * d(i, j));
    }
  }
  return static_cast<double>(s / 2.0L);
}

// Same partition up to relabeling.
inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
    }
  }
  return true;
}

}  // namespace oracle
