#include "scimap/layout.hpp"

#include <algorithm>
#include <numbers>

#include <Eigen/SparseCholesky>
#include <fmt/format.h>

#include "scimap/parallel.hpp"

namespace scimap {

std::string_view to_string(StressWeights w) noexcept {
  return w == StressWeights::uniform ? "uniform" : "inverse-square";
}

std::optional<StressWeights> parse_stress_weights(std::string_view s) noexcept {
  if (s == "uniform") return StressWeights::uniform;
  if (s == "inverse-square" || s == "inverse_square") return StressWeights::inverse_square;
  return std::nullopt;
}

std::uint64_t SeededUniform::below(std::uint64_t bound) {
  // rejection keeps the draw unbiased
  const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} - bound + 1) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= limit) return r % bound;
  }
}

double eval_stress(const Layout& layout, const DistanceMatrix& d, StressKind kind) {
  if (layout.node_ids != d.node_ids() || layout.coords.rows() != static_cast<Eigen::Index>(d.size())) {
    throw Error(ErrorCode::NodeSetMismatch, "layout and distance matrix cover different nodes");
  }
  return kind == StressKind::kruskal ? kruskal_stress(layout.coords, d) : kamada_kawai_stress(layout.coords, d);
}

namespace {

Coordinates random_disk(std::size_t n, std::uint64_t seed) {
  SeededUniform rng(seed);
  Coordinates x(static_cast<Eigen::Index>(n), 2);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double r = std::sqrt(rng.next());
    const double theta = 2.0 * std::numbers::pi * rng.next();
    x(i, 0) = r * std::cos(theta);
    x(i, 1) = r * std::sin(theta);
  }
  return x;
}

void center(Coordinates& x) {
  if (x.rows() == 0) return;
  const Eigen::RowVector2d mean = x.colwise().mean();
  x.rowwise() -= mean;
}

void require_finite(const Coordinates& x, int iteration) {
  if (!x.allFinite()) {
    throw Error(ErrorCode::NonFiniteState, fmt::format("layout diverged at iteration {}", iteration));
  }
}

// Uniform weights: sigma(X) and B(X)X in one pass over all pairs. Rows are
// independent, and the per-row partial sums are reduced in index order.
double uniform_pass(const Coordinates& x, const DistanceMatrix& d, Coordinates& bx) {
  const auto n = static_cast<std::size_t>(x.rows());
  const double* px = x.col(0).data();
  const double* py = x.col(1).data();
  std::vector<double> row_stress(n, 0.0);
  parallel_for_with(
      n, [n] { return std::vector<double>(n); },
      [&](std::size_t i, std::vector<double>& target) {
        d.fill_row(static_cast<int>(i), target);
        const double xi = px[i];
        const double yi = py[i];
        double sx = 0.0, sy = 0.0, s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          const double dx = xi - px[j];
          const double dy = yi - py[j];
          const double dist = std::sqrt(dx * dx + dy * dy);
          const double t = target[j];
          const double ratio = dist > 0.0 ? t / dist : 0.0;
          sx += ratio * dx;
          sy += ratio * dy;
          const double r = dist - t;
          s += r * r;
        }
        bx(static_cast<Eigen::Index>(i), 0) = sx;
        bx(static_cast<Eigen::Index>(i), 1) = sy;
        row_stress[i] = s;
      },
      16);
  double total = 0.0;
  for (double s : row_stress) total += s;
  return 0.5 * total;
}

// Inverse-square weights on observed pairs only.
double sparse_pass(const Coordinates& x, const DistanceMatrix& d, Coordinates& bx) {
  const auto n = static_cast<std::size_t>(x.rows());
  std::vector<double> row_stress(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const auto nb = d.observed_neighbors(static_cast<int>(i));
    const auto dist = d.observed_distances(static_cast<int>(i));
    double sx = 0.0, sy = 0.0, s = 0.0;
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const auto j = static_cast<Eigen::Index>(nb[k]);
      const double dx = x(ii, 0) - x(j, 0);
      const double dy = x(ii, 1) - x(j, 1);
      const double len = std::sqrt(dx * dx + dy * dy);
      const double t = dist[k];
      const double w = 1.0 / (t * t);
      const double ratio = len > 0.0 ? w * t / len : 0.0;
      sx += ratio * dx;
      sy += ratio * dy;
      const double r = len - t;
      s += w * r * r;
    }
    bx(ii, 0) = sx;
    bx(ii, 1) = sy;
    row_stress[i] = s;
  });
  double total = 0.0;
  for (double s : row_stress) total += s;
  return 0.5 * total;
}

// Solves V X = B(X) X for the weighted Laplacian V of the observed pairs.
// V is singular once per connected piece of the weight graph; one node per
// piece is grounded and the piece is shifted back onto its previous centroid
// (stress does not see translations of a piece).
class WeightedGuttman {
 public:
  explicit WeightedGuttman(const DistanceMatrix& d) {
    const auto n = d.size();
    DisjointSet ds(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (int j : d.observed_neighbors(static_cast<int>(i))) ds.unite(static_cast<int>(i), j);
    }
    piece_.assign(n, -1);
    std::vector<int> root_piece(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = static_cast<std::size_t>(ds.find(static_cast<int>(i)));
      if (root_piece[r] < 0) {
        root_piece[r] = pieces_++;
        grounded_.push_back(static_cast<int>(i));
      }
      piece_[i] = root_piece[r];
    }
    reduced_.assign(n, -1);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (grounded_[static_cast<std::size_t>(piece_[i])] != static_cast<int>(i)) reduced_[i] = next++;
    }
    std::vector<Eigen::Triplet<double>> t;
    for (std::size_t i = 0; i < n; ++i) {
      const int ri = reduced_[i];
      if (ri < 0) continue;
      const auto nb = d.observed_neighbors(static_cast<int>(i));
      const auto dist = d.observed_distances(static_cast<int>(i));
      double diag = 0.0;
      for (std::size_t k = 0; k < nb.size(); ++k) {
        const double w = 1.0 / (dist[k] * dist[k]);
        diag += w;
        const int rj = reduced_[static_cast<std::size_t>(nb[k])];
        if (rj >= 0) t.emplace_back(ri, rj, -w);
      }
      t.emplace_back(ri, ri, diag);
    }
    Eigen::SparseMatrix<double> v(next, next);
    v.setFromTriplets(t.begin(), t.end());
    solver_.compute(v);
    if (solver_.info() != Eigen::Success) {
      throw Error(ErrorCode::NonFiniteState, "weighted Laplacian factorization failed");
    }
    rhs_.resize(next, 2);
  }

  void apply(const Coordinates& previous, const Coordinates& bx, Coordinates& out) {
    const auto n = static_cast<Eigen::Index>(reduced_.size());
    for (Eigen::Index i = 0; i < n; ++i) {
      const int ri = reduced_[static_cast<std::size_t>(i)];
      if (ri >= 0) rhs_.row(ri) = bx.row(i);
    }
    const Eigen::MatrixX2d sol = rhs_.rows() > 0 ? Eigen::MatrixX2d(solver_.solve(rhs_)) : Eigen::MatrixX2d(0, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
      const int ri = reduced_[static_cast<std::size_t>(i)];
      if (ri >= 0) {
        out.row(i) = sol.row(ri);
      } else {
        out.row(i).setZero();
      }
    }
    // restore each piece's centroid
    Eigen::MatrixX2d shift = Eigen::MatrixX2d::Zero(pieces_, 2);
    Eigen::VectorXd count = Eigen::VectorXd::Zero(pieces_);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto p = piece_[static_cast<std::size_t>(i)];
      shift.row(p) += previous.row(i) - out.row(i);
      count(p) += 1.0;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto p = piece_[static_cast<std::size_t>(i)];
      out.row(i) += shift.row(p) / count(p);
    }
  }

 private:
  std::vector<int> piece_;
  std::vector<int> grounded_;
  std::vector<int> reduced_;
  int pieces_ = 0;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver_;
  Eigen::MatrixX2d rhs_;
};

void check_inverse_square_targets(const DistanceMatrix& d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (double t : d.observed_distances(static_cast<int>(i))) {
      if (t == 0.0) {
        throw Error(ErrorCode::ZeroTargetDistance,
                    fmt::format("node {} has a zero target distance; inverse-square weights are undefined",
                                d.node_ids()[i]));
      }
    }
  }
}

}  // namespace

double weighted_stress(const Coordinates& x, const DistanceMatrix& d, StressWeights weights) {
  Coordinates scratch(x.rows(), 2);
  if (weights == StressWeights::uniform) return uniform_pass(x, d, scratch);
  check_inverse_square_targets(d);
  return sparse_pass(x, d, scratch);
}

Layout mds_layout(const DistanceMatrix& d, const MdsOptions& options) {
  const std::size_t n = d.size();
  if (n == 0) throw Error(ErrorCode::EmptyGraph, "distance matrix has no nodes");
  if (options.max_iter < 0 || !(options.tol >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "max_iter and tol must be non-negative");
  }
  const bool uniform = options.weights == StressWeights::uniform;
  if (!uniform) check_inverse_square_targets(d);

  Layout out;
  out.node_ids = d.node_ids();
  out.provenance.algorithm = fmt::format("mds-{}", to_string(options.weights));
  out.provenance.seed = options.seed;

  if (n == 1) {
    out.coords = Coordinates::Zero(1, 2);
    out.provenance.stress_history = {0.0};
    return out;
  }

  Coordinates x = random_disk(n, options.seed);
  Coordinates bx(x.rows(), 2);
  Coordinates next(x.rows(), 2);
  std::optional<WeightedGuttman> guttman;
  if (!uniform) guttman.emplace(d);
  auto pass = [&](const Coordinates& c) { return uniform ? uniform_pass(c, d, bx) : sparse_pass(c, d, bx); };

  double sigma = pass(x);
  out.provenance.stress_history.push_back(sigma);
  int iterations = 0;
  while (iterations < options.max_iter && sigma > 0.0) {
    if (uniform) {
      next = bx / static_cast<double>(n);
    } else {
      guttman->apply(x, bx, next);
    }
    ++iterations;
    require_finite(next, iterations);
    x.swap(next);
    const double updated = pass(x);
    out.provenance.stress_history.push_back(updated);
    const double decrease = (sigma - updated) / sigma;
    sigma = updated;
    if (decrease < options.tol) break;
  }

  center(x);
  out.coords = std::move(x);
  out.provenance.iterations = iterations;
  out.provenance.kruskal_stress = kruskal_stress(out.coords, d);
  try {
    out.provenance.kamada_kawai_stress = kamada_kawai_stress(out.coords, d);
  } catch (const Error&) {
    out.provenance.kamada_kawai_stress.reset();
  }
  return out;
}

double fr_natural_length(std::size_t n) {
  return std::sqrt(1.0 / static_cast<double>(std::max<std::size_t>(n, 1)));
}

Layout fr_layout(const SimilarityGraph& g, const FrOptions& options) {
  const std::size_t n = g.node_count();
  if (n == 0) throw Error(ErrorCode::EmptyGraph, "graph has no nodes");
  if (options.iterations < 0) throw Error(ErrorCode::InvalidArgument, "iterations must be non-negative");

  Layout out;
  out.node_ids = g.node_ids();
  out.provenance.algorithm = "fr";
  out.provenance.seed = options.seed;
  if (n == 1) {
    out.coords = Coordinates::Zero(1, 2);
    return out;
  }

  const double k = fr_natural_length(n);
  const double k2 = k * k;
  const double t0 = 0.1;
  SeededUniform rng(options.seed);
  Coordinates x(static_cast<Eigen::Index>(n), 2);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    x(i, 0) = rng.next() - 0.5;
    x(i, 1) = rng.next() - 0.5;
  }

  const auto rows = static_cast<Eigen::Index>(n);
  Coordinates disp(rows, 2);
  for (int it = 0; it < options.iterations; ++it) {
    const double temperature = t0 * (1.0 - static_cast<double>(it) / static_cast<double>(options.iterations));
    disp.setZero();
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = i + 1; j < rows; ++j) {
        Eigen::RowVector2d delta = x.row(i) - x.row(j);
        double dist = delta.norm();
        if (dist < 1e-12) {
          // coincident nodes: push apart along a fixed index-dependent direction
          const double a = static_cast<double>(i * 7 + j * 13);
          delta = Eigen::RowVector2d(std::cos(a), std::sin(a)) * 1e-6;
          dist = 1e-6;
        }
        const Eigen::RowVector2d f = delta / dist * (k2 / dist);
        disp.row(i) += f;
        disp.row(j) -= f;
      }
    }
    for (const auto& e : g.edges()) {
      const Eigen::RowVector2d delta = x.row(e.u) - x.row(e.v);
      const double dist = delta.norm();
      if (dist == 0.0) continue;
      const Eigen::RowVector2d f = delta / dist * (e.weight * dist * dist / k);
      disp.row(e.u) -= f;
      disp.row(e.v) += f;
    }
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double len = disp.row(i).norm();
      if (len > 0.0) x.row(i) += disp.row(i) / len * std::min(len, temperature);
    }
    require_finite(x, it + 1);
  }
  center(x);
  out.coords = std::move(x);
  out.provenance.iterations = options.iterations;
  return out;
}

}  // namespace scimap
