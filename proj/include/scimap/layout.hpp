#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "scimap/error.hpp"
#include "scimap/graph.hpp"

namespace scimap {

/// One (x, y) row per node, in map units.
template <typename Scalar>
using CoordinatesT = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;
using Coordinates = CoordinatesT<double>;

enum class StressKind { kruskal, kamada_kawai };
enum class StressWeights { uniform, inverse_square };

std::string_view to_string(StressWeights w) noexcept;
std::optional<StressWeights> parse_stress_weights(std::string_view s) noexcept;

struct LayoutProvenance {
  std::string algorithm;
  std::uint64_t seed = 0;
  int iterations = 0;
  double kruskal_stress = 0.0;
  /// Unset when some target distance is zero.
  std::optional<double> kamada_kawai_stress;
  /// Objective value before the first update and after every update.
  std::vector<double> stress_history;
};

struct Layout {
  std::vector<int> node_ids;
  Coordinates coords;
  LayoutProvenance provenance;
};

// Stress kernels over any two-column expression. Pairs are unordered and
// counted once; d is read through DistanceMatrix so capped pairs take the cap.

/// sqrt( sum (|x_i - x_j| - d_ij)^2 / sum d_ij^2 )
/// Neumaier-compensated running sum; stress sums run over n^2/2 pairs.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    comp_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <typename Derived>
double kruskal_stress(const Eigen::MatrixBase<Derived>& x, const DistanceMatrix& d) {
  const auto n = x.rows();
  if (n < 2) return 0.0;
  std::vector<double> row(static_cast<std::size_t>(n));
  CompensatedSum num;
  CompensatedSum den;
  for (Eigen::Index i = 0; i < n; ++i) {
    d.fill_row(static_cast<int>(i), row);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double target = row[static_cast<std::size_t>(j)];
      const double r = static_cast<double>((x.row(i) - x.row(j)).norm()) - target;
      num.add(r * r);
      den.add(target * target);
    }
  }
  if (den.value() == 0.0) {
    if (num.value() == 0.0) return 0.0;
    throw Error(ErrorCode::ZeroTargetDistance, "all target distances are zero");
  }
  return std::sqrt(num.value() / den.value());
}

/// sum (1 / d_ij^2) (|x_i - x_j| - d_ij)^2
template <typename Derived>
double kamada_kawai_stress(const Eigen::MatrixBase<Derived>& x, const DistanceMatrix& d) {
  const auto n = x.rows();
  std::vector<double> row(static_cast<std::size_t>(n));
  CompensatedSum s;
  for (Eigen::Index i = 0; i < n; ++i) {
    d.fill_row(static_cast<int>(i), row);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double target = row[static_cast<std::size_t>(j)];
      if (target == 0.0) {
        throw Error(ErrorCode::ZeroTargetDistance, "kamada-kawai stress needs positive target distances");
      }
      const double r = static_cast<double>((x.row(i) - x.row(j)).norm()) - target;
      s.add(r * r / (target * target));
    }
  }
  return s.value();
}

/// Checks that layout and distances cover the same nodes, then evaluates.
double eval_stress(const Layout& layout, const DistanceMatrix& d, StressKind kind);

struct MdsOptions {
  StressWeights weights = StressWeights::uniform;
  std::uint64_t seed = 1;
  int max_iter = 500;
  double tol = 1e-6;
};

/// Weighted-stress majorization (Guttman transform). uniform weights every
/// pair by 1, capped pairs included; inverse_square weights observed pairs by
/// 1/d^2 and drops capped pairs. Starts from a seeded random placement in the
/// unit disk, stops when the relative stress decrease falls below tol or after
/// max_iter updates, and returns a layout centered at the origin.
Layout mds_layout(const DistanceMatrix& d, const MdsOptions& options = {});

/// The objective mds_layout minimizes, for the given weight scheme.
double weighted_stress(const Coordinates& x, const DistanceMatrix& d, StressWeights weights);

struct FrOptions {
  std::uint64_t seed = 1;
  int iterations = 300;
};

/// Ideal edge length used by fr_layout for an n-node graph (unit-area frame).
double fr_natural_length(std::size_t n);

/// Fruchterman-Reingold spring embedder: cosine-weighted attraction along
/// edges, k^2/d repulsion between all pairs, linearly cooling temperature.
Layout fr_layout(const SimilarityGraph& g, const FrOptions& options = {});

/// Uniform draws in [0, 1) from mt19937_64, whose output sequence is fixed by
/// the standard; the std distributions are not, so they are avoided.
class SeededUniform {
 public:
  explicit SeededUniform(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t next_u64() { return engine_(); }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace scimap
