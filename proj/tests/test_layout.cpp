#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "scimap/error.hpp"
#include "scimap/graph.hpp"
#include "scimap/layout.hpp"
#include "scimap/synthetic.hpp"
#include "support.hpp"

using namespace scimap;

namespace {

Layout layout_of(Coordinates x) {
  Layout l;
  l.node_ids = support::iota_ids(static_cast<int>(x.rows()));
  l.coords = std::move(x);
  return l;
}

DistanceMatrix dense(const Eigen::MatrixXd& d) {
  return DistanceMatrix::from_dense(support::iota_ids(static_cast<int>(d.rows())), d);
}

bool non_increasing(const std::vector<double>& h, double slack) {
  for (std::size_t t = 1; t < h.size(); ++t) {
    if (h[t] > h[t - 1] + slack) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("perfect embeddings have zero stress") {
  SeededUniform rng(3);
  const auto x = support::random_points(rng, 12);
  const auto d = dense(support::euclidean(x));
  CHECK(eval_stress(layout_of(x), d, StressKind::kruskal) < 1e-12);
  CHECK(eval_stress(layout_of(x), d, StressKind::kamada_kawai) < 1e-12);
}

TEST_CASE("two-node hand values") {
  Coordinates x(2, 2);
  x << 0, 0, 0.5, 0;
  Eigen::MatrixXd d(2, 2);
  d << 0, 1, 1, 0;
  CHECK(eval_stress(layout_of(x), dense(d), StressKind::kruskal) == doctest::Approx(0.5).epsilon(1e-15));
  x(1, 0) = 1.0;
  d << 0, 2, 2, 0;
  CHECK(eval_stress(layout_of(x), dense(d), StressKind::kamada_kawai) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("stress matches the ordered-pair formulas") {
  SeededUniform rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(25));
    const auto x = support::random_points(rng, n, 2.0);
    const Eigen::MatrixXd target = support::euclidean(support::random_points(rng, n)).array() + 0.05;
    Eigen::MatrixXd d = target;
    d.diagonal().setZero();
    const auto dm = dense(d);
    CHECK(std::abs(eval_stress(layout_of(x), dm, StressKind::kruskal) - oracle::kruskal(x, d)) <= 1e-12);
    const double kk = oracle::kamada_kawai(x, d);
    CHECK(std::abs(eval_stress(layout_of(x), dm, StressKind::kamada_kawai) - kk) <= 1e-12 * std::max(1.0, kk));
  }
}

TEST_CASE("stress is invariant under rigid motions") {
  SeededUniform rng(23);
  const auto x = support::random_points(rng, 30);
  Eigen::MatrixXd d = support::euclidean(support::random_points(rng, 30)).array() + 0.1;
  d.diagonal().setZero();
  const auto dm = dense(d);
  const double angle = 0.7;
  Eigen::Matrix2d rot;
  rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  Coordinates moved = x * rot.transpose();
  moved.rowwise() += Eigen::RowVector2d(3.5, -12.0);
  for (auto kind : {StressKind::kruskal, StressKind::kamada_kawai}) {
    CHECK(std::abs(eval_stress(layout_of(x), dm, kind) - eval_stress(layout_of(moved), dm, kind)) < 1e-9);
  }
}

TEST_CASE("stress argument checks") {
  Coordinates x = Coordinates::Zero(3, 2);
  Eigen::MatrixXd d = Eigen::MatrixXd::Ones(2, 2);
  d.diagonal().setZero();
  try {
    eval_stress(layout_of(x), dense(d), StressKind::kruskal);
    FAIL("expected NodeSetMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NodeSetMismatch);
  }
  d = Eigen::MatrixXd::Zero(3, 3);
  try {
    eval_stress(layout_of(x), dense(d), StressKind::kamada_kawai);
    FAIL("expected ZeroTargetDistance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroTargetDistance);
  }
}

TEST_CASE("single node sits at the origin") {
  const auto l = mds_layout(dense(Eigen::MatrixXd::Zero(1, 1)));
  CHECK(l.coords.rows() == 1);
  CHECK(l.coords.isZero());
  const SimilarityGraph one({7}, {}, 0.0, Direction::cited);
  CHECK(fr_layout(one).coords.isZero());
}

TEST_CASE("equal targets give an equilateral triangle") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Ones(3, 3);
  d.diagonal().setZero();
  for (auto w : {StressWeights::uniform, StressWeights::inverse_square}) {
    const auto l = mds_layout(dense(d), {w, 1, 500, 1e-12});
    const auto got = support::euclidean(l.coords);
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) CHECK(std::abs(got(i, j) - 1.0) < 1e-6);
    }
    CHECK(l.provenance.kruskal_stress < 1e-6);
    CHECK(l.coords.colwise().sum().norm() < 1e-12);
  }
}

TEST_CASE("fifty planar points are recovered") {
  SeededUniform rng(50);
  const auto truth = support::random_points(rng, 50);
  const auto l = mds_layout(dense(support::euclidean(truth)));
  CHECK(l.provenance.iterations <= 500);
  CHECK(l.provenance.kruskal_stress < 0.01);
  CHECK(non_increasing(l.provenance.stress_history, 1e-12));
}

TEST_CASE("majorization never increases stress") {
  const auto g = planted_partition_graph(3, 15, 0.5, 0.05, 4);
  // weights vary so the targets are not all equal
  std::vector<WeightedEdge> edges = g.edges();
  SeededUniform rng(9);
  for (auto& e : edges) e.weight = 0.2 + 0.79 * rng.next();
  const SimilarityGraph weighted(g.node_ids(), edges, 0.0, Direction::cited);
  const auto d = to_distance(largest_component(weighted).graph);
  for (auto w : {StressWeights::uniform, StressWeights::inverse_square}) {
    for (std::uint64_t seed : {1, 2, 3}) {
      const auto l = mds_layout(d, {w, seed, 300, 0.0});
      CHECK(non_increasing(l.provenance.stress_history, 1e-12));
      CHECK(l.provenance.stress_history.back() == doctest::Approx(weighted_stress(l.coords, d, w)));
    }
  }
}

TEST_CASE("mds is deterministic per seed") {
  SeededUniform rng(8);
  const auto d = dense(support::euclidean(support::random_points(rng, 20)));
  const auto a = mds_layout(d, {StressWeights::uniform, 4, 50, 0.0});
  const auto b = mds_layout(d, {StressWeights::uniform, 4, 50, 0.0});
  CHECK(a.coords == b.coords);
  const auto c = mds_layout(d, {StressWeights::uniform, 5, 50, 0.0});
  CHECK(a.coords != c.coords);
  CHECK(a.provenance.algorithm == "mds-uniform");
}

TEST_CASE("inverse-square weights reject zero targets") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Ones(3, 3);
  d.diagonal().setZero();
  d(0, 1) = d(1, 0) = 0.0;
  try {
    mds_layout(dense(d), {StressWeights::inverse_square});
    FAIL("expected ZeroTargetDistance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroTargetDistance);
  }
  CHECK_NOTHROW(mds_layout(dense(d), {StressWeights::uniform}));
}

TEST_CASE("inverse-square layout leaves capped pairs unweighted") {
  // a path: only neighbours observed, the ends are capped at 1
  const SimilarityGraph path({1, 2, 3}, {{0, 1, 0.5}, {1, 2, 0.5}}, 0.0, Direction::cited);
  const auto d = to_distance(path);
  const auto l = mds_layout(d, {StressWeights::inverse_square, 1, 500, 1e-12});
  const auto got = support::euclidean(l.coords);
  CHECK(got(0, 1) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(got(1, 2) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("two linked nodes settle near the natural length") {
  const SimilarityGraph g({1, 2}, {{0, 1, 1.0}}, 0.0, Direction::cited);
  const double k = fr_natural_length(2);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto l = fr_layout(g, {seed, 300});
    const double sep = (l.coords.row(0) - l.coords.row(1)).norm();
    CHECK(sep >= 0.5 * k);
    CHECK(sep <= 2.0 * k);
  }
}

TEST_CASE("fr is deterministic and centered") {
  const auto g = planted_partition_graph(2, 10, 0.6, 0.05, 2);
  const auto a = fr_layout(g, {7, 100});
  const auto b = fr_layout(g, {7, 100});
  CHECK(a.coords == b.coords);
  CHECK(a.coords.colwise().sum().norm() < 1e-9);
  CHECK(a.provenance.algorithm == "fr");
  try {
    fr_layout(SimilarityGraph({}, {}, 0.0, Direction::cited));
    FAIL("expected EmptyGraph");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyGraph);
  }
}

TEST_CASE("stress kernels accept other scalar types") {
  SeededUniform rng(2);
  const auto x = support::random_points(rng, 6);
  Eigen::MatrixXd d = support::euclidean(support::random_points(rng, 6));
  const auto dm = dense(d);
  const CoordinatesT<long double> wide = x.cast<long double>();
  CHECK(kruskal_stress(wide, dm) == doctest::Approx(kruskal_stress(x, dm)));
}
