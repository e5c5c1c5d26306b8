#include <doctest.h>

#include "scimap/error.hpp"
#include "scimap/graph.hpp"
#include "support.hpp"

using namespace scimap;

namespace {

SimilarityGraph graph(int n, std::vector<WeightedEdge> edges) {
  return SimilarityGraph(support::iota_ids(n), std::move(edges), 0.0, Direction::cited);
}

}  // namespace

TEST_CASE("a path is already connected") {
  const auto c = largest_component(graph(3, {{0, 1, 0.5}, {1, 2, 0.5}}));
  CHECK(c.node_count == 3);
  CHECK(c.edge_count == 2);
  CHECK(c.node_fraction == 1.0);
}

TEST_CASE("the 3-node component wins over the 2-node one") {
  const auto c = largest_component(graph(5, {{0, 1, 0.9}, {2, 3, 0.4}, {3, 4, 0.3}}));
  CHECK(c.graph.node_ids() == std::vector<int>{3, 4, 5});
  CHECK(c.graph.edges() == std::vector<WeightedEdge>{{0, 1, 0.4}, {1, 2, 0.3}});
  CHECK(c.node_fraction == doctest::Approx(0.6));
}

TEST_CASE("ties go to the component holding the smallest id") {
  const auto c = largest_component(graph(4, {{0, 1, 0.5}, {2, 3, 0.5}}));
  CHECK(c.graph.node_ids() == std::vector<int>{1, 2});
}

TEST_CASE("isolates form their own components") {
  const auto labels = connected_components(graph(4, {{1, 3, 0.5}}));
  CHECK(labels[1] == labels[3]);
  CHECK(labels[0] != labels[2]);
  CHECK(labels[0] != labels[1]);
  const auto c = largest_component(graph(3, {}));
  CHECK(c.node_count == 1);
  CHECK(c.graph.node_ids() == std::vector<int>{1});
}

TEST_CASE("union-find sizes") {
  DisjointSet ds(5);
  CHECK(ds.unite(0, 1));
  CHECK(ds.unite(3, 1));
  CHECK(!ds.unite(0, 3));
  CHECK(ds.size_of(3) == 3);
  CHECK(ds.size_of(4) == 1);
}

TEST_CASE("distances from cosines with a cap for unlinked pairs") {
  const auto d = to_distance(graph(3, {{0, 1, 1.0}, {1, 2, 0.2}}));
  CHECK(d(0, 1) == 0.0);
  CHECK(d(1, 2) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(d(0, 2) == 1.0);
  CHECK(d.observed(1, 2));
  CHECK(!d.observed(0, 2));
  CHECK(d(2, 0) == d(0, 2));
  CHECK(d(1, 1) == 0.0);
  const auto dense = d.to_dense();
  CHECK(dense.isApprox(dense.transpose()));
  CHECK(to_distance(graph(3, {{0, 1, 1.0}, {1, 2, 0.2}}), 2.5)(0, 2) == 2.5);
}

TEST_CASE("distance conversion needs a connected graph") {
  try {
    to_distance(graph(3, {{0, 1, 0.5}}));
    FAIL("expected DisconnectedInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DisconnectedInput);
  }
  try {
    largest_component(graph(0, {}));
    FAIL("expected EmptyGraph");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyGraph);
  }
}

TEST_CASE("csr rows are sorted and symmetric") {
  const auto csr = to_csr(graph(4, {{0, 2, 0.3}, {0, 3, 0.4}, {1, 2, 0.5}}));
  REQUIRE(csr.node_count() == 4);
  CHECK(std::vector<int>(csr.neighbors.begin() + csr.offsets[2], csr.neighbors.begin() + csr.offsets[3]) ==
        std::vector<int>{0, 1});
  CHECK(csr.neighbors.size() == 6);
}
