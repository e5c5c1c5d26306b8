#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "scimap/error.hpp"
#include "scimap/export.hpp"
#include "scimap/text.hpp"
#include "export_fixture.hpp"
#include "support.hpp"

using namespace scimap;

namespace {

const std::filesystem::path kGolden = SCIMAP_GOLDEN_DIR;

// Set SCIMAP_UPDATE_GOLDEN=1 to rewrite the files instead of comparing.
void check_golden(const std::string& name, const std::string& actual) {
  const auto path = kGolden / name;
  if (std::getenv("SCIMAP_UPDATE_GOLDEN")) {
    std::ofstream(path, std::ios::binary) << actual;
    return;
  }
  INFO("golden file ", name);
  CHECK(support::slurp(path) == actual);
}

using golden::Fixture;

SimilarityGraph graph_from(const PajekGraph& p) {
  return SimilarityGraph(support::iota_ids(static_cast<int>(p.labels.size())), p.edges, 0.0, Direction::cited);
}

}  // namespace

TEST_CASE("every golden matches and survives write-read-write") {
  const auto files = Fixture().render();
  for (const auto& [name, text] : files) check_golden(name, text);
  CHECK(golden::unstable_round_trips(files).empty());
}

TEST_CASE("pajek golden and round trip") {
  Fixture f;
  std::ostringstream out;
  write_pajek(out, f.g, &f.layout, f.labels);
  check_golden("fixture.net", out.str());

  std::istringstream in(out.str());
  const auto p = read_pajek(in);
  CHECK(p.labels == f.labels);
  REQUIRE(p.coords);
  CHECK(p.edges.size() == 4);
  CHECK(p.edges[1] == WeightedEdge{0, 2, 0.3125});
  Layout again;
  again.node_ids = support::iota_ids(4);
  again.coords = *p.coords;
  std::ostringstream out2;
  write_pajek(out2, graph_from(p), &again, p.labels);
  CHECK(out2.str() == out.str());
}

TEST_CASE("pajek without coordinates or edges") {
  Fixture f;
  std::ostringstream out;
  write_pajek(out, f.g, nullptr, f.labels);
  check_golden("fixture_nocoords.net", out.str());
  const SimilarityGraph two({1, 2}, {{0, 1, 0.8}}, 0.0, Direction::cited);
  std::ostringstream small;
  write_pajek(small, two, nullptr, journal_labels(two, nullptr));
  CHECK(small.str() == "*Vertices 2\n1 \"1\"\n2 \"2\"\n*Edges\n1 2 0.800000\n");
  const SimilarityGraph bare({1, 2}, {}, 0.0, Direction::cited);
  std::ostringstream none;
  write_pajek(none, bare, nullptr, journal_labels(bare, nullptr));
  CHECK(none.str().ends_with("*Edges\n"));
  std::istringstream in(none.str());
  CHECK(read_pajek(in).edges.empty());
}

TEST_CASE("pajek rejects quotes in labels") {
  Fixture f;
  f.labels[0] = "The \"Journal\"";
  std::ostringstream out;
  CHECK_THROWS_AS(write_pajek(out, f.g, nullptr, f.labels), Error);
}

TEST_CASE("vos map golden and round trip") {
  Fixture f;
  for (double gamma : {1.0, 2.0}) {
    std::ostringstream out;
    write_vos_map(out, vos_rows(f.basemap, gamma));
    check_golden(fmt::format("fixture_map_g{}.txt", gamma_key(gamma)), out.str());
    std::istringstream in(out.str());
    const auto rows = read_vos_map(in);
    std::ostringstream out2;
    write_vos_map(out2, rows);
    CHECK(out2.str() == out.str());
  }
  std::ostringstream overlay;
  write_vos_map(overlay, vos_rows(f.overlay));
  check_golden("fixture_overlay_map.txt", overlay.str());
}

TEST_CASE("vos map edge cases") {
  const Basemap one({1.0}, {{5, "Nature", "NATURE", 0.0, 1.0, {1}}});
  std::ostringstream out;
  write_vos_map(out, vos_rows(one, 1.0));
  CHECK(out.str() == "id\tlabel\tx\ty\tcluster\tweight\n5\tNature\t0.000000\t1.000000\t1\t1.00000\n");
  std::vector<VosMapRow> tabbed{{1, "a\tb", 0.0, 0.0, 1, 1.0}};
  try {
    write_vos_map(out, tabbed);
    FAIL("expected InvalidLabel");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidLabel);
  }
  try {
    vos_rows(one, 3.0);
    FAIL("expected UnknownGamma");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownGamma);
  }
}

TEST_CASE("gexf golden parses back") {
  Fixture f;
  std::ostringstream out;
  write_gexf(out, f.g, f.layout, f.clustering, f.labels);
  check_golden("fixture.gexf", out.str());

  namespace pt = boost::property_tree;
  pt::ptree doc;
  std::istringstream in(out.str());
  pt::read_xml(in, doc);
  const auto& graph = doc.get_child("gexf.graph");
  CHECK(graph.get<std::string>("<xmlattr>.defaultedgetype") == "undirected");
  bool declared = false;
  for (const auto& [tag, attr] : graph.get_child("attributes")) {
    if (tag == "attribute" && attr.get<std::string>("<xmlattr>.id") == "cluster") declared = true;
  }
  CHECK(declared);
  std::size_t i = 0;
  for (const auto& [tag, node] : graph.get_child("nodes")) {
    if (tag != "node") continue;
    const auto r = static_cast<Eigen::Index>(i);
    CHECK(node.get<int>("<xmlattr>.id") == f.g.node_ids()[i]);
    CHECK(node.get<std::string>("<xmlattr>.label") == f.labels[i]);
    CHECK(std::abs(node.get<double>("viz:position.<xmlattr>.x") - f.layout.coords(r, 0)) <= 1e-6);
    CHECK(std::abs(node.get<double>("viz:position.<xmlattr>.y") - f.layout.coords(r, 1)) <= 1e-6);
    CHECK(node.get<int>("attvalues.attvalue.<xmlattr>.value") == f.clustering.assignment[i]);
    ++i;
  }
  CHECK(i == 4);
  std::size_t edges = 0;
  for (const auto& [tag, edge] : graph.get_child("edges")) edges += tag == "edge";
  CHECK(edges == 4);
}

TEST_CASE("two-node gexf") {
  const SimilarityGraph two({1, 2}, {{0, 1, 0.5}}, 0.0, Direction::cited);
  Layout l;
  l.node_ids = {1, 2};
  l.coords = Coordinates::Zero(2, 2);
  Clustering c;
  c.node_ids = {1, 2};
  c.assignment = {1, 1};
  std::ostringstream out;
  write_gexf(out, two, l, c, journal_labels(two, nullptr));
  boost::property_tree::ptree doc;
  std::istringstream in(out.str());
  boost::property_tree::read_xml(in, doc);
  CHECK(doc.get_child("gexf.graph.nodes").count("node") == 2);
  CHECK(doc.get_child("gexf.graph.edges").count("edge") == 1);
  CHECK(xml_escape("a<b>&\"c'") == "a&lt;b&gt;&amp;&quot;c&apos;");
}

TEST_CASE("bundle golden and canonical round trip") {
  Fixture f;
  const auto bundle = make_bundle(f.basemap, {f.overlay});
  std::ostringstream out;
  write_bundle(out, bundle);
  check_golden("fixture_bundle.json", out.str());

  std::istringstream in(out.str());
  const auto back = read_bundle(in);
  CHECK(back == bundle);
  std::ostringstream out2;
  write_bundle(out2, back);
  CHECK(out2.str() == out.str());
  for (const auto& [id, row] : back.overlays[0].rows) {
    CHECK(std::any_of(back.nodes.begin(), back.nodes.end(), [&](const BundleNode& n) { return n.id == id; }));
  }
}

TEST_CASE("bundle without overlays") {
  Fixture f;
  const auto bundle = make_bundle(f.basemap, {});
  CHECK(bundle.overlays.empty());
  CHECK(bundle.gammas == std::vector<std::string>{"1", "2"});
  for (const auto& n : bundle.nodes) CHECK(n.clusters.size() == 2);
  const auto doc = bundle_to_json(bundle);
  CHECK(doc.at("overlays").is_array());
  CHECK(doc.at("overlays").empty());
}

TEST_CASE("bundle consistency errors") {
  Fixture f;
  OverlaySet stray = f.overlay;
  stray.rows[0].id = 99;
  try {
    make_bundle(f.basemap, {stray});
    FAIL("expected OverlayBasemapMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OverlayBasemapMismatch);
  }
  auto doc = bundle_to_json(make_bundle(f.basemap, {f.overlay}));
  doc["nodes"][0].erase("x");
  try {
    bundle_from_json(doc);
    FAIL("expected MalformedFile");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedFile);
    CHECK(std::string(e.what()).find("x") != std::string::npos);
  }
}
