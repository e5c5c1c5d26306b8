#include <doctest.h>

#include <cmath>
#include <sstream>

#include "scimap/error.hpp"
#include "scimap/export.hpp"
#include "scimap/overlay.hpp"
#include "scimap/text.hpp"
#include "support.hpp"

using namespace scimap;

namespace {

Basemap small_basemap() {
  std::vector<BasemapRow> rows;
  for (int id = 1; id <= 4; ++id) {
    const auto title = id == 1 ? std::string("J1") : synthetic_title(id);
    rows.push_back({id, title, normalize_title(title), 0.5 * id, -0.25 * id, {id % 2 + 1, id}});
  }
  return Basemap({1.0, 2.0}, rows);
}

WosTally tally_of(std::map<std::string, std::int64_t> counts) {
  WosTally t;
  t.counts = std::move(counts);
  return t;
}

}  // namespace

TEST_CASE("log weights") {
  CHECK(std::abs(log_weight(1) - std::log10(2.0)) <= 1e-12);
  CHECK(std::abs(log_weight(9) - 1.0) <= 1e-12);
  CHECK(std::abs(log_weight(99) - 2.0) <= 1e-12);
}

TEST_CASE("a matched journal takes its basemap position and cluster") {
  const auto b = small_basemap();
  const auto o = build_overlay(tally_of({{"J1", 9}}), b, 1.0);
  REQUIRE(o.rows.size() == 1);
  CHECK(o.rows[0].id == 1);
  CHECK(o.rows[0].weight == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(o.rows[0].x == 0.5);
  CHECK(o.rows[0].cluster == 2);
  CHECK(build_overlay(tally_of({{"J1", 9}}), b, 2.0).rows[0].cluster == 1);
  CHECK(o.unmatched.empty());
}

TEST_CASE("unknown titles are reported, not dropped") {
  const auto o = build_overlay(tally_of({{"NONEXISTENT JOURNAL", 3}}), small_basemap(), 1.0);
  CHECK(o.rows.empty());
  REQUIRE(o.unmatched.size() == 1);
  CHECK(o.unmatched[0] == std::pair<std::string, std::int64_t>{"NONEXISTENT JOURNAL", 3});
}

TEST_CASE("unknown resolution") {
  try {
    build_overlay(tally_of({{"J1", 1}}), small_basemap(), 1.5);
    FAIL("expected UnknownGamma");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownGamma);
  }
}

TEST_CASE("publication mass is conserved") {
  const auto b = small_basemap();
  SeededUniform rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<std::string, std::int64_t> counts;
    std::int64_t total = 0;
    for (int k = 0; k < 6; ++k) {
      const auto n = 1 + static_cast<std::int64_t>(rng.below(50));
      const auto pick = rng.below(6);
      const std::string title = pick < 4 ? b.rows()[pick].normalized_title : fmt::format("OTHER {}", pick);
      counts[title] += n;
      total += n;
    }
    const auto o = build_overlay(tally_of(counts), b, 1.0);
    CHECK(o.matched_total() + o.unmatched_total() == total);
  }
}

TEST_CASE("files carry raw log weights") {
  const auto b = small_basemap();
  const auto o = build_overlay(tally_of({{"J1", 9}, {normalize_title(synthetic_title(3)), 1}}), b, 1.0, "demo");
  support::TempDir dir;
  const auto files = write_overlay_outputs(o, dir.path(), "cited.txt");
  CHECK(files.warnings.empty());
  CHECK(support::slurp(files.map_file) ==
        "id\tlabel\tx\ty\tcluster\tweight\n"
        "1\tJ1\t0.500000\t-0.250000\t2\t1.00000\n"
        "3\tJournal of GENETICS 00003\t1.500000\t-0.750000\t2\t0.30103\n");
  CHECK(support::slurp(files.table_file) ==
        "full_title,npubl,weight,cluster,x,y\n"
        "J1,9,1.00000,2,0.500000,-0.250000\n"
        "Journal of GENETICS 00003,1,0.30103,2,1.500000,-0.750000\n");
  std::ifstream in(files.table_file);
  const auto back = read_overlay_table(in, b, 1.0, "demo");
  REQUIRE(back.rows.size() == 2);
  CHECK(back.rows[1].n_publ == 1);
}

TEST_CASE("an empty overlay still writes headers") {
  const auto o = build_overlay(tally_of({{"NOWHERE", 2}}), small_basemap(), 1.0);
  support::TempDir dir;
  const auto files = write_overlay_outputs(o, dir.path());
  REQUIRE(files.warnings.size() == 1);
  CHECK(files.warnings[0].starts_with("EmptyOverlay"));
  CHECK(support::slurp(files.table_file) == "full_title,npubl,weight,cluster,x,y\n");
  CHECK(support::slurp(files.map_file) == "id\tlabel\tx\ty\tcluster\tweight\n");
}

TEST_CASE("two overlays share basemap positions") {
  const auto b = small_basemap();
  const auto first = build_overlay(tally_of({{"J1", 2}, {normalize_title(synthetic_title(4)), 5}}), b, 1.0);
  const auto second = build_overlay(tally_of({{"J1", 40}}), b, 1.0);
  CHECK(first.rows[0].x == second.rows[0].x);
  CHECK(first.rows[0].y == second.rows[0].y);
  CHECK(first.rows[0].cluster == second.rows[0].cluster);
}
