#include <doctest.h>

#include <sstream>

#include "scimap/text.hpp"

using namespace scimap;

TEST_CASE("normalize_title uppercases, collapses whitespace, strips trailing periods") {
  CHECK(normalize_title("  Journal of   informetrics ") == "JOURNAL OF INFORMETRICS");
  CHECK(normalize_title("Scientometrics.") == "SCIENTOMETRICS");
  CHECK(normalize_title("J. Am. Soc. Inf. Sci.. ") == "J. AM. SOC. INF. SCI");
  CHECK(normalize_title("a\tb\r\nc") == "A B C");
  CHECK(normalize_title("") == "");
  CHECK(normalize_title(" . ") == "");
}

TEST_CASE("normalize_title is idempotent") {
  for (const char* t : {"Nature", " the  LANCET. ", "J. Doc..", "x . .", "Ann. N.Y. Acad. Sci.", "\t a \t"}) {
    const auto once = normalize_title(t);
    CHECK(normalize_title(once) == once);
  }
}

TEST_CASE("csv lines split with quoting") {
  auto f = split_csv_line(R"(1,"Journal, of ""Things""",J T)");
  REQUIRE(f);
  REQUIRE(f->size() == 3);
  CHECK((*f)[1] == R"(Journal, of "Things")");
  CHECK(!split_csv_line(R"(1,"open)"));
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  auto back = split_csv_line(csv_field("x,\"y\"") + ",z");
  REQUIRE(back);
  CHECK((*back)[0] == "x,\"y\"");
}

TEST_CASE("LineReader strips BOM and carriage returns") {
  std::istringstream in("\xEF\xBB\xBFid,x\r\n1,2\r\n");
  LineReader r(in);
  std::string line;
  REQUIRE(r.next(line));
  CHECK(line == "id,x");
  REQUIRE(r.next(line));
  CHECK(line == "1,2");
  CHECK(r.line_number() == 2);
  CHECK(!r.next(line));
}

TEST_CASE("number parsing and formatting") {
  CHECK(parse_int(" 42 ") == 42);
  CHECK(!parse_int("4x"));
  CHECK(parse_double("+0.5") == 0.5);
  CHECK(!parse_double(""));
  CHECK(format_fixed(0.8, 6) == "0.800000");
  CHECK(format_fixed(-0.0000001, 6) == "0.000000");
  CHECK(format_fixed(1.0, 5) == "1.00000");
  CHECK(format_exact(0.1) == "0.1");
  CHECK(format_exact(0.0) == "0");
  CHECK(gamma_key(1.0) == "1");
  CHECK(gamma_key(1.5) == "1.5");
  CHECK(gamma_key(0.25) == "0.25");
}
