#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>

#include "sympl/catalog.hpp"

using namespace sympl;

TEST_CASE("builtin catalog", "[catalog]") {
  auto c = Catalog::builtin();
  CHECK(c.rings().size() >= 5);
  for (char const* name : {"F2", "F2eps", "F4", "F2xF2", "F2t3"}) {
    CHECK(c.contains(name));
  }
  CHECK(c.get("F2t3")->size() == 8);
  CHECK(c.get("F2xF2")->one().bits == 3);
  CHECK_THROWS_AS(c.get("nope"), UsageError);
}

TEST_CASE("catalog parse errors carry line numbers", "[catalog]") {
  try {
    (void)parse_catalog("ring A\nbasis e\nunit e\nfrobnicate\n");
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse_catalog("basis e\n"), ParseError);
  CHECK_THROWS_AS(parse_catalog("ring A\nmul e*e\n"), ParseError);
  CHECK_THROWS_AS(Catalog::from_text("ring A\nbasis e\nunit e\nmul e*q=e\n"),
                  ValidationError);
  CHECK_THROWS_AS(
      Catalog::from_text("ring A\nbasis e\nunit e\nmul e*e=e\n"
                         "ring A\nbasis e\nunit e\nmul e*e=e\n"),
      ValidationError);
}

TEST_CASE("to_catalog round trip", "[catalog]") {
  for (auto const& r : Catalog::builtin().rings()) {
    auto again = Catalog::from_text(r->to_catalog());
    REQUIRE(again.rings().size() == 1);
    auto const& s = again.rings().front();
    CHECK(s->name() == r->name());
    CHECK(s->one() == r->one());
    for (auto a : r->elements()) {
      for (auto b : r->elements()) {
        CHECK(s->mul(a, b) == r->mul(a, b));
      }
    }
  }
}

TEST_CASE("catalog from environment", "[catalog]") {
  std::string path = "test_catalog_env.cat";
  {
    std::ofstream out(path);
    out << "ring Z2only\nbasis e\nunit e\nmul e*e=e\n";
  }
  ::setenv("SYMPL_CATALOG", path.c_str(), 1);
  auto c = Catalog::from_environment();
  ::unsetenv("SYMPL_CATALOG");
  CHECK(c.rings().size() == 1);
  CHECK(c.contains("Z2only"));
  CHECK(Catalog::from_environment().contains("F4"));
}
