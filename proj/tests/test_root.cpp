#include <catch_amalgamated.hpp>

#include <set>

#include "sympl/root.hpp"

using namespace sympl;

TEST_CASE("index set conventions", "[root]") {
  CHECK(index_order(3) == std::vector<int>{1, 2, 3, -3, -2, -1});
  CHECK(index_pos(-1, 3) == 5);
  CHECK(index_pos(-3, 3) == 3);
  CHECK(index_successor(3, 3) == -3);
  CHECK_THROWS_AS(index_successor(-1, 3), UsageError);
  CHECK_THROWS_AS(index_pos(0, 3), UsageError);
  CHECK_THROWS_AS(index_pos(4, 3), UsageError);
  CHECK(index_less(3, -3, 3));
}

TEST_CASE("root counts", "[root]") {
  for (int n = 1; n <= kMaxRank; ++n) {
    auto roots = all_roots(n);
    CHECK(roots.size() == static_cast<std::size_t>(2 * n * n));
    std::size_t shorts = 0;
    for (auto const& r : roots) {
      shorts += r.is_short() ? 1 : 0;
    }
    CHECK(shorts == static_cast<std::size_t>(2 * n * (n - 1)));
    CHECK(std::set<Root>(roots.begin(), roots.end()).size() == roots.size());
  }
}

TEST_CASE("root_of_position", "[root]") {
  CHECK(root_of_position(1, 2, 3).to_string() == "e1-e2");
  CHECK(root_of_position(1, -1, 3).to_string() == "2e1");
  CHECK(root_of_position(-2, -1, 3) == root_of_position(1, 2, 3));
  CHECK(root_of_position(1, -2, 3).to_string() == "e1+e2");
  CHECK(root_of_position(-1, 2, 3).to_string() == "-e1-e2");
  CHECK(root_of_position(-1, 1, 3).to_string() == "-2e1");
  CHECK_THROWS_AS(root_of_position(2, 2, 3), UsageError);
}

TEST_CASE("fibers of p are mirrored position pairs", "[root]") {
  int n = 3;
  for (int i : index_order(n)) {
    for (int j : index_order(n)) {
      if (i == j) {
        continue;
      }
      Root r = root_of_position(i, j, n);
      CHECK(root_of_position(-j, -i, n) == r);
      auto [a, b] = position_of_root(r);
      CHECK(root_of_position(a, b, n) == r);
      bool same = (a == i && b == j) || (a == -j && b == -i);
      CHECK(same);
    }
  }
}

TEST_CASE("root parsing and printing", "[root]") {
  for (auto const& r : all_roots(3)) {
    CHECK(Root::parse(r.to_string(), 3) == r);
  }
  CHECK_THROWS_AS(Root::parse("e1-e1", 3), ParseError);
  CHECK_THROWS_AS(Root::parse("e4", 3), ParseError);
}

TEST_CASE("reflections permute roots and preserve length", "[root]") {
  auto roots = all_roots(3);
  for (auto const& a : roots) {
    std::set<Root> image;
    for (auto const& b : roots) {
      Root s = reflect(a, b);
      CHECK(s.is_long() == b.is_long());
      image.insert(s);
    }
    CHECK(image.size() == roots.size());
    CHECK(reflect(a, a) == -a);
  }
}
