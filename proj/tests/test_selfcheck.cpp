#include <set>

#include "cusp/selfcheck.hpp"
#include "doctest.h"

using namespace cusp;

TEST_CASE("connected graphs up to isomorphism") {
  // connected unlabeled graphs on 1..5 vertices: 1, 1, 2, 6, 21
  std::vector<std::size_t> expected{1, 1, 2, 6, 21};
  for (int n = 1; n <= 5; ++n) {
    auto gs = connected_graphs(n);
    CHECK(gs.size() == expected[static_cast<std::size_t>(n - 1)]);
    for (auto const& g : gs) {
      CHECK(g.n == n);
      CHECK(g.connected());
    }
  }
  // n = 4: path, star, paw, square, diamond, K4
  std::multiset<std::size_t> edges;
  for (auto const& g : connected_graphs(4)) edges.insert(g.edges.size());
  CHECK(edges == std::multiset<std::size_t>{3, 3, 4, 4, 5, 6});
}

TEST_CASE("random connected graphs are connected, simple and seeded") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    int  n = 2 + static_cast<int>(seed % 7);
    auto g = random_connected_graph(n, 0.3, seed);
    CHECK(g.connected());
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : g.edges) {
      CHECK(u != v);
      CHECK(seen.insert({std::min(u, v), std::max(u, v)}).second);
    }
    CHECK(random_connected_graph(n, 0.3, seed).edges == g.edges);
  }
}

TEST_CASE("quick self-check passes and is deterministic") {
  SelfcheckOptions opt;
  opt.quick  = true;
  auto first = run_selfcheck(opt);
  REQUIRE(first.size() == 9);
  for (std::size_t i = 0; i < first.size(); ++i) {
    CAPTURE(first[i].detail);
    CHECK(first[i].number == static_cast<int>(i + 1));
    CHECK(first[i].passed);
  }
  auto again = run_selfcheck(opt);
  for (std::size_t i = 0; i < first.size(); ++i) CHECK(again[i].detail == first[i].detail);
}
