#include <algorithm>
#include <functional>

#include "cusp/error.hpp"
#include "cusp/excision.hpp"
#include "cusp/strip_corpus.hpp"
#include "doctest.h"

using namespace cusp;

namespace {

CuspedComplex free_with_a() {
  return build_cusped_space(parse_presentation("gens a,b; rels ; periph P: a [free]"), 3, 3);
}

// Column i of the strip maps to cols[i]; `lift` overrides single vertices.
StripMap column_map(CuspedComplex const& c, int height, std::vector<std::string> const& cols,
                    std::vector<std::pair<std::pair<int, int>, std::string>> const& lift = {}) {
  Strip    s(static_cast<int>(cols.size()) - 1, height);
  StripMap m{s, std::vector<int>(static_cast<std::size_t>(s.vertex_count()))};
  for (int v = 0; v < s.vertex_count(); ++v) {
    m.image[static_cast<std::size_t>(v)] = parse_vertex_spec(c, cols[static_cast<std::size_t>(s.coords(v).first)]);
  }
  for (auto const& [ij, spec] : lift) {
    m.image[static_cast<std::size_t>(s.vertex(ij.first, ij.second))] = parse_vertex_spec(c, spec);
  }
  return m;
}

int coset_above(CuspedComplex const& c, char const* spec) {
  return c.horoball_of(parse_vertex_spec(c, spec));
}

}  // namespace

TEST_CASE("strip triangulation") {
  Strip s(3, 2);
  CHECK(s.vertex_count() == 12);
  CHECK(s.triangle_count() == 12);
  CHECK(s.edge_count() == 9 + 8 + 6);
  int mid = s.vertex(1, 1);
  CHECK(s.neighbors(mid).size() == 6);
  CHECK(s.triangles_at_vertex(mid).size() == 6);
  CHECK(s.left_triangle(s.vertex(0, 0), s.vertex(1, 0)) == 0);
  CHECK(s.left_triangle(s.vertex(1, 0), s.vertex(0, 0)) == -1);
  for (int e = 0; e < s.edge_count(); ++e) {
    auto [u, v] = s.edges()[static_cast<std::size_t>(e)];
    CHECK(s.boundary_edge(e) == (s.triangles_at_edge(e).size() == 1));
    CHECK(s.edge_id(v, u) == e);
  }
  CHECK(strip_distance(s, s.vertex(0, 0), s.vertex(1, 1)) == 1);
  CHECK(strip_distance(s, s.vertex(1, 0), s.vertex(0, 1)) == 2);
}

TEST_CASE("strip map validation") {
  auto c  = free_with_a();
  auto ok = column_map(c, 2, {"b", "1", "1", "1", "1"}, {{{2, 1}, "1#0:1"}});
  CHECK(validate_strip_map(c, ok).empty());

  auto far = column_map(c, 2, {"b", "1", "a^2", "1"});
  CHECK(!validate_strip_map(c, far).empty());
  CHECK_THROWS_AS(excise(c, far), Error);

  auto high_row = column_map(c, 2, {"1", "1", "1"}, {{{1, 0}, "1#0:1"}});
  auto probs    = validate_strip_map(c, high_row);
  REQUIRE(!probs.empty());
  CHECK(probs[0].find("outside Y") != std::string::npos);
}

TEST_CASE("coloring") {
  auto c = free_with_a();
  auto m = column_map(c, 2, {"b", "1", "1", "1", "1"}, {{{2, 1}, "1#0:1"}});
  int  i = coset_above(c, "1#0:1");
  auto col = color(c, m, i);
  CHECK(check_observations(m.strip, col).empty());
  CHECK(col.vertex[static_cast<std::size_t>(m.strip.vertex(0, 0))] == Color::green);
  CHECK(col.vertex[static_cast<std::size_t>(m.strip.vertex(1, 0))] == Color::blue);
  CHECK(col.vertex[static_cast<std::size_t>(m.strip.vertex(2, 1))] == Color::red);
  int reds = static_cast<int>(std::count(col.triangle.begin(), col.triangle.end(), Color::red));
  CHECK(reds == 6);

  // structural red agrees with separation by breadth-first search
  for (int v = 0; v < m.strip.vertex_count(); ++v) {
    int x = m.image[static_cast<std::size_t>(v)];
    if (col.vertex[static_cast<std::size_t>(v)] == Color::blue) continue;
    auto sep = separation_oracle(c, x, i);
    CHECK(sep.certified);
    CHECK(sep.separated == (col.vertex[static_cast<std::size_t>(v)] == Color::red));
  }
}

TEST_CASE("separation oracle") {
  auto c = free_with_a();
  int  i = coset_above(c, "1#0:1");
  auto deep = separation_oracle(c, parse_vertex_spec(c, "a#0:2"), i);
  CHECK(deep.separated);
  CHECK(deep.certified);
  CHECK(!separation_oracle(c, parse_vertex_spec(c, "b"), i).separated);
  // a horoball vertex of another coset reaches Y around the coset
  CHECK(!separation_oracle(c, parse_vertex_spec(c, "b#0:1"), i).separated);
  CHECK_THROWS_AS(separation_oracle(c, parse_vertex_spec(c, "a"), i), Error);
}

TEST_CASE("disk pairs") {
  auto c = free_with_a();
  int  i = coset_above(c, "1#0:1");

  SUBCASE("single interior red vertex") {
    auto m    = column_map(c, 2, {"b", "1", "1", "1", "1"}, {{{2, 1}, "1#0:1"}});
    auto col  = color(c, m, i);
    auto cls  = red_classes(m.strip, col);
    REQUIRE(cls.size() == 1);
    CHECK(cls[0].size() == 6);
    auto ind  = disk_pair_induction(m.strip, col, cls[0]);
    CHECK(ind.triangles == cls[0]);
    CHECK(ind.boundary.size() == 6);
    CHECK(!ind.truncated);
    CHECK(ind == disk_pair_region_grow(m.strip, col, cls[0]));
    auto pairs = excise(c, m);
    REQUIRE(pairs.size() == 1);
    CHECK(validate_excision(c, m, pairs).valid);
  }

  SUBCASE("red stars meeting along a blue edge stay separate") {
    auto m   = column_map(c, 3, {"b", "1", "1", "1", "1", "1", "1"},
                          {{{2, 1}, "1#0:1"}, {{4, 2}, "1#0:1"}});
    auto col = color(c, m, i);
    auto cls = red_classes(m.strip, col);
    REQUIRE(cls.size() == 2);
    for (auto const& k : cls) {
      CHECK(disk_pair_induction(m.strip, col, k) == disk_pair_region_grow(m.strip, col, k));
    }
    auto pairs = excise(c, m);
    CHECK(pairs.size() == 2);
    CHECK(validate_excision(c, m, pairs).valid);
  }

  SUBCASE("a lifted ring swallows the blue pocket it encloses") {
    std::vector<std::pair<std::pair<int, int>, std::string>> lift;
    Strip probe(8, 6);
    int   center = probe.vertex(4, 3);
    for (int v = 0; v < probe.vertex_count(); ++v) {
      int d = strip_distance(probe, center, v);
      if (d == 2) lift.push_back({probe.coords(v), "1#0:1"});
      if (d == 0) lift.push_back({probe.coords(v), "1#0:1"});
    }
    auto m   = column_map(c, 6, {"b", "1", "1", "1", "1", "1", "1", "1", "1"}, lift);
    REQUIRE(validate_strip_map(c, m).empty());
    auto col = color(c, m, i);
    auto cls = red_classes(m.strip, col);
    REQUIRE(cls.size() == 2);
    auto outer = disk_pair_induction(m.strip, col, cls[0]);
    auto inner = disk_pair_induction(m.strip, col, cls[1]);
    if (outer.triangles.size() < inner.triangles.size()) std::swap(outer, inner);
    CHECK(std::includes(outer.triangles.begin(), outer.triangles.end(), inner.triangles.begin(),
                        inner.triangles.end()));
    CHECK(outer == disk_pair_region_grow(m.strip, col, outer.cls));
    auto pairs = excise(c, m);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].triangles == outer.triangles);
    CHECK(validate_excision(c, m, pairs).valid);
  }

  SUBCASE("blue rows around a red interior give the whole strip") {
    std::vector<std::pair<std::pair<int, int>, std::string>> lift;
    for (int x = 0; x <= 3; ++x) lift.push_back({{x, 1}, "1#0:1"});
    auto m   = column_map(c, 2, {"1", "1", "1", "1"}, lift);
    auto col = color(c, m, i);
    auto cls = red_classes(m.strip, col);
    REQUIRE(cls.size() == 1);
    auto d = disk_pair_induction(m.strip, col, cls[0]);
    CHECK(static_cast<int>(d.triangles.size()) == m.strip.triangle_count());
    CHECK(d.truncated);
  }

  SUBCASE("map into Y has nothing to excise") {
    auto m = column_map(c, 3, {"1", "b", "b^2", "b"});
    CHECK(excise(c, m).empty());
    CHECK(validate_excision(c, m, {}).valid);
  }
}

TEST_CASE("excision validator") {
  auto c = free_with_a();
  int  i = coset_above(c, "1#0:1");
  auto m = column_map(c, 2, {"b", "1", "1", "1", "1", "1"}, {{{2, 1}, "1#0:1"}, {{3, 1}, "1#0:1"}});
  auto star = [&](int x) {
    DiskPair d;
    d.coset     = i;
    d.triangles = m.strip.triangles_at_vertex(m.strip.vertex(x, 1));
    std::sort(d.triangles.begin(), d.triangles.end());
    d.boundary  = m.strip.neighbors(m.strip.vertex(x, 1));
    std::rotate(d.boundary.begin(), std::min_element(d.boundary.begin(), d.boundary.end()),
                d.boundary.end());
    return d;
  };
  auto report = validate_excision(c, m, {star(2), star(3)});
  CHECK(!report.valid);
  bool crossing = false, non_blue = false;
  for (auto const& v : report.violations) {
    crossing = crossing || v.find("cross at edge") != std::string::npos;
    non_blue = non_blue || v.find("non-blue boundary") != std::string::npos;
  }
  CHECK(crossing);
  CHECK(non_blue);

  auto good = excise(c, m);
  REQUIRE(good.size() == 1);
  CHECK(validate_excision(c, m, good).valid);

  auto missing = validate_excision(c, m, {});
  CHECK(!missing.valid);
  CHECK(missing.violations[0].find("maps outside Y") != std::string::npos);
}

TEST_CASE("seeded strip corpus") {
  std::vector<CuspedComplex> targets;
  targets.push_back(free_with_a());
  targets.push_back(build_cusped_space(
      parse_presentation("gens a,b; rels ; periph P: a [free]; periph Q: b [free]"), 3, 3));
  int            classes = 0, nested = 0, pairs_total = 0;
  InductionStats stats;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    auto const& c = targets[seed % targets.size()];
    auto        m = random_strip_map(c, seed);
    CAPTURE(seed);
    REQUIRE(validate_strip_map(c, m).empty());
    int found = 0;
    for (int i = 0; i < static_cast<int>(c.cosets.size()); ++i) {
      auto col = color(c, m, i);
      CHECK(check_observations(m.strip, col).empty());
      for (auto const& k : red_classes(m.strip, col)) {
        ++classes;
        ++found;
        CHECK(disk_pair_induction(m.strip, col, k, &stats) == disk_pair_region_grow(m.strip, col, k));
      }
    }
    auto pairs = excise(c, m);
    pairs_total += static_cast<int>(pairs.size());
    nested += found - static_cast<int>(pairs.size());
    auto report = validate_excision(c, m, pairs);
    CHECK(report.valid);
    if (!report.valid) MESSAGE(report.violations.front());
  }
  CHECK(classes > 60);
  CHECK(nested > 0);
  CHECK(stats.new_vertex > 0);
  CHECK(stats.adjacent > 0);
  CHECK(stats.pocket > 0);
  MESSAGE("classes " << classes << ", pairs " << pairs_total << ", nested " << nested << ", steps "
                     << stats.new_vertex << "/" << stats.adjacent << "/" << stats.pocket);
}
