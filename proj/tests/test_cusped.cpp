#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "cusp/cusped.hpp"
#include "cusp/error.hpp"
#include "doctest.h"

using namespace cusp;

namespace {

int free_ball_size(int rank, int r) {
  int total = 1, sphere = 2 * rank;
  for (int k = 1; k <= r; ++k) {
    total += sphere;
    sphere *= 2 * rank - 1;
  }
  return total;
}

int exponent(Word const& w, int g) {
  int s = 0;
  for (Letter l : w) {
    if (generator_of(l) == g) s += is_inverse(l) ? -1 : 1;
  }
  return s;
}

}  // namespace

TEST_CASE("free group ball with a cyclic peripheral") {
  auto p = parse_presentation("gens a,b; rels ; periph P: a [free]");
  auto c = build_cusped_space(p, 2, 1);
  CHECK(c.Y.vertex_count() == free_ball_size(2, 2));
  CHECK(c.Y.vertex_count() == 17);
  CHECK(c.Y.edge_count() == 16);
  CHECK(validate_complex(c.X).empty());
  // every coset's horoball sits over its induced path
  for (auto const& coset : c.cosets) {
    int m = static_cast<int>(coset.members.size());
    CHECK(static_cast<int>(coset.subgraph.edges.size()) == m - 1);
    CHECK(coset.subgraph.connected());
    CHECK(coset.column.size() == 2);
  }
  // cosets: e<a> has 5 members (a^-2..a^2), the 12 others are split among
  // cosets b<a>, b'<a>, ... met by the ball
  auto const& id = coset_of(c, c.basepoint, 0);
  CHECK(id.representative == c.basepoint);
  CHECK(id.members.size() == 5);
}

TEST_CASE("no peripherals means no horoballs") {
  auto p = parse_presentation("gens a,b");
  auto c = build_cusped_space(p, 1, 3);
  CHECK(c.X.vertex_count() == c.Y.vertex_count());
  CHECK(c.Y.vertex_count() == 5);
  for (int v = 0; v < c.X.vertex_count(); ++v) CHECK(depth_function(c, v) == 0);
}

TEST_CASE("Z2 as its own peripheral has one coset") {
  auto p = parse_presentation("gens a,b; rels [a,b]; periph P: a,b [free-abelian]");
  auto c = build_cusped_space(p, 2, 2);
  CHECK(c.cosets.size() == 1);
  CHECK(c.Y.vertex_count() == 13);
  CHECK(c.cosets[0].members.size() == 13);
  CHECK(c.X.vertex_count() == 13 * 3);
  // relator squares inside the ball: the 4 unit squares around the origin
  int relator_faces = 0;
  for (auto const& f : c.X.faces()) relator_faces += f.kind == FaceKind::relator;
  CHECK(relator_faces == 4);
  CHECK(validate_complex(c.X).empty());
}

TEST_CASE("coset lookup") {
  auto p = parse_presentation("gens a,b; rels ; periph P: a [free]");
  auto c = build_cusped_space(p, 3, 1);
  int  b = c.vertex_of(p.parse_word("b"));
  auto const& cb = coset_of(c, b, 0);
  CHECK(cb.representative == b);
  int ba = c.vertex_of(p.parse_word("ba"));
  CHECK(&coset_of(c, ba, 0) == &cb);
  CHECK(depth_function(c, c.basepoint) == 0);
  int up = parse_vertex_spec(c, "ba#0:1");
  CHECK(depth_function(c, up) == 1);
  CHECK(c.X.vertex(up).base == ba);
  CHECK(c.describe(up) == "ba#0:1");
  CHECK_THROWS_AS(parse_vertex_spec(c, "bbbb"), Error);
  CHECK_THROWS_AS(parse_vertex_spec(c, "b#0:2"), Error);
}

TEST_CASE("coset partition agrees with exponent oracles") {
  for (int r = 1; r <= 4; ++r) {
    auto p = parse_presentation("gens a,b; rels [a,b]; periph P: a [free]");
    auto c = build_cusped_space(p, r, 1);
    std::map<int, int> coset_of_row;
    std::set<int>      seen;
    for (std::size_t ci = 0; ci < c.cosets.size(); ++ci) {
      auto const& coset = c.cosets[ci];
      int         row   = exponent(c.Y.vertex(coset.representative).word, 1);
      CHECK(coset_of_row.emplace(row, static_cast<int>(ci)).second);
      for (int y : coset.members) {
        CHECK(seen.insert(y).second);
        CHECK(exponent(c.Y.vertex(y).word, 1) == row);
        CHECK(!shortlex_less(c.Y.vertex(y).word, c.Y.vertex(coset.representative).word));
      }
    }
    CHECK(static_cast<int>(seen.size()) == c.Y.vertex_count());

    auto q  = parse_presentation("gens a,b; rels ; periph P: a [free]");
    auto cf = build_cusped_space(q, r, 0);
    std::set<int> covered;
    for (auto const& coset : cf.cosets) {
      Word rep = cf.Y.vertex(coset.representative).word;
      for (int y : coset.members) {
        CHECK(covered.insert(y).second);
        // g in rep<a> iff rep^-1 g reduces to a power of a
        auto x = free_reduce(concat(inverse(rep), cf.Y.vertex(y).word));
        CHECK(std::all_of(x.begin(), x.end(), [](Letter l) { return generator_of(l) == 0; }));
      }
    }
    CHECK(static_cast<int>(covered.size()) == cf.Y.vertex_count());
  }
}

TEST_CASE("builds are deterministic") {
  auto p  = parse_presentation("gens a,b; rels [a,b]; periph P: a [free]");
  auto c1 = build_cusped_space(p, 3, 2);
  auto c2 = build_cusped_space(p, 3, 2);
  REQUIRE(c1.cosets.size() == c2.cosets.size());
  for (std::size_t i = 0; i < c1.cosets.size(); ++i) {
    CHECK(c1.cosets[i].representative == c2.cosets[i].representative);
    CHECK(c1.cosets[i].members == c2.cosets[i].members);
  }
  CHECK(c1.X.edge_count() == c2.X.edge_count());
  CHECK(c1.X.face_count() == c2.X.face_count());
}

TEST_CASE("horoball base agrees with the coset subgraph") {
  auto p = parse_presentation("gens a,b; rels [a,b]; periph P: a,b [free-abelian]");
  auto c = build_cusped_space(p, 3, 2);
  for (auto const& coset : c.cosets) {
    for (auto [i, j] : coset.subgraph.edges) {
      CHECK(c.Y.find_edge(coset.members[static_cast<std::size_t>(i)],
                          coset.members[static_cast<std::size_t>(j)]).has_value());
    }
    int level0 = 0;
    for (std::size_t i = 0; i < coset.members.size(); ++i) {
      for (std::size_t j = i + 1; j < coset.members.size(); ++j) {
        level0 += c.Y.find_edge(coset.members[i], coset.members[j]).has_value();
      }
    }
    CHECK(level0 == static_cast<int>(coset.subgraph.edges.size()));
  }
}

TEST_CASE("frontier flags") {
  auto p = parse_presentation("gens a,b; rels ; periph P: a [free]");
  auto c = build_cusped_space(p, 3, 2);
  for (int y = 0; y < c.Y.vertex_count(); ++y) {
    auto const& w = c.Y.vertex(y).word;
    if (w.size() == 3) CHECK(c.X.vertex(y).frontier);
  }
  // the identity: its a-line reaches the sphere three steps away in either
  // direction, more than the reach needed by its level-0 star
  CHECK(!c.X.vertex(c.basepoint).frontier);
  for (int v = c.Y.vertex_count(); v < c.X.vertex_count(); ++v) {
    if (c.X.vertex(v).depth == 2) CHECK(c.X.vertex(v).frontier);
  }
  // depth-1 vertex over the identity sees a^{±4} in its star's reach
  CHECK(c.X.vertex(c.vertex_above(c.basepoint, 0, 1)).frontier);
}

TEST_CASE("surface group ball matches a small-cancellation count") {
  auto p = parse_presentation("gens a1,b1,a2,b2\nrels [a1,b1][a2,b2]");
  auto c = build_cusped_space(p, 4, 0);
  // reduced words of length <= 4 over 4 generators, identified when
  // u v^-1 reduces to a rotation of the relator or its inverse
  std::vector<Word> words{Word{}};
  for (std::size_t h = 0; h < words.size(); ++h) {
    if (words[h].size() == 4) continue;
    for (int g = 0; g < 4; ++g) {
      for (bool inv : {false, true}) {
        Letter l = letter(g, inv);
        if (!words[h].empty() && words[h].back() == -l) continue;
        Word x = words[h];
        x.push_back(l);
        words.push_back(x);
      }
    }
  }
  Word rel = p.relators[0];
  std::set<Word> rotations;
  for (Word const& r : {rel, inverse(rel)}) {
    for (std::size_t k = 0; k < r.size(); ++k) {
      Word x(r.begin() + static_cast<long>(k), r.end());
      x.insert(x.end(), r.begin(), r.begin() + static_cast<long>(k));
      rotations.insert(x);
    }
  }
  std::map<Word, int> index;
  for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = static_cast<int>(i);
  std::vector<int> parent(words.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]); };
  for (auto const& x : rotations) {
    Word u(x.begin(), x.begin() + 4);
    Word v = inverse(Word(x.begin() + 4, x.end()));
    parent[static_cast<std::size_t>(find(index.at(u)))] = find(index.at(v));
  }
  std::set<int> classes;
  for (std::size_t i = 0; i < words.size(); ++i) classes.insert(find(static_cast<int>(i)));
  CHECK(c.Y.vertex_count() == static_cast<int>(classes.size()));
  CHECK(validate_complex(c.X).empty());
  // each vertex of a one-relator complex lies on |relator| faces, and every
  // face through the identity stays within distance 4 of it
  CHECK(c.X.faces_at_vertex(c.basepoint).size() == 8);
}

TEST_CASE("build errors") {
  auto p = parse_presentation("gens a,b");
  CHECK_THROWS_AS(build_cusped_space(p, 0, 1), Error);
  CHECK_THROWS_AS(build_cusped_space(p, 1, -1), Error);
  BuildLimits tiny;
  tiny.max_vertices = 10;
  CHECK_THROWS_WITH_AS(build_cusped_space(p, 3, 0, tiny), doctest::Contains("vertices"), Error);
}
