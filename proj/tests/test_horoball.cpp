#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <set>

#include "cusp/error.hpp"
#include "cusp/horoball.hpp"
#include "doctest.h"

using namespace cusp;

namespace {

BaseGraph path_graph(int n) {
  BaseGraph g;
  g.n = n;
  for (int i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
  return g;
}

BaseGraph cycle_graph(int n) {
  auto g = path_graph(n);
  g.edges.emplace_back(n - 1, 0);
  return g;
}

BaseGraph random_connected(int n, std::mt19937& rng) {
  BaseGraph g;
  g.n = n;
  std::set<std::pair<int, int>> seen;
  for (int i = 1; i < n; ++i) {
    int j = static_cast<int>(rng() % static_cast<unsigned>(i));
    g.edges.emplace_back(j, i);
    seen.emplace(j, i);
  }
  for (int k = 0; k < n / 2; ++k) {
    int a = static_cast<int>(rng() % static_cast<unsigned>(n));
    int b = static_cast<int>(rng() % static_cast<unsigned>(n));
    if (a > b) std::swap(a, b);
    if (a != b && seen.emplace(a, b).second) g.edges.emplace_back(a, b);
  }
  return g;
}

// Independent oracle: the horoball's cells computed straight from the
// defining clauses. Vertices are (base, level) pairs; cells are sets of
// vertex pairs.
using Node   = std::pair<int, int>;
using Link   = std::pair<Node, Node>;
using Cell   = std::set<Link>;

Link link(Node a, Node b) { return a < b ? Link{a, b} : Link{b, a}; }

struct Oracle {
  std::set<Link> edges;
  std::set<Cell> triangles, squares, pentagons;
};

Oracle oracle(BaseGraph const& g, int dmax) {
  int                           n = g.n;
  std::vector<std::vector<int>> d(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [a, b] : g.edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  for (int s = 0; s < n; ++s) {
    std::queue<int> q;
    q.push(s);
    d[static_cast<std::size_t>(s)][static_cast<std::size_t>(s)] = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y : adj[static_cast<std::size_t>(x)]) {
        if (d[static_cast<std::size_t>(s)][static_cast<std::size_t>(y)] < 0) {
          d[static_cast<std::size_t>(s)][static_cast<std::size_t>(y)] = d[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)] + 1;
          q.push(y);
        }
      }
    }
  }
  Oracle o;
  for (auto [a, b] : g.edges) o.edges.insert(link({a, 0}, {b, 0}));
  for (int k = 1; k <= dmax; ++k) {
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        int dab = d[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        if (dab > 0 && dab <= (1 << k)) o.edges.insert(link({a, k}, {b, k}));
      }
    }
  }
  for (int k = 0; k < dmax; ++k) {
    for (int a = 0; a < n; ++a) o.edges.insert(link({a, k}, {a, k + 1}));
  }
  // all circuits of length 3..5 by brute force
  std::map<Node, std::vector<Node>> nb;
  for (auto const& e : o.edges) {
    nb[e.first].push_back(e.second);
    nb[e.second].push_back(e.first);
  }
  std::set<Cell> circuits[6];
  std::vector<Node> stack;
  std::function<void(Node, int)> dfs = [&](Node start, int len) {
    Node cur = stack.back();
    for (Node nxt : nb[cur]) {
      if (nxt == start && static_cast<int>(stack.size()) == len) {
        Cell c;
        for (std::size_t i = 0; i < stack.size(); ++i) c.insert(link(stack[i], stack[(i + 1) % stack.size()]));
        circuits[len].insert(c);
      } else if (nxt > start && static_cast<int>(stack.size()) < len
                 && std::find(stack.begin(), stack.end(), nxt) == stack.end()) {
        stack.push_back(nxt);
        dfs(start, len);
        stack.pop_back();
      }
    }
  };
  for (auto const& [v, _] : nb) {
    for (int len = 3; len <= 5; ++len) {
      stack = {v};
      dfs(v, len);
    }
  }
  auto vertical = [](Link const& l) { return l.first.second != l.second.second; };
  auto count_v  = [&](Cell const& c) {
    return static_cast<int>(std::count_if(c.begin(), c.end(), vertical));
  };
  for (auto const& c : circuits[3]) if (count_v(c) == 0) o.triangles.insert(c);
  for (auto const& c : circuits[4]) if (count_v(c) == 2) o.squares.insert(c);
  for (auto const& c : circuits[5]) {
    if (count_v(c) != 2) continue;
    bool excluded = false;
    for (auto const& s : o.squares) {
      for (auto const& t : o.triangles) {
        Cell sym;
        std::set_symmetric_difference(s.begin(), s.end(), t.begin(), t.end(), std::inserter(sym, sym.end()));
        std::set<Link> shared;
        std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::inserter(shared, shared.end()));
        if (shared.size() == 1 && sym == c) excluded = true;
      }
    }
    if (!excluded) o.pentagons.insert(c);
  }
  return o;
}

Node node_of(HoroballComplex const& h, int v) {
  auto const& vx = h.complex.vertex(v);
  return vx.kind == VertexKind::horo ? Node{vx.base, vx.depth} : Node{v, 0};
}

Oracle built(HoroballComplex const& h) {
  Oracle o;
  for (auto const& e : h.complex.edges()) o.edges.insert(link(node_of(h, e.u), node_of(h, e.v)));
  for (auto const& f : h.complex.faces()) {
    Cell c;
    for (int e : f.edges) {
      auto const& ed = h.complex.edge(e);
      c.insert(link(node_of(h, ed.u), node_of(h, ed.v)));
    }
    switch (f.kind) {
      case FaceKind::triangle: o.triangles.insert(c); break;
      case FaceKind::square: o.squares.insert(c); break;
      case FaceKind::pentagon: o.pentagons.insert(c); break;
      default: break;
    }
  }
  return o;
}

void check_against_oracle(BaseGraph const& g, int dmax) {
  auto h = build_horoball(g, dmax);
  auto o = oracle(g, dmax);
  auto b = built(h);
  CHECK(h.complex.vertex_count() == g.n * (dmax + 1));
  CHECK(b.edges == o.edges);
  CHECK(b.triangles == o.triangles);
  CHECK(b.squares == o.squares);
  CHECK(b.pentagons == o.pentagons);
  // no duplicated faces
  int faces = static_cast<int>(o.triangles.size() + o.squares.size() + o.pentagons.size());
  CHECK(h.complex.face_count() == faces);
  CHECK(validate_complex(h.complex).empty());
}

}  // namespace

TEST_CASE("horoball over a single edge") {
  BaseGraph g{2, {{0, 1}}};
  auto      h = build_horoball(g, 2);
  CHECK(h.complex.vertex_count() == 6);
  int horizontal = 0, vertical = 0, squares = 0;
  for (auto const& e : h.complex.edges()) (e.horizontal() ? horizontal : vertical)++;
  for (auto const& f : h.complex.faces()) squares += f.kind == FaceKind::square;
  CHECK(horizontal == 3);
  CHECK(vertical == 4);
  CHECK(squares == 2);
  CHECK(h.complex.face_count() == 2);
  check_against_oracle(g, 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(h.complex.vertex(h.vertex_id(i, 2)).frontier);
    CHECK(!h.complex.vertex(h.vertex_id(i, 1)).frontier);
  }
}

TEST_CASE("horoball over a single vertex is a vertical ray") {
  auto h = build_horoball(BaseGraph{1, {}}, 3);
  CHECK(h.complex.vertex_count() == 4);
  CHECK(h.complex.edge_count() == 3);
  CHECK(h.complex.face_count() == 0);
}

TEST_CASE("level one joins the ends of a path of length two") {
  auto h = build_horoball(path_graph(3), 1);
  CHECK(h.complex.find_edge(h.vertex_id(0, 1), h.vertex_id(2, 1)).has_value());
  CHECK(!h.complex.find_edge(h.vertex_id(0, 0), h.vertex_id(2, 0)).has_value());
  check_against_oracle(path_graph(3), 1);
}

TEST_CASE("cells match the defining clauses on small base graphs") {
  check_against_oracle(path_graph(5), 3);
  check_against_oracle(cycle_graph(5), 2);
  check_against_oracle(BaseGraph{4, {{0, 1}, {0, 2}, {0, 3}}}, 2);
  check_against_oracle(BaseGraph{3, {{0, 1}, {1, 2}, {0, 2}}}, 2);
  std::mt19937 rng(5);
  for (int i = 0; i < 6; ++i) check_against_oracle(random_connected(6, rng), 2);
}

TEST_CASE("B2 completeness up to twelve base vertices") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 4; ++trial) {
    auto g = trial == 0 ? path_graph(12) : random_connected(12, rng);
    auto h = build_horoball(g, 4);
    auto d = all_pairs_distances(g);
    for (int k = 1; k <= 4; ++k) {
      for (int a = 0; a < g.n; ++a) {
        for (int b = a + 1; b < g.n; ++b) {
          int  dab  = d[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
          bool want = dab > 0 && dab <= (1 << k);
          CHECK(h.complex.find_edge(h.vertex_id(a, k), h.vertex_id(b, k)).has_value() == want);
        }
      }
    }
    CHECK(validate_complex(h.complex).empty());
  }
}

TEST_CASE("surviving pentagons span more than one level's reach") {
  auto h = build_horoball(path_graph(9), 3);
  auto d = all_pairs_distances(h.base);
  for (auto const& f : h.complex.faces()) {
    if (f.kind != FaceKind::pentagon) continue;
    // the single horizontal edge on the upper level joins base vertices
    // too far apart for the level below
    int top = -1;
    for (int e : f.edges) {
      auto const& ed = h.complex.edge(e);
      if (ed.horizontal() && (top < 0 || h.complex.vertex(ed.u).depth > h.complex.vertex(h.complex.edge(top).u).depth)) top = e;
    }
    auto const& ed = h.complex.edge(top);
    int         k  = h.complex.vertex(ed.u).depth;
    int         a  = h.complex.vertex(ed.u).base, b = h.complex.vertex(ed.v).base;
    int         dab = d[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    CHECK(dab > (1 << (k - 1)));
    CHECK(dab <= (1 << k));
  }
}

TEST_CASE("depth and slices") {
  BaseGraph g{2, {{0, 1}}};
  auto      h = build_horoball(g, 5);
  CHECK(depth(h, h.vertex_id(0, 0)) == 0);
  CHECK(depth(h, h.vertex_id(1, 5)) == 5);
  CHECK_THROWS_AS(h.vertex_id(0, 6), Error);

  auto s0 = slice(h, 0);
  CHECK(s0.complex.vertex_count() == 2);
  CHECK(s0.complex.edge_count() == 1);
  CHECK(s0.complex.face_count() == 0);

  auto all = below(h, 5);
  CHECK(all.complex.vertex_count() == h.complex.vertex_count());
  CHECK(all.complex.edge_count() == h.complex.edge_count());
  CHECK(all.complex.face_count() == h.complex.face_count());

  auto h2 = build_horoball(g, 2);
  auto up = above(h2, 1);
  CHECK(up.complex.vertex_count() == 4);
  CHECK(up.complex.edge_count() == 4);
  CHECK(up.complex.face_count() == 1);
  CHECK(up.complex.face(0).kind == FaceKind::square);

  CHECK_THROWS_AS(slice(h, 6), Error);
  CHECK_THROWS_AS(below(h, -1), Error);
}

TEST_CASE("build errors") {
  CHECK_THROWS_WITH_AS(build_horoball(BaseGraph{2, {}}, 1), doctest::Contains("disconnected"), Error);
  CHECK_THROWS_AS(build_horoball(BaseGraph{1, {}}, -1), Error);
}

TEST_CASE("logarithmic distortion along a line") {
  auto                     h = build_horoball(path_graph(17), 6);
  auto const&              c = h.complex;
  for (int a = 0; a < 17; ++a) {
    std::vector<int> dist(static_cast<std::size_t>(c.vertex_count()), -1);
    std::queue<int>  q;
    dist[static_cast<std::size_t>(h.vertex_id(a, 0))] = 0;
    q.push(h.vertex_id(a, 0));
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int e : c.edges_at(x)) {
        int y = c.edge(e).other(x);
        if (dist[static_cast<std::size_t>(y)] < 0) {
          dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
          q.push(y);
        }
      }
    }
    for (int b = 0; b < 17; ++b) {
      int n = std::abs(a - b);
      if (n == 0) continue;
      int bound = 2 * static_cast<int>(std::ceil(std::log2(n))) + 3;
      CHECK(dist[static_cast<std::size_t>(h.vertex_id(b, 0))] <= bound);
    }
  }
}
