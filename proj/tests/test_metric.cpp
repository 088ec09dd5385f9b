#include <array>
#include <algorithm>
#include <queue>

#include "cusp/cusped.hpp"
#include "cusp/error.hpp"
#include "cusp/metric.hpp"
#include "doctest.h"

using namespace cusp;

namespace {

BaseGraph path_graph(int n) {
  BaseGraph g;
  g.n = n;
  for (int i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
  return g;
}

// Reference BFS independent of Metric.
std::vector<int> plain_bfs(Complex2 const& c, int s) {
  std::vector<int> d(static_cast<std::size_t>(c.vertex_count()), -1);
  std::queue<int>  q;
  d[static_cast<std::size_t>(s)] = 0;
  q.push(s);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int e : c.edges_at(x)) {
      int y = c.edge(e).other(x);
      if (d[static_cast<std::size_t>(y)] < 0) {
        d[static_cast<std::size_t>(y)] = d[static_cast<std::size_t>(x)] + 1;
        q.push(y);
      }
    }
  }
  return d;
}

Complex2 triangle_complex() {
  ComplexBuilder b;
  Vertex         v;
  int            x = b.add_vertex(v), y = b.add_vertex(v), z = b.add_vertex(v);
  int e1 = b.add_edge(x, y, EdgeKind::b1), e2 = b.add_edge(y, z, EdgeKind::b1),
      e3 = b.add_edge(z, x, EdgeKind::b1);
  b.add_face({e1, e2, e3}, FaceKind::triangle);
  return b.finish();
}

Complex2 square_complex() {
  ComplexBuilder b;
  Vertex         v;
  int            p = b.add_vertex(v), q = b.add_vertex(v), r = b.add_vertex(v), s = b.add_vertex(v);
  int            e1 = b.add_edge(p, q, EdgeKind::cayley, 0), e2 = b.add_edge(q, r, EdgeKind::cayley, 1),
      e3 = b.add_edge(r, s, EdgeKind::cayley, 0), e4 = b.add_edge(s, p, EdgeKind::cayley, 1);
  b.add_face({e1, e2, e3, e4}, FaceKind::relator);
  return b.finish();
}

// Brute-force internal parameters: half-unit splits of each side that agree
// at every corner.
std::array<int, 3> brute_params(int a, int b, int c) {
  for (int p1 = 0; p1 <= 2 * c; ++p1) {
    int p2 = 2 * c - p1;  // on [x1,x2]: p1 from x1, p2 from x2
    int p3 = 2 * a - p2;  // on [x2,x3]: p2 from x2, p3 from x3
    if (p3 >= 0 && p1 + p3 == 2 * b) return {p1, p2, p3};
  }
  return {-1, -1, -1};
}

}  // namespace

TEST_CASE("certified distances") {
  auto p = parse_presentation("gens a,b");
  auto c = build_cusped_space(p, 3, 0);
  Metric m(c.X);
  int    a = c.vertex_of(p.parse_word("a"));
  auto   d = m.distance(c.basepoint, a);
  CHECK(d.value == 1);
  CHECK(d.exact);
  CHECK(m.distance(a, a).value == 0);
  CHECK(m.distance(a, a).exact);
  int far1 = c.vertex_of(p.parse_word("aaa")), far2 = c.vertex_of(p.parse_word("bbb"));
  auto far = m.distance(far1, far2);
  CHECK(far.value == 6);
  CHECK(!far.exact);
  auto g = m.geodesic(far1, far2);
  CHECK(g.length() == 6);
  CHECK(is_edge_path(c.X, g));
}

TEST_CASE("geodesic tie-break is deterministic") {
  auto p = parse_presentation("gens a,b; rels [a,b]");
  auto c = build_cusped_space(p, 3, 0);
  Metric m(c.X);
  int    u = c.basepoint, v = c.vertex_of(p.parse_word("ab"));
  auto   g = m.geodesic(u, v);
  CHECK(g.length() == 2);
  // lowest-id neighbor closer to the target: a comes before b in BFS order
  CHECK(g.vertices[1] == c.vertex_of(p.parse_word("a")));
  CHECK(m.geodesic(u, v).vertices == g.vertices);
  auto dag = m.dag(u, v);
  CHECK(dag.layers[1].size() == 2);
}

TEST_CASE("balls") {
  auto   t = triangle_complex();
  Metric mt(t);
  CHECK(mt.ball(0, 0).vertices == std::vector<int>{0});
  auto b1 = mt.ball(0, 1);
  CHECK(b1.vertices.size() == 3);
  CHECK(b1.faces.size() == 1);
  auto   s = square_complex();
  Metric ms(s);
  auto   bs = ms.ball(0, 1);
  CHECK(bs.vertices.size() == 3);
  CHECK(bs.faces.empty());
}

TEST_CASE("normal-form horoball geodesics") {
  auto h    = build_horoball(path_graph(17), 6);
  auto view = HoroballView::of(h);
  auto g    = horoball_geodesic(view, h.vertex_id(0, 0), h.vertex_id(8, 0));
  CHECK(g.length() == 6);
  auto shape = normal_form_shape(8, 0, 0);
  CHECK(shape.up == 2);
  CHECK(shape.horizontal == 2);
  CHECK(shape.down == 2);
  CHECK(plain_bfs(h.complex, h.vertex_id(0, 0))[static_cast<std::size_t>(h.vertex_id(8, 0))] == 6);
  CHECK(horoball_geodesic(view, h.vertex_id(3, 0), h.vertex_id(3, 4)).length() == 4);
  CHECK(horoball_geodesic(view, h.vertex_id(0, 0), h.vertex_id(1, 0)).length() == 1);
  auto small = build_horoball(path_graph(17), 2);
  CHECK_THROWS_AS(horoball_geodesic(HoroballView::of(small), small.vertex_id(0, 0),
                                    small.vertex_id(16, 0)),
                  UncertifiedError);
}

TEST_CASE("normal form matches BFS and every geodesic stays within 4 on the line") {
  auto   h    = build_horoball(path_graph(17), 6);
  auto   view = HoroballView::of(h);
  Metric m(h.complex);
  int    checked = 0;
  int    worst   = 0;
  for (int u = 0; u < h.complex.vertex_count(); ++u) {
    for (int v = u + 1; v < h.complex.vertex_count(); ++v) {
      auto d = m.distance(u, v);
      if (!m.all_geodesics_inside(u, v, d.value)) continue;
      auto nf = horoball_geodesic(view, u, v);
      CHECK(nf.length() == d.value);
      auto  shape = normal_form_shape(
          h.base_distances[static_cast<std::size_t>(view.locate(u).first)]
                          [static_cast<std::size_t>(view.locate(v).first)],
          view.locate(u).second, view.locate(v).second);
      CHECK(shape.horizontal <= 3);
      int r = hausdorff_to_all_geodesics(m, m.dag(u, v), nf, 6);
      worst = std::max(worst, r);
      ++checked;
    }
  }
  CHECK(checked > 1000);
  CHECK(worst <= 4);
}

TEST_CASE("hausdorff distance between paths") {
  auto   h = build_horoball(path_graph(4), 3);
  Metric m(h.complex);
  auto   left  = path_through(h.complex, {h.vertex_id(1, 0), h.vertex_id(1, 1), h.vertex_id(1, 2), h.vertex_id(1, 3)});
  auto   right = path_through(h.complex, {h.vertex_id(2, 0), h.vertex_id(2, 1), h.vertex_id(2, 2), h.vertex_id(2, 3)});
  CHECK(hausdorff_distance(m, left, left) == 0);
  CHECK(hausdorff_distance(m, left, right) == 1);
}

TEST_CASE("internal points") {
  for (auto [a, b, c] : std::vector<std::array<int, 3>>{{2, 2, 2}, {3, 4, 5}, {1, 1, 0}, {4, 3, 5}, {2, 3, 3}}) {
    CHECK(internal_half_params(a, b, c) == brute_params(a, b, c));
  }
  CHECK(internal_half_params(3, 4, 5) == std::array<int, 3>{6, 4, 2});
  CHECK_THROWS_AS(internal_half_params(1, 1, 5), Error);

  // triangle of side 2 in the Z2 grid
  auto p = parse_presentation("gens a,b; rels [a,b]");
  auto cs = build_cusped_space(p, 3, 0);
  Metric m(cs.X);
  int    x1 = cs.basepoint, x2 = cs.vertex_of(p.parse_word("aa")), x3 = cs.vertex_of(p.parse_word("b"));
  auto   t = internal_points({x1, x2, x3}, {m.geodesic(x1, x2), m.geodesic(x2, x3), m.geodesic(x3, x1)});
  CHECK(t.half_params == std::array<int, 3>{0, 4, 2});
  for (int i = 0; i < 3; ++i) {
    auto const& pt   = t.internal[static_cast<std::size_t>(i)];
    int         side = pt.side;
    // the internal point opposite x_i lies on the side not touching x_i
    CHECK(side == (i + 1) % 3);
    CHECK(pt.half_offset <= 2 * t.sides[static_cast<std::size_t>(side)].length());
  }
  // equal distances from each corner to its two adjacent internal points
  CHECK(t.internal[2].half_offset == 2 * t.sides[2].length() - t.internal[1].half_offset);
}

TEST_CASE("degenerate internal points") {
  auto   h = build_horoball(path_graph(3), 1);
  Metric m(h.complex);
  int    x1 = h.vertex_id(0, 0), x3 = h.vertex_id(1, 0);
  auto   t = internal_points({x1, x1, x3}, {m.geodesic(x1, x1), m.geodesic(x1, x3), m.geodesic(x3, x1)});
  CHECK(t.half_params[0] == 0);
  CHECK(t.internal[0].half_offset == 0);  // c1 at x2 = x1
  CHECK(t.internal[1].half_offset == 2);  // c2 one step from x3, at x1
}

TEST_CASE("delta estimates") {
  auto   tree = build_cusped_space(parse_presentation("gens a,b"), 4, 0);
  Metric mt(tree.X);
  DeltaConfig cfg;
  cfg.samples = 3000;
  cfg.seed    = 42;
  auto rt     = delta_estimate(mt, cfg);
  CHECK(rt.delta == 0);
  CHECK(rt.triples_certified > 0);

  auto   tri = triangle_complex();
  Metric m3(tri);
  cfg.samples = 0;
  CHECK(delta_estimate(m3, cfg).delta <= 1);

  auto   z2 = build_cusped_space(parse_presentation("gens a,b; rels [a,b]"), 4, 0);
  Metric mz(z2.X);
  auto   rz = delta_estimate(mz, cfg);
  CHECK(rz.delta >= 2);
  REQUIRE(rz.witness);
  // the witness is a real pair of vertices at the reported distance
  CHECK(mz.row(rz.witness->left)[static_cast<std::size_t>(rz.witness->right)] == rz.delta);
}

TEST_CASE("delta is monotone in the sample size") {
  auto   z2 = build_cusped_space(parse_presentation("gens a,b; rels [a,b]"), 5, 0);
  Metric m(z2.X);
  int    last = -1;
  for (long n : {10L, 50L, 200L, 800L}) {
    DeltaConfig cfg;
    cfg.samples = n;
    cfg.seed    = 7;
    int d       = delta_estimate(m, cfg).delta;
    CHECK(d >= last);
    last = d;
  }
}

TEST_CASE("convexity checks") {
  auto   h = build_horoball(path_graph(17), 6);
  Metric m(h.complex);
  CHECK(convexity_check(m, 0, 10, 1).vacuous);
  auto ok = convexity_violations(m, 3, h.vertex_id(6, 3), h.vertex_id(10, 3));
  REQUIRE(ok);
  CHECK(ok->empty());
  auto rep = convexity_check(m, 2, 300, 3);
  CHECK(rep.violations.empty());
  CHECK(rep.pairs_certified > 0);

  auto   low = build_horoball(path_graph(17), 3);
  Metric ml(low.complex);
  auto   r3 = convexity_check(ml, 3, 50, 5);
  CHECK(r3.pairs_certified + r3.pairs_uncertified == r3.pairs_sampled);
  CHECK(r3.pairs_certified > 0);
  CHECK(r3.violations.empty());

  // nearby depth-1 vertices: every geodesic stays at depth >= 1
  auto v1 = convexity_violations(m, 1, h.vertex_id(0, 1), h.vertex_id(3, 1));
  REQUIRE(v1);
  CHECK(v1->empty());
}

TEST_CASE("exit model distances agree with a larger truncation") {
  auto p     = parse_presentation("gens a,b; rels ; periph P: a [free]");
  auto small = build_cusped_space(p, 3, 3);
  auto large = build_cusped_space(p, 6, 3);
  auto ms    = cusped_metric(small);
  Metric ml(large.X);
  auto image = [&](int v) {
    auto const& x = small.X.vertex(v);
    if (x.kind == VertexKind::cayley) return large.vertex_of(x.word);
    int peripheral = small.cosets[static_cast<std::size_t>(x.coset)].peripheral;
    return large.vertex_above(large.vertex_of(small.X.vertex(x.base).word), peripheral, x.depth);
  };
  long exact = 0, inside = 0;
  for (int u = 0; u < small.X.vertex_count(); u += 5) {
    auto const& big = ml.row(image(u));
    for (int v = 0; v < small.X.vertex_count(); ++v) {
      int d = ms.row(u)[static_cast<std::size_t>(v)];
      if (!ms.exact_for(u, v, d)) continue;
      ++exact;
      inside += ms.all_geodesics_inside(u, v, d);
      CHECK(big[static_cast<std::size_t>(image(v))] == d);
    }
  }
  CHECK(exact > inside);
  CHECK(inside > 0);
}

TEST_CASE("shortcuts match distances in a deep horoball") {
  auto p    = parse_presentation("gens a,b; rels ; periph P: a [free]");
  auto c    = build_cusped_space(p, 3, 2);
  auto deep = build_horoball(path_graph(40), 8);
  Metric md(deep.complex);
  // (coset, base, depth); one peripheral, so a Y vertex has one coset
  auto locate = [&](int v) {
    auto const& x = c.X.vertex(v);
    if (x.kind == VertexKind::cayley) return std::array<int, 3>{c.coset_index[0][static_cast<std::size_t>(v)], v, 0};
    return std::array<int, 3>{x.coset, x.base, x.depth};
  };
  auto model = exit_model(c);
  CHECK(!model.shortcuts.empty());
  for (auto const& s : model.shortcuts) {
    auto [cu, bu, ku] = locate(s.u);
    auto [cv, bv, kv] = locate(s.v);
    REQUIRE(cu == cv);
    auto const& k  = c.cosets[static_cast<std::size_t>(cu)];
    auto const& at = c.member_index[static_cast<std::size_t>(cu)];
    int n = k.distance[static_cast<std::size_t>(at.at(bu))][static_cast<std::size_t>(at.at(bv))];
    CHECK(md.row(deep.vertex_id(0, ku))[static_cast<std::size_t>(deep.vertex_id(n, kv))] == s.length);
  }
}
