#include <algorithm>

#include "cusp/complex2.hpp"
#include "cusp/error.hpp"
#include "doctest.h"

using namespace cusp;

namespace {

Vertex plain(int depth = 0, int base = -1) {
  Vertex v;
  v.kind  = depth == 0 ? VertexKind::cayley : VertexKind::horo;
  v.depth = depth;
  v.base  = base;
  return v;
}

bool mentions(std::vector<std::string> const& report, std::string const& text) {
  return std::any_of(report.begin(), report.end(), [&](std::string const& s) {
    return s.find(text) != std::string::npos;
  });
}

// Triangulated strip [0,w] x [0,h] with diagonals (i,j)-(i+1,j+1).
Complex2 strip(int w, int h) {
  ComplexBuilder b;
  auto           id = [&](int i, int j) { return j * (w + 1) + i; };
  for (int j = 0; j <= h; ++j) {
    for (int i = 0; i <= w; ++i) {
      b.add_vertex(plain());
    }
  }
  for (int j = 0; j <= h; ++j) {
    for (int i = 0; i <= w; ++i) {
      if (i < w) b.add_edge(id(i, j), id(i + 1, j), EdgeKind::cayley);
      if (j < h) b.add_edge(id(i, j), id(i, j + 1), EdgeKind::cayley);
      if (i < w && j < h) b.add_edge(id(i, j), id(i + 1, j + 1), EdgeKind::cayley);
    }
  }
  auto const& c = b.peek();
  auto        e = [&](int p, int q) { return *c.find_edge(p, q); };
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      int p00 = id(i, j), p10 = id(i + 1, j), p01 = id(i, j + 1), p11 = id(i + 1, j + 1);
      b.add_face({e(p00, p10), e(p10, p11), e(p11, p00)}, FaceKind::triangle);
      b.add_face({e(p00, p11), e(p11, p01), e(p01, p00)}, FaceKind::triangle);
    }
  }
  return b.finish();
}

}  // namespace

TEST_CASE("edge without faces") {
  ComplexBuilder b;
  int            u = b.add_vertex(plain());
  int            v = b.add_vertex(plain());
  b.add_edge(u, v, EdgeKind::cayley, 0);
  auto c = b.finish();
  CHECK(c.face_count() == 0);
  CHECK(c.euler_characteristic() == 1);
  CHECK(validate_complex(c).empty());
}

TEST_CASE("triangle is a disk") {
  ComplexBuilder b;
  int            x = b.add_vertex(plain()), y = b.add_vertex(plain()), z = b.add_vertex(plain());
  int            e1 = b.add_edge(x, y, EdgeKind::b1), e2 = b.add_edge(y, z, EdgeKind::b1),
      e3 = b.add_edge(z, x, EdgeKind::b1);
  b.add_face({e1, e2, e3}, FaceKind::triangle);
  auto c = b.finish();
  CHECK(c.euler_characteristic() == 1);
  CHECK(validate_complex(c).empty());
  CHECK(c.face(0).vertices.size() == 3);
}

TEST_CASE("builder errors") {
  ComplexBuilder b;
  int            x = b.add_vertex(plain()), y = b.add_vertex(plain()), z = b.add_vertex(plain());
  int            w = b.add_vertex(plain());
  int            e1 = b.add_edge(x, y, EdgeKind::cayley, 0);
  int            e2 = b.add_edge(y, z, EdgeKind::cayley, 0);
  int            e3 = b.add_edge(z, w, EdgeKind::cayley, 0);
  CHECK_THROWS_WITH_AS(b.add_face({e1, e2, e3}, FaceKind::relator),
                       doctest::Contains("boundary not closed"), Error);
  CHECK_THROWS_WITH_AS(b.add_edge(x, 17, EdgeKind::cayley),
                       doctest::Contains("dangling"), Error);
  CHECK_THROWS_WITH_AS(b.add_edge(y, x, EdgeKind::cayley, 0),
                       doctest::Contains("duplicate edge"), Error);
  CHECK_THROWS_WITH_AS(b.add_face({e1, 99}, FaceKind::relator),
                       doctest::Contains("dangling"), Error);
  CHECK(b.ensure_edge(y, x, EdgeKind::cayley, 0) == e1);
  // same pair, different label: a different edge
  CHECK(b.add_edge(x, y, EdgeKind::cayley, 1) != e1);
}

TEST_CASE("stars") {
  ComplexBuilder b;
  b.add_vertex(plain());
  auto c = b.finish();
  CHECK(c.star(0).edges.empty());
  CHECK(c.star(0).faces.empty());
  CHECK(!c.star(0).possibly_incomplete);
  CHECK_THROWS_WITH_AS((void) c.star(3), doctest::Contains("unknown vertex"), Error);

  auto s = strip(4, 2);
  int  interior = 1 * 5 + 2;
  CHECK(s.star(interior).faces.size() == 6);
  CHECK(s.star(interior).edges.size() == 6);
  CHECK(validate_complex(s).empty());
  CHECK(s.euler_characteristic() == 1);

  s.set_frontier(interior, true);
  CHECK(s.star(interior).possibly_incomplete);
}

TEST_CASE("adjacency maps are mutually consistent") {
  auto s = strip(5, 3);
  for (int e = 0; e < s.edge_count(); ++e) {
    for (int x : {s.edge(e).u, s.edge(e).v}) {
      auto const& inc = s.edges_at(x);
      CHECK(std::find(inc.begin(), inc.end(), e) != inc.end());
    }
  }
  for (int f = 0; f < s.face_count(); ++f) {
    for (int e : s.face(f).edges) {
      auto const& inc = s.faces_at_edge(e);
      CHECK(std::find(inc.begin(), inc.end(), f) != inc.end());
    }
  }
}

TEST_CASE("validation reports horizontal edges across depths") {
  ComplexBuilder b;
  int            base1 = b.add_vertex(plain());
  int            base2 = b.add_vertex(plain());
  int            u     = b.add_vertex(plain(1, base1));
  int            v     = b.add_vertex(plain(2, base2));
  b.add_edge(u, v, EdgeKind::b2, 1);
  auto report = validate_complex(b.finish());
  CHECK(mentions(report, "B2 endpoints at unequal depth"));
}

TEST_CASE("validation rejects a pentagon bounding a square and a triangle") {
  // (v,0) (x,0) (w,0) with all three level-0 edges; (v,1) (w,1) above.
  ComplexBuilder b;
  int            v = b.add_vertex(plain()), x = b.add_vertex(plain()), w = b.add_vertex(plain());
  int            v1 = b.add_vertex(plain(1, v)), w1 = b.add_vertex(plain(1, w));
  int            vx = b.add_edge(v, x, EdgeKind::b1), xw = b.add_edge(x, w, EdgeKind::b1);
  int            vw = b.add_edge(v, w, EdgeKind::b1);
  int            top = b.add_edge(v1, w1, EdgeKind::b2, 1);
  int            up_v = b.add_edge(v, v1, EdgeKind::b3, 1), up_w = b.add_edge(w, w1, EdgeKind::b3, 1);
  b.add_face({vw, up_w, top, up_v}, FaceKind::square);
  b.add_face({vx, xw, vw}, FaceKind::triangle);
  auto ok = b.peek();
  CHECK(validate_complex(ok).empty());
  b.add_face({vx, xw, up_w, top, up_v}, FaceKind::pentagon);
  auto report = validate_complex(b.finish());
  CHECK(report.size() == 1);
  CHECK(mentions(report, "square+triangle"));
}

TEST_CASE("validation checks face shapes") {
  ComplexBuilder b;
  int            x = b.add_vertex(plain()), y = b.add_vertex(plain()), z = b.add_vertex(plain());
  int            e1 = b.add_edge(x, y, EdgeKind::b1), e2 = b.add_edge(y, z, EdgeKind::b1),
      e3 = b.add_edge(z, x, EdgeKind::b1);
  b.add_face({e1, e2, e3}, FaceKind::square);
  CHECK(mentions(validate_complex(b.finish()), "square needs"));
}
