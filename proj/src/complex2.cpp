#include "cusp/complex2.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "cusp/error.hpp"

namespace cusp {

std::string to_string(VertexKind k) {
  return k == VertexKind::cayley ? "cayley" : "horo";
}

std::string to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::cayley: return "cayley";
    case EdgeKind::b1: return "b1";
    case EdgeKind::b2: return "b2";
    case EdgeKind::b3: return "b3";
  }
  return "?";
}

std::string to_string(FaceKind k) {
  switch (k) {
    case FaceKind::relator: return "relator";
    case FaceKind::triangle: return "triangle";
    case FaceKind::square: return "square";
    case FaceKind::pentagon: return "pentagon";
  }
  return "?";
}

std::uint64_t Complex2::pair_key(int u, int v) {
  auto a = static_cast<std::uint32_t>(std::min(u, v));
  auto b = static_cast<std::uint32_t>(std::max(u, v));
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

Vertex const& Complex2::vertex(int id) const {
  if (id < 0 || id >= vertex_count()) {
    throw Error("unknown vertex id " + std::to_string(id));
  }
  return _vertices[static_cast<std::size_t>(id)];
}

Edge const& Complex2::edge(int id) const {
  if (id < 0 || id >= edge_count()) {
    throw Error("unknown edge id " + std::to_string(id));
  }
  return _edges[static_cast<std::size_t>(id)];
}

Face const& Complex2::face(int id) const {
  if (id < 0 || id >= face_count()) {
    throw Error("unknown face id " + std::to_string(id));
  }
  return _faces[static_cast<std::size_t>(id)];
}

std::vector<int> const& Complex2::edges_at(int v) const {
  (void) vertex(v);
  return _vertex_edges[static_cast<std::size_t>(v)];
}

std::vector<int> const& Complex2::faces_at_vertex(int v) const {
  (void) vertex(v);
  return _vertex_faces[static_cast<std::size_t>(v)];
}

std::vector<int> const& Complex2::faces_at_edge(int e) const {
  (void) edge(e);
  return _edge_faces[static_cast<std::size_t>(e)];
}

std::optional<int> Complex2::find_edge(int u, int v) const {
  auto it = _pair_edges.find(pair_key(u, v));
  if (it == _pair_edges.end() || it->second.empty()) {
    return std::nullopt;
  }
  return it->second.front();
}

std::optional<int> Complex2::find_edge(int u, int v, EdgeKind kind,
                                       int label) const {
  auto it = _pair_edges.find(pair_key(u, v));
  if (it == _pair_edges.end()) {
    return std::nullopt;
  }
  for (int e : it->second) {
    auto const& ed = _edges[static_cast<std::size_t>(e)];
    if (ed.kind == kind && ed.label == label) {
      return e;
    }
  }
  return std::nullopt;
}

Star Complex2::star(int v) const {
  Star s;
  s.edges               = edges_at(v);
  s.faces               = faces_at_vertex(v);
  s.possibly_incomplete = vertex(v).frontier;
  return s;
}

void Complex2::set_frontier(int v, bool f) {
  (void) vertex(v);
  _vertices[static_cast<std::size_t>(v)].frontier = f;
}

int ComplexBuilder::add_vertex(Vertex v) {
  _c._vertices.push_back(std::move(v));
  _c._vertex_edges.emplace_back();
  _c._vertex_faces.emplace_back();
  return _c.vertex_count() - 1;
}

int ComplexBuilder::add_edge(int u, int v, EdgeKind kind, int label) {
  if (u < 0 || u >= _c.vertex_count() || v < 0 || v >= _c.vertex_count()) {
    throw Error("dangling reference: edge endpoint " + std::to_string(u) + "-"
                + std::to_string(v));
  }
  if (u == v) {
    throw Error("loop edge at vertex " + std::to_string(u));
  }
  if (_c.find_edge(u, v, kind, label)) {
    throw Error("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
  }
  int id = _c.edge_count();
  _c._edges.push_back({u, v, kind, label});
  _c._edge_faces.emplace_back();
  _c._vertex_edges[static_cast<std::size_t>(u)].push_back(id);
  _c._vertex_edges[static_cast<std::size_t>(v)].push_back(id);
  _c._pair_edges[Complex2::pair_key(u, v)].push_back(id);
  return id;
}

int ComplexBuilder::ensure_edge(int u, int v, EdgeKind kind, int label) {
  if (auto e = _c.find_edge(u, v, kind, label)) {
    return *e;
  }
  return add_edge(u, v, kind, label);
}

std::optional<std::vector<int>> trace_cycle(Complex2 const&         c,
                                            std::vector<int> const& edges) {
  if (edges.empty()) {
    return std::nullopt;
  }
  for (int e : edges) {
    if (e < 0 || e >= c.edge_count()) {
      return std::nullopt;
    }
  }
  auto const& first = c.edges()[static_cast<std::size_t>(edges[0])];
  for (int start : {first.u, first.v}) {
    std::vector<int> verts;
    int              cur = start;
    bool             ok  = true;
    for (int e : edges) {
      auto const& ed = c.edges()[static_cast<std::size_t>(e)];
      if (ed.u != cur && ed.v != cur) {
        ok = false;
        break;
      }
      verts.push_back(cur);
      cur = ed.other(cur);
    }
    if (ok && cur == start) {
      return verts;
    }
  }
  return std::nullopt;
}

int ComplexBuilder::add_face(std::vector<int> edges, FaceKind kind, int label) {
  for (int e : edges) {
    if (e < 0 || e >= _c.edge_count()) {
      throw Error("dangling reference: face edge " + std::to_string(e));
    }
  }
  auto verts = trace_cycle(_c, edges);
  if (!verts) {
    throw Error("boundary not closed");
  }
  int id = _c.face_count();
  _c._faces.push_back({std::move(edges), std::move(*verts), kind, label});
  auto const& f = _c._faces.back();
  std::set<int> seen_e;
  for (int e : f.edges) {
    if (seen_e.insert(e).second) {
      _c._edge_faces[static_cast<std::size_t>(e)].push_back(id);
    }
  }
  std::set<int> seen_v;
  for (int v : f.vertices) {
    if (seen_v.insert(v).second) {
      _c._vertex_faces[static_cast<std::size_t>(v)].push_back(id);
    }
  }
  return id;
}

std::vector<int> sorted_boundary(Face const& f) {
  std::vector<int> out = f.edges;
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

  // Base vertex of v in its vertical line: v itself at depth 0.
  int column_of(Complex2 const& c, int v) {
    auto const& vx = c.vertices()[static_cast<std::size_t>(v)];
    return vx.kind == VertexKind::horo ? vx.base : v;
  }

}  // namespace

std::vector<std::string> validate_complex(Complex2 const& c) {
  std::vector<std::string> out;
  auto                     vname = [](int v) { return "vertex " + std::to_string(v); };
  auto                     ename = [](int e) { return "edge " + std::to_string(e); };
  auto                     fname = [](int f) { return "face " + std::to_string(f); };

  for (int v = 0; v < c.vertex_count(); ++v) {
    auto const& vx = c.vertices()[static_cast<std::size_t>(v)];
    if (vx.kind == VertexKind::horo && vx.depth < 1) {
      out.push_back(vname(v) + ": horo vertex at depth < 1");
    }
    if (vx.kind == VertexKind::cayley && vx.depth != 0) {
      out.push_back(vname(v) + ": cayley vertex at nonzero depth");
    }
    for (int e : c.edges_at(v)) {
      auto const& ed = c.edges()[static_cast<std::size_t>(e)];
      if (ed.u != v && ed.v != v) {
        out.push_back(vname(v) + ": lists " + ename(e) + " which misses it");
      }
    }
  }

  std::set<std::tuple<int, int, int, int>> seen;
  for (int e = 0; e < c.edge_count(); ++e) {
    auto const& ed = c.edges()[static_cast<std::size_t>(e)];
    if (ed.u < 0 || ed.u >= c.vertex_count() || ed.v < 0
        || ed.v >= c.vertex_count()) {
      out.push_back(ename(e) + ": dangling endpoint");
      continue;
    }
    for (int x : {ed.u, ed.v}) {
      auto const& inc = c.edges_at(x);
      if (std::find(inc.begin(), inc.end(), e) == inc.end()) {
        out.push_back(ename(e) + ": missing from star of " + vname(x));
      }
    }
    auto key = std::make_tuple(std::min(ed.u, ed.v), std::max(ed.u, ed.v),
                               static_cast<int>(ed.kind), ed.label);
    if (!seen.insert(key).second) {
      out.push_back(ename(e) + ": duplicate edge");
    }
    int du = c.vertices()[static_cast<std::size_t>(ed.u)].depth;
    int dv = c.vertices()[static_cast<std::size_t>(ed.v)].depth;
    switch (ed.kind) {
      case EdgeKind::cayley:
      case EdgeKind::b1:
        if (du != 0 || dv != 0) {
          out.push_back(ename(e) + ": level-0 edge off level 0");
        }
        break;
      case EdgeKind::b2:
        if (du != dv) {
          out.push_back(ename(e) + ": B2 endpoints at unequal depth");
        } else if (du != ed.label || du < 1) {
          out.push_back(ename(e) + ": B2 level does not match depth");
        }
        break;
      case EdgeKind::b3:
        if (std::abs(du - dv) != 1) {
          out.push_back(ename(e) + ": vertical edge does not change depth by 1");
        } else if (column_of(c, ed.u) != column_of(c, ed.v)) {
          out.push_back(ename(e) + ": vertical edge joins different columns");
        }
        break;
    }
  }

  for (int f = 0; f < c.face_count(); ++f) {
    auto const& fc = c.faces()[static_cast<std::size_t>(f)];
    auto        verts = trace_cycle(c, fc.edges);
    if (!verts) {
      out.push_back(fname(f) + ": boundary not closed");
      continue;
    }
    for (int e : fc.edges) {
      auto const& inc = c.faces_at_edge(e);
      if (std::find(inc.begin(), inc.end(), f) == inc.end()) {
        out.push_back(fname(f) + ": missing from faces of " + ename(e));
      }
    }
    int h = 0;
    int vert = 0;
    for (int e : fc.edges) {
      (c.edges()[static_cast<std::size_t>(e)].horizontal() ? h : vert)++;
    }
    switch (fc.kind) {
      case FaceKind::relator:
        if (vert != 0) {
          out.push_back(fname(f) + ": relator face with vertical edges");
        }
        break;
      case FaceKind::triangle:
        if (h != 3 || vert != 0) {
          out.push_back(fname(f) + ": triangle needs 3 horizontal edges");
        }
        break;
      case FaceKind::square:
        if (h != 2 || vert != 2) {
          out.push_back(fname(f) + ": square needs 2 horizontal and 2 vertical edges");
        }
        break;
      case FaceKind::pentagon:
        if (h != 3 || vert != 2) {
          out.push_back(fname(f) + ": pentagon needs 3 horizontal and 2 vertical edges");
        }
        break;
    }
  }

  // A pentagon must not be the boundary of a square glued to a triangle
  // along one edge.
  for (int f = 0; f < c.face_count(); ++f) {
    auto const& pent = c.faces()[static_cast<std::size_t>(f)];
    if (pent.kind != FaceKind::pentagon) {
      continue;
    }
    auto          pset = sorted_boundary(pent);
    std::set<int> squares;
    for (int e : pent.edges) {
      for (int g : c.faces_at_edge(e)) {
        if (c.faces()[static_cast<std::size_t>(g)].kind == FaceKind::square) {
          squares.insert(g);
        }
      }
    }
    bool excluded = false;
    for (int s : squares) {
      auto sset = sorted_boundary(c.faces()[static_cast<std::size_t>(s)]);
      std::vector<int> outside;
      std::set_difference(sset.begin(), sset.end(), pset.begin(), pset.end(),
                          std::back_inserter(outside));
      if (outside.size() != 1) {
        continue;
      }
      for (int t : c.faces_at_edge(outside[0])) {
        auto const& tri = c.faces()[static_cast<std::size_t>(t)];
        if (tri.kind != FaceKind::triangle) {
          continue;
        }
        auto             tset = sorted_boundary(tri);
        std::vector<int> uni;
        std::set_symmetric_difference(sset.begin(), sset.end(), tset.begin(),
                                      tset.end(), std::back_inserter(uni));
        if (uni == pset) {
          excluded = true;
        }
      }
    }
    if (excluded) {
      out.push_back(fname(f)
                    + ": pentagon boundary equals a square+triangle boundary");
    }
  }
  return out;
}

}  // namespace cusp
