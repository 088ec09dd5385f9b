#include "cusp/horoball.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "cusp/error.hpp"

namespace cusp {

std::vector<std::vector<int>> BaseGraph::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [a, b] : edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  return adj;
}

bool BaseGraph::connected() const {
  if (n == 0) {
    return true;
  }
  auto d = all_pairs_distances(*this);
  return std::none_of(d[0].begin(), d[0].end(), [](int x) { return x < 0; });
}

std::vector<std::vector<int>> all_pairs_distances(BaseGraph const& g) {
  auto                          adj = g.adjacency();
  auto                          n   = static_cast<std::size_t>(g.n);
  std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
  for (std::size_t s = 0; s < n; ++s) {
    std::queue<int> q;
    d[s][s] = 0;
    q.push(static_cast<int>(s));
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y : adj[static_cast<std::size_t>(x)]) {
        if (d[s][static_cast<std::size_t>(y)] < 0) {
          d[s][static_cast<std::size_t>(y)] = d[s][static_cast<std::size_t>(x)] + 1;
          q.push(y);
        }
      }
    }
  }
  return d;
}

namespace {

  bool bounds_square_and_triangle(Complex2 const& c, std::vector<int> const& pset) {
    for (int e : pset) {
      for (int s : c.faces_at_edge(e)) {
        auto const& sq = c.faces()[static_cast<std::size_t>(s)];
        if (sq.kind != FaceKind::square) {
          continue;
        }
        auto             sset = sorted_boundary(sq);
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
            return true;
          }
        }
      }
    }
    return false;
  }

  struct Level {
    // adj[i] = (j, edge id) for each horizontal edge at this level
    std::vector<std::vector<std::pair<int, int>>> adj;
    std::vector<std::tuple<int, int, int>>        edges;  // (i, j, id), i < j

    std::vector<int> between(int i, int j) const {
      std::vector<int> out;
      for (auto [x, e] : adj[static_cast<std::size_t>(i)]) {
        if (x == j) {
          out.push_back(e);
        }
      }
      return out;
    }
  };

}  // namespace

std::vector<std::vector<int>> attach_horoball(
    ComplexBuilder&                               builder,
    std::vector<int> const&                       level0,
    std::vector<std::tuple<int, int, int>> const& level0_edges,
    std::vector<std::vector<int>> const&          distance,
    int                                           dmax,
    std::function<Vertex(int, int)> const&        make_vertex) {
  if (dmax < 0) {
    throw Error("depth cap must be >= 0");
  }
  auto const n   = static_cast<int>(level0.size());
  auto const lvl = static_cast<std::size_t>(dmax) + 1;

  std::vector<std::vector<int>> column(lvl);
  std::vector<std::vector<int>> vertical(lvl);  // vertical[k][i]: (i,k)-(i,k+1)
  std::vector<Level>            levels(lvl);
  column[0] = level0;

  auto add_horizontal = [&](std::size_t k, int i, int j, int e) {
    levels[k].adj[static_cast<std::size_t>(i)].emplace_back(j, e);
    levels[k].adj[static_cast<std::size_t>(j)].emplace_back(i, e);
    levels[k].edges.emplace_back(std::min(i, j), std::max(i, j), e);
  };

  for (std::size_t k = 0; k < lvl; ++k) {
    levels[k].adj.resize(static_cast<std::size_t>(n));
  }
  for (auto [i, j, e] : level0_edges) {
    add_horizontal(0, i, j, e);
  }
  for (std::size_t k = 1; k < lvl; ++k) {
    column[k].resize(static_cast<std::size_t>(n));
    vertical[k - 1].resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      auto id = builder.add_vertex(make_vertex(i, static_cast<int>(k)));
      column[k][static_cast<std::size_t>(i)] = id;
      vertical[k - 1][static_cast<std::size_t>(i)] = builder.add_edge(
          column[k - 1][static_cast<std::size_t>(i)], id, EdgeKind::b3,
          static_cast<int>(k));
    }
    long reach = 1L << std::min<std::size_t>(k, 40);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        int d = distance[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (d > 0 && d <= reach) {
          int e = builder.add_edge(column[k][static_cast<std::size_t>(i)],
                                   column[k][static_cast<std::size_t>(j)],
                                   EdgeKind::b2, static_cast<int>(k));
          add_horizontal(k, i, j, e);
        }
      }
    }
  }

  // horizontal triangles
  for (std::size_t k = 0; k < lvl; ++k) {
    auto const& L = levels[k];
    for (int i = 0; i < n; ++i) {
      for (auto [j, eij] : L.adj[static_cast<std::size_t>(i)]) {
        if (j <= i) {
          continue;
        }
        for (auto [l, ejl] : L.adj[static_cast<std::size_t>(j)]) {
          if (l <= j) {
            continue;
          }
          for (int eli : L.between(l, i)) {
            builder.add_face({eij, ejl, eli}, FaceKind::triangle);
          }
        }
      }
    }
  }

  // vertical squares
  for (std::size_t k = 0; k + 1 < lvl; ++k) {
    for (auto [i, j, e] : levels[k].edges) {
      for (int top : levels[k + 1].between(i, j)) {
        builder.add_face({e, vertical[k][static_cast<std::size_t>(j)], top,
                          vertical[k][static_cast<std::size_t>(i)]},
                         FaceKind::square);
      }
    }
  }

  // vertical pentagons: every circuit of three horizontal and two vertical
  // edges, minus those bounding a square glued to a triangle
  auto try_pentagon = [&](std::vector<int> cycle) {
    std::vector<int> pset = cycle;
    std::sort(pset.begin(), pset.end());
    if (!bounds_square_and_triangle(builder.peek(), pset)) {
      builder.add_face(std::move(cycle), FaceKind::pentagon);
    }
  };
  for (std::size_t k = 0; k + 1 < lvl; ++k) {
    auto const& low  = levels[k];
    auto const& high = levels[k + 1];
    auto        up   = [&](int i) { return vertical[k][static_cast<std::size_t>(i)]; };
    // two horizontal edges below, one above
    for (auto [i, j, top] : high.edges) {
      for (auto [x, e1] : low.adj[static_cast<std::size_t>(i)]) {
        if (x == j) {
          continue;
        }
        for (int e2 : low.between(x, j)) {
          try_pentagon({e1, e2, up(j), top, up(i)});
        }
      }
    }
    // one horizontal edge below, two above
    for (auto [i, j, bottom] : low.edges) {
      for (auto [x, e1] : high.adj[static_cast<std::size_t>(j)]) {
        if (x == i) {
          continue;
        }
        for (int e2 : high.between(x, i)) {
          try_pentagon({bottom, up(j), e1, e2, up(i)});
        }
      }
    }
  }
  return column;
}

int HoroballComplex::vertex_id(int base_vertex, int k) const {
  if (k < 0 || k > depth_cap || base_vertex < 0 || base_vertex >= base.n) {
    throw Error("vertex not in horoball");
  }
  return column[static_cast<std::size_t>(k)][static_cast<std::size_t>(base_vertex)];
}

HoroballComplex build_horoball(BaseGraph const& gamma, int dmax) {
  if (dmax < 0) {
    throw Error("depth cap must be >= 0");
  }
  if (!gamma.connected()) {
    throw Error("disconnected base graph");
  }
  HoroballComplex h;
  h.base           = gamma;
  h.depth_cap      = dmax;
  h.base_distances = all_pairs_distances(gamma);

  ComplexBuilder   b;
  std::vector<int> level0;
  for (int i = 0; i < gamma.n; ++i) {
    Vertex v;
    v.kind  = VertexKind::cayley;
    v.word  = {};
    v.depth = 0;
    level0.push_back(b.add_vertex(v));
  }
  std::vector<std::tuple<int, int, int>> level0_edges;
  for (auto [a, c] : gamma.edges) {
    int e = b.add_edge(a, c, EdgeKind::b1);
    level0_edges.emplace_back(a, c, e);
  }
  h.column = attach_horoball(b, level0, level0_edges, h.base_distances, dmax,
                             [&](int i, int k) {
                               Vertex v;
                               v.kind     = VertexKind::horo;
                               v.coset    = 0;
                               v.base     = i;
                               v.depth    = k;
                               v.frontier = k == dmax;
                               return v;
                             });
  h.complex = b.finish();
  if (dmax == 0) {
    for (int i = 0; i < gamma.n; ++i) {
      h.complex.set_frontier(i, true);
    }
  }
  return h;
}

int depth(HoroballComplex const& h, int vertex) {
  return h.complex.vertex(vertex).depth;
}

SubComplex full_subcomplex(Complex2 const&                 c,
                           std::function<bool(int)> const& keep) {
  SubComplex       out;
  ComplexBuilder   b;
  std::vector<int> new_vertex(static_cast<std::size_t>(c.vertex_count()), -1);
  for (int v = 0; v < c.vertex_count(); ++v) {
    if (keep(v)) {
      Vertex vx = c.vertex(v);
      if (vx.kind == VertexKind::horo && vx.base >= 0) {
        vx.base = new_vertex[static_cast<std::size_t>(vx.base)];
      }
      new_vertex[static_cast<std::size_t>(v)] = b.add_vertex(vx);
      out.original.push_back(v);
    }
  }
  std::vector<int> new_edge(static_cast<std::size_t>(c.edge_count()), -1);
  for (int e = 0; e < c.edge_count(); ++e) {
    auto const& ed = c.edge(e);
    int         u  = new_vertex[static_cast<std::size_t>(ed.u)];
    int         v  = new_vertex[static_cast<std::size_t>(ed.v)];
    if (u >= 0 && v >= 0) {
      new_edge[static_cast<std::size_t>(e)] = b.add_edge(u, v, ed.kind, ed.label);
    }
  }
  for (auto const& f : c.faces()) {
    std::vector<int> edges;
    for (int e : f.edges) {
      edges.push_back(new_edge[static_cast<std::size_t>(e)]);
    }
    if (std::all_of(edges.begin(), edges.end(), [](int e) { return e >= 0; })) {
      b.add_face(std::move(edges), f.kind, f.label);
    }
  }
  out.complex = b.finish();
  return out;
}

namespace {

  void check_level(HoroballComplex const& h, int m) {
    if (m < 0 || m > h.depth_cap) {
      throw Error("depth " + std::to_string(m) + " out of range");
    }
  }

}  // namespace

SubComplex slice(HoroballComplex const& h, int m) {
  check_level(h, m);
  return full_subcomplex(h.complex, [&](int v) { return depth(h, v) == m; });
}

SubComplex below(HoroballComplex const& h, int m) {
  check_level(h, m);
  return full_subcomplex(h.complex, [&](int v) { return depth(h, v) <= m; });
}

SubComplex above(HoroballComplex const& h, int m) {
  check_level(h, m);
  return full_subcomplex(h.complex, [&](int v) { return depth(h, v) >= m; });
}

}  // namespace cusp
