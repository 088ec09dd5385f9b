#include "cusp/metric.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <queue>
#include <random>

#include "cusp/error.hpp"

namespace cusp {

EdgePath path_through(Complex2 const& c, std::vector<int> const& vertices) {
  EdgePath p;
  p.vertices = vertices;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    auto e = c.find_edge(vertices[i], vertices[i + 1]);
    if (!e) {
      throw Error("vertices " + std::to_string(vertices[i]) + " and "
                  + std::to_string(vertices[i + 1]) + " are not adjacent");
    }
    p.edges.push_back(*e);
  }
  return p;
}

bool is_edge_path(Complex2 const& c, EdgePath const& p) {
  if (p.vertices.size() != p.edges.size() + 1) {
    return false;
  }
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (p.edges[i] < 0 || p.edges[i] >= c.edge_count()) {
      return false;
    }
    auto const& e = c.edge(p.edges[i]);
    bool        fwd = e.u == p.vertices[i] && e.v == p.vertices[i + 1];
    bool        bwd = e.v == p.vertices[i] && e.u == p.vertices[i + 1];
    if (!fwd && !bwd) {
      return false;
    }
  }
  return true;
}

Metric::Metric(Complex2 const& c, std::size_t row_cache) : _c(&c) {
  std::vector<int> sources;
  for (int v = 0; v < c.vertex_count(); ++v) {
    if (c.vertex(v).frontier) {
      sources.push_back(v);
    }
  }
  _frontier = from_set(sources);
  auto n    = static_cast<std::size_t>(std::max(1, c.vertex_count()));
  _cache_cap = std::max<std::size_t>(16, std::min(row_cache, 60'000'000 / n));
}

Metric::Metric(Complex2 const& c, ExitModel model, std::size_t row_cache) : Metric(c, row_cache) {
  auto n = static_cast<std::size_t>(c.vertex_count());
  if (model.exit_cost.size() != n) {
    throw Error("exit model does not match the complex");
  }
  std::vector<std::vector<Arc>> arcs(n + 1);
  for (std::size_t v = 0; v < n; ++v) {
    if (model.exit_cost[v] >= 0) {
      arcs[v].push_back({static_cast<int>(n), model.exit_cost[v]});
      arcs[n].push_back({static_cast<int>(v), model.exit_cost[v]});
    }
  }
  for (auto const& s : model.shortcuts) {
    (void) c.vertex(s.u);
    (void) c.vertex(s.v);
    arcs[static_cast<std::size_t>(s.u)].push_back({s.v, s.length});
    arcs[static_cast<std::size_t>(s.v)].push_back({s.u, s.length});
  }
  _exits = std::move(arcs);
}

int Metric::frontier_distance(int v) const {
  (void) _c->vertex(v);
  return _frontier[static_cast<std::size_t>(v)];
}

std::vector<int> Metric::bounded(int s, int r) const {
  return from_set({s}, r);
}

std::vector<int> Metric::from_set(std::vector<int> const& sources, int r) const {
  std::vector<int> d(static_cast<std::size_t>(_c->vertex_count()), -1);
  std::vector<int> queue;
  queue.reserve(d.size());
  for (int s : sources) {
    (void) _c->vertex(s);
    if (d[static_cast<std::size_t>(s)] < 0) {
      d[static_cast<std::size_t>(s)] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t h = 0; h < queue.size(); ++h) {
    int x  = queue[h];
    int dx = d[static_cast<std::size_t>(x)];
    if (r >= 0 && dx >= r) {
      continue;
    }
    for (int e : _c->edges_at(x)) {
      int y = _c->edges()[static_cast<std::size_t>(e)].other(x);
      if (d[static_cast<std::size_t>(y)] < 0) {
        d[static_cast<std::size_t>(y)] = dx + 1;
        queue.push_back(y);
      }
    }
  }
  return d;
}

std::vector<int> const& Metric::row(int s) const {
  auto it = _rows.find(s);
  if (it != _rows.end()) {
    return it->second;
  }
  if (_rows.size() >= _cache_cap) {
    _rows.clear();
  }
  return _rows.emplace(s, bounded(s, -1)).first->second;
}

bool Metric::exact_for(int u, int v, int d) const {
  if (_exits) {
    return d >= 0 && d <= outside_bound(u, v);
  }
  int fu = frontier_distance(u);
  int fv = frontier_distance(v);
  if (fu < 0 || fv < 0) {
    return d >= 0;
  }
  return d >= 0 && d <= fu + fv + 2;
}

bool Metric::all_geodesics_inside(int u, int v, int d) const {
  if (_exits) {
    return d >= 0 && d < outside_bound(u, v);
  }
  int fu = frontier_distance(u);
  int fv = frontier_distance(v);
  if (fu < 0 || fv < 0) {
    return d >= 0;
  }
  return d >= 0 && d <= fu + fv + 1;
}

int Metric::outside_bound(int u, int v) const {
  (void) _c->vertex(v);
  if (!_exits) {
    int fu = frontier_distance(u);
    int fv = frontier_distance(v);
    return fu < 0 || fv < 0 ? INT_MAX : fu + fv + 2;
  }
  return outside_row(u)[static_cast<std::size_t>(v)];
}

// Dijkstra over two copies of the truncation: the second copy is entered by
// the first exit or shortcut.
std::vector<int> const& Metric::outside_row(int s) const {
  (void) _c->vertex(s);
  auto it = _outside_rows.find(s);
  if (it != _outside_rows.end()) {
    return it->second;
  }
  if (_outside_rows.size() >= _cache_cap) {
    _outside_rows.clear();
  }
  auto const& arcs = *_exits;
  auto        n    = arcs.size();  // truncation vertices plus the outside
  std::vector<int> dist(2 * n, INT_MAX);
  using Item = std::pair<int, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  auto relax = [&](std::size_t state, int d) {
    if (d < dist[state]) {
      dist[state] = d;
      heap.push({d, static_cast<int>(state)});
    }
  };
  relax(static_cast<std::size_t>(s), 0);
  while (!heap.empty()) {
    auto [d, state] = heap.top();
    heap.pop();
    auto st = static_cast<std::size_t>(state);
    if (d > dist[st]) {
      continue;
    }
    std::size_t layer = st / n;
    std::size_t x     = st % n;
    if (x + 1 < n) {
      for (int e : _c->edges_at(static_cast<int>(x))) {
        auto y = static_cast<std::size_t>(_c->edges()[static_cast<std::size_t>(e)].other(static_cast<int>(x)));
        relax(layer * n + y, d + 1);
      }
    }
    for (auto const& a : arcs[x]) {
      relax(n + static_cast<std::size_t>(a.to), d + a.length);
    }
  }
  std::vector<int> row(dist.begin() + static_cast<long>(n), dist.end() - 1);
  return _outside_rows.emplace(s, std::move(row)).first->second;
}

CertifiedDistance Metric::distance(int u, int v) const {
  (void) _c->vertex(v);
  int d = row(u)[static_cast<std::size_t>(v)];
  return {d, exact_for(u, v, d)};
}

EdgePath Metric::geodesic(int u, int v) const {
  (void) _c->vertex(u);
  auto const& dv = row(v);
  if (dv[static_cast<std::size_t>(u)] < 0) {
    throw UncertifiedError("geodesic", "target unreachable inside the truncation");
  }
  std::vector<int> verts{u};
  int              x = u;
  while (x != v) {
    int best = -1;
    for (int e : _c->edges_at(x)) {
      int y = _c->edges()[static_cast<std::size_t>(e)].other(x);
      if (dv[static_cast<std::size_t>(y)] == dv[static_cast<std::size_t>(x)] - 1
          && (best < 0 || y < best)) {
        best = y;
      }
    }
    x = best;
    verts.push_back(x);
  }
  return path_through(*_c, verts);
}

GeodesicDag Metric::dag(int u, int v) const {
  GeodesicDag g;
  g.source    = u;
  g.target    = v;
  auto du     = row(u);
  auto const& dv = row(v);
  int d       = du[static_cast<std::size_t>(v)];
  if (d < 0) {
    throw UncertifiedError("geodesic", "target unreachable inside the truncation");
  }
  g.length = d;
  g.layers.resize(static_cast<std::size_t>(d) + 1);
  for (int x = 0; x < _c->vertex_count(); ++x) {
    int a = du[static_cast<std::size_t>(x)];
    int b = dv[static_cast<std::size_t>(x)];
    if (a >= 0 && b >= 0 && a + b == d) {
      g.layers[static_cast<std::size_t>(a)].push_back(x);
    }
  }
  g.complete = all_geodesics_inside(u, v, d);
  return g;
}

Metric::Ball Metric::ball(int v, int K) const {
  Ball b;
  auto d = bounded(v, K);
  for (int x = 0; x < _c->vertex_count(); ++x) {
    if (d[static_cast<std::size_t>(x)] >= 0) {
      b.vertices.push_back(x);
      if (_c->vertex(x).frontier) {
        b.touches_frontier = true;
      }
    }
  }
  auto inside = [&](int x) { return d[static_cast<std::size_t>(x)] >= 0; };
  for (int e = 0; e < _c->edge_count(); ++e) {
    auto const& ed = _c->edge(e);
    if (inside(ed.u) && inside(ed.v)) {
      b.edges.push_back(e);
    }
  }
  for (int f = 0; f < _c->face_count(); ++f) {
    auto const& vs = _c->face(f).vertices;
    if (std::all_of(vs.begin(), vs.end(), inside)) {
      b.faces.push_back(f);
    }
  }
  return b;
}

int hausdorff_distance(Metric const& m, EdgePath const& p, EdgePath const& q) {
  auto one_way = [&](EdgePath const& a, EdgePath const& b) {
    auto d   = m.from_set(b.vertices);
    int  out = 0;
    for (int x : a.vertices) {
      int dx = d[static_cast<std::size_t>(x)];
      out    = dx < 0 ? INT_MAX : std::max(out, dx);
    }
    return out;
  };
  return std::max(one_way(p, q), one_way(q, p));
}

HoroballView HoroballView::of(HoroballComplex const& h) {
  return over(h.complex, h.column, h.base_distances, h.depth_cap);
}

HoroballView HoroballView::over(Complex2 const&                     c,
                                std::vector<std::vector<int>> const& column,
                                std::vector<std::vector<int>> const& distance,
                                int                                  depth_cap) {
  HoroballView v;
  v.complex   = &c;
  v.column    = &column;
  v.distance  = &distance;
  v.depth_cap = depth_cap;
  for (std::size_t k = 0; k < column.size(); ++k) {
    for (std::size_t i = 0; i < column[k].size(); ++i) {
      v.where[column[k][i]] = {static_cast<int>(i), static_cast<int>(k)};
    }
  }
  return v;
}

int HoroballView::base_count() const {
  return static_cast<int>(distance->size());
}

std::pair<int, int> HoroballView::locate(int v) const {
  auto it = where.find(v);
  if (it == where.end()) {
    throw Error("vertex not in horoball");
  }
  return it->second;
}

NormalFormShape normal_form_shape(int d, int k1, int k2) {
  NormalFormShape best;
  int             start = std::max(k1, k2);
  if (d == 0) {
    return {start - k1, 0, start - k2, start};
  }
  int best_cost = INT_MAX;
  for (int L = start; L < 62; ++L) {
    long span = 1L << L;
    long h    = (d + span - 1) / span;
    if (h <= 3) {
      int cost = (L - k1) + (L - k2) + static_cast<int>(h);
      if (cost < best_cost) {
        best_cost = cost;
        best      = {L - k1, static_cast<int>(h), L - k2, L};
      }
    }
    if (h == 1) {
      break;
    }
  }
  return best;
}

EdgePath horoball_geodesic(HoroballView const& h, int u, int v) {
  auto [a, k1] = h.locate(u);
  auto [b, k2] = h.locate(v);
  auto const& dist = *h.distance;
  auto const& col  = *h.column;
  int         d    = dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  if (d < 0) {
    throw UncertifiedError("horoball geodesic", "base vertices not connected");
  }
  auto shape = normal_form_shape(d, k1, k2);
  if (shape.level > h.depth_cap) {
    throw UncertifiedError("horoball geodesic",
                           "normal form needs depth " + std::to_string(shape.level)
                               + " above the cap " + std::to_string(h.depth_cap));
  }
  int const        L = shape.level;
  std::vector<int> verts;
  for (int k = k1; k <= L; ++k) {
    verts.push_back(col[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)]);
  }
  long const span = 1L << L;
  int        x    = a;
  for (int j = 1; j < shape.horizontal; ++j) {
    int  remaining = d - static_cast<int>(j * span);
    int  next      = -1;
    for (int y = 0; y < h.base_count(); ++y) {
      if (dist[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] == span
          && dist[static_cast<std::size_t>(y)][static_cast<std::size_t>(b)] == remaining) {
        next = y;
        break;
      }
    }
    if (next < 0) {
      throw UncertifiedError("horoball geodesic",
                             "base geodesic leaves the truncation");
    }
    x = next;
    verts.push_back(col[static_cast<std::size_t>(L)][static_cast<std::size_t>(x)]);
  }
  if (shape.horizontal > 0) {
    verts.push_back(col[static_cast<std::size_t>(L)][static_cast<std::size_t>(b)]);
  }
  for (int k = L - 1; k >= k2; --k) {
    verts.push_back(col[static_cast<std::size_t>(k)][static_cast<std::size_t>(b)]);
  }
  return path_through(*h.complex, verts);
}

int hausdorff_to_all_geodesics(Metric const& m, GeodesicDag const& dag,
                               EdgePath const& p, int limit) {
  auto const& c    = m.complex();
  int const   over = limit + 1;
  auto        dp   = m.from_set(p.vertices, over);
  int         r    = 0;
  for (auto const& layer : dag.layers) {
    for (int x : layer) {
      int dx = dp[static_cast<std::size_t>(x)];
      r      = std::max(r, dx < 0 ? over : dx);
    }
  }
  std::vector<int> layer_of(static_cast<std::size_t>(c.vertex_count()), -1);
  std::vector<int> best(static_cast<std::size_t>(c.vertex_count()), 0);
  for (std::size_t t = 0; t < dag.layers.size(); ++t) {
    for (int x : dag.layers[t]) {
      layer_of[static_cast<std::size_t>(x)] = static_cast<int>(t);
    }
  }
  // widest geodesic avoiding each vertex of p: maximize, over geodesics, the
  // minimum distance to that vertex
  for (int n : p.vertices) {
    auto dn   = m.bounded(n, over);
    auto dist = [&](int x) {
      int v = dn[static_cast<std::size_t>(x)];
      return v < 0 ? over : v;
    };
    for (std::size_t t = 0; t < dag.layers.size(); ++t) {
      for (int x : dag.layers[t]) {
        int through = -1;
        if (t == 0) {
          through = INT_MAX;
        } else {
          for (int e : c.edges_at(x)) {
            int y = c.edges()[static_cast<std::size_t>(e)].other(x);
            if (layer_of[static_cast<std::size_t>(y)] == static_cast<int>(t) - 1) {
              through = std::max(through, best[static_cast<std::size_t>(y)]);
            }
          }
        }
        best[static_cast<std::size_t>(x)] = std::min(through, dist(x));
      }
    }
    r = std::max(r, best[static_cast<std::size_t>(dag.target)]);
  }
  return std::min(r, over);
}

std::array<int, 3> internal_half_params(int a, int b, int c) {
  std::array<int, 3> p{b + c - a, a + c - b, a + b - c};
  for (int x : p) {
    if (x < 0) {
      throw Error("side lengths violate the triangle inequality");
    }
  }
  return p;
}

GeodesicTriangle internal_points(std::array<int, 3> const&      corners,
                                 std::array<EdgePath, 3> const& sides) {
  for (int s = 0; s < 3; ++s) {
    auto const& side = sides[static_cast<std::size_t>(s)];
    int         from = corners[static_cast<std::size_t>(s)];
    int         to   = corners[static_cast<std::size_t>((s + 1) % 3)];
    if (side.vertices.empty() || side.vertices.front() != from
        || side.vertices.back() != to) {
      throw Error("side " + std::to_string(s) + " does not join its corners");
    }
  }
  GeodesicTriangle t;
  t.corners = corners;
  t.sides   = sides;
  int c     = sides[0].length();  // opposite x3
  int a     = sides[1].length();  // opposite x1
  int b     = sides[2].length();  // opposite x2
  t.half_params = internal_half_params(a, b, c);
  // c3 on [x1,x2] at p1 from x1; c1 on [x2,x3] at p2 from x2; c2 on [x3,x1]
  // at p3 from x3
  t.internal[2] = {0, t.half_params[0]};
  t.internal[0] = {1, t.half_params[1]};
  t.internal[1] = {2, t.half_params[2]};
  return t;
}

std::optional<DeltaWitness> triangle_thinness(Metric const& m, int x1, int x2,
                                              int x3, long* skipped) {
  std::array<int, 3> x{x1, x2, x3};
  int                d[3][3];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      int dij = m.row(x[static_cast<std::size_t>(i)])[static_cast<std::size_t>(x[static_cast<std::size_t>(j)])];
      if (!m.all_geodesics_inside(x[static_cast<std::size_t>(i)],
                                  x[static_cast<std::size_t>(j)], dij)) {
        return std::nullopt;
      }
      d[i][j] = dij;
    }
  }
  auto         half = internal_half_params(d[1][2], d[0][2], d[0][1]);
  DeltaWitness w;
  w.corners = x;
  w.value   = -1;
  for (int i = 0; i < 3; ++i) {
    int  j     = (i + 1) % 3;
    int  k     = (i + 2) % 3;
    auto left  = m.dag(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)]);
    auto right = m.dag(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(k)]);
    int  top   = half[static_cast<std::size_t>(i)] / 2;
    for (int t = 0; t <= top; ++t) {
      for (int a : left.layers[static_cast<std::size_t>(t)]) {
        auto const& da = m.row(a);
        for (int b : right.layers[static_cast<std::size_t>(t)]) {
          int dab = da[static_cast<std::size_t>(b)];
          if (!m.exact_for(a, b, dab)) {
            if (skipped) {
              ++*skipped;
            }
            continue;
          }
          if (dab > w.value) {
            w.value  = dab;
            w.corner = i;
            w.t      = t;
            w.left   = a;
            w.right  = b;
          }
        }
      }
    }
  }
  return w;
}

DeltaReport delta_estimate(Metric const& m, DeltaConfig const& cfg) {
  std::vector<int> pool = cfg.candidates;
  if (pool.empty()) {
    for (int v = 0; v < m.complex().vertex_count(); ++v) {
      pool.push_back(v);
    }
  }
  if (pool.empty()) {
    throw UncertifiedError("delta", "no certified triangle in sample");
  }
  DeltaReport rep;
  auto consider = [&](int a, int b, int c) {
    ++rep.triples_sampled;
    auto w = triangle_thinness(m, a, b, c, &rep.comparisons_skipped);
    if (!w) {
      return;
    }
    ++rep.triples_certified;
    if (w->value > rep.delta) {
      rep.delta   = w->value;
      rep.witness = *w;
    }
  };
  if (cfg.samples <= 0) {
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        for (std::size_t k = j + 1; k < pool.size(); ++k) {
          consider(pool[i], pool[j], pool[k]);
        }
      }
    }
  } else {
    std::mt19937_64                            rng(cfg.seed);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    auto partners = [&](std::vector<int> const& from, std::vector<int> const& in) {
      std::vector<int> out;
      for (int v : in) {
        bool ok = true;
        for (int u : from) {
          ok = ok && m.all_geodesics_inside(u, v, m.row(u)[static_cast<std::size_t>(v)]);
        }
        if (ok) {
          out.push_back(v);
        }
      }
      return out;
    };
    auto draw = [&](std::vector<int> const& from) {
      return from[std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(rng)];
    };
    for (long s = 0; s < cfg.samples; ++s) {
      int a = pool[pick(rng)];
      if (!cfg.certified_corners) {
        int b = pool[pick(rng)];
        consider(a, b, pool[pick(rng)]);
        continue;
      }
      auto with_a = partners({a}, pool);
      int  b      = with_a.empty() ? a : draw(with_a);
      auto with_b = partners({b}, with_a);
      consider(a, b, with_b.empty() ? b : draw(with_b));
    }
  }
  if (rep.triples_certified == 0) {
    throw UncertifiedError("delta", "no certified triangle in sample");
  }
  return rep;
}

std::optional<std::vector<int>> convexity_violations(Metric const& metric,
                                                     int m, int u, int v) {
  auto const& c  = metric.complex();
  int         hc = c.vertex(u).coset;
  int         d  = metric.row(u)[static_cast<std::size_t>(v)];
  if (!metric.all_geodesics_inside(u, v, d)) {
    return std::nullopt;
  }
  std::vector<int> out;
  for (auto const& layer : metric.dag(u, v).layers) {
    for (int x : layer) {
      auto const& vx = c.vertex(x);
      if (vx.depth < m || vx.kind != VertexKind::horo || vx.coset != hc) {
        out.push_back(x);
      }
    }
  }
  return out;
}

ConvexityReport convexity_check(Metric const& metric, int m, long samples,
                                 std::uint64_t seed) {
  ConvexityReport rep;
  rep.m = m;
  if (m < 0) {
    throw Error("m must be >= 0");
  }
  if (m == 0) {
    rep.vacuous = true;
    return rep;
  }
  auto const&                      c = metric.complex();
  std::map<int, std::vector<int>>  pools;
  std::vector<int>                 eligible;
  for (int v = 0; v < c.vertex_count(); ++v) {
    auto const& vx = c.vertex(v);
    if (vx.kind == VertexKind::horo && vx.depth >= m) {
      pools[vx.coset].push_back(v);
      eligible.push_back(v);
    }
  }
  if (eligible.empty()) {
    rep.vacuous = true;
    return rep;
  }
  std::mt19937_64                            rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
  for (long s = 0; s < samples; ++s) {
    int         u    = eligible[pick(rng)];
    std::vector<int> pool;
    for (int x : pools[c.vertex(u).coset]) {
      if (metric.all_geodesics_inside(u, x, metric.row(u)[static_cast<std::size_t>(x)])) {
        pool.push_back(x);
      }
    }
    ++rep.pairs_sampled;
    if (pool.empty()) {
      ++rep.pairs_uncertified;
      continue;
    }
    int v = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    auto bad = convexity_violations(metric, m, u, v);
    if (!bad) {
      ++rep.pairs_uncertified;
      continue;
    }
    ++rep.pairs_certified;
    if (!bad->empty()) {
      rep.violations.push_back({u, v, bad->front()});
    }
  }
  return rep;
}

}  // namespace cusp
