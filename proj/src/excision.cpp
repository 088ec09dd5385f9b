#include "cusp/excision.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "cusp/error.hpp"

namespace cusp {

namespace {

// Neighbor offsets in counterclockwise order.
constexpr int kDir[6][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}};

long cross(std::pair<int, int> o, std::pair<int, int> a, std::pair<int, int> b) {
  return static_cast<long>(a.first - o.first) * (b.second - o.second)
         - static_cast<long>(a.second - o.second) * (b.first - o.first);
}

}  // namespace

Strip::Strip(int width, int height) : _w(width), _h(height) {
  if (width < 1 || height < 1) throw Error("strip needs positive width and height");
  int n = vertex_count();
  _vertex_triangles.resize(static_cast<std::size_t>(n));
  _neighbors.resize(static_cast<std::size_t>(n));
  _vertex_edges.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    auto [i, j] = coords(v);
    for (auto const& d : kDir) {
      int a = i + d[0], b = j + d[1];
      if (a < 0 || a > _w || b < 0 || b > _h) continue;
      int u = vertex(a, b);
      _neighbors[static_cast<std::size_t>(v)].push_back(u);
      if (v < u) {
        int e = static_cast<int>(_edges.size());
        _edges.push_back({v, u});
        _vertex_edges[static_cast<std::size_t>(v)].push_back(e);
        _vertex_edges[static_cast<std::size_t>(u)].push_back(e);
      }
    }
  }
  _edge_triangles.resize(_edges.size());
  for (int t = 0; t < triangle_count(); ++t) {
    auto tri = triangle(t);
    for (int k = 0; k < 3; ++k) {
      _vertex_triangles[static_cast<std::size_t>(tri[static_cast<std::size_t>(k)])].push_back(t);
      int e = edge_id(tri[static_cast<std::size_t>(k)], tri[static_cast<std::size_t>((k + 1) % 3)]);
      _edge_triangles[static_cast<std::size_t>(e)].push_back(t);
    }
  }
}

std::array<int, 3> Strip::triangle(int t) const {
  if (t < 0 || t >= triangle_count()) throw Error("strip triangle out of range");
  int sq = t / 2, i = sq % _w, j = sq / _w;
  if (t % 2 == 0) return {vertex(i, j), vertex(i + 1, j), vertex(i + 1, j + 1)};
  return {vertex(i, j), vertex(i + 1, j + 1), vertex(i, j + 1)};
}

int Strip::edge_id(int u, int v) const {
  if (u < 0 || u >= vertex_count()) return -1;
  for (int e : _vertex_edges[static_cast<std::size_t>(u)]) {
    auto [a, b] = _edges[static_cast<std::size_t>(e)];
    if ((a == u && b == v) || (a == v && b == u)) return e;
  }
  return -1;
}

std::vector<int> const& Strip::triangles_at_edge(int e) const {
  return _edge_triangles.at(static_cast<std::size_t>(e));
}

std::vector<int> const& Strip::triangles_at_vertex(int v) const {
  return _vertex_triangles.at(static_cast<std::size_t>(v));
}

std::vector<int> const& Strip::neighbors(int v) const {
  return _neighbors.at(static_cast<std::size_t>(v));
}

bool Strip::on_rows(int v) const noexcept {
  int j = v / (_w + 1);
  return j == 0 || j == _h;
}

bool Strip::on_ends(int v) const noexcept {
  int i = v % (_w + 1);
  return i == 0 || i == _w;
}

bool Strip::boundary_edge(int e) const { return triangles_at_edge(e).size() == 1; }

int Strip::left_triangle(int u, int v) const {
  int e = edge_id(u, v);
  if (e < 0) return -1;
  for (int t : triangles_at_edge(e)) {
    for (int w : triangle(t)) {
      if (w != u && w != v && cross(coords(u), coords(v), coords(w)) > 0) return t;
    }
  }
  return -1;
}

// ---------------------------------------------------------------------------

std::vector<std::string> validate_strip_map(CuspedComplex const& c, StripMap const& m) {
  std::vector<std::string> out;
  Strip const&             s = m.strip;
  if (static_cast<int>(m.image.size()) != s.vertex_count()) {
    out.push_back("image has " + std::to_string(m.image.size()) + " entries, strip has "
                  + std::to_string(s.vertex_count()) + " vertices");
    return out;
  }
  auto name = [&](int v) {
    auto [i, j] = s.coords(v);
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  };
  bool images_ok = true;
  for (int v = 0; v < s.vertex_count(); ++v) {
    int x = m.image[static_cast<std::size_t>(v)];
    if (x < 0 || x >= c.X.vertex_count()) {
      out.push_back("vertex " + name(v) + " maps outside the complex");
      images_ok = false;
    } else if (s.on_rows(v) && !c.in_Y(x)) {
      out.push_back("row vertex " + name(v) + " maps outside Y");
    }
  }
  if (!images_ok) return out;
  auto img = [&](int v) { return m.image[static_cast<std::size_t>(v)]; };
  for (auto [u, v] : s.edges()) {
    if (img(u) != img(v) && !c.X.find_edge(img(u), img(v))) {
      out.push_back("edge " + name(u) + "-" + name(v) + " maps to non-adjacent vertices");
    }
  }
  for (int t = 0; t < s.triangle_count(); ++t) {
    auto             tri = s.triangle(t);
    std::set<int>    xs;
    for (int v : tri) xs.insert(img(v));
    if (xs.size() < 3) continue;
    bool found = false;
    for (int f : c.X.faces_at_vertex(img(tri[0]))) {
      auto const& face = c.X.face(f);
      if (face.vertices.size() != 3) continue;
      std::set<int> fs(face.vertices.begin(), face.vertices.end());
      if (fs == xs) {
        found = true;
        break;
      }
    }
    if (!found) {
      out.push_back("triangle " + name(tri[0]) + name(tri[1]) + name(tri[2])
                    + " maps onto no triangular face");
    }
  }
  return out;
}

std::string to_string(Color c) {
  switch (c) {
    case Color::green: return "green";
    case Color::blue: return "blue";
    case Color::red: return "red";
  }
  return "?";
}

Coloring color(CuspedComplex const& c, StripMap const& m, int coset) {
  if (coset < 0 || coset >= static_cast<int>(c.cosets.size())) throw Error("coset out of range");
  Strip const& s = m.strip;
  Coloring     col;
  col.coset = coset;
  auto const& members = c.member_index[static_cast<std::size_t>(coset)];
  for (int v = 0; v < s.vertex_count(); ++v) {
    int x = m.image.at(static_cast<std::size_t>(v));
    if (c.in_Y(x) && members.count(x)) {
      col.vertex.push_back(Color::blue);
    } else if (c.horoball_of(x) == coset) {
      col.vertex.push_back(Color::red);
    } else {
      col.vertex.push_back(Color::green);
    }
  }
  auto combine = [&](auto const& vs) {
    bool all_blue = true, any_red = false;
    for (int v : vs) {
      Color k = col.vertex[static_cast<std::size_t>(v)];
      all_blue = all_blue && k == Color::blue;
      any_red  = any_red || k == Color::red;
    }
    return all_blue ? Color::blue : any_red ? Color::red : Color::green;
  };
  for (auto [u, v] : s.edges()) col.edge.push_back(combine(std::array<int, 2>{u, v}));
  for (int t = 0; t < s.triangle_count(); ++t) col.triangle.push_back(combine(s.triangle(t)));
  return col;
}

std::vector<std::string> check_observations(Strip const& s, Coloring const& col) {
  std::vector<std::string> out;
  auto vc = [&](int v) { return col.vertex[static_cast<std::size_t>(v)]; };
  for (int e = 0; e < s.edge_count(); ++e) {
    auto [u, v] = s.edges()[static_cast<std::size_t>(e)];
    Color ec    = col.edge[static_cast<std::size_t>(e)];
    if ((ec == Color::blue) != (vc(u) == Color::blue && vc(v) == Color::blue)) {
      out.push_back("edge " + std::to_string(e) + " is blue without blue vertices");
    }
    if ((ec == Color::red) != (vc(u) == Color::red || vc(v) == Color::red)) {
      out.push_back("edge " + std::to_string(e) + " is red without a red vertex");
    }
    if (ec == Color::red && (vc(u) == Color::green || vc(v) == Color::green)) {
      out.push_back("red edge " + std::to_string(e) + " has a green vertex");
    }
  }
  for (int t = 0; t < s.triangle_count(); ++t) {
    auto  tri = s.triangle(t);
    Color tc  = col.triangle[static_cast<std::size_t>(t)];
    int   red = 0, blue = 0, green = 0;
    for (int v : tri) {
      red += vc(v) == Color::red;
      blue += vc(v) == Color::blue;
      green += vc(v) == Color::green;
    }
    if ((tc == Color::blue) != (blue == 3)) {
      out.push_back("triangle " + std::to_string(t) + " is blue without blue vertices");
    }
    if ((tc == Color::red) != (red > 0)) {
      out.push_back("triangle " + std::to_string(t) + " is red without a red vertex");
    }
    if (red > 0 && green > 0) {
      out.push_back("red triangle " + std::to_string(t) + " has a green vertex");
    }
  }
  return out;
}

Separation separation_oracle(CuspedComplex const& c, int v, int coset) {
  if (coset < 0 || coset >= static_cast<int>(c.cosets.size())) throw Error("coset out of range");
  auto const& members = c.member_index[static_cast<std::size_t>(coset)];
  if (c.in_Y(v) && members.count(v)) throw Error("vertex lies in the separating subcomplex");
  if (c.in_Y(v)) return {false, true};
  std::vector<char> seen(static_cast<std::size_t>(c.X.vertex_count()), 0);
  std::deque<int>   queue{v};
  seen[static_cast<std::size_t>(v)] = 1;
  bool tainted = false;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    if (c.in_Y(x)) return {false, true};
    // Missing neighbors of a frontier vertex in the coset's own horoball stay
    // in that horoball, which meets Y only along the coset.
    if (c.X.vertex(x).frontier && c.horoball_of(x) != coset) tainted = true;
    for (int e : c.X.edges_at(x)) {
      int y = c.X.edge(e).other(x);
      if (seen[static_cast<std::size_t>(y)]) continue;
      seen[static_cast<std::size_t>(y)] = 1;
      if (c.in_Y(y) && members.count(y)) continue;
      queue.push_back(y);
    }
  }
  return {true, !tainted};
}

std::vector<std::vector<int>> red_classes(Strip const& s, Coloring const& col) {
  int              n = s.triangle_count();
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) parent[static_cast<std::size_t>(t)] = t;
  auto find = [&](int t) {
    while (parent[static_cast<std::size_t>(t)] != t) {
      parent[static_cast<std::size_t>(t)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(t)])];
      t = parent[static_cast<std::size_t>(t)];
    }
    return t;
  };
  for (int e = 0; e < s.edge_count(); ++e) {
    if (col.edge[static_cast<std::size_t>(e)] != Color::red) continue;
    auto const& ts = s.triangles_at_edge(e);
    if (ts.size() == 2) {
      int a = find(ts[0]), b = find(ts[1]);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int t = 0; t < n; ++t) {
    if (col.triangle[static_cast<std::size_t>(t)] == Color::red) groups[find(t)].push_back(t);
  }
  std::vector<std::vector<int>> out;
  for (auto& [root, ts] : groups) out.push_back(std::move(ts));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

namespace {

using Cycle = std::vector<int>;

std::set<std::pair<int, int>> directed_edges(Cycle const& a) {
  std::set<std::pair<int, int>> out;
  for (std::size_t k = 0; k < a.size(); ++k) out.insert({a[k], a[(k + 1) % a.size()]});
  return out;
}

// Triangles enclosed by a counterclockwise simple cycle.
std::vector<char> inside(Strip const& s, Cycle const& a) {
  std::vector<char> in(static_cast<std::size_t>(s.triangle_count()), 0);
  std::set<int>     wall;
  for (std::size_t k = 0; k < a.size(); ++k) wall.insert(s.edge_id(a[k], a[(k + 1) % a.size()]));
  std::deque<int> queue;
  for (std::size_t k = 0; k < a.size(); ++k) {
    int t = s.left_triangle(a[k], a[(k + 1) % a.size()]);
    if (t < 0) throw Error("boundary cycle is not counterclockwise");
    if (!in[static_cast<std::size_t>(t)]) {
      in[static_cast<std::size_t>(t)] = 1;
      queue.push_back(t);
    }
  }
  while (!queue.empty()) {
    int  t   = queue.front();
    auto tri = s.triangle(t);
    queue.pop_front();
    for (int k = 0; k < 3; ++k) {
      int e = s.edge_id(tri[static_cast<std::size_t>(k)], tri[static_cast<std::size_t>((k + 1) % 3)]);
      if (wall.count(e)) continue;
      for (int u : s.triangles_at_edge(e)) {
        if (!in[static_cast<std::size_t>(u)]) {
          in[static_cast<std::size_t>(u)] = 1;
          queue.push_back(u);
        }
      }
    }
  }
  return in;
}

Cycle canonical(Cycle a) {
  auto it = std::min_element(a.begin(), a.end());
  std::rotate(a.begin(), it, a.end());
  return a;
}

std::vector<int> members_of(std::vector<char> const& in) {
  std::vector<int> out;
  for (std::size_t t = 0; t < in.size(); ++t) {
    if (in[t]) out.push_back(static_cast<int>(t));
  }
  return out;
}

// Counterclockwise frontier cycle of a triangle set; throws when the
// frontier is not one simple cycle.
Cycle frontier_cycle(Strip const& s, std::vector<char> const& in) {
  std::map<int, int> next;
  int                count = 0;
  for (int t = 0; t < s.triangle_count(); ++t) {
    if (!in[static_cast<std::size_t>(t)]) continue;
    auto tri = s.triangle(t);
    for (int k = 0; k < 3; ++k) {
      int u = tri[static_cast<std::size_t>(k)], v = tri[static_cast<std::size_t>((k + 1) % 3)];
      int e = s.edge_id(u, v);
      bool outer = true;
      for (int o : s.triangles_at_edge(e)) outer = outer && (o == t || !in[static_cast<std::size_t>(o)]);
      if (!outer) continue;
      if (next.count(u)) throw Error("disk boundary is pinched at a vertex");
      next[u] = v;
      ++count;
    }
  }
  if (next.empty()) throw Error("empty disk");
  Cycle a{next.begin()->first};
  while (true) {
    int v = next.at(a.back());
    if (v == a.front()) break;
    a.push_back(v);
    if (static_cast<int>(a.size()) > count) throw Error("disk boundary does not close");
  }
  if (static_cast<int>(a.size()) != count) throw Error("disk boundary has several components");
  return canonical(a);
}

DiskPair full_interior(Strip const& s, Coloring const& col, std::vector<int> const& cls) {
  DiskPair d;
  d.coset = col.coset;
  d.cls   = cls;
  for (int t = 0; t < s.triangle_count(); ++t) d.triangles.push_back(t);
  std::vector<char> all(static_cast<std::size_t>(s.triangle_count()), 1);
  d.boundary  = frontier_cycle(s, all);
  d.truncated = true;
  return d;
}

int leftmost_green_row_vertex(Strip const& s, Coloring const& col) {
  for (int j : {0, s.height()}) {
    for (int i = 0; i <= s.width(); ++i) {
      if (col.vertex[static_cast<std::size_t>(s.vertex(i, j))] == Color::green) return s.vertex(i, j);
    }
  }
  return -1;
}

bool touches_ends(Strip const& s, Coloring const& col, std::vector<int> const& cls) {
  for (int t : cls) {
    for (int v : s.triangle(t)) {
      if (s.on_ends(v) && col.vertex[static_cast<std::size_t>(v)] == Color::red) return true;
    }
  }
  return false;
}

}  // namespace

DiskPair disk_pair_region_grow(Strip const& s, Coloring const& col, std::vector<int> const& cls) {
  if (cls.empty()) throw Error("empty red class");
  if (leftmost_green_row_vertex(s, col) < 0) return full_interior(s, col, cls);
  std::vector<char> in_class(static_cast<std::size_t>(s.triangle_count()), 0);
  std::set<int>     closed_vertices, closed_edges;
  for (int t : cls) {
    in_class[static_cast<std::size_t>(t)] = 1;
    auto tri = s.triangle(t);
    for (int k = 0; k < 3; ++k) {
      closed_vertices.insert(tri[static_cast<std::size_t>(k)]);
      closed_edges.insert(s.edge_id(tri[static_cast<std::size_t>(k)], tri[static_cast<std::size_t>((k + 1) % 3)]));
    }
  }
  std::vector<char> outer(static_cast<std::size_t>(s.triangle_count()), 0);
  std::deque<int>   queue;
  for (int t = 0; t < s.triangle_count(); ++t) {
    if (in_class[static_cast<std::size_t>(t)]) continue;
    auto tri  = s.triangle(t);
    bool seed = false;
    for (int k = 0; k < 3; ++k) {
      int u = tri[static_cast<std::size_t>(k)], v = tri[static_cast<std::size_t>((k + 1) % 3)];
      seed = seed || (s.on_rows(u) && !closed_vertices.count(u));
      int e = s.edge_id(u, v);
      seed = seed || (s.on_rows(u) && s.on_rows(v) && s.boundary_edge(e) && !closed_edges.count(e));
    }
    if (seed) {
      outer[static_cast<std::size_t>(t)] = 1;
      queue.push_back(t);
    }
  }
  while (!queue.empty()) {
    int  t   = queue.front();
    auto tri = s.triangle(t);
    queue.pop_front();
    for (int k = 0; k < 3; ++k) {
      int e = s.edge_id(tri[static_cast<std::size_t>(k)], tri[static_cast<std::size_t>((k + 1) % 3)]);
      if (closed_edges.count(e)) continue;
      for (int u : s.triangles_at_edge(e)) {
        if (!outer[static_cast<std::size_t>(u)]) {
          outer[static_cast<std::size_t>(u)] = 1;
          queue.push_back(u);
        }
      }
    }
  }
  std::vector<char> in(outer.size());
  for (std::size_t t = 0; t < in.size(); ++t) in[t] = !outer[t];
  DiskPair d;
  d.coset     = col.coset;
  d.cls       = cls;
  d.triangles = members_of(in);
  d.boundary  = frontier_cycle(s, in);
  d.truncated = touches_ends(s, col, cls);
  return d;
}

DiskPair disk_pair_induction(Strip const& s, Coloring const& col, std::vector<int> const& cls,
                             InductionStats* stats) {
  InductionStats local;
  InductionStats& st = stats ? *stats : local;
  if (cls.empty()) throw Error("empty red class");
  int g = leftmost_green_row_vertex(s, col);
  if (g < 0) return full_interior(s, col, cls);
  if (touches_ends(s, col, cls)) return disk_pair_region_grow(s, col, cls);

  std::vector<char> in_class(static_cast<std::size_t>(s.triangle_count()), 0);
  for (int t : cls) in_class[static_cast<std::size_t>(t)] = 1;

  // Walk across triangles from g until the class is first met.
  std::vector<int> from(static_cast<std::size_t>(s.triangle_count()), -2);
  std::deque<int>  queue;
  for (int t : s.triangles_at_vertex(g)) {
    from[static_cast<std::size_t>(t)] = -1;
    queue.push_back(t);
  }
  int hit = -1;
  while (!queue.empty() && hit < 0) {
    int  t   = queue.front();
    auto tri = s.triangle(t);
    queue.pop_front();
    for (int k = 0; k < 3 && hit < 0; ++k) {
      int e = s.edge_id(tri[static_cast<std::size_t>(k)], tri[static_cast<std::size_t>((k + 1) % 3)]);
      for (int u : s.triangles_at_edge(e)) {
        if (from[static_cast<std::size_t>(u)] != -2) continue;
        from[static_cast<std::size_t>(u)] = t;
        if (in_class[static_cast<std::size_t>(u)]) {
          hit = u;
          break;
        }
        queue.push_back(u);
      }
    }
  }
  if (hit < 0) throw Error("red class unreachable from the rows");
  int prev = from[static_cast<std::size_t>(hit)];
  auto pt  = s.triangle(prev);
  auto ht  = s.triangle(hit);
  int  v   = -1;
  for (int x : ht) {
    if (std::find(pt.begin(), pt.end(), x) == pt.end()) v = x;
  }
  if (col.vertex[static_cast<std::size_t>(v)] != Color::red) {
    throw Error("class entered through an edge that is not blue");
  }
  int e_from = -1, e_to = -1;  // the entry edge, kept on every boundary
  for (int x : ht) {
    if (x == v) continue;
    (e_from < 0 ? e_from : e_to) = x;
  }

  Cycle a = s.neighbors(v);
  auto  e_on = [&](Cycle const& c) {
    auto de = directed_edges(c);
    return de.count({e_from, e_to}) || de.count({e_to, e_from});
  };

  std::vector<char> in = inside(s, a);
  while (true) {
    int n = static_cast<int>(a.size());
    int pick = -1, w = -1;
    for (int k = 0; k < n && pick < 0; ++k) {
      int p = a[static_cast<std::size_t>(k)], q = a[static_cast<std::size_t>((k + 1) % n)];
      int t = s.left_triangle(q, p);  // the triangle across b from E
      if (t < 0 || !in_class[static_cast<std::size_t>(t)] || in[static_cast<std::size_t>(t)]) continue;
      pick = k;
      for (int x : s.triangle(t)) {
        if (x != p && x != q) w = x;
      }
    }
    if (pick < 0) break;
    auto at = [&](int k) { return a[static_cast<std::size_t>(((k % n) + n) % n)]; };
    auto pos = std::find(a.begin(), a.end(), w);
    if (pos == a.end()) {
      a.insert(a.begin() + pick + 1, w);
      ++st.new_vertex;
    } else if (w == at(pick - 1)) {
      a.erase(a.begin() + ((pick % n) + n) % n);
      ++st.adjacent;
    } else if (w == at(pick + 2)) {
      a.erase(a.begin() + (pick + 1) % n);
      ++st.adjacent;
    } else {
      ++st.pocket;
      // Keep the arc from w round to p and close it with the edge p-w.
      int   s_idx = static_cast<int>(pos - a.begin());
      Cycle kept;
      for (int k = s_idx;; k = (k + 1) % n) {
        kept.push_back(a[static_cast<std::size_t>(k)]);
        if (k == pick) break;
      }
      if (!e_on(kept)) throw Error("entry edge left the boundary; the disk is not embedded");
      a = std::move(kept);
    }
    in = inside(s, a);
  }

  DiskPair d;
  d.coset     = col.coset;
  d.cls       = cls;
  d.triangles = members_of(in);
  d.boundary  = canonical(a);
  return d;
}

// ---------------------------------------------------------------------------

std::vector<DiskPair> excise(CuspedComplex const& c, StripMap const& m) {
  auto problems = validate_strip_map(c, m);
  if (!problems.empty()) throw Error("invalid strip map: " + problems.front());
  Strip const&  s = m.strip;
  std::set<int> cosets;
  for (int x : m.image) {
    if (c.horoball_of(x) >= 0) cosets.insert(c.horoball_of(x));
  }
  std::vector<DiskPair> pairs;
  for (int i : cosets) {
    auto col = color(c, m, i);
    for (auto const& cls : red_classes(s, col)) pairs.push_back(disk_pair_induction(s, col, cls));
  }
  auto leftmost = [&](DiskPair const& d) {
    int best = s.width();
    for (int t : d.triangles) best = std::min(best, (t / 2) % s.width());
    return best;
  };
  std::stable_sort(pairs.begin(), pairs.end(), [&](DiskPair const& x, DiskPair const& y) {
    return std::tuple(leftmost(x), x.coset, x.triangles) < std::tuple(leftmost(y), y.coset, y.triangles);
  });
  auto contains = [](DiskPair const& outer, DiskPair const& inner) {
    return std::includes(outer.triangles.begin(), outer.triangles.end(), inner.triangles.begin(),
                         inner.triangles.end());
  };
  std::vector<DiskPair> kept;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    bool nested = false;
    for (std::size_t j = 0; j < pairs.size() && !nested; ++j) {
      if (j == k || !contains(pairs[j], pairs[k])) continue;
      // equal disks: the earlier one stays
      nested = pairs[j].triangles != pairs[k].triangles || j < k;
    }
    if (!nested) kept.push_back(pairs[k]);
  }
  return kept;
}

ExcisionReport validate_excision(CuspedComplex const& c, StripMap const& m,
                                 std::vector<DiskPair> const& pairs) {
  ExcisionReport r;
  auto fail = [&](std::string msg) {
    r.valid = false;
    r.violations.push_back(std::move(msg));
  };
  Strip const& s = m.strip;
  auto problems  = validate_strip_map(c, m);
  for (auto& p : problems) fail("strip map: " + p);
  if (!problems.empty()) return r;

  std::vector<int> edge_uses(static_cast<std::size_t>(s.edge_count()), 0);
  std::vector<std::vector<char>> masks;
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    auto const& d   = pairs[j];
    std::string tag = "pair " + std::to_string(j);
    std::vector<char> mask(static_cast<std::size_t>(s.triangle_count()), 0);
    for (int t : d.triangles) mask[static_cast<std::size_t>(t)] = 1;
    masks.push_back(mask);
    if (d.boundary.size() < 3) {
      fail(tag + ": boundary is not a cycle");
      continue;
    }
    std::set<int> seen(d.boundary.begin(), d.boundary.end());
    if (seen.size() != d.boundary.size()) fail(tag + ": boundary is not embedded");
    bool closed = true;
    for (std::size_t k = 0; k < d.boundary.size(); ++k) {
      int e = s.edge_id(d.boundary[k], d.boundary[(k + 1) % d.boundary.size()]);
      if (e < 0) {
        closed = false;
        continue;
      }
      ++edge_uses[static_cast<std::size_t>(e)];
    }
    if (!closed) {
      fail(tag + ": boundary is not an edge cycle");
      continue;
    }
    try {
      if (inside(s, d.boundary) != mask) fail(tag + ": triangles differ from the disk bounded by the boundary");
    } catch (Error const& e) {
      fail(tag + ": " + e.what());
      continue;
    }
    for (int t : d.cls) {
      if (!mask[static_cast<std::size_t>(t)]) fail(tag + ": red class not inside the disk");
    }
    auto col = color(c, m, d.coset);
    for (std::size_t k = 0; k < d.boundary.size(); ++k) {
      int u = d.boundary[k], v = d.boundary[(k + 1) % d.boundary.size()];
      int e = s.edge_id(u, v);
      if (d.truncated && s.boundary_edge(e) && s.on_ends(u) && s.on_ends(v)) continue;
      if (col.edge[static_cast<std::size_t>(e)] != Color::blue) {
        fail(tag + ": non-blue boundary at edge " + std::to_string(e));
      }
    }
  }
  for (int e = 0; e < s.edge_count(); ++e) {
    if (edge_uses[static_cast<std::size_t>(e)] > 2) {
      fail("edge " + std::to_string(e) + " on more than two boundaries");
    }
  }
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (j == k) continue;
      if (j < k) {
        bool overlap = false, j_in_k = true, k_in_j = true;
        for (std::size_t t = 0; t < masks[j].size(); ++t) {
          overlap = overlap || (masks[j][t] && masks[k][t]);
          j_in_k  = j_in_k && (!masks[j][t] || masks[k][t]);
          k_in_j  = k_in_j && (!masks[k][t] || masks[j][t]);
        }
        if (overlap && (j_in_k || k_in_j)) {
          fail("pairs " + std::to_string(j) + " and " + std::to_string(k) + " are nested");
        } else if (overlap) {
          // find a crossing edge for the message
          int crossing = -1;
          for (auto const& [x, y] : {std::pair{j, k}, std::pair{k, j}}) {
            auto const& b = pairs[x].boundary;
            for (std::size_t q = 0; q < b.size() && crossing < 0; ++q) {
              int e = s.edge_id(b[q], b[(q + 1) % b.size()]);
              auto const& ts = s.triangles_at_edge(e);
              if (ts.size() == 2 && masks[y][static_cast<std::size_t>(ts[0])]
                  && masks[y][static_cast<std::size_t>(ts[1])]) {
                crossing = e;
              }
            }
          }
          fail("pairs " + std::to_string(j) + " and " + std::to_string(k) + " cross at edge "
               + std::to_string(crossing));
        }
      }
    }
  }
  // Everything outside the open disks maps into Y.
  std::vector<char> covered(static_cast<std::size_t>(s.vertex_count()), 0);
  for (auto const& d : pairs) {
    std::set<int> rim(d.boundary.begin(), d.boundary.end());
    for (int t : d.triangles) {
      for (int v : s.triangle(t)) {
        if (!rim.count(v)) covered[static_cast<std::size_t>(v)] = 1;
      }
    }
  }
  for (int v = 0; v < s.vertex_count(); ++v) {
    if (!covered[static_cast<std::size_t>(v)] && !c.in_Y(m.image[static_cast<std::size_t>(v)])) {
      auto [i, jj] = s.coords(v);
      fail("vertex (" + std::to_string(i) + "," + std::to_string(jj) + ") outside the disks maps outside Y");
    }
  }
  return r;
}

}  // namespace cusp
