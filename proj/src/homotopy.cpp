#include "cusp/homotopy.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "cusp/error.hpp"

namespace cusp {

namespace {

struct Range {
  int off = 0;
  int len = 0;
};

int vertex_at(HomotopyBuilder const& b, int i) {
  return b.path().vertices[static_cast<std::size_t>(i)];
}

int edge_at(HomotopyBuilder const& b, int i) {
  return b.path().edges[static_cast<std::size_t>(i)];
}

bool closed(EdgePath const& p) {
  return !p.vertices.empty() && p.vertices.front() == p.vertices.back();
}

bool backtrack_at(HomotopyBuilder const& b, int i) {
  return edge_at(b, i) == edge_at(b, i + 1) && vertex_at(b, i) == vertex_at(b, i + 2);
}

int level(HoroballView const& h, int v) { return h.locate(v).second; }

int vertical(HoroballView const& h, int v, int from_level, int to_level,
             std::string const& stage) {
  auto [i, k] = h.locate(v);
  (void) k;
  auto const& col = *h.column;
  if (to_level < 0 || static_cast<std::size_t>(to_level) >= col.size()) {
    throw UncertifiedError(stage, "headroom exhausted: level " + std::to_string(to_level)
                                      + " needed, depth cap "
                                      + std::to_string(h.depth_cap) + " (increase by "
                                      + std::to_string(to_level - h.depth_cap) + ")");
  }
  auto e = h.complex->find_edge(col[static_cast<std::size_t>(from_level)][static_cast<std::size_t>(i)],
                                col[static_cast<std::size_t>(to_level)][static_cast<std::size_t>(i)]);
  if (!e) throw UncertifiedError(stage, "missing vertical edge");
  return *e;
}

void cross_or_fail(HomotopyBuilder& b, std::optional<int> face, int position, int length,
                   std::string const& stage, std::string const& what) {
  if (!face || !b.cross(*face, position, length)) {
    throw UncertifiedError(stage, "no " + what + " along the path at position "
                                      + std::to_string(position));
  }
}

// Slides the closed loop in r up to its top level. Returns the core loop.
Range slide_range(HomotopyBuilder& b, HoroballView const& h, Range r) {
  std::string const stage = "slide_loop_up";
  Range             core  = r;
  while (core.len > 0) {
    int lo = INT_MAX, hi = INT_MIN;
    for (int i = core.off; i <= core.off + core.len; ++i) {
      int l = level(h, vertex_at(b, i));
      lo    = std::min(lo, l);
      hi    = std::max(hi, l);
    }
    if (lo == hi) break;
    if (level(h, vertex_at(b, core.off)) == lo) {
      int up = vertical(h, vertex_at(b, core.off), lo, lo + 1, stage);
      b.insert_backtrack(core.off, up);
      b.insert_backtrack(core.off + core.len + 2, up);
      core = {core.off + 1, core.len + 2};
    }
    int i = core.off;
    while (i < core.off + core.len) {
      if (level(h, vertex_at(b, i)) == lo + 1 && level(h, vertex_at(b, i + 1)) == lo) {
        int q = i;
        while (level(h, vertex_at(b, q + 2)) == lo) {
          cross_or_fail(b, b.matching_face(FaceKind::square, q, 2), q, 2, stage, "vertical square");
          ++q;
        }
        if (!backtrack_at(b, q)) throw std::logic_error("slide run does not end in a backtrack");
        b.delete_backtrack(q);
        core.len -= 2;
        i = q;
      } else {
        ++i;
      }
    }
  }
  return core;
}

// One halving step of the horizontal loop in r at level k. Returns the new
// core; the loop is contracted in place when it bounds a triangle.
Range halve_range(HomotopyBuilder& b, HoroballView const& h, Range r, int k) {
  std::string const stage = "halve_loop";
  if (r.len == 0) return r;
  if (r.len == 2 && backtrack_at(b, r.off)) return r;
  if (r.len == 3) {
    if (auto f = b.matching_face(FaceKind::triangle, r.off, 3)) {
      b.cross(*f, r.off, 3);
      return {r.off, 0};
    }
  }
  int up = vertical(h, vertex_at(b, r.off), k, k + 1, stage);
  b.insert_backtrack(r.off, up);
  int q   = r.off + 1;  // the down edge
  int end = r.off + r.len + 2;
  while (q + 1 < end) {
    int remaining = end - (q + 1);
    if (remaining >= 2) {
      if (backtrack_at(b, q + 1)) {
        b.delete_backtrack(q + 1);
        end -= 2;
        continue;
      }
      if (vertex_at(b, q + 1) == vertex_at(b, q + 3)) {
        throw UncertifiedError(stage, "two distinct edges join the same pair of vertices");
      }
      if (auto f = b.matching_face(FaceKind::pentagon, q, 3)) {
        b.cross(*f, q, 3);
        end -= 1;
        ++q;
        continue;
      }
      cross_or_fail(b, b.matching_face(FaceKind::triangle, q + 1, 2), q + 1, 2, stage,
                    "pentagon or triangle");
      end -= 1;
    }
    cross_or_fail(b, b.matching_face(FaceKind::square, q, 2), q, 2, stage, "vertical square");
    ++q;
  }
  Range out{r.off + 1, q - (r.off + 1)};
  if (2 * out.len > r.len + 2) throw std::logic_error("halving bound violated");
  return out;
}

// Contracts the closed horoball loop in r; returns the new range length.
int contract_horoball_range(HomotopyBuilder& b, HoroballView const& h, Range r,
                            std::vector<int>* lengths) {
  int before = b.path().length();
  if (lengths) lengths->push_back(r.len);
  Range core = slide_range(b, h, r);
  if (lengths) lengths->push_back(core.len);
  int lvl = level(h, vertex_at(b, core.off));
  while (core.len > 0) {
    if (core.len == 2) {
      if (!backtrack_at(b, core.off)) {
        throw UncertifiedError("contract_horoball_loop",
                               "two distinct edges join the same pair of vertices");
      }
      b.delete_backtrack(core.off);
      core.len = 0;
      break;
    }
    Range next = halve_range(b, h, core, lvl);
    if (next.off != core.off) ++lvl;
    core = next;
    if (lengths) lengths->push_back(core.len);
  }
  int end = r.off + r.len + (b.path().length() - before);
  return b.reduce(r.off, end) - r.off;
}

// Pushes the open horoball path in r down to level 0; returns its length.
int push_range(HomotopyBuilder& b, HoroballView const& h, Range r) {
  std::string const stage = "push_horoball_path_to_Y";
  auto const&       dist  = *h.distance;
  auto const&       col   = *h.column;
  while (true) {
    int top = 0, first = -1;
    for (int i = r.off; i <= r.off + r.len; ++i) top = std::max(top, level(h, vertex_at(b, i)));
    if (top == 0) break;
    for (int i = r.off; i < r.off + r.len && first < 0; ++i) {
      if (level(h, vertex_at(b, i)) == top - 1 && level(h, vertex_at(b, i + 1)) == top) first = i;
    }
    int  q    = first;
    long half = 1L << (top - 1);
    while (level(h, vertex_at(b, q + 2)) == top) {
      int  x = h.locate(vertex_at(b, q + 1)).first;
      int  y = h.locate(vertex_at(b, q + 2)).first;
      auto d = dist[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
      if (d >= 0 && d <= half) {
        cross_or_fail(b, b.matching_face(FaceKind::square, q, 2), q, 2, stage, "vertical square");
        ++q;
        continue;
      }
      int mid = -1;
      for (int c = 0; c < h.base_count() && mid < 0; ++c) {
        auto dx = dist[static_cast<std::size_t>(x)][static_cast<std::size_t>(c)];
        auto dy = dist[static_cast<std::size_t>(c)][static_cast<std::size_t>(y)];
        if (dx > 0 && dy > 0 && dx <= half && dy <= half) mid = c;
      }
      if (mid < 0) {
        throw UncertifiedError(stage, "base-graph truncation prevents expanding a level-"
                                          + std::to_string(top) + " edge");
      }
      int via = col[static_cast<std::size_t>(top - 1)][static_cast<std::size_t>(mid)];
      cross_or_fail(b, b.matching_face(FaceKind::pentagon, q, 2, via), q, 2, stage,
                    "vertical pentagon");
      q += 2;
      r.len += 1;
    }
    if (!backtrack_at(b, q)) throw std::logic_error("push run does not end in a backtrack");
    b.delete_backtrack(q);
    r.len -= 2;
  }
  return r.len;
}

std::vector<int> cayley_distances(Complex2 const& c, int source) {
  std::vector<int> d(static_cast<std::size_t>(c.vertex_count()), -1);
  std::queue<int>  q;
  d[static_cast<std::size_t>(source)] = 0;
  q.push(source);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int e : c.edges_at(x)) {
      auto const& ed = c.edge(e);
      if (ed.kind != EdgeKind::cayley) continue;
      int y = ed.other(x);
      if (d[static_cast<std::size_t>(y)] < 0) {
        d[static_cast<std::size_t>(y)] = d[static_cast<std::size_t>(x)] + 1;
        q.push(y);
      }
    }
  }
  return d;
}

// Best-first search for a contraction of a closed Y loop. Deletions of
// backtracks and length-reducing face crossings are taken greedily; only
// length-preserving crossings branch.
std::vector<ElementaryMove> search_Y_contraction(Complex2 const& c, EdgePath const& loop,
                                                 long budget) {
  if (loop.empty()) return {};
  auto dist      = cayley_distances(c, loop.vertices.front());
  auto potential = [&](EdgePath const& p) {
    long s = 0;
    for (int v : p.vertices) {
      int d = dist[static_cast<std::size_t>(v)];
      s += d < 0 ? 1'000'000 : static_cast<long>(d) * d;
    }
    return s;
  };
  struct Node {
    EdgePath       path;
    int            parent = -1;
    ElementaryMove move;
  };
  std::vector<Node> nodes;
  using Key = std::tuple<int, long, int>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> open;
  std::set<std::vector<int>>                                  seen;
  long                                                        explored = 0;

  auto push = [&](EdgePath p, int parent, ElementaryMove m) {
    if (!seen.insert(p.edges).second) return;
    long pot = potential(p);
    int  len = p.length();
    nodes.push_back({std::move(p), parent, std::move(m)});
    open.emplace(len, pot, static_cast<int>(nodes.size()) - 1);
  };
  auto exhausted = [&] {
    throw UncertifiedError("contract_Y_loop", "budget exhausted after "
                                                  + std::to_string(explored)
                                                  + " explored moves");
  };
  push(loop, -1, {});

  while (!open.empty()) {
    int id = std::get<2>(open.top());
    open.pop();
    EdgePath const cur = nodes[static_cast<std::size_t>(id)].path;
    if (cur.empty()) {
      std::vector<ElementaryMove> moves;
      for (int x = id; nodes[static_cast<std::size_t>(x)].parent >= 0;
           x = nodes[static_cast<std::size_t>(x)].parent) {
        moves.push_back(nodes[static_cast<std::size_t>(x)].move);
      }
      std::reverse(moves.begin(), moves.end());
      return moves;
    }
    int n = cur.length();

    bool forced = false;
    for (int i = 0; i + 1 < n && !forced; ++i) {
      auto k = static_cast<std::size_t>(i);
      if (cur.edges[k] == cur.edges[k + 1] && cur.vertices[k] == cur.vertices[k + 2]) {
        if (++explored > budget) exhausted();
        auto     m    = backtrack_delete(i, cur.edges[k]);
        EdgePath next = cur;
        apply_move(c, next, m);
        push(std::move(next), id, m);
        forced = true;
      }
    }
    if (forced) continue;

    struct Candidate {
      int            gain;
      ElementaryMove move;
    };
    std::vector<Candidate> candidates;
    for (int p = 0; p < n; ++p) {
      auto pk = static_cast<std::size_t>(p);
      for (int fid : c.faces_at_edge(cur.edges[pk])) {
        auto const& f = c.face(fid);
        if (f.kind != FaceKind::relator) continue;
        auto m = static_cast<int>(f.edges.size());
        for (int orient = 0; orient < 2; ++orient) {
          // directed boundary steps (start vertex, edge)
          std::vector<std::pair<int, int>> cyc;
          for (int i = 0; i < m; ++i) {
            if (orient == 0) {
              cyc.push_back({f.vertices[static_cast<std::size_t>(i)], f.edges[static_cast<std::size_t>(i)]});
            } else {
              int j = m - 1 - i;
              cyc.push_back({f.vertices[static_cast<std::size_t>((j + 1) % m)],
                             f.edges[static_cast<std::size_t>(j)]});
            }
          }
          for (int rot = 0; rot < m; ++rot) {
            int len = 0;
            while (len < m && p + len < n
                   && cyc[static_cast<std::size_t>((rot + len) % m)]
                          == std::pair<int, int>{cur.vertices[pk + static_cast<std::size_t>(len)],
                                                 cur.edges[pk + static_cast<std::size_t>(len)]}) {
              ++len;
            }
            for (int l = len; l >= 1; --l) {
              if (m - l > l) break;
              std::vector<int> replaced(cur.edges.begin() + p, cur.edges.begin() + p + l);
              std::vector<int> replacement;
              for (int k = m - 1; k >= l; --k) {
                replacement.push_back(cyc[static_cast<std::size_t>((rot + k) % m)].second);
              }
              candidates.push_back({l - (m - l), face_cross(fid, p, std::move(replaced),
                                                            std::move(replacement))});
            }
          }
        }
      }
    }
    auto best = std::max_element(candidates.begin(), candidates.end(),
                                 [](Candidate const& a, Candidate const& b) { return a.gain < b.gain; });
    if (best != candidates.end() && best->gain > 0) {
      if (++explored > budget) exhausted();
      EdgePath next = cur;
      apply_move(c, next, best->move);
      push(std::move(next), id, best->move);
      continue;
    }
    for (auto& cand : candidates) {
      if (++explored > budget) exhausted();
      EdgePath next = cur;
      apply_move(c, next, cand.move);
      push(std::move(next), id, cand.move);
    }
  }
  throw UncertifiedError("contract_Y_loop", "budget exhausted: search space closed after "
                                                + std::to_string(explored)
                                                + " explored moves");
}

int contract_Y_range(HomotopyBuilder& b, Range r, long budget) {
  EdgePath loop;
  loop.vertices.assign(b.path().vertices.begin() + r.off,
                       b.path().vertices.begin() + r.off + r.len + 1);
  loop.edges.assign(b.path().edges.begin() + r.off, b.path().edges.begin() + r.off + r.len);
  for (auto m : search_Y_contraction(b.complex(), loop, budget)) {
    m.position += r.off;
    b.apply(m);
  }
  return 0;
}

class StageLog {
 public:
  StageLog(HomotopyBuilder const& b, std::vector<Stage>* out) : _b(&b), _out(out) {}

  void begin() {
    if (!_out) return;
    _start = _b->path();
    _from  = _b->move_count();
  }
  void end(std::string name) {
    if (!_out || _b->move_count() == _from) return;
    _out->push_back({std::move(name), _b->segment(_start, _from, _b->move_count())});
  }

 private:
  HomotopyBuilder const* _b;
  std::vector<Stage>*    _out;
  EdgePath               _start;
  std::size_t            _from = 0;
};

struct LoopContext {
  CuspedComplex const*                    c;
  long                                    budget;
  std::map<int, HoroballView>             views;
  std::vector<Stage>*                     stages = nullptr;
  std::vector<std::vector<int>>           y_loops;      // Y loops met, for radius accounting
  std::vector<std::vector<int>>           y_regions;

  HoroballView const& view(int coset) {
    auto it = views.find(coset);
    if (it == views.end()) {
      auto const& pc = c->cosets[static_cast<std::size_t>(coset)];
      it = views.emplace(coset, HoroballView::over(c->X, pc.column, pc.distance, c->depth_cap)).first;
    }
    return it->second;
  }
};

// The coset whose horoball contains every vertex of the range, or -1.
int common_horoball(CuspedComplex const& c, HomotopyBuilder const& b, Range r) {
  std::set<int> candidates;
  bool          first = true;
  for (int i = r.off; i <= r.off + r.len; ++i) {
    int           v = vertex_at(b, i);
    std::set<int> here;
    if (c.in_Y(v)) {
      for (std::size_t p = 0; p < c.coset_index.size(); ++p) {
        int ci = c.coset_index[p][static_cast<std::size_t>(v)];
        if (ci >= 0) here.insert(ci);
      }
    } else {
      here.insert(c.horoball_of(v));
    }
    if (first) {
      candidates = here;
      first      = false;
    } else {
      std::set<int> keep;
      for (int x : candidates) {
        if (here.count(x)) keep.insert(x);
      }
      candidates = std::move(keep);
    }
    if (candidates.empty()) return -1;
  }
  return candidates.empty() ? -1 : *candidates.begin();
}

bool in_Y_range(CuspedComplex const& c, HomotopyBuilder const& b, Range r) {
  for (int i = r.off; i <= r.off + r.len; ++i) {
    if (!c.in_Y(vertex_at(b, i))) return false;
  }
  for (int i = r.off; i < r.off + r.len; ++i) {
    if (b.complex().edge(edge_at(b, i)).kind != EdgeKind::cayley) return false;
  }
  return true;
}

std::string contract_loop_range(HomotopyBuilder& b, LoopContext& ctx, Range r);

void contract_Y_stage(HomotopyBuilder& b, LoopContext& ctx, Range r, std::string const& name) {
  StageLog log(b, ctx.stages);
  log.begin();
  std::size_t      from = b.move_count();
  std::vector<int> loop(b.path().vertices.begin() + r.off,
                        b.path().vertices.begin() + r.off + r.len + 1);
  contract_Y_range(b, r, ctx.budget);
  log.end(name);
  std::set<int> region(loop.begin(), loop.end());
  for (std::size_t k = from; k < b.moves().size(); ++k) {
    auto const& m = b.moves()[k];
    if (m.kind == MoveKind::face_cross) {
      auto const& f = b.complex().face(m.face);
      region.insert(f.vertices.begin(), f.vertices.end());
    }
  }
  ctx.y_loops.push_back(std::move(loop));
  ctx.y_regions.emplace_back(region.begin(), region.end());
}

std::string contract_loop_range(HomotopyBuilder& b, LoopContext& ctx, Range r) {
  CuspedComplex const& c = *ctx.c;
  if (r.len == 0) return "Y";
  if (in_Y_range(c, b, r)) {
    contract_Y_stage(b, ctx, r, "contract Y loop");
    return "Y";
  }
  int coset = common_horoball(c, b, r);
  if (coset >= 0) {
    StageLog log(b, ctx.stages);
    log.begin();
    contract_horoball_range(b, ctx.view(coset), r, nullptr);
    log.end("contract horoball loop");
    return "horoball";
  }

  int base = vertex_at(b, r.off);
  int k    = depth_function(c, base);
  if (k > 0) {
    // whisker down to Y so that the loop is based in Y
    StageLog log(b, ctx.stages);
    log.begin();
    auto const& view = ctx.view(c.horoball_of(base));
    for (int j = 0; j < k; ++j) {
      b.insert_backtrack(r.off + j, vertical(view, vertex_at(b, r.off + j), k - j, k - j - 1,
                                             "contract_loop"));
    }
    int end = r.off + r.len + 2 * k;
    for (int j = 0; j < k; ++j) {
      b.insert_backtrack(end + j, vertical(view, vertex_at(b, end + j), k - j, k - j - 1,
                                           "contract_loop"));
    }
    log.end("whisker to Y");
    Range inner{r.off + k, r.len + 2 * k};
    int   before = b.path().length();
    contract_loop_range(b, ctx, inner);
    log.begin();
    b.reduce(r.off, r.off + r.len + 4 * k + (b.path().length() - before));
    log.end("remove whisker");
    return "mixed";
  }

  int i       = r.off;
  int end     = r.off + r.len;
  int counter = 0;
  while (i < end) {
    if (depth_function(c, vertex_at(b, i)) == 0 && depth_function(c, vertex_at(b, i + 1)) > 0) {
      int j = i + 1;
      while (depth_function(c, vertex_at(b, j)) > 0) ++j;
      int         coset_id = c.horoball_of(vertex_at(b, i + 1));
      StageLog    log(b, ctx.stages);
      log.begin();
      int newlen;
      try {
        newlen = push_range(b, ctx.view(coset_id), {i, j - i});
      } catch (UncertifiedError const& e) {
        throw UncertifiedError("contract_loop: push excursion " + std::to_string(counter),
                               e.what());
      }
      log.end("push excursion " + std::to_string(counter));
      ++counter;
      end += newlen - (j - i);
      i += newlen;
    } else {
      ++i;
    }
  }
  try {
    contract_Y_stage(b, ctx, {r.off, end - r.off}, "contract Y loop");
  } catch (UncertifiedError const& e) {
    throw UncertifiedError("contract_loop: contract Y loop", e.what());
  }
  return "mixed";
}

}  // namespace

LoopResult slide_loop_up(HoroballView const& h, EdgePath const& loop) {
  if (!closed(loop)) throw Error("slide_loop_up needs a closed loop");
  HomotopyBuilder b(*h.complex, loop);
  Range           core = slide_range(b, h, {0, loop.length()});
  LoopResult      out;
  out.certificate = b.certificate();
  out.loop.vertices.assign(b.path().vertices.begin() + core.off,
                           b.path().vertices.begin() + core.off + core.len + 1);
  out.loop.edges.assign(b.path().edges.begin() + core.off,
                        b.path().edges.begin() + core.off + core.len);
  out.level = level(h, out.loop.vertices.front());
  return out;
}

LoopResult halve_loop(HoroballView const& h, EdgePath const& loop) {
  if (!closed(loop)) throw Error("halve_loop needs a closed loop");
  int k = level(h, loop.vertices.front());
  for (int v : loop.vertices) {
    if (level(h, v) != k) throw Error("halve_loop needs a loop at a single level");
  }
  HomotopyBuilder b(*h.complex, loop);
  Range           core = halve_range(b, h, {0, loop.length()}, k);
  LoopResult      out;
  out.certificate = b.certificate();
  out.loop.vertices.assign(b.path().vertices.begin() + core.off,
                           b.path().vertices.begin() + core.off + core.len + 1);
  out.loop.edges.assign(b.path().edges.begin() + core.off,
                        b.path().edges.begin() + core.off + core.len);
  out.level = level(h, out.loop.vertices.front());
  return out;
}

std::vector<RadiusBound> radius_bounds(Metric const& m, EdgePath const& loop,
                                       std::vector<int> const& region, long bound) {
  std::set<int>            centers(loop.vertices.begin(), loop.vertices.end());
  std::vector<RadiusBound> out;
  for (int v : centers) {
    auto const& row = m.row(v);
    RadiusBound rb;
    rb.center = v;
    rb.bound  = bound;
    for (int x : region) {
      int d = row[static_cast<std::size_t>(x)];
      if (d < 0) {
        rb.achieved = -1;
        break;
      }
      rb.achieved = std::max(rb.achieved, d);
    }
    rb.satisfied = rb.achieved >= 0 && rb.achieved <= bound;
    out.push_back(rb);
  }
  return out;
}

int exponent_above(long K) {
  int k = 0;
  while (k < 62 && (1L << k) <= K) ++k;
  return k;
}

HoroballContraction contract_horoball_loop(HoroballView const& h, Metric const& m,
                                           EdgePath const& loop) {
  if (!closed(loop)) throw Error("contract_horoball_loop needs a closed loop");
  for (int v : loop.vertices) (void) h.locate(v);
  HoroballContraction out;
  out.K     = loop.length();
  out.k     = exponent_above(out.K);
  out.bound = 2L * out.K + out.k;
  HomotopyBuilder b(*h.complex, loop);
  bool trivial = loop.length() == 0 || (loop.length() == 2 && loop.edges[0] == loop.edges[1]);
  if (trivial) {
    out.lengths = {loop.length()};
  } else {
    contract_horoball_range(b, h, {0, loop.length()}, &out.lengths);
  }
  out.certificate = b.certificate();
  out.radii       = radius_bounds(m, loop, out.certificate.region, out.bound);
  out.satisfied   = std::all_of(out.radii.begin(), out.radii.end(),
                                [](RadiusBound const& r) { return r.satisfied; });
  return out;
}

PushResult push_horoball_path_to_Y(HoroballView const& h, EdgePath const& path) {
  if (path.vertices.empty()) throw Error("empty path");
  if (level(h, path.vertices.front()) != 0 || level(h, path.vertices.back()) != 0) {
    throw Error("push_horoball_path_to_Y needs endpoints at depth 0");
  }
  for (int v : path.vertices) (void) h.locate(v);
  HomotopyBuilder b(*h.complex, path);
  push_range(b, h, {0, path.length()});
  PushResult out;
  out.certificate = b.certificate();
  out.path        = b.path();
  long K          = path.length();
  if (K > 0 && K < 40 && static_cast<long>(out.path.length()) >= K * (1L << K)) {
    throw std::logic_error("pushdown bound violated");
  }
  return out;
}

HomotopyCertificate contract_Y_loop(Complex2 const& c, EdgePath const& loop, long budget) {
  if (!closed(loop)) throw Error("contract_Y_loop needs a closed loop");
  for (int e : loop.edges) {
    if (c.edge(e).kind != EdgeKind::cayley) throw Error("loop leaves Y");
  }
  HomotopyBuilder b(c, loop);
  contract_Y_range(b, {0, loop.length()}, budget);
  return b.certificate();
}

RadiusRecipe contraction_radius_bound(long K, int delta, long measured_y) {
  if (K < 1) throw Error("contraction_radius_bound needs K >= 1");
  constexpr long cap = LONG_MAX / 8;
  auto           sat = [&](long x) { return std::min(x, cap); };
  auto           recipe = [&](long L) {
    RadiusRecipe r;
    r.horoball = sat(2 * std::min(L, cap) + exponent_above(L));
    long loops = L >= 40 ? cap : sat(L * ((1L << L) + 1));
    long inner = loops - 1;
    r.pushdown = sat(2 * std::min(inner, cap) + exponent_above(inner));
    r.N        = std::max(sat(measured_y + r.pushdown + L), r.horoball);
    return r;
  };
  RadiusRecipe out = recipe(K);
  out.N1           = recipe(7L * std::max(delta, 0) + 3).N;
  return out;
}

LoopContraction contract_loop(CuspedComplex const& c, Metric const& m, EdgePath const& loop,
                              long budget) {
  if (!closed(loop)) throw Error("contract_loop needs a closed loop");
  LoopContraction out;
  out.K = loop.length();
  HomotopyBuilder b(c.X, loop);
  LoopContext     ctx{&c, budget, {}, &out.stages, {}, {}};
  out.route       = contract_loop_range(b, ctx, {0, loop.length()});
  int end         = b.path().length();
  if (end > 0) {
    StageLog log(b, &out.stages);
    log.begin();
    b.reduce(0, end);
    log.end("reduce");
  }
  out.certificate = b.certificate();
  for (std::size_t i = 0; i < ctx.y_loops.size(); ++i) {
    EdgePath p;
    p.vertices = ctx.y_loops[i];
    for (auto const& rb : radius_bounds(m, p, ctx.y_regions[i], 0)) {
      out.measured_y = std::max<long>(out.measured_y, rb.achieved);
    }
  }
  if (out.K > 0) {
    out.recipe = contraction_radius_bound(out.K, 0, out.measured_y);
    out.bound  = out.route == "horoball" ? out.recipe.horoball : out.recipe.N;
  }
  out.radii     = radius_bounds(m, loop, out.certificate.region, out.bound);
  out.satisfied = std::all_of(out.radii.begin(), out.radii.end(),
                              [](RadiusBound const& r) { return r.satisfied; });
  return out;
}

RectangleFilling fill_rectangle(CuspedComplex const& c, Metric const& m, EdgePath const& r,
                                EdgePath const& s, EdgePath const& gamma,
                                EdgePath const& beta, int delta, int center, long budget) {
  if (r.length() != s.length()) throw Error("fill_rectangle needs segments of equal length");
  if (!is_edge_path(c.X, r) || !is_edge_path(c.X, s) || !is_edge_path(c.X, gamma)
      || !is_edge_path(c.X, beta)) {
    throw Error("fill_rectangle needs edge paths");
  }
  if (gamma.vertices.front() != r.vertices.front() || gamma.vertices.back() != s.vertices.front()
      || beta.vertices.front() != r.vertices.back() || beta.vertices.back() != s.vertices.back()) {
    throw Error("end arcs do not join the segment endpoints");
  }
  if (gamma.length() > delta || beta.length() > delta) {
    throw Error("end arcs longer than delta");
  }
  int n = r.length();
  // arcs[j] joins r_j to s_j
  std::vector<EdgePath> arcs(static_cast<std::size_t>(n) + 1);
  arcs[0] = gamma;
  arcs[static_cast<std::size_t>(n)] = beta;
  for (int j = 1; j < n; ++j) {
    arcs[static_cast<std::size_t>(j)] =
        m.geodesic(r.vertices[static_cast<std::size_t>(j)], s.vertices[static_cast<std::size_t>(j)]);
    if (arcs[static_cast<std::size_t>(j)].length() > delta) {
      throw Error("segments are not delta-matched at vertex " + std::to_string(j));
    }
  }

  RectangleFilling out;
  HomotopyBuilder  b(c.X, r);
  LoopContext      ctx{&c, budget, {}, nullptr, {}, {}};
  for (int t = 0; t < gamma.length(); ++t) b.insert_backtrack(t, gamma.edges[static_cast<std::size_t>(t)]);
  for (int j = 0; j < n; ++j) {
    auto const& here = arcs[static_cast<std::size_t>(j)];
    auto const& next = arcs[static_cast<std::size_t>(j) + 1];
    int         A    = gamma.length() + j;
    int         B    = A + here.length() + 1;
    if (here.empty() && next.empty() && r.edges[static_cast<std::size_t>(j)] == s.edges[static_cast<std::size_t>(j)]) {
      out.quad_lengths.push_back(0);
      continue;
    }
    for (int t = 0; t < next.length(); ++t) b.insert_backtrack(B + t, next.edges[static_cast<std::size_t>(t)]);
    b.insert_backtrack(A, s.edges[static_cast<std::size_t>(j)]);
    Range quad{A + 1, 2 + here.length() + next.length()};
    out.quad_lengths.push_back(quad.len);
    try {
      int before = b.path().length();
      contract_loop_range(b, ctx, quad);
      int after = quad.len + (b.path().length() - before);
      if (after > 0) b.reduce(quad.off, quad.off + after);
    } catch (UncertifiedError const& e) {
      throw UncertifiedError("fill_rectangle: quadrilateral " + std::to_string(j), e.what());
    }
  }
  out.certificate = b.certificate();
  out.max_quad    = out.quad_lengths.empty()
                        ? 0
                        : *std::max_element(out.quad_lengths.begin(), out.quad_lengths.end());
  if (center >= 0) {
    out.center       = center;
    auto const& row  = m.row(center);
    int         best = INT_MAX;
    for (int x : out.certificate.region) {
      int d = row[static_cast<std::size_t>(x)];
      if (d >= 0) best = std::min(best, d);
    }
    out.min_center_distance = best == INT_MAX ? -1 : best;
  }
  return out;
}

}  // namespace cusp
