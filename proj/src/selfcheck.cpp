#include "cusp/selfcheck.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "cusp/certificate.hpp"
#include "cusp/error.hpp"
#include "cusp/excision.hpp"
#include "cusp/homotopy.hpp"
#include "cusp/metric.hpp"
#include "cusp/strip_corpus.hpp"

namespace cusp {

namespace {

std::string cat(std::initializer_list<std::string> parts) {
  std::string out;
  for (auto const& p : parts) out += p;
  return out;
}

std::string num(long x) { return std::to_string(x); }

BaseGraph path_graph(int n) {
  BaseGraph g;
  g.n = n;
  for (int i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1});
  return g;
}

CuspedComplex free_rel_a(int radius, int depth) {
  return build_cusped_space(parse_presentation("gens a,b; rels ; periph P: a [free]"), radius, depth);
}

// Closed walks of length 1..max_len from every vertex, without immediate
// backtracking.
void for_each_loop(Complex2 const& c, int max_len, std::function<void(EdgePath const&)> const& f) {
  EdgePath                 p;
  std::function<void(int)> extend = [&](int base) {
    int cur = p.vertices.back();
    if (p.length() > 0 && cur == base) f(p);
    if (p.length() == max_len) return;
    for (int e : c.edges_at(cur)) {
      if (!p.edges.empty() && p.edges.back() == e) continue;
      int nxt = c.edge(e).other(cur);
      p.edges.push_back(e);
      p.vertices.push_back(nxt);
      extend(base);
      p.edges.pop_back();
      p.vertices.pop_back();
    }
  };
  for (int v = 0; v < c.vertex_count(); ++v) {
    p.vertices = {v};
    p.edges.clear();
    extend(v);
  }
}

// Random walk of `steps` edges from v restricted by `allow`, closed up by a
// shortest path through allowed edges.
EdgePath random_loop(Complex2 const& c, int v, int steps, std::mt19937_64& rng,
                     std::function<bool(int)> const& allow) {
  EdgePath p;
  p.vertices = {v};
  for (int s = 0; s < steps; ++s) {
    std::vector<int> opts;
    for (int e : c.edges_at(p.vertices.back())) {
      if (allow(e)) opts.push_back(e);
    }
    if (opts.empty()) break;
    int e = opts[std::uniform_int_distribution<std::size_t>(0, opts.size() - 1)(rng)];
    p.edges.push_back(e);
    p.vertices.push_back(c.edge(e).other(p.vertices.back()));
  }
  // shortest way home through allowed edges
  std::map<int, int> via;
  std::vector<int>   queue{p.vertices.back()};
  via[p.vertices.back()] = -1;
  for (std::size_t q = 0; q < queue.size() && !via.count(v); ++q) {
    for (int e : c.edges_at(queue[q])) {
      int o = c.edge(e).other(queue[q]);
      if (!allow(e) || via.count(o)) continue;
      via[o] = e;
      queue.push_back(o);
    }
  }
  if (!via.count(v)) throw Error("random loop cannot close");
  std::vector<int> back;
  for (int x = v; via.at(x) >= 0; x = c.edge(via.at(x)).other(x)) back.push_back(via.at(x));
  for (auto it = back.rbegin(); it != back.rend(); ++it) {
    p.edges.push_back(*it);
    p.vertices.push_back(c.edge(*it).other(p.vertices.back()));
  }
  return p;
}

int top_depth(HoroballComplex const& h, EdgePath const& p) {
  int top = 0;
  for (int v : p.vertices) top = std::max(top, depth(h, v));
  return top;
}

}  // namespace

std::vector<BaseGraph> connected_graphs(int n) {
  std::vector<std::pair<int, int>> all;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) all.push_back({i, j});
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::map<long, BaseGraph> seen;
  for (long mask = 0; mask < (1L << all.size()); ++mask) {
    BaseGraph g;
    g.n = n;
    for (std::size_t b = 0; b < all.size(); ++b) {
      if (mask >> b & 1) g.edges.push_back(all[b]);
    }
    if (!g.connected()) continue;
    long best = -1;
    std::iota(perm.begin(), perm.end(), 0);
    do {
      long key = 0;
      for (auto [u, v] : g.edges) {
        int a = perm[static_cast<std::size_t>(u)], b = perm[static_cast<std::size_t>(v)];
        if (a > b) std::swap(a, b);
        key |= 1L << (std::find(all.begin(), all.end(), std::pair{a, b}) - all.begin());
      }
      best = best < 0 ? key : std::min(best, key);
    } while (std::next_permutation(perm.begin(), perm.end()));
    seen.emplace(best, g);
  }
  std::vector<BaseGraph> out;
  for (auto& [k, g] : seen) out.push_back(g);
  return out;
}

BaseGraph random_connected_graph(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BaseGraph       g;
  g.n = n;
  std::set<std::pair<int, int>> have;
  for (int v = 1; v < n; ++v) {
    int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
    g.edges.push_back({u, v});
    have.insert({u, v});
  }
  std::bernoulli_distribution coin(p);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!have.count({u, v}) && coin(rng)) g.edges.push_back({u, v});
    }
  }
  return g;
}

// ---------------------------------------------------------------------------

CheckResult check_horoball_normal_form(SelfcheckOptions const& opt) {
  CheckResult r{1, "horoball normal form", false, ""};
  auto        h    = build_horoball(path_graph(17), 6);
  auto        view = HoroballView::of(h);
  Metric      m(h.complex);
  long        checked = 0, length_mismatch = 0;
  int         worst = 0;
  int         stride = opt.quick ? 7 : 1;
  for (int u = 0; u < h.complex.vertex_count(); u += 1) {
    for (int v = u + 1; v < h.complex.vertex_count(); v += stride) {
      auto d = m.distance(u, v);
      if (!m.all_geodesics_inside(u, v, d.value)) continue;
      auto nf = horoball_geodesic(view, u, v);
      length_mismatch += nf.length() != d.value;
      worst = std::max(worst, hausdorff_to_all_geodesics(m, m.dag(u, v), nf, 6));
      ++checked;
    }
  }
  r.passed = checked > 0 && length_mismatch == 0 && worst <= 4;
  r.detail = cat({num(checked), " certified pairs, ", num(length_mismatch),
                  " length mismatches (tolerance 0), worst Hausdorff distance ", num(worst),
                  " (bound 4)"});
  return r;
}

CheckResult check_horoball_contraction(SelfcheckOptions const& opt) {
  CheckResult r{2, "horoball contraction bound", false, ""};
  long        loops = 0, failures = 0, headroom = 0;
  std::string first;
  auto        run = [&](HoroballComplex const& h, HoroballView const& view, Metric const& m,
                 EdgePath const& loop) {
    if (top_depth(h, loop) + exponent_above(loop.length()) > h.depth_cap) {
      ++headroom;
      return;
    }
    ++loops;
    auto res = contract_horoball_loop(view, m, loop);
    auto const& end = res.certificate.end;
    bool        ok  = res.satisfied && verify_certificate(h.complex, res.certificate).valid
              && (end.length() == 0 || (end.length() == 2 && end.edges[0] == end.edges[1]));
    for (std::size_t i = 2; i < res.lengths.size(); ++i) {
      ok = ok && 2 * res.lengths[i] <= res.lengths[i - 1] + 2;
    }
    if (!ok && failures++ == 0) first = "loop of length " + num(loop.length());
  };

  // every non-backtracking loop over every connected graph with <= 4 vertices
  int exhaustive_len = opt.quick ? 6 : 8;
  for (int n = 1; n <= 4; ++n) {
    for (auto const& g : connected_graphs(n)) {
      auto   h    = build_horoball(g, 6);
      auto   view = HoroballView::of(h);
      Metric m(h.complex);
      for_each_loop(h.complex, exhaustive_len, [&](EdgePath const& loop) { run(h, view, m, loop); });
    }
  }
  long exhaustive = loops;

  // seeded loops of length <= 10 over graphs with 5..8 vertices
  std::mt19937_64 rng(opt.seed);
  int             graphs = opt.quick ? 8 : 60, per_graph = opt.quick ? 50 : 200;
  for (int gi = 0; gi < graphs; ++gi) {
    int    n    = 5 + gi % 4;
    auto   g    = random_connected_graph(n, 0.3, opt.seed * 1000 + static_cast<std::uint64_t>(gi));
    auto   h    = build_horoball(g, 7);
    auto   view = HoroballView::of(h);
    Metric m(h.complex);
    for (int k = 0; k < per_graph; ++k) {
      int v = std::uniform_int_distribution<int>(0, h.complex.vertex_count() - 1)(rng);
      if (depth(h, v) > 3) continue;
      int  steps = std::uniform_int_distribution<int>(1, 7)(rng);
      auto loop  = random_loop(h.complex, v, steps, rng, [](int) { return true; });
      if (loop.length() > 10 || loop.length() == 0) continue;
      run(h, view, m, loop);
    }
  }
  r.passed = failures == 0 && loops > 0;
  r.detail = cat({num(exhaustive), " exhaustive loops (<= 4 base vertices, length <= ",
                  num(exhaustive_len), "), ", num(loops - exhaustive),
                  " seeded loops (5-8 base vertices, length <= 10), ", num(failures),
                  " violations of the 2K+k radius or halving bound, ", num(headroom),
                  " skipped for depth headroom", failures ? "; first: " + first : ""});
  return r;
}

CheckResult check_halving_and_pushdown(SelfcheckOptions const& opt) {
  CheckResult     r{3, "halving and pushdown bounds", false, ""};
  std::mt19937_64 rng(opt.seed + 7);
  long            halvings = 0, pushes = 0, bad_half = 0, bad_push = 0;
  int             cases = opt.quick ? 200 : 1000;
  for (int i = 0; i < cases; ++i) {
    int    n    = std::uniform_int_distribution<int>(2, 8)(rng);
    auto   g    = random_connected_graph(n, 0.3, opt.seed * 7919 + static_cast<std::uint64_t>(i));
    auto   h    = build_horoball(g, 6);
    auto   view = HoroballView::of(h);
    int    level = std::uniform_int_distribution<int>(0, 4)(rng);
    int    base  = std::uniform_int_distribution<int>(0, n - 1)(rng);
    auto const& C = h.complex;

    // a horizontal loop at one level
    auto flat = random_loop(C, h.vertex_id(base, level), std::uniform_int_distribution<int>(1, 8)(rng),
                            rng, [&](int e) {
                              auto const& x = C.edge(e);
                              return x.horizontal() && depth(h, x.u) == level && depth(h, x.v) == level;
                            });
    if (flat.length() > 0) {
      auto half = halve_loop(view, flat);
      ++halvings;
      bool ok = 2 * half.loop.length() <= flat.length() + 2
                && verify_certificate(C, half.certificate).valid;
      bad_half += !ok;
    }

    // a path with depth-0 endpoints
    EdgePath path;
    path.vertices = {h.vertex_id(base, 0)};
    int steps     = std::uniform_int_distribution<int>(1, 10)(rng);
    for (int s = 0; s < steps; ++s) {
      auto const& es = C.edges_at(path.vertices.back());
      int  e = es[std::uniform_int_distribution<std::size_t>(0, es.size() - 1)(rng)];
      int  o = C.edge(e).other(path.vertices.back());
      if (depth(h, o) > 5) continue;
      path.edges.push_back(e);
      path.vertices.push_back(o);
    }
    while (depth(h, path.vertices.back()) > 0) {
      int cur = path.vertices.back();
      for (int e : C.edges_at(cur)) {
        int o = C.edge(e).other(cur);
        if (depth(h, o) == depth(h, cur) - 1) {
          path.edges.push_back(e);
          path.vertices.push_back(o);
          break;
        }
      }
    }
    long K = path.length();
    if (K == 0) continue;
    auto out = push_horoball_path_to_Y(view, path);
    ++pushes;
    bool ok = verify_certificate(C, out.certificate).valid
              && out.path.vertices.front() == path.vertices.front()
              && out.path.vertices.back() == path.vertices.back();
    for (int v : out.path.vertices) ok = ok && depth(h, v) == 0;
    // K * 2^K, saturated
    long cap = K >= 40 ? (1L << 62) : K * (1L << K);
    ok       = ok && out.path.length() < cap;
    bad_push += !ok;
  }
  r.passed = bad_half == 0 && bad_push == 0 && halvings > 0 && pushes > 0;
  r.detail = cat({num(halvings), " halvings with |out| <= |in|/2 + 1 violated ", num(bad_half),
                  " times; ", num(pushes), " pushdowns with |out| < K 2^K violated ", num(bad_push),
                  " times; seed ", num(static_cast<long>(opt.seed))});
  return r;
}

namespace {

int estimate(CuspedComplex const& c, long samples, std::uint64_t seed) {
  Metric      m = cusped_metric(c);
  DeltaConfig cfg;
  cfg.samples = samples;
  cfg.seed    = seed;
  return delta_estimate(m, cfg).delta;
}

}  // namespace

CheckResult check_thin_triangles(SelfcheckOptions const& opt) {
  CheckResult r{4, "thin triangles", false, ""};
  long        samples = opt.quick ? 300 : 2000;
  auto        tree_p  = parse_presentation("gens a,b");
  auto        z2_p    = parse_presentation("gens a,b; rels [a,b]");
  std::string trees, z2, cusped;
  bool        trees_ok = true, z2_ok = true;
  for (int R = 1; R <= 6; ++R) {
    int d = estimate(build_cusped_space(tree_p, R, 0), samples, opt.seed);
    trees += (R > 1 ? "," : "") + num(d);
    trees_ok = trees_ok && d == 0;
  }
  int last = -1, first = -1;
  for (int R = 2; R <= 6; ++R) {
    int d = estimate(build_cusped_space(z2_p, R, 0), samples, opt.seed);
    z2 += (R > 2 ? "," : "") + num(d);
    z2_ok = z2_ok && d >= last;
    if (first < 0) first = d;
    last = d;
  }
  z2_ok = z2_ok && last > first;
  int lo = 1 << 20, hi = -1;
  for (int R = 3; R <= 5; ++R) {
    int d = estimate(free_rel_a(R, 3), samples, opt.seed);
    cusped += (R > 3 ? "," : "") + num(d);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  bool cusped_ok = lo >= 0 && hi - lo <= 1;
  r.passed       = trees_ok && z2_ok && cusped_ok;
  r.detail = cat({"free group R=1..6: ", trees, " (want 0); Z^2 R=2..6: ", z2,
                  " (want nondecreasing and growing); F2/<a> R=3..5, depth 3: ", cusped,
                  " (want spread <= 1); ", num(samples), " triples each"});
  return r;
}

CheckResult check_horoball_convexity(SelfcheckOptions const& opt) {
  CheckResult r{5, "horoball convexity", false, ""};
  auto        c     = free_rel_a(3, 4);
  int         delta = estimate(c, opt.quick ? 300 : 2000, opt.seed);
  int         m     = std::max(delta, 1);
  Metric      metric = cusped_metric(c);
  auto        rep = convexity_check(metric, m, opt.quick ? 200 : 1000, opt.seed);
  r.passed        = rep.violations.empty() && !rep.vacuous && rep.pairs_certified > 0;
  r.detail        = cat({"delta estimate ", num(delta), ", m = ", num(m), ": ", num(rep.pairs_sampled),
                  " pairs, ", num(rep.pairs_certified), " certified, ",
                  num(static_cast<long>(rep.violations.size())), " violations"});
  return r;
}

namespace {

struct CorpusStats {
  long maps = 0, map_problems = 0, classes = 0, pairs = 0, nested = 0;
  long violations = 0, oracle_mismatch = 0, observation_violations = 0;
  long oracle_queries = 0, oracle_uncertified = 0;
  InductionStats steps;
  std::string    first_violation;
};

CorpusStats const& corpus(SelfcheckOptions const& opt) {
  static std::map<std::pair<bool, std::uint64_t>, CorpusStats> cache;
  auto key = std::pair{opt.quick, opt.seed};
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  CorpusStats                st;
  std::vector<CuspedComplex> targets;
  targets.push_back(free_rel_a(3, 3));
  targets.push_back(build_cusped_space(
      parse_presentation("gens a,b; rels ; periph P: a [free]; periph Q: b [free]"), 3, 3));
  int count = opt.quick ? 30 : 120;
  for (int k = 0; k < count; ++k) {
    std::uint64_t seed = opt.seed * 100003 + static_cast<std::uint64_t>(k);
    auto const&   c    = targets[static_cast<std::size_t>(k) % targets.size()];
    auto          m    = random_strip_map(c, seed);
    ++st.maps;
    if (!validate_strip_map(c, m).empty()) {
      ++st.map_problems;
      continue;
    }
    std::map<std::pair<int, int>, Separation> oracle;
    int                                       found = 0;
    for (int i = 0; i < static_cast<int>(c.cosets.size()); ++i) {
      auto col = color(c, m, i);
      st.observation_violations += static_cast<long>(check_observations(m.strip, col).size());
      for (int v = 0; v < m.strip.vertex_count(); ++v) {
        if (col.vertex[static_cast<std::size_t>(v)] == Color::blue) continue;
        int  x   = m.image[static_cast<std::size_t>(v)];
        auto key = std::pair{x, i};
        if (!oracle.count(key)) {
          oracle[key] = separation_oracle(c, x, i);
          ++st.oracle_queries;
          st.oracle_uncertified += !oracle[key].certified;
        }
        auto const& s = oracle[key];
        if (s.certified && s.separated != (col.vertex[static_cast<std::size_t>(v)] == Color::red)) {
          ++st.oracle_mismatch;
        }
      }
      for (auto const& cls : red_classes(m.strip, col)) {
        ++st.classes;
        ++found;
        if (!(disk_pair_induction(m.strip, col, cls, &st.steps) == disk_pair_region_grow(m.strip, col, cls))) {
          ++st.violations;
          if (st.first_violation.empty()) st.first_violation = "methods differ, seed " + num(static_cast<long>(seed));
        }
      }
    }
    auto pairs = excise(c, m);
    st.pairs += static_cast<long>(pairs.size());
    st.nested += found - static_cast<long>(pairs.size());
    auto rep = validate_excision(c, m, pairs);
    if (!rep.valid) {
      st.violations += static_cast<long>(rep.violations.size());
      if (st.first_violation.empty()) {
        st.first_violation = rep.violations.front() + ", seed " + num(static_cast<long>(seed));
      }
    }
  }
  return cache[key] = st;
}

}  // namespace

CheckResult check_excision(SelfcheckOptions const& opt) {
  CheckResult r{6, "excision", false, ""};
  auto const& st = corpus(opt);
  r.passed = st.map_problems == 0 && st.violations == 0 && st.maps >= (opt.quick ? 30 : 100);
  r.detail = cat({num(st.maps), " seeded strip maps (width <= 20), ", num(st.classes), " red classes, ",
                  num(st.pairs), " disk pairs after removing ", num(st.nested), " nested, ",
                  num(st.violations), " violations",
                  st.first_violation.empty() ? "" : "; first: " + st.first_violation});
  return r;
}

CheckResult check_disk_pair_oracles(SelfcheckOptions const& opt) {
  CheckResult r{7, "disk pair oracles agree", false, ""};
  auto const& st = corpus(opt);
  r.passed = st.violations == 0 && st.classes > 0;
  r.detail = cat({num(st.classes), " classes compared; boundary steps through a new vertex ",
                  num(st.steps.new_vertex), ", along two edges ", num(st.steps.adjacent),
                  ", closing a pocket ", num(st.steps.pocket)});
  return r;
}

CheckResult check_coloring(SelfcheckOptions const& opt) {
  CheckResult r{8, "coloring observations", false, ""};
  auto const& st = corpus(opt);
  r.passed = st.observation_violations == 0 && st.oracle_mismatch == 0 && st.oracle_queries > 0;
  r.detail = cat({num(st.observation_violations), " observation violations, ",
                  num(st.oracle_queries), " separation queries (", num(st.oracle_uncertified),
                  " uncertified), ", num(st.oracle_mismatch), " disagreements with the structural coloring"});
  return r;
}

CheckResult check_rectangles(SelfcheckOptions const& opt) {
  CheckResult     r{9, "fellow-traveler rectangles", false, ""};
  auto            c     = free_rel_a(3, 3);
  int             delta = std::max(estimate(c, opt.quick ? 300 : 2000, opt.seed), 0);
  Metric          m = cusped_metric(c);
  std::mt19937_64 rng(opt.seed + 9);
  int             want = opt.quick ? 40 : 200;
  long            tried = 0, filled = 0, bad = 0, uncertified = 0;
  int             worst = 0;
  auto            pick  = [&](std::vector<int> const& xs) {
    return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
  };
  // random geodesic through the shortest-path DAG
  auto random_geodesic = [&](int u, int v) {
    auto             dag = m.dag(u, v);
    std::vector<int> vs{u};
    for (std::size_t t = 1; t < dag.layers.size(); ++t) {
      std::vector<int> next;
      for (int x : dag.layers[t]) {
        if (c.X.find_edge(vs.back(), x)) next.push_back(x);
      }
      vs.push_back(pick(next));
    }
    return path_through(c.X, vs);
  };
  while (filled < want && tried < 50L * want) {
    ++tried;
    int u = std::uniform_int_distribution<int>(0, c.X.vertex_count() - 1)(rng);
    int v = std::uniform_int_distribution<int>(0, c.X.vertex_count() - 1)(rng);
    auto d = m.distance(u, v);
    if (d.value < 1 || d.value > 8 || !m.all_geodesics_inside(u, v, d.value)) continue;
    auto rpath = random_geodesic(u, v);
    // second side: a geodesic between neighbours (or the same ends) at the same length
    std::vector<int> us{u}, vs{v};
    for (int e : c.X.edges_at(u)) us.push_back(c.X.edge(e).other(u));
    for (int e : c.X.edges_at(v)) vs.push_back(c.X.edge(e).other(v));
    int u2 = pick(us), v2 = pick(vs);
    auto d2 = m.distance(u2, v2);
    if (d2.value != d.value || !m.all_geodesics_inside(u2, v2, d2.value)) continue;
    auto spath   = random_geodesic(u2, v2);
    bool matched = true;
    for (std::size_t i = 0; i < rpath.vertices.size() && matched; ++i) {
      auto di = m.distance(rpath.vertices[i], spath.vertices[i]);
      matched = di.exact && di.value <= delta;
    }
    if (!matched) continue;
    auto gamma = m.geodesic(u, u2);
    auto beta  = m.geodesic(v, v2);
    try {
      auto fill = fill_rectangle(c, m, rpath, spath, gamma, beta, delta);
      ++filled;
      worst   = std::max(worst, fill.max_quad);
      bool ok = verify_certificate(c.X, fill.certificate).valid && fill.max_quad <= 2 * delta + 2;
      bad += !ok;
    } catch (UncertifiedError const&) {
      ++uncertified;
    }
  }
  r.passed = filled > 0 && bad == 0 && uncertified == 0;
  r.detail = cat({"delta estimate ", num(delta), ": ", num(filled),
                  " matched geodesic pairs of length <= 8 filled, largest quadrilateral ", num(worst),
                  " (bound ", num(2 * delta + 2), "), ", num(bad), " failures, ", num(uncertified),
                  " uncertified"});
  return r;
}

std::vector<CheckResult> run_selfcheck(SelfcheckOptions const& opt) {
  return {check_horoball_normal_form(opt), check_horoball_contraction(opt),
          check_halving_and_pushdown(opt), check_thin_triangles(opt),
          check_horoball_convexity(opt),   check_excision(opt),
          check_disk_pair_oracles(opt),    check_coloring(opt),
          check_rectangles(opt)};
}

}  // namespace cusp
