#include "cusp/cusped.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <set>

#include "cusp/error.hpp"

namespace cusp {

std::optional<int> CuspedComplex::find_vertex(Word const& w) const {
  auto const& prov = *presentation.provider;
  auto        it   = _buckets.find(prov.bucket_key(w));
  if (it == _buckets.end()) {
    return std::nullopt;
  }
  for (int v : it->second) {
    if (prov.key_is_exact() || prov.equal(Y.vertex(v).word, w)) {
      return v;
    }
  }
  return std::nullopt;
}

int CuspedComplex::vertex_of(Word const& w) const {
  auto v = find_vertex(w);
  if (!v) {
    throw Error("element " + presentation.format(w) + " is outside the ball");
  }
  return *v;
}

int CuspedComplex::vertex_above(int y, int peripheral, int k) const {
  if (!in_Y(y)) {
    throw Error("not a Y vertex: " + std::to_string(y));
  }
  if (peripheral < 0
      || peripheral >= static_cast<int>(presentation.peripherals.size())) {
    throw Error("no peripheral subgroup " + std::to_string(peripheral));
  }
  if (k < 0 || k > depth_cap) {
    throw Error("depth " + std::to_string(k) + " outside 0.." + std::to_string(depth_cap));
  }
  int c = coset_index[static_cast<std::size_t>(peripheral)][static_cast<std::size_t>(y)];
  int i = member_index[static_cast<std::size_t>(c)].at(y);
  return cosets[static_cast<std::size_t>(c)]
      .column[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
}

int CuspedComplex::horoball_of(int v) const {
  auto const& vx = X.vertex(v);
  return vx.kind == VertexKind::horo ? vx.coset : -1;
}

std::string CuspedComplex::describe(int v) const {
  auto const& vx = X.vertex(v);
  if (vx.kind == VertexKind::cayley) {
    return presentation.format(vx.word);
  }
  auto const& c = cosets[static_cast<std::size_t>(vx.coset)];
  return presentation.format(X.vertex(vx.base).word) + "#"
         + std::to_string(c.peripheral) + ":" + std::to_string(vx.depth);
}

namespace {

  void check_caps(ComplexBuilder const& b, BuildLimits const& limits) {
    auto const& c = b.peek();
    if (c.vertex_count() > limits.max_vertices) {
      throw Error("resource cap exceeded: vertices");
    }
    if (c.edge_count() > limits.max_edges) {
      throw Error("resource cap exceeded: edges");
    }
    if (c.face_count() > limits.max_faces) {
      throw Error("resource cap exceeded: faces");
    }
  }

  // Canonical form of a cyclic edge sequence up to rotation and reversal.
  std::vector<int> canonical_cycle(std::vector<int> const& edges) {
    std::vector<int> best;
    auto             n = edges.size();
    for (int dir = 0; dir < 2; ++dir) {
      std::vector<int> seq = edges;
      if (dir == 1) {
        std::reverse(seq.begin(), seq.end());
      }
      for (std::size_t r = 0; r < n; ++r) {
        std::vector<int> rot(n);
        for (std::size_t i = 0; i < n; ++i) {
          rot[i] = seq[(i + r) % n];
        }
        if (best.empty() || rot < best) {
          best = rot;
        }
      }
    }
    return best;
  }

}  // namespace

CuspedComplex build_cusped_space(GroupPresentation const& p,
                                 int                      radius,
                                 int                      depth_cap,
                                 BuildLimits const&       limits) {
  if (radius < 1) {
    throw Error("radius must be >= 1");
  }
  if (depth_cap < 0) {
    throw Error("depth cap must be >= 0");
  }
  if (!p.provider) {
    throw Error("unsupported family: no normal-form provider");
  }
  CuspedComplex out;
  out.presentation = p;
  out.radius       = radius;
  out.depth_cap    = depth_cap;
  auto const& prov = *p.provider;
  auto const  ngen = static_cast<int>(p.generators.size());

  ComplexBuilder b;

  // Shortlex breadth-first enumeration of the ball.
  std::vector<int>  length;
  auto lookup = [&](Word const& w) -> std::optional<int> {
    auto it = out._buckets.find(prov.bucket_key(w));
    if (it == out._buckets.end()) {
      return std::nullopt;
    }
    for (int v : it->second) {
      if (prov.key_is_exact() || prov.equal(b.peek().vertex(v).word, w)) {
        return v;
      }
    }
    return std::nullopt;
  };
  std::vector<Word> bfs_word;
  auto add = [&](Word const& w, int len) {
    Vertex v;
    v.kind = VertexKind::cayley;
    v.word = prov.normal_form(w);
    int id = b.add_vertex(v);
    out._buckets[prov.bucket_key(w)].push_back(id);
    length.push_back(len);
    bfs_word.push_back(w);
    if (b.peek().vertex_count() > limits.max_vertices) {
      throw Error("resource cap exceeded: vertices");
    }
    return id;
  };
  out.basepoint = add(Word{}, 0);
  for (std::size_t head = 0; head < bfs_word.size(); ++head) {
    if (length[head] == radius) {
      continue;
    }
    for (int g = 0; g < ngen; ++g) {
      for (bool inv : {false, true}) {
        Word w = concat(bfs_word[head], Word{letter(g, inv)});
        if (!lookup(w)) {
          add(w, length[head] + 1);
        }
      }
    }
  }
  int const nY = b.peek().vertex_count();

  // right multiplication table, -1 outside the ball
  std::vector<std::vector<int>> times(static_cast<std::size_t>(nY));
  for (int v = 0; v < nY; ++v) {
    auto& row = times[static_cast<std::size_t>(v)];
    row.resize(static_cast<std::size_t>(2 * ngen));
    for (int g = 0; g < ngen; ++g) {
      for (bool inv : {false, true}) {
        auto t = lookup(concat(bfs_word[static_cast<std::size_t>(v)], Word{letter(g, inv)}));
        row[static_cast<std::size_t>(letter_rank(letter(g, inv)))] = t ? *t : -1;
      }
    }
  }
  auto step = [&](int v, Letter l) {
    return times[static_cast<std::size_t>(v)][static_cast<std::size_t>(letter_rank(l))];
  };

  for (int v = 0; v < nY; ++v) {
    for (int g = 0; g < ngen; ++g) {
      int t = step(v, letter(g));
      if (t >= 0) {
        b.ensure_edge(v, t, EdgeKind::cayley, g);
      }
    }
  }
  check_caps(b, limits);

  auto edge_for = [&](int x, Letter l) -> std::optional<std::pair<int, int>> {
    int y = step(x, l);
    if (y < 0) {
      return std::nullopt;
    }
    auto e = b.peek().find_edge(x, y, EdgeKind::cayley, generator_of(l));
    if (!e) {
      return std::nullopt;
    }
    return std::make_pair(*e, y);
  };
  auto trace = [&](int start, Word const& r) -> std::optional<std::vector<int>> {
    std::vector<int> edges;
    int              x = start;
    for (Letter l : r) {
      auto e = edge_for(x, l);
      if (!e) {
        return std::nullopt;
      }
      edges.push_back(e->first);
      x = e->second;
    }
    if (x != start) {
      return std::nullopt;
    }
    return edges;
  };

  std::vector<bool> frontier(static_cast<std::size_t>(nY), false);
  for (int v = 0; v < nY; ++v) {
    for (int r = 0; r < 2 * ngen; ++r) {
      if (times[static_cast<std::size_t>(v)][static_cast<std::size_t>(r)] < 0) {
        frontier[static_cast<std::size_t>(v)] = true;
      }
    }
  }

  std::set<std::vector<int>> seen_faces;
  for (std::size_t ri = 0; ri < p.relators.size(); ++ri) {
    Word const& r = p.relators[ri];
    if (r.empty()) {
      continue;
    }
    for (int v = 0; v < nY; ++v) {
      for (Word const& base : {r, inverse(r)}) {
        for (std::size_t rot = 0; rot < base.size(); ++rot) {
          Word w(base.begin() + static_cast<long>(rot), base.end());
          w.insert(w.end(), base.begin(), base.begin() + static_cast<long>(rot));
          auto edges = trace(v, w);
          if (!edges) {
            frontier[static_cast<std::size_t>(v)] = true;
            continue;
          }
          auto key = canonical_cycle(*edges);
          if (seen_faces.insert(key).second) {
            b.add_face(*edges, FaceKind::relator, static_cast<int>(ri));
          }
        }
      }
    }
  }
  check_caps(b, limits);

  // Peripheral cosets.
  auto const nper = p.peripherals.size();
  out.coset_index.assign(nper, std::vector<int>(static_cast<std::size_t>(nY), -1));
  for (std::size_t pi = 0; pi < nper; ++pi) {
    auto const& spec = p.peripherals[pi];
    std::vector<Letter> pletters;
    for (int g : spec.generators) {
      pletters.push_back(letter(g));
      pletters.push_back(letter(g, true));
    }
    auto& index = out.coset_index[pi];
    for (int rep = 0; rep < nY; ++rep) {
      if (index[static_cast<std::size_t>(rep)] >= 0) {
        continue;
      }
      int             cid = static_cast<int>(out.cosets.size());
      PeripheralCoset coset;
      coset.peripheral     = static_cast<int>(pi);
      coset.representative = rep;
      std::vector<int> found{rep};
      index[static_cast<std::size_t>(rep)] = cid;
      for (std::size_t h = 0; h < found.size(); ++h) {
        for (Letter l : pletters) {
          int t = step(found[h], l);
          if (t >= 0 && index[static_cast<std::size_t>(t)] < 0) {
            index[static_cast<std::size_t>(t)] = cid;
            found.push_back(t);
          }
        }
      }
      Word rep_inv = inverse(b.peek().vertex(rep).word);
      for (int u = rep + 1; u < nY; ++u) {
        if (index[static_cast<std::size_t>(u)] >= 0) {
          continue;
        }
        if (prov.in_subgroup(concat(rep_inv, b.peek().vertex(u).word),
                             spec.generators)) {
          index[static_cast<std::size_t>(u)] = cid;
          found.push_back(u);
        }
      }
      std::sort(found.begin(), found.end());
      coset.members = found;
      out.cosets.push_back(std::move(coset));
    }
  }

  // Horoballs.
  out.member_index.resize(out.cosets.size());
  std::vector<int> escape_of_y(static_cast<std::size_t>(nY), -1);
  for (std::size_t cid = 0; cid < out.cosets.size(); ++cid) {
    auto&       coset = out.cosets[cid];
    auto const& spec  = p.peripherals[static_cast<std::size_t>(coset.peripheral)];
    auto&       mi    = out.member_index[cid];
    auto const  m     = coset.members.size();
    for (std::size_t i = 0; i < m; ++i) {
      mi[coset.members[i]] = static_cast<int>(i);
    }
    Word rep_inv = inverse(b.peek().vertex(coset.representative).word);
    for (int y : coset.members) {
      coset.peripheral_words.push_back(
          prov.normal_form(concat(rep_inv, b.peek().vertex(y).word)));
    }
    coset.subgraph.n = static_cast<int>(m);
    std::vector<std::tuple<int, int, int>> level0_edges;
    for (std::size_t i = 0; i < m; ++i) {
      for (int e : b.peek().edges_at(coset.members[i])) {
        auto const& ed = b.peek().edge(e);
        int         o  = ed.other(coset.members[i]);
        auto        it = mi.find(o);
        if (it != mi.end() && static_cast<int>(i) < it->second) {
          level0_edges.emplace_back(static_cast<int>(i), it->second, e);
          coset.subgraph.edges.emplace_back(static_cast<int>(i), it->second);
        }
      }
    }
    coset.distance.assign(m, std::vector<int>(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        int d = prov.subgroup_length(
            concat(inverse(coset.peripheral_words[i]), coset.peripheral_words[j]),
            spec.generators);
        coset.distance[i][j] = coset.distance[j][i] = d;
      }
    }

    // distance from each member to the nearest coset element outside the
    // ball: the last step of a shortest such path leaves the member set
    coset.escape.assign(m, -1);
    std::deque<int> queue;
    for (std::size_t i = 0; i < m; ++i) {
      for (int g : spec.generators) {
        for (bool inv : {false, true}) {
          if (step(coset.members[i], letter(g, inv)) < 0
              && coset.escape[i] < 0) {
            coset.escape[i] = 1;
            queue.push_back(static_cast<int>(i));
          }
        }
      }
    }
    auto adj = coset.subgraph.adjacency();
    while (!queue.empty()) {
      int i = queue.front();
      queue.pop_front();
      for (int j : adj[static_cast<std::size_t>(i)]) {
        if (coset.escape[static_cast<std::size_t>(j)] < 0) {
          coset.escape[static_cast<std::size_t>(j)] =
              coset.escape[static_cast<std::size_t>(i)] + 1;
          queue.push_back(j);
        }
      }
    }

    auto frontier_at = [&](std::size_t i, int k) {
      if (k >= depth_cap) {
        return true;
      }
      int esc = coset.escape[i];
      return esc >= 0 && static_cast<long>(esc) <= (1L << std::min(k + 1, 40));
    };
    for (std::size_t i = 0; i < m; ++i) {
      if (frontier_at(i, 0)) {
        frontier[static_cast<std::size_t>(coset.members[i])] = true;
      }
    }
    coset.column = attach_horoball(
        b, coset.members, level0_edges, coset.distance, depth_cap,
        [&](int i, int k) {
          Vertex v;
          v.kind     = VertexKind::horo;
          v.word     = coset.peripheral_words[static_cast<std::size_t>(i)];
          v.coset    = static_cast<int>(cid);
          v.base     = coset.members[static_cast<std::size_t>(i)];
          v.depth    = k;
          v.frontier = frontier_at(static_cast<std::size_t>(i), k);
          return v;
        });
    check_caps(b, limits);
  }

  out.X = b.finish();
  for (int v = 0; v < nY; ++v) {
    out.X.set_frontier(v, frontier[static_cast<std::size_t>(v)]);
  }
  out.Y = full_subcomplex(out.X, [nY](int v) { return v < nY; }).complex;
  return out;
}

PeripheralCoset const& coset_of(CuspedComplex const& c, int y, int peripheral) {
  if (!c.in_Y(y)) {
    throw Error("not a Y vertex: " + std::to_string(y));
  }
  if (peripheral < 0 || peripheral >= static_cast<int>(c.coset_index.size())) {
    throw Error("no peripheral subgroup " + std::to_string(peripheral));
  }
  int id = c.coset_index[static_cast<std::size_t>(peripheral)][static_cast<std::size_t>(y)];
  return c.cosets[static_cast<std::size_t>(id)];
}

int depth_function(CuspedComplex const& c, int v) {
  return c.X.vertex(v).depth;
}

int parse_vertex_spec(CuspedComplex const& c, std::string const& spec) {
  auto hash = spec.find('#');
  auto text = spec.substr(0, hash);
  auto const& gens = c.presentation.generators;
  // describe() writes the identity as "e"
  if (text == "e" && std::find(gens.begin(), gens.end(), "e") == gens.end()) {
    text = "1";
  }
  Word w = c.presentation.parse_word(text);
  int  y    = c.vertex_of(w);
  if (hash == std::string::npos) {
    return y;
  }
  auto colon = spec.find(':', hash);
  if (colon == std::string::npos) {
    throw Error("vertex spec must look like word#peripheral:depth");
  }
  int pi = 0;
  int k  = 0;
  try {
    pi = std::stoi(spec.substr(hash + 1, colon - hash - 1));
    k  = std::stoi(spec.substr(colon + 1));
  } catch (std::exception const&) {
    throw Error("bad vertex spec '" + spec + "'");
  }
  return c.vertex_above(y, pi, k);
}

ExitModel exit_model(CuspedComplex const& c) {
  ExitModel model;
  model.exit_cost.assign(static_cast<std::size_t>(c.X.vertex_count()), -1);
  Metric y_metric(c.Y, 1);
  auto   level = y_metric.bounded(c.basepoint, -1);
  for (int y = 0; y < c.Y.vertex_count(); ++y) {
    if (level[static_cast<std::size_t>(y)] >= c.radius) {
      model.exit_cost[static_cast<std::size_t>(y)] = 1;
    }
  }
  for (auto const& coset : c.cosets) {
    std::vector<std::pair<int, int>> open;  // (member, depth)
    for (std::size_t k = 0; k < coset.column.size(); ++k) {
      for (std::size_t i = 0; i < coset.members.size(); ++i) {
        int  esc  = coset.escape[i];
        bool side = esc >= 0 && static_cast<long>(esc) <= (1L << std::min<std::size_t>(k, 40));
        bool top  = static_cast<int>(k) >= c.depth_cap;
        if (!side && !top) {
          continue;
        }
        auto& cost = model.exit_cost[static_cast<std::size_t>(coset.column[k][i])];
        int   here = static_cast<int>(k) + 1;
        cost       = cost < 0 ? here : std::min(cost, here);
        open.emplace_back(static_cast<int>(i), static_cast<int>(k));
      }
    }
    for (std::size_t a = 0; a < open.size(); ++a) {
      for (std::size_t b = a + 1; b < open.size(); ++b) {
        auto [i, ki] = open[a];
        auto [j, kj] = open[b];
        auto shape   = normal_form_shape(
            coset.distance[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], ki, kj);
        model.shortcuts.push_back({coset.column[static_cast<std::size_t>(ki)][static_cast<std::size_t>(i)],
                                   coset.column[static_cast<std::size_t>(kj)][static_cast<std::size_t>(j)],
                                   shape.up + shape.horizontal + shape.down});
      }
    }
  }
  return model;
}

Metric cusped_metric(CuspedComplex const& c) { return Metric(c.X, exit_model(c)); }

}  // namespace cusp
