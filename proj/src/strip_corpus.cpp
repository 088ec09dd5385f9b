#include "cusp/strip_corpus.hpp"

#include <algorithm>
#include <random>

#include "cusp/error.hpp"

namespace cusp {

int strip_distance(Strip const& s, int u, int v) {
  auto [i0, j0] = s.coords(u);
  auto [i1, j1] = s.coords(v);
  int di = i1 - i0, dj = j1 - j0;
  if ((di >= 0) == (dj >= 0)) return std::max(std::abs(di), std::abs(dj));
  return std::abs(di) + std::abs(dj);
}

StripMap random_strip_map(CuspedComplex const& c, std::uint64_t seed,
                          StripCorpusOptions const& opt) {
  if (c.cosets.empty()) throw Error("strip corpus needs a complex with peripheral cosets");
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto coin    = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  int   width  = uniform(3, std::max(3, opt.max_width));
  int   height = uniform(2, std::max(2, opt.max_height));
  Strip s(width, height);

  // Lazy walk along Cayley edges; column i maps to walk[step[i]].
  std::vector<int> step(static_cast<std::size_t>(width + 1), 0);
  for (int i = 1; i <= width; ++i) step[static_cast<std::size_t>(i)] = step[static_cast<std::size_t>(i - 1)] + coin(0.2);
  std::vector<int> walk{c.basepoint};
  while (static_cast<int>(walk.size()) <= step.back()) {
    std::vector<int> next;
    for (int e : c.Y.edges_at(walk.back())) next.push_back(c.Y.edge(e).other(walk.back()));
    walk.push_back(next[static_cast<std::size_t>(uniform(0, static_cast<int>(next.size()) - 1))]);
  }
  StripMap m{s, std::vector<int>(static_cast<std::size_t>(s.vertex_count()))};
  for (int v = 0; v < s.vertex_count(); ++v) {
    m.image[static_cast<std::size_t>(v)] = walk[static_cast<std::size_t>(step[static_cast<std::size_t>(s.coords(v).first)])];
  }

  // Flat stretches: maximal column ranges with a common walk step.
  std::vector<std::pair<int, int>> flats;
  for (int a = 0; a <= width;) {
    int b = a;
    while (b + 1 <= width && step[static_cast<std::size_t>(b + 1)] == step[static_cast<std::size_t>(a)]) ++b;
    if (b - a >= 2) flats.push_back({a, b});
    a = b + 1;
  }
  std::vector<char> lifted(static_cast<std::size_t>(s.vertex_count()), 0);
  int blobs = flats.empty() ? 0 : uniform(1, std::max(1, opt.max_blobs));
  for (int n = 0, placed = 0; n < 8 * blobs && placed < blobs; ++n) {
    auto [a, b] = flats[static_cast<std::size_t>(uniform(0, static_cast<int>(flats.size()) - 1))];
    int ci = uniform(a + 1, b - 1), cj = uniform(1, height - 1);
    int center = s.vertex(ci, cj);
    // Largest radius keeping the lift away from the rows and the stretch ends.
    int room = 1 << 20;
    for (int v = 0; v < s.vertex_count(); ++v) {
      auto [i, j] = s.coords(v);
      if (i <= a || i >= b || j == 0 || j == height) room = std::min(room, strip_distance(s, center, v));
    }
    if (room < 1) continue;
    int  radius = uniform(1, std::min(room, 4));
    bool clash  = false;
    for (int v = 0; v < s.vertex_count(); ++v) {
      if (strip_distance(s, center, v) <= radius && lifted[static_cast<std::size_t>(v)]) clash = true;
    }
    if (clash) continue;
    int y = m.image[static_cast<std::size_t>(center)];
    std::vector<int> peris;
    for (int p = 0; p < static_cast<int>(c.coset_index.size()); ++p) {
      if (c.coset_index[static_cast<std::size_t>(p)][static_cast<std::size_t>(y)] >= 0) peris.push_back(p);
    }
    if (peris.empty()) continue;
    int outer = peris[static_cast<std::size_t>(uniform(0, static_cast<int>(peris.size()) - 1))];
    int inner = peris[static_cast<std::size_t>(uniform(0, static_cast<int>(peris.size()) - 1))];
    // A ring of level-0 vertices at distance `hole` separates an inner lift.
    int  hole      = radius >= 3 && coin(0.5) ? uniform(1, radius - 2) : 0;
    bool scattered = hole == 0 && coin(0.4);
    ++placed;
    for (int v = 0; v < s.vertex_count(); ++v) {
      int d = strip_distance(s, center, v);
      if (d > radius) continue;
      lifted[static_cast<std::size_t>(v)] = 1;
      int level = 0, peri = outer;
      if (scattered) {
        // any set of level-1 lifts over one vertex is simplicial
        level = d < radius && coin(0.6) ? 1 : 0;
      } else if (hole == 0) {
        level = radius - d;
      } else if (d < hole) {
        level = hole - d;
        peri  = inner;
      } else {
        level = std::min(radius - d, d - hole);
      }
      level = std::min(level, c.depth_cap);
      if (level > 0) m.image[static_cast<std::size_t>(v)] = c.vertex_above(y, peri, level);
    }
  }
  return m;
}

}  // namespace cusp
