#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cusp/complex2.hpp"
#include "cusp/horoball.hpp"

namespace cusp {

struct EdgePath {
  std::vector<int> vertices;
  std::vector<int> edges;

  int  length() const noexcept { return static_cast<int>(edges.size()); }
  bool empty() const noexcept { return edges.empty(); }
};

// Builds the path through the given vertices using the lowest-id edge between
// consecutive vertices. Throws if two consecutive vertices are not adjacent.
EdgePath path_through(Complex2 const& c, std::vector<int> const& vertices);

// Checks consecutive incidence.
bool is_edge_path(Complex2 const& c, EdgePath const& p);

struct CertifiedDistance {
  int  value = -1;  // -1: not connected inside the truncation
  bool exact = false;
};

// Shortest-path DAG between two vertices: layer t holds every vertex at
// distance t from the source lying on some geodesic to the target.
struct GeodesicDag {
  int                           source = -1;
  int                           target = -1;
  int                           length = -1;
  std::vector<std::vector<int>> layers;
  // every geodesic of the infinite space lies inside the truncation
  bool complete = false;
};

// Lower bounds for paths that leave a truncation. A path through the
// missing part either reaches the far outside, which counts as a single
// point, from a vertex x at cost at least exit_cost[x], or runs through the
// missing part of one horoball between two of its vertices, costing at least
// the shortcut length.
struct ExitModel {
  struct Shortcut {
    int u = -1;
    int v = -1;
    int length = 0;
  };
  std::vector<int>      exit_cost;  // per vertex; -1 when no exit
  std::vector<Shortcut> shortcuts;
};

// Breadth-first metric on the 1-skeleton of a truncated complex.
//
// Truncation certificate: let f(x) be the distance inside the truncation
// from x to the nearest frontier vertex. A path that leaves the truncation
// has length at least f(u) + f(v) + 2, so a truncated distance d(u,v) is the
// true distance when d <= f(u) + f(v) + 2, and every true geodesic stays
// inside when d <= f(u) + f(v) + 1.
//
// With an exit model the bound is the least length of a path in the
// truncation plus the model that uses at least one exit or shortcut.
class Metric {
 public:
  explicit Metric(Complex2 const& c, std::size_t row_cache = 2048);
  Metric(Complex2 const& c, ExitModel model, std::size_t row_cache = 2048);

  Complex2 const& complex() const noexcept { return *_c; }

  // -1 when no frontier vertex is reachable
  int frontier_distance(int v) const;

  // Full BFS row from s (cached); -1 for unreachable vertices.
  std::vector<int> const& row(int s) const;
  // BFS from s stopping after radius r; unreached vertices -1.
  std::vector<int> bounded(int s, int r) const;
  // Multi-source BFS.
  std::vector<int> from_set(std::vector<int> const& sources, int r = -1) const;

  CertifiedDistance distance(int u, int v) const;
  bool              exact_for(int u, int v, int d) const;
  bool              all_geodesics_inside(int u, int v, int d) const;
  // Lower bound on the length of any path from u to v leaving the
  // truncation; INT_MAX when none exists.
  int               outside_bound(int u, int v) const;

  // Deterministic geodesic: from u, step to the lowest-id neighbor closer to
  // v. Throws UncertifiedError when v is unreachable inside the truncation.
  EdgePath    geodesic(int u, int v) const;
  GeodesicDag dag(int u, int v) const;

  // Ball B(v, K): vertices within K plus every face whose boundary lies in it.
  struct Ball {
    std::vector<int> vertices;
    std::vector<int> edges;
    std::vector<int> faces;
    bool             touches_frontier = false;
  };
  Ball ball(int v, int K) const;

 private:
  Complex2 const*                                      _c;
  std::vector<int>                                     _frontier;
  std::size_t                                          _cache_cap;
  mutable std::unordered_map<int, std::vector<int>>    _rows;

  struct Arc {
    int to;
    int length;
  };
  std::optional<std::vector<std::vector<Arc>>>         _exits;  // last slot: the outside
  mutable std::unordered_map<int, std::vector<int>>    _outside_rows;
  std::vector<int> const& outside_row(int s) const;
};

// Symmetrized vertex-resolution Hausdorff distance between two paths.
int hausdorff_distance(Metric const& m, EdgePath const& p, EdgePath const& q);

// Horoball seen as base vertices 0..n-1 with depth columns, used for the
// normal-form geodesic. Works for a standalone horoball and for one coset's
// horoball inside the cusped space.
struct HoroballView {
  Complex2 const*                      complex = nullptr;
  std::vector<std::vector<int>> const* column = nullptr;    // column[k][i]
  std::vector<std::vector<int>> const* distance = nullptr;  // base metric
  int                                  depth_cap = 0;

  std::unordered_map<int, std::pair<int, int>> where;  // id -> (base, depth)

  static HoroballView of(HoroballComplex const& h);
  static HoroballView over(Complex2 const&                     c,
                           std::vector<std::vector<int>> const& column,
                           std::vector<std::vector<int>> const& distance,
                           int                                  depth_cap);
  int                 base_count() const;
  // (base index, depth) of a vertex id; throws if not in this horoball
  std::pair<int, int> locate(int v) const;
};

struct NormalFormShape {
  int up = 0;          // vertical edges from the first endpoint
  int horizontal = 0;  // horizontal edges at the top level
  int down = 0;        // vertical edges into the second endpoint
  int level = 0;
};

// Optimal ascend / traverse / descend shape between (a, k1) and (b, k2).
NormalFormShape normal_form_shape(int base_distance, int k1, int k2);

// Geodesic made of an ascending vertical segment, at most 3 horizontal edges
// at one level, and a descending vertical segment. Throws UncertifiedError if
// the shape needs a level above the depth cap or the base metric cannot be
// subdivided inside the truncation.
EdgePath horoball_geodesic(HoroballView const& h, int u, int v);

// Exact Hausdorff bound between all geodesics u→v and the path p: the
// largest distance from a geodesic vertex to p, and the largest distance from
// a vertex of p that some geodesic avoids by more than that radius. Returns
// the smallest r such that every geodesic lies within vertex-Hausdorff
// distance r of p, searching r up to limit; limit+1 if none.
int hausdorff_to_all_geodesics(Metric const& m, GeodesicDag const& dag,
                               EdgePath const& p, int limit);

// A point on a side: the vertex at half-offset/2 when half-offset is even,
// the midpoint of an edge otherwise.
struct SidePoint {
  int side = 0;         // side index: 0 = [x1,x2], 1 = [x2,x3], 2 = [x3,x1]
  int half_offset = 0;  // twice the distance from the side's first corner
};

struct GeodesicTriangle {
  std::array<int, 3>       corners{};
  std::array<EdgePath, 3>  sides;     // sides[0]=[x1,x2], [1]=[x2,x3], [2]=[x3,x1]
  std::array<int, 3>       half_params{};  // twice the corner-to-internal-point distance
  std::array<SidePoint, 3> internal{};     // internal[i] lies opposite corner i
};

// Internal points from the side lengths. Throws on a triangle inequality
// violation.
GeodesicTriangle internal_points(std::array<int, 3> const&      corners,
                                 std::array<EdgePath, 3> const& sides);

// Internal parameters in half units from opposite side lengths a, b, c
// (a opposite x1, and so on).
std::array<int, 3> internal_half_params(int a, int b, int c);

struct DeltaWitness {
  std::array<int, 3> corners{};
  int                corner = 0;  // index of the corner the comparison starts from
  int                t = 0;       // distance from that corner
  int                left = -1;   // vertex on one adjacent side
  int                right = -1;  // vertex on the other
  int                value = 0;
};

struct DeltaConfig {
  std::uint64_t    seed = 1;
  long             samples = 1000;  // triples; <= 0 means every triple
  std::vector<int> candidates;      // vertex pool; empty means all vertices
  // Draw the second corner among pool vertices whose geodesics to the first
  // all lie inside the truncation, and the third among those certified with
  // both; otherwise corners are independent.
  bool             certified_corners = true;
};

struct DeltaReport {
  int                         delta = -1;  // -1: no certified triangle
  long                        triples_sampled = 0;
  long                        triples_certified = 0;
  long                        comparisons_skipped = 0;
  std::optional<DeltaWitness> witness;
};

// Thin-triangle estimate over all geodesic triangles on the sampled corners.
// For each corner x and integer t up to its internal parameter, compares
// every vertex at distance t from x on some geodesic to one neighbor corner
// with every such vertex towards the other corner. The result is a lower
// bound for the hyperbolicity constant of the infinite space.
DeltaReport delta_estimate(Metric const& m, DeltaConfig const& cfg);

// Corner-triple evaluation used by delta_estimate; nullopt if uncertified.
std::optional<DeltaWitness> triangle_thinness(Metric const& m, int x1, int x2,
                                              int x3, long* skipped = nullptr);

struct ConvexityViolation {
  int from = -1;
  int to = -1;
  int witness = -1;  // geodesic vertex outside the m-horoball
};

struct ConvexityReport {
  int                             m = 0;
  bool                            vacuous = false;
  long                            pairs_sampled = 0;
  long                            pairs_certified = 0;
  long                            pairs_uncertified = 0;
  std::vector<ConvexityViolation> violations;
};

// Samples pairs of vertices of one horoball at depth >= m, the second among
// those whose geodesics from the first are certified to stay inside the
// truncation, and checks that no geodesic between them leaves that m-horoball.
ConvexityReport convexity_check(Metric const& metric, int m, long samples,
                                std::uint64_t seed);

// Exact check for one pair; nullopt when the pair is not certified.
std::optional<std::vector<int>> convexity_violations(Metric const& metric,
                                                     int m, int u, int v);

}  // namespace cusp
