#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "cusp/complex2.hpp"

namespace cusp {

// Finite simple graph on vertices 0..n-1.
struct BaseGraph {
  int                              n = 0;
  std::vector<std::pair<int, int>> edges;

  std::vector<std::vector<int>> adjacency() const;
  bool                          connected() const;
};

// All-pairs BFS distances; -1 for unreachable pairs.
std::vector<std::vector<int>> all_pairs_distances(BaseGraph const& g);

struct HoroballComplex {
  BaseGraph                     base;
  int                           depth_cap = 0;
  Complex2                      complex;
  std::vector<std::vector<int>> base_distances;
  std::vector<std::vector<int>> column;  // column[k][v] = vertex id of (v,k)

  int vertex_id(int base_vertex, int k) const;
};

// Adds the horoball cells above an existing set of level-0 vertices.
//
// level0[i] is the builder id of base vertex i. level0_edges lists the
// builder edges (i, j, edge id) joining base vertices at level 0. distance
// is the base-graph distance matrix (-1 when infinite). make_vertex creates
// the vertex record for (i, k), k >= 1.
//
// Returns column[k][i] for k = 0..dmax.
std::vector<std::vector<int>> attach_horoball(
    ComplexBuilder&                            builder,
    std::vector<int> const&                    level0,
    std::vector<std::tuple<int, int, int>> const& level0_edges,
    std::vector<std::vector<int>> const&       distance,
    int                                        dmax,
    std::function<Vertex(int, int)> const&     make_vertex);

HoroballComplex build_horoball(BaseGraph const& gamma, int dmax);

int depth(HoroballComplex const& h, int vertex);

struct SubComplex {
  Complex2         complex;
  std::vector<int> original;  // original[new id] = id in the source complex
};

// Full subcomplex on the vertices whose depth satisfies keep.
SubComplex full_subcomplex(Complex2 const&                 c,
                           std::function<bool(int)> const& keep);

SubComplex slice(HoroballComplex const& h, int m);  // depth == m
SubComplex below(HoroballComplex const& h, int m);  // depth <= m
SubComplex above(HoroballComplex const& h, int m);  // depth >= m

}  // namespace cusp
