#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "cusp/cusped.hpp"

namespace cusp {

// Triangulated strip [0,width] x [0,height]; vertex (i,j) has id
// j*(width+1)+i. Square (i,j) is split by the diagonal (i,j)-(i+1,j+1) into
// a lower triangle (i,j),(i+1,j),(i+1,j+1) and an upper triangle
// (i,j),(i+1,j+1),(i,j+1), both listed counterclockwise.
class Strip {
 public:
  Strip() = default;
  Strip(int width, int height);

  int width() const noexcept { return _w; }
  int height() const noexcept { return _h; }

  int vertex_count() const noexcept { return (_w + 1) * (_h + 1); }
  int vertex(int i, int j) const noexcept { return j * (_w + 1) + i; }
  std::pair<int, int> coords(int v) const noexcept { return {v % (_w + 1), v / (_w + 1)}; }

  int                triangle_count() const noexcept { return 2 * _w * _h; }
  std::array<int, 3> triangle(int t) const;

  std::vector<std::pair<int, int>> const& edges() const noexcept { return _edges; }
  int edge_count() const noexcept { return static_cast<int>(_edges.size()); }
  int edge_id(int u, int v) const;  // -1 if not adjacent
  std::vector<int> const& triangles_at_edge(int e) const;
  std::vector<int> const& triangles_at_vertex(int v) const;
  std::vector<int> const& neighbors(int v) const;  // counterclockwise from (1,0)

  bool on_rows(int v) const noexcept;  // bottom or top row
  bool on_ends(int v) const noexcept;  // left or right column
  bool boundary_edge(int e) const;     // lies on the strip boundary

  // Third vertex of the triangle on the left of the directed edge u->v, or -1.
  int left_triangle(int u, int v) const;

 private:
  int                              _w = 0;
  int                              _h = 0;
  std::vector<std::pair<int, int>> _edges;
  std::vector<std::vector<int>>    _edge_triangles;
  std::vector<std::vector<int>>    _vertex_triangles;
  std::vector<std::vector<int>>    _neighbors;
  std::vector<std::vector<int>>    _vertex_edges;
};

struct StripMap {
  Strip            strip;
  std::vector<int> image;  // strip vertex -> X vertex
};

// Simplicial map checks: images exist, adjacent vertices go to equal or
// adjacent vertices, triangles go to a vertex, an edge or a triangle face,
// and both rows go into Y.
std::vector<std::string> validate_strip_map(CuspedComplex const& c, StripMap const& m);

enum class Color { green, blue, red };
std::string to_string(Color c);

struct Coloring {
  int                coset = -1;
  std::vector<Color> vertex;
  std::vector<Color> edge;
  std::vector<Color> triangle;
};

// Blue: image inside the coset's level-0 subcomplex. Red: image meets depth
// >= 1 of the coset's horoball. Green: everything else.
Coloring color(CuspedComplex const& c, StripMap const& m, int coset);

// Violations of the two coloring observations; empty for a valid map.
std::vector<std::string> check_observations(Strip const& s, Coloring const& col);

struct Separation {
  bool separated = false;
  bool certified = true;
};

// Whether every edge path from v to Y meets the coset's level-0 subcomplex,
// by breadth-first search avoiding it. Frontier vertices outside the coset's
// own horoball make a negative search uncertified.
Separation separation_oracle(CuspedComplex const& c, int v, int coset);

// Red triangles, grouped by sharing red edges. Classes are sorted triangle
// id lists ordered by their first triangle.
std::vector<std::vector<int>> red_classes(Strip const& s, Coloring const& col);

struct DiskPair {
  int              coset = -1;
  std::vector<int> triangles;  // E, sorted
  std::vector<int> boundary;   // closed counterclockwise vertex cycle, starting at its smallest id
  bool             truncated = false;
  std::vector<int> cls;        // the red class the pair was built from

  bool operator==(DiskPair const&) const = default;
};

struct InductionStats {
  long new_vertex = 0;    // boundary extended through a vertex off the boundary
  long adjacent = 0;      // the new triangle shares two boundary edges
  long pocket = 0;        // the boundary touched itself and closed off a pocket
};

// Grows the disk from the star of the class's first red vertex met from the
// leftmost green boundary vertex, by the three boundary-extension cases.
DiskPair disk_pair_induction(Strip const& s, Coloring const& col, std::vector<int> const& cls,
                             InductionStats* stats = nullptr);

// Strip minus the closure of every complement component of the class that
// reaches the rows.
DiskPair disk_pair_region_grow(Strip const& s, Coloring const& col, std::vector<int> const& cls);

// One disk pair per red class of every coset, ordered by leftmost column
// met, with pairs nested in earlier or larger ones removed.
std::vector<DiskPair> excise(CuspedComplex const& c, StripMap const& m);

struct ExcisionReport {
  bool                     valid = true;
  std::vector<std::string> violations;
};

ExcisionReport validate_excision(CuspedComplex const& c, StripMap const& m,
                                 std::vector<DiskPair> const& pairs);

}  // namespace cusp
