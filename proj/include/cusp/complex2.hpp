#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cusp/word.hpp"

namespace cusp {

enum class VertexKind { cayley, horo };
enum class EdgeKind { cayley, b1, b2, b3 };
enum class FaceKind { relator, triangle, square, pentagon };

std::string to_string(VertexKind k);
std::string to_string(EdgeKind k);
std::string to_string(FaceKind k);

struct Vertex {
  VertexKind kind = VertexKind::cayley;
  // Cayley vertex: normal form of the group element.
  // Horo vertex: normal form of the peripheral element p with vertex t·p.
  Word word;
  int  coset = -1;  // horo vertices: owning coset (or horoball) index
  int  base  = -1;  // horo vertices: id of the depth-0 vertex below
  int  depth = 0;
  bool frontier = false;
};

struct Edge {
  int      u = -1;
  int      v = -1;
  EdgeKind kind = EdgeKind::cayley;
  // cayley and b1: generator index (or -1); b2: level; b3: upper depth.
  int label = -1;

  int other(int x) const { return x == u ? v : u; }
  bool horizontal() const { return kind != EdgeKind::b3; }
};

struct Face {
  std::vector<int> edges;     // cyclic boundary
  std::vector<int> vertices;  // vertices[i] is the start of edges[i]
  FaceKind         kind  = FaceKind::relator;
  int              label = -1;  // relator index for relator faces
};

struct Star {
  std::vector<int> edges;
  std::vector<int> faces;
  bool             possibly_incomplete = false;
};

class Complex2 {
 public:
  std::vector<Vertex> const& vertices() const noexcept { return _vertices; }
  std::vector<Edge> const&   edges() const noexcept { return _edges; }
  std::vector<Face> const&   faces() const noexcept { return _faces; }

  Vertex const& vertex(int id) const;
  Edge const&   edge(int id) const;
  Face const&   face(int id) const;

  int vertex_count() const noexcept { return static_cast<int>(_vertices.size()); }
  int edge_count() const noexcept { return static_cast<int>(_edges.size()); }
  int face_count() const noexcept { return static_cast<int>(_faces.size()); }

  std::vector<int> const& edges_at(int v) const;
  std::vector<int> const& faces_at_vertex(int v) const;
  std::vector<int> const& faces_at_edge(int e) const;

  // Any edge joining u and v, preferring the lowest id.
  std::optional<int> find_edge(int u, int v) const;
  std::optional<int> find_edge(int u, int v, EdgeKind kind, int label) const;

  Star star(int v) const;

  long euler_characteristic() const noexcept {
    return static_cast<long>(_vertices.size()) - static_cast<long>(_edges.size())
           + static_cast<long>(_faces.size());
  }

  // Frontier flags may be refined after construction without touching cells.
  void set_frontier(int v, bool f);

 private:
  friend class ComplexBuilder;

  static std::uint64_t pair_key(int u, int v);

  std::vector<Vertex>           _vertices;
  std::vector<Edge>             _edges;
  std::vector<Face>             _faces;
  std::vector<std::vector<int>> _vertex_edges;
  std::vector<std::vector<int>> _vertex_faces;
  std::vector<std::vector<int>> _edge_faces;
  std::unordered_map<std::uint64_t, std::vector<int>> _pair_edges;
};

class ComplexBuilder {
 public:
  int add_vertex(Vertex v);
  // Throws on a dangling endpoint, a loop, or an edge duplicating an
  // existing edge of the same kind and label between the same pair.
  int add_edge(int u, int v, EdgeKind kind, int label = -1);
  // Returns the existing edge instead of throwing when it is a duplicate.
  int ensure_edge(int u, int v, EdgeKind kind, int label = -1);
  // Throws unless the edges form a closed edge path in the given order.
  int add_face(std::vector<int> edges, FaceKind kind, int label = -1);

  Complex2 const& peek() const noexcept { return _c; }
  Complex2        finish() { return std::move(_c); }

 private:
  Complex2 _c;
};

// Closed-walk check: the vertex sequence traversed by the edge cycle, or
// nullopt when consecutive edges do not share endpoints or the walk does not
// return to its start.
std::optional<std::vector<int>> trace_cycle(Complex2 const&         c,
                                            std::vector<int> const& edges);

// Every invariant violation of the complex; empty iff valid.
std::vector<std::string> validate_complex(Complex2 const& c);

// Edge set of a face, sorted; used to compare boundaries as sets.
std::vector<int> sorted_boundary(Face const& f);

}  // namespace cusp
