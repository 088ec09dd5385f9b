#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cusp/complex2.hpp"
#include "cusp/horoball.hpp"
#include "cusp/metric.hpp"
#include "cusp/presentation.hpp"

namespace cusp {

struct PeripheralCoset {
  int              peripheral = 0;
  int              representative = -1;  // Y vertex id of the transversal element
  std::vector<int> members;              // Y vertex ids in shortlex order
  std::vector<Word> peripheral_words;    // members[i] = representative · peripheral_words[i]
  BaseGraph        subgraph;             // induced level-0 graph on member indices
  std::vector<std::vector<int>> distance;  // peripheral word metric between members
  std::vector<std::vector<int>> column;    // column[k][i] = X vertex of (members[i], k)
  // Peripheral distance from each member to the nearest coset element outside
  // the ball; -1 when the whole coset lies inside.
  std::vector<int> escape;
};

struct BuildLimits {
  long max_vertices = 2'000'000;
  long max_edges    = 20'000'000;
  long max_faces    = 40'000'000;
};

struct CuspedComplex {
  GroupPresentation            presentation;
  int                          radius    = 0;
  int                          depth_cap = 0;
  Complex2                     Y;  // ids coincide with the depth-0 part of X
  Complex2                     X;
  std::vector<PeripheralCoset> cosets;
  int                          basepoint = 0;

  // coset_index[i][y] = coset of peripheral i containing Y vertex y
  std::vector<std::vector<int>> coset_index;
  // member_index[y] per coset: position of y among the coset's members
  std::vector<std::unordered_map<int, int>> member_index;

  int  y_vertex_count() const noexcept { return Y.vertex_count(); }
  bool in_Y(int v) const noexcept { return v >= 0 && v < Y.vertex_count(); }

  std::optional<int> find_vertex(Word const& w) const;
  int                vertex_of(Word const& w) const;  // throws if outside the ball

  // Vertex at depth k above Y vertex y in its coset for peripheral i.
  int vertex_above(int y, int peripheral, int k) const;

  // Coset (index into cosets) whose horoball contains v; for Y vertices the
  // coset of the given peripheral.
  int horoball_of(int v) const;

  std::string describe(int v) const;

 private:
  friend CuspedComplex build_cusped_space(GroupPresentation const&, int, int,
                                          BuildLimits const&);
  std::map<Word, std::vector<int>> _buckets;
};

CuspedComplex build_cusped_space(GroupPresentation const& p,
                                 int                      radius,
                                 int                      depth_cap,
                                 BuildLimits const&       limits = {});

PeripheralCoset const& coset_of(CuspedComplex const& c, int y, int peripheral);

int depth_function(CuspedComplex const& c, int v);

// Exits of the truncation into the infinite cusped space. Y vertices on the
// sphere of the ball exit at cost 1. A horoball vertex at depth k with a
// missing horizontal or upward edge reaches Y outside the ball only after
// k + 1 edges. Two such vertices of one horoball get a shortcut whose length
// is their distance in the horoball over the whole coset.
ExitModel exit_model(CuspedComplex const& c);
// Metric on X certified with exit_model.
Metric cusped_metric(CuspedComplex const& c);

// Parses "word" (a Y vertex; "e" or "1" for the identity) or "word#i:k"
// (depth k above word in its coset of peripheral i).
int parse_vertex_spec(CuspedComplex const& c, std::string const& spec);

}  // namespace cusp
