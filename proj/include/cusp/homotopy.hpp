#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cusp/certificate.hpp"
#include "cusp/cusped.hpp"
#include "cusp/metric.hpp"

namespace cusp {

// Loops are based: every move keeps the first vertex fixed. Operations that
// move a loop to a new level leave a vertical whisker joining the old
// basepoint to the new loop; the reported loop is the part beyond it.
struct LoopResult {
  HomotopyCertificate certificate;
  EdgePath            loop;
  int                 level = 0;
};

// Slides a closed loop of one horoball up to its highest level with
// vertical squares.
LoopResult slide_loop_up(HoroballView const& h, EdgePath const& loop);

// Replaces a horizontal loop at level k by one at level k+1 of at most half
// the length plus one, pairing edges from the basepoint. Loops of length 2
// are left alone; a triangle boundary is contracted across its face.
LoopResult halve_loop(HoroballView const& h, EdgePath const& loop);

struct RadiusBound {
  int  center = -1;
  long bound = 0;
  int  achieved = 0;  // largest distance from center to the region; -1 if unreachable
  bool satisfied = false;
};

// Region radius about each distinct vertex of the loop, against one bound.
std::vector<RadiusBound> radius_bounds(Metric const& m, EdgePath const& loop,
                                       std::vector<int> const& region, long bound);

// Smallest k with K < 2^k.
int exponent_above(long K);

struct HoroballContraction {
  HomotopyCertificate      certificate;
  int                      K = 0;
  int                      k = 0;
  long                     bound = 0;  // 2K + k
  std::vector<int>         lengths;    // loop, slid loop, then each halving
  std::vector<RadiusBound> radii;
  bool                     satisfied = false;
};

// Contracts a closed loop of one horoball: slide up, halve until trivial.
// Throws UncertifiedError naming the missing depth when the cap is reached.
HoroballContraction contract_horoball_loop(HoroballView const& h, Metric const& m,
                                           EdgePath const& loop);

struct PushResult {
  HomotopyCertificate certificate;
  EdgePath            path;
};

// Pushes a horoball path with depth-0 endpoints down to level 0.
PushResult push_horoball_path_to_Y(HoroballView const& h, EdgePath const& path);

// Bounded search for a contraction of a closed loop of Y across relator
// faces. Throws UncertifiedError("contract_Y_loop", "budget exhausted ...")
// when the budget of explored moves runs out.
HomotopyCertificate contract_Y_loop(Complex2 const& c, EdgePath const& loop,
                                    long budget = 10'000);

struct RadiusRecipe {
  long horoball = 0;   // 2K + k
  long pushdown = 0;   // bound for the horoball loops (beta^-1, beta') of length < K(2^K+1)
  long N = 0;          // max(measured + pushdown + K, 2K + k)
  long N1 = 0;         // the same recipe for loops of length 7 delta + 3
};

// Composed radius bound for loops of length K, given the measured radius of
// the Y-stage contractions. Saturates instead of overflowing.
RadiusRecipe contraction_radius_bound(long K, int delta, long measured_y = 0);

struct Stage {
  std::string         name;
  HomotopyCertificate certificate;
};

struct LoopContraction {
  HomotopyCertificate      certificate;
  std::vector<Stage>       stages;
  std::string              route;  // "Y", "horoball" or "mixed"
  int                      K = 0;
  long                     measured_y = 0;
  RadiusRecipe             recipe;
  long                     bound = 0;
  std::vector<RadiusBound> radii;
  bool                     satisfied = false;
};

// Contracts a closed loop of the cusped space: horoball excursions are
// pushed down to Y, then the Y loop is contracted. Failures are
// UncertifiedError with the stage in their name.
LoopContraction contract_loop(CuspedComplex const& c, Metric const& m,
                              EdgePath const& loop, long budget = 10'000);

struct RectangleFilling {
  HomotopyCertificate certificate;
  std::vector<int>    quad_lengths;
  int                 max_quad = 0;
  int                 center = -1;
  int                 min_center_distance = -1;
};

// Homotopy from r to (gamma, s, beta^-1) through the quadrilaterals bounded
// by consecutive edges of r and s and geodesics joining matched vertices.
// r and s have equal length; gamma joins their starts, beta their ends.
RectangleFilling fill_rectangle(CuspedComplex const& c, Metric const& m,
                                EdgePath const& r, EdgePath const& s,
                                EdgePath const& gamma, EdgePath const& beta,
                                int delta, int center = -1,
                                long budget = 10'000);

}  // namespace cusp
