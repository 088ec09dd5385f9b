#pragma once

#include <cstdint>

#include "cusp/excision.hpp"

namespace cusp {

struct StripCorpusOptions {
  int max_width  = 20;
  int max_height = 6;
  int max_blobs  = 3;
};

// Seeded random simplicial strip map: columns follow a lazy walk in Y, and
// round or scattered blobs on flat stretches are lifted into one horoball
// column, some with a second blob nested inside a level-0 ring.
StripMap random_strip_map(CuspedComplex const& c, std::uint64_t seed,
                          StripCorpusOptions const& opt = {});

// Grid distance in the strip triangulation.
int strip_distance(Strip const& s, int u, int v);

}  // namespace cusp
