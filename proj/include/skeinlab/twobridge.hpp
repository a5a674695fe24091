#pragma once

#include <vector>

#include "skeinlab/diagram.hpp"
#include "skeinlab/morse.hpp"

namespace skeinlab {

// Parameters of a two-bridge knot b(p,m).  Throws std::invalid_argument
// naming the violated condition.
struct TwoBridgeSpec {
  int p;
  int m;
  TwoBridgeSpec(int p_, int m_);
};

// Positive continued fraction [a1,...,al] of p/m with odd length l and all
// entries >= 1.  (Even-length expansions are rewritten via the tail identity
// [..., c] = [..., c-1, 1].)
std::vector<int> continued_fraction_odd(int p, int m);

// Four-plat closure of the alternating braid word read off the continued
// fraction.  Produces a reduced alternating diagram with sum(a_i) crossings,
// right-handed trefoil for (3,1).
PlanarDiagram fourplat_diagram(const TwoBridgeSpec& spec);

// Same braid word as a plat on four strands, for the strand-transfer
// evaluators.  plat_writhe of the result equals the diagram writhe.
PlatWord fourplat_word(const TwoBridgeSpec& spec);

// Independent construction: the knot drawn on the doubled unit square
// ("pillowcase") as the folded image of a line of slope p/(p-m), front sheet
// over back sheet, closed up by two bridge arcs running between the sheets.
// Crossing counts grow quadratically in p; (3,1) gives 16 crossings.
PlanarDiagram fold_projection_diagram(const TwoBridgeSpec& spec);

}  // namespace skeinlab
