#pragma once

#include <vector>

#include "skeinlab/diagram.hpp"
#include "skeinlab/intlaurent.hpp"

namespace skeinlab {

// Bottom-to-top Morse presentation of a diagram.  Positions index the active
// strand list left to right at the moment the event fires.
//   kBirth: a local minimum; inserts two adjacent strands at pos.
//   kDeath: a local maximum; closes the adjacent pair (pos, pos+1).
//   kCross: crossing of strands (pos, pos+1); sign +1 when the over strand
//           climbs to the right, -1 when it climbs to the left.
struct MorseEvent {
  enum Kind { kBirth, kDeath, kCross };
  Kind kind;
  int pos;
  int sign = 0;
};

// Braid word on four strands closed by cups and caps on (1,2) and (3,4).
// Letters act at positions 0..2; sign follows the MorseEvent convention.
struct PlatLetter {
  int pos;
  int sign;
};
struct PlatWord {
  std::vector<PlatLetter> letters;
};

// Expands a plat word into Morse events (two births, letters, two deaths).
std::vector<MorseEvent> plat_events(const PlatWord& word);

// Writhe of the plat closure, computed by tracing the knot through the word
// and weighting each letter by the orientations of its two strands.  Throws
// if the closure has more than one component.
int plat_writhe(const PlatWord& word);

// Appends |count| writhe-adjusting curls of the given sign to an event list
// (each curl is a birth, a crossing and a death on the leftmost strand).
void append_curls(std::vector<MorseEvent>& events, int count, int sign);

// Derives Morse events from exact wire geometry by an upward sweep.  Requires
// every segment to be strictly monotone in y (no horizontal segments) and
// generic event heights; throws std::runtime_error otherwise.
std::vector<MorseEvent> morse_events(const PlanarDiagram& d);

struct SweepLimits {
  int max_width = 28;          // cabled frontier strands
  size_t max_states = 4000000;  // simultaneous frontier pairings
};

// Kauffman bracket of the j-cable of a Morse event list, via a frontier of
// planar pairings with IntLaurent weights.  j = 0 gives 1.
IntLaurent sweep_bracket(const std::vector<MorseEvent>& events, int j,
                         const SweepLimits& limits = {});

}  // namespace skeinlab
