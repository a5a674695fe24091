#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "skeinlab/geom.hpp"
#include "skeinlab/intlaurent.hpp"

namespace skeinlab {

// Closed polyline strand of a link projection.  Segment i runs from pts[i] to
// pts[(i+1) % pts.size()] at constant height depth[i]; larger depth passes in
// front at a crossing.
struct Wire {
  std::vector<Pt> pts;
  std::vector<mpq_class> depth;
};

// Knot/link diagram: combinatorial crossing data compiled from exact wire
// geometry.  At each crossing the four incident arc ends are listed in
// counterclockwise order; the over strand occupies slots (0,2) or (1,3).
class PlanarDiagram {
 public:
  struct Crossing {
    std::array<int, 4> arc;  // arc ids, counterclockwise
    bool over02 = false;     // true when the strand through slots 0,2 is over
    int sign = 0;            // oriented crossing sign from wire traversal
    Pt pos;                  // projection point (zero when parsed without
                             // geometry)
  };

  PlanarDiagram() = default;

  // Compiles wire geometry into crossing data.  Throws std::runtime_error on
  // non-generic input: tangency, endpoint contact between non-adjacent
  // segments, coincident crossing points, or equal heights at a crossing.
  static PlanarDiagram from_wires(std::vector<Wire> wires,
                                  std::vector<Pt> punctures = {});

  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int free_loops() const { return free_loops_; }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  const std::vector<Wire>& wires() const { return wires_; }
  const std::vector<Pt>& punctures() const { return punctures_; }
  bool has_geometry() const {
    return !wires_.empty() || (crossings_.empty() && free_loops_ == 0);
  }

  // Number of closed strands (components), from the crossing data alone.
  int component_count() const;

  // True when every arc runs from an over passage to an under passage.
  bool is_alternating() const;

  // Circle counts of the all-positive / all-negative smoothing states.
  struct SmoothCounts {
    int s_plus = 0;
    int s_minus = 0;
  };
  SmoothCounts smooth_and_count() const;

  // Kauffman bracket by enumeration of all 2^k smoothing states:
  // sum over states of t^(pos - neg) * (-t^2 - t^-2)^circles, with the empty
  // diagram evaluating to 1.  Throws when crossing_count() > 24.
  IntLaurent bracket_bruteforce() const;

  // Sum of crossing signs over all crossings (self and mutual).
  int writhe() const;

  // j parallel copies of every wire at blackboard framing.  j = 0 gives the
  // empty diagram; j = 1 reproduces the crossing data.  The copy offset starts
  // small and shrinks until the crossing count is exactly j^2 times the
  // original; throws if no offset works.  Requires geometry.
  PlanarDiagram cable(int j) const;

  // Inserts |c| curls of writhe sign(c) on the first wire.  Requires geometry.
  PlanarDiagram add_kinks(int c) const;

  // Same projection with every crossing switched.
  PlanarDiagram mirrored() const;

  // Text form: header, X lines (four arc ids + over flag), optional puncture
  // and wire-coordinate lines.  Parsing accepts files without coordinates;
  // geometric operations then refuse to run.
  std::string to_text() const;
  static PlanarDiagram from_text(const std::string& text);

 private:
  std::vector<Crossing> crossings_;
  int free_loops_ = 0;
  std::vector<Wire> wires_;
  std::vector<Pt> punctures_;
  int arc_count_ = 0;

  void check_valid() const;
};

// Convenience wire builders used by tests and the two-bridge constructions.
Wire circle_wire(const mpq_class& cx, const mpq_class& cy,
                 const mpq_class& r);

}  // namespace skeinlab
