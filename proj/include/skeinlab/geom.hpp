#pragma once

#include <gmpxx.h>

#include <utility>

namespace skeinlab {

// Exact planar point with rational coordinates.
struct Pt {
  mpq_class x;
  mpq_class y;

  Pt() = default;
  Pt(mpq_class px, mpq_class py) : x(std::move(px)), y(std::move(py)) {}

  Pt operator+(const Pt& o) const { return {x + o.x, y + o.y}; }
  Pt operator-(const Pt& o) const { return {x - o.x, y - o.y}; }
  Pt scaled(const mpq_class& s) const { return {x * s, y * s}; }
  bool operator==(const Pt& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Pt& o) const { return !(*this == o); }
};

mpq_class cross(const Pt& a, const Pt& b);
mpq_class dot(const Pt& a, const Pt& b);

// Strict total order for use as a map key.
bool pt_less(const Pt& a, const Pt& b);

// How two closed segments meet.
enum class SegContact {
  none,        // disjoint
  proper,      // transverse crossing with both parameters strictly inside
  degenerate,  // endpoint contact, tangency along a line, or overlap
};

struct SegHit {
  SegContact kind = SegContact::none;
  mpq_class t;  // parameter on [a,b], only valid for proper hits
  mpq_class u;  // parameter on [c,d]
  Pt p;
};

SegHit intersect_segments(const Pt& a, const Pt& b, const Pt& c, const Pt& d);

// Counterclockwise angular order of direction vectors starting just above the
// positive x axis.  Exact: compares by half plane first, then cross product.
bool dir_ccw_less(const Pt& da, const Pt& db);

}  // namespace skeinlab
