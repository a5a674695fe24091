#include "skeinlab/geom.hpp"

namespace skeinlab {

mpq_class cross(const Pt& a, const Pt& b) { return a.x * b.y - a.y * b.x; }

mpq_class dot(const Pt& a, const Pt& b) { return a.x * b.x + a.y * b.y; }

bool pt_less(const Pt& a, const Pt& b) {
  int c = cmp(a.x, b.x);
  if (c != 0) return c < 0;
  return cmp(a.y, b.y) < 0;
}

SegHit intersect_segments(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
  SegHit hit;
  const Pt d1 = b - a;
  const Pt d2 = d - c;
  const Pt ca = c - a;
  const mpq_class denom = cross(d1, d2);
  if (denom == 0) {
    if (cross(ca, d1) != 0) return hit;  // parallel, distinct lines
    // Collinear: any interval contact is degenerate for our purposes.
    const mpq_class len2 = dot(d1, d1);
    if (len2 == 0) {
      hit.kind = SegContact::degenerate;  // zero-length segment
      return hit;
    }
    mpq_class s0 = dot(ca, d1) / len2;
    mpq_class s1 = dot(d - a, d1) / len2;
    if (s0 > s1) swap(s0, s1);
    hit.kind = (s1 < 0 || s0 > 1) ? SegContact::none : SegContact::degenerate;
    return hit;
  }
  const mpq_class t = cross(ca, d2) / denom;
  const mpq_class u = cross(ca, d1) / denom;
  if (t < 0 || t > 1 || u < 0 || u > 1) return hit;
  const bool interior = t > 0 && t < 1 && u > 0 && u < 1;
  hit.kind = interior ? SegContact::proper : SegContact::degenerate;
  hit.t = t;
  hit.u = u;
  hit.p = a + d1.scaled(t);
  return hit;
}

bool dir_ccw_less(const Pt& da, const Pt& db) {
  // Half 0: angles in (0, pi] measured from the positive x axis going
  // counterclockwise, i.e. y > 0, or y == 0 with x < 0.  Half 1: the rest.
  auto half = [](const Pt& v) {
    if (v.y > 0) return 0;
    if (v.y == 0 && v.x < 0) return 0;
    return 1;
  };
  const int ha = half(da);
  const int hb = half(db);
  if (ha != hb) return ha < hb;
  return cross(da, db) > 0;
}

}  // namespace skeinlab
