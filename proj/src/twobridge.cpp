#include "skeinlab/twobridge.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace skeinlab {

namespace {

// Global chirality switch: +1 makes fourplat_diagram(3,1) the right-handed
// trefoil (writhe +3, colored Jones in negative powers of t).
constexpr int kPlatChirality = 1;

// Sheet depth of the front sheet in the fold projection; -1 would mirror.
constexpr int kFoldFrontDepth = -1;

mpz_class mpq_floor(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

// Period-2 triangle fold of the real line onto [0,1].
mpq_class tri(const mpq_class& x) {
  mpq_class r = x - 2 * mpq_class(mpq_floor(x / 2));
  if (r > 1) r = 2 - r;
  return r;
}

struct SegSoup {
  Pt a, b;
  mpq_class dep;
};

struct PtLess {
  bool operator()(const Pt& a, const Pt& b) const { return pt_less(a, b); }
};

// Stitches a segment soup (every endpoint shared by exactly two segments)
// into closed wires.
std::vector<Wire> stitch_segments(const std::vector<SegSoup>& segs) {
  std::map<Pt, std::vector<int>, PtLess> at;
  for (size_t i = 0; i < segs.size(); ++i) {
    at[segs[i].a].push_back(static_cast<int>(i));
    at[segs[i].b].push_back(static_cast<int>(i));
  }
  for (const auto& [p, ids] : at)
    if (ids.size() != 2)
      throw std::runtime_error("segment soup endpoint not shared by two segments");
  std::vector<char> used(segs.size(), 0);
  std::vector<Wire> wires;
  for (size_t s0 = 0; s0 < segs.size(); ++s0) {
    if (used[s0]) continue;
    Wire w;
    int cur = static_cast<int>(s0);
    Pt entry = segs[s0].a;
    do {
      used[cur] = 1;
      w.pts.push_back(entry);
      w.depth.push_back(segs[cur].dep);
      const Pt exit = (entry == segs[cur].a) ? segs[cur].b : segs[cur].a;
      const auto& ids = at[exit];
      cur = (ids[0] == cur) ? ids[1] : ids[0];
      entry = exit;
    } while (!(entry == segs[s0].a));
    wires.push_back(std::move(w));
  }
  return wires;
}

}  // namespace

TwoBridgeSpec::TwoBridgeSpec(int p_, int m_) : p(p_), m(m_) {
  if (p <= 1) throw std::invalid_argument("two-bridge parameter p must be > 1");
  if (p % 2 == 0)
    throw std::invalid_argument("two-bridge parameter p must be odd");
  if (m <= 0 || m >= p)
    throw std::invalid_argument("two-bridge parameter m must satisfy 0 < m < p");
  if (m % 2 == 0)
    throw std::invalid_argument("two-bridge parameter m must be odd");
  if (std::gcd(p, m) != 1)
    throw std::invalid_argument("two-bridge parameters must be coprime");
}

std::vector<int> continued_fraction_odd(int p, int m) {
  if (p <= 0 || m <= 0 || m >= p)
    throw std::invalid_argument("continued fraction needs 0 < m < p");
  std::vector<int> cf;
  int a = p, b = m;
  while (b > 0) {
    cf.push_back(a / b);
    const int r = a % b;
    a = b;
    b = r;
  }
  if (cf.size() % 2 == 0) {
    if (cf.back() > 1) {
      --cf.back();
      cf.push_back(1);
    } else {
      cf.pop_back();
      ++cf.back();
    }
  }
  return cf;
}

PlanarDiagram fourplat_diagram(const TwoBridgeSpec& spec) {
  const std::vector<int> cf = continued_fraction_odd(spec.p, spec.m);
  std::vector<SegSoup> segs;
  int y = 0;
  for (size_t b = 0; b < cf.size(); ++b) {
    const bool inner = (b % 2 == 0);  // crossings between strands 2,3
    const int sx = inner ? 2 : 1;
    const int sense = (inner ? 1 : -1) * kPlatChirality;
    for (int c = 0; c < cf[b]; ++c, ++y) {
      segs.push_back({{sx, y}, {sx + 1, y + 1}, sense});
      segs.push_back({{sx + 1, y}, {sx, y + 1}, -sense});
      for (int x = 1; x <= 4; ++x)
        if (x != sx && x != sx + 1) segs.push_back({{x, y}, {x, y + 1}, 0});
    }
  }
  const int H = y;
  const mpq_class lo(-1, 2), hi = mpq_class(H) + mpq_class(1, 2);
  for (int base : {1, 3}) {
    const mpq_class mid = mpq_class(2 * base + 1, 2);
    segs.push_back({{base, 0}, {mid, lo}, 0});
    segs.push_back({{mid, lo}, {base + 1, 0}, 0});
    segs.push_back({{base, H}, {mid, hi}, 0});
    segs.push_back({{mid, hi}, {base + 1, H}, 0});
  }
  std::vector<Wire> wires = stitch_segments(segs);
  if (wires.size() != 1)
    throw std::runtime_error("four-plat closure is not a knot");
  return PlanarDiagram::from_wires(std::move(wires));
}

namespace {

// Folded image of the straight segment (x0,y0) + tau*(dx,dy), tau in [0,1],
// as display points plus one sheet depth per linear piece.
void fold_curve(int x0, int y0, int dx, int dy, std::vector<Pt>& pts,
                std::vector<mpq_class>& deps) {
  std::vector<mpq_class> taus{0, 1};
  for (int k = x0 + 1; k < x0 + dx; ++k) taus.push_back(mpq_class(k - x0, dx));
  for (int k = y0 + 1; k < y0 + dy; ++k) taus.push_back(mpq_class(k - y0, dy));
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
  pts.clear();
  deps.clear();
  for (const mpq_class& t : taus)
    pts.push_back({tri(x0 + t * dx), tri(y0 + t * dy)});
  for (size_t i = 0; i + 1 < taus.size(); ++i) {
    const mpq_class tm = (taus[i] + taus[i + 1]) / 2;
    const mpz_class par = mpq_floor(x0 + tm * dx) + mpq_floor(y0 + tm * dy);
    deps.push_back(mpz_even_p(par.get_mpz_t()) ? kFoldFrontDepth
                                               : -kFoldFrontDepth);
  }
}

}  // namespace

PlanarDiagram fold_projection_diagram(const TwoBridgeSpec& spec) {
  const int p = spec.p;
  const int q = p - spec.m;
  const mpq_class delta(1, 16 * p);
  const mpq_class e(1, 8);

  std::vector<Pt> upts, vpts;
  std::vector<mpq_class> udeps, vdeps;
  fold_curve(0, 0, q, p, upts, udeps);  // (0,0) .. (0,1)
  fold_curve(1, 0, q, p, vpts, vdeps);  // (1,0) .. (1,1)

  Wire w;
  auto push = [&w](const Pt& pt, const mpq_class& dep) {
    w.pts.push_back(pt);
    w.depth.push_back(dep);
  };
  for (size_t i = 0; i + 1 < upts.size(); ++i) push(upts[i], udeps[i]);
  // Top bridge from the (0,1) corner to (1,1), between the sheets.
  push({0, 1}, 0);
  push({e, 1 - delta}, 0);
  push({1 - e, 1 - delta}, 0);
  // v traversed backwards, (1,1) down to (1,0).
  for (size_t i = vpts.size() - 1; i > 0; --i) push(vpts[i], vdeps[i - 1]);
  // Bottom bridge back to the start.
  push({1, 0}, 0);
  push({1 - e, delta}, 0);
  push({e, delta}, 0);
  return PlanarDiagram::from_wires({std::move(w)});
}

PlatWord fourplat_word(const TwoBridgeSpec& spec) {
  const std::vector<int> cf = continued_fraction_odd(spec.p, spec.m);
  PlatWord word;
  for (size_t b = 0; b < cf.size(); ++b) {
    const bool inner = (b % 2 == 0);
    const int pos = inner ? 1 : 0;
    const int sense = (inner ? 1 : -1) * kPlatChirality;
    for (int c = 0; c < cf[b]; ++c) word.letters.push_back({pos, sense});
  }
  return word;
}

}  // namespace skeinlab
