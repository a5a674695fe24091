#include "skeinlab/diagram.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace skeinlab {

namespace {

struct StrandEnd {
  Pt fwd;          // forward direction of the strand at the crossing
  int arc_in = -1;
  int arc_out = -1;
  mpq_class depth;
};

struct RawHit {
  int wire_a, seg_a;
  mpq_class t_a;
  int wire_b, seg_b;
  mpq_class t_b;
  Pt p;
  StrandEnd end[2];
};

bool segments_adjacent(int n, int i, int j) {
  const int d = std::abs(i - j);
  return d <= 1 || d == n - 1;
}

mpq_class parse_rat(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::runtime_error("bad rational: " + s);
  q.canonicalize();
  return q;
}

// Port p = 4*crossing + slot.  arc_partner links the two ports of each arc;
// pos_pair/neg_pair link ports inside a crossing for the two smoothings.
// With slots counterclockwise, the smoothing carrying the t coefficient
// joins (u,u+1) and (u+2,u+3) where u is the parity of the under strand's
// slots; the t^-1 smoothing joins the complementary pairs.  (Pinned by the
// positive-curl value t^5 + t: its t-smoothing must give two circles.)
struct SmoothTables {
  std::vector<int> pos_pair, neg_pair, arc_partner;
};

SmoothTables build_smooth_tables(const std::vector<PlanarDiagram::Crossing>& cr,
                                 int arc_count) {
  const int np = static_cast<int>(cr.size()) * 4;
  SmoothTables st;
  st.pos_pair.resize(np);
  st.neg_pair.resize(np);
  st.arc_partner.assign(np, -1);
  std::vector<int> by_arc(arc_count, -1);
  for (int c = 0; c < static_cast<int>(cr.size()); ++c) {
    const int u = cr[c].over02 ? 1 : 0;
    for (int s = 0; s < 4; ++s) {
      const int port = 4 * c + s;
      const int r = (s - u + 4) % 4;
      st.pos_pair[port] = 4 * c + (u + (r ^ 1)) % 4;
      st.neg_pair[port] = 4 * c + (u + (((r + 1) % 4) ^ 1) + 3) % 4;
      int& other = by_arc[cr[c].arc[s]];
      if (other < 0) {
        other = port;
      } else {
        st.arc_partner[port] = other;
        st.arc_partner[other] = port;
      }
    }
  }
  return st;
}

// Walks strand passages: through each crossing a strand enters at one slot
// and leaves at the opposite one.  Records the outgoing slot of each passage
// under a traversal orientation, plus the number of closed strands.
struct StrandTrace {
  int cycles = 0;
  // For crossing c: outgoing slot of the slot-parity-0 and parity-1 passages.
  std::vector<std::array<int, 2>> out_slot;
};

StrandTrace trace_strands(const std::vector<PlanarDiagram::Crossing>& cr,
                          int arc_count) {
  const SmoothTables st = build_smooth_tables(cr, arc_count);
  const int np = static_cast<int>(cr.size()) * 4;
  StrandTrace tr;
  tr.out_slot.assign(cr.size(), {-1, -1});
  std::vector<char> vis(np, 0);
  for (int p0 = 0; p0 < np; ++p0) {
    if (vis[p0]) continue;
    ++tr.cycles;
    int p = p0;
    do {
      vis[p] = 1;
      const int c = p / 4;
      const int slot_in = p % 4;
      const int slot_out = (slot_in + 2) % 4;
      const int q = 4 * c + slot_out;
      vis[q] = 1;
      tr.out_slot[c][slot_in % 2] = slot_out;
      p = st.arc_partner[q];
    } while (p != p0);
  }
  return tr;
}

}  // namespace

PlanarDiagram PlanarDiagram::from_wires(std::vector<Wire> wires,
                                        std::vector<Pt> punctures) {
  for (const Wire& w : wires) {
    if (w.pts.size() < 3 || w.depth.size() != w.pts.size())
      throw std::runtime_error("wire needs >= 3 points and one depth per segment");
    const size_t n = w.pts.size();
    for (size_t i = 0; i < n; ++i)
      if (w.pts[i] == w.pts[(i + 1) % n])
        throw std::runtime_error("zero-length wire segment");
  }
  for (const Pt& q : punctures)
    for (const Wire& w : wires) {
      const size_t n = w.pts.size();
      for (size_t i = 0; i < n; ++i) {
        const Pt a = w.pts[i], d = w.pts[(i + 1) % n] - w.pts[i];
        if (cross(d, q - a) == 0 && dot(q - a, d) >= 0 &&
            dot(q - a, d) <= dot(d, d))
          throw std::runtime_error("puncture lies on a wire");
      }
    }

  // All transverse interior intersections between non-adjacent segments.
  std::vector<RawHit> hits;
  for (size_t wa = 0; wa < wires.size(); ++wa) {
    const auto& pa = wires[wa].pts;
    const int na = static_cast<int>(pa.size());
    for (size_t wb = wa; wb < wires.size(); ++wb) {
      const auto& pb = wires[wb].pts;
      const int nb = static_cast<int>(pb.size());
      for (int i = 0; i < na; ++i) {
        const int jstart = (wa == wb) ? i + 1 : 0;
        for (int j = jstart; j < nb; ++j) {
          if (wa == wb && segments_adjacent(na, i, j)) continue;
          const SegHit h = intersect_segments(pa[i], pa[(i + 1) % na],
                                              pb[j], pb[(j + 1) % nb]);
          if (h.kind == SegContact::none) continue;
          if (h.kind == SegContact::degenerate)
            throw std::runtime_error("non-generic wire contact");
          RawHit rh;
          rh.wire_a = static_cast<int>(wa);
          rh.seg_a = i;
          rh.t_a = h.t;
          rh.wire_b = static_cast<int>(wb);
          rh.seg_b = j;
          rh.t_b = h.u;
          rh.p = h.p;
          rh.end[0].fwd = pa[(i + 1) % na] - pa[i];
          rh.end[0].depth = wires[wa].depth[i];
          rh.end[1].fwd = pb[(j + 1) % nb] - pb[j];
          rh.end[1].depth = wires[wb].depth[j];
          if (rh.end[0].depth == rh.end[1].depth)
            throw std::runtime_error("equal heights at a crossing");
          hits.push_back(std::move(rh));
        }
      }
    }
  }

  // Distinct crossing points (no triple points or coincidences).
  {
    std::vector<const Pt*> ps;
    ps.reserve(hits.size());
    for (const auto& h : hits) ps.push_back(&h.p);
    std::sort(ps.begin(), ps.end(),
              [](const Pt* a, const Pt* b) { return pt_less(*a, *b); });
    for (size_t i = 1; i < ps.size(); ++i)
      if (*ps[i] == *ps[i - 1])
        throw std::runtime_error("coincident crossing points");
  }

  PlanarDiagram d;
  d.wires_ = std::move(wires);
  d.punctures_ = std::move(punctures);

  // Cut each wire into arcs at its crossing events.
  struct Event {
    int seg;
    mpq_class t;
    int hit;
    int role;
  };
  std::vector<std::vector<Event>> events(d.wires_.size());
  for (size_t h = 0; h < hits.size(); ++h) {
    events[hits[h].wire_a].push_back(
        {hits[h].seg_a, hits[h].t_a, static_cast<int>(h), 0});
    events[hits[h].wire_b].push_back(
        {hits[h].seg_b, hits[h].t_b, static_cast<int>(h), 1});
  }
  int arc_id = 0;
  for (size_t w = 0; w < d.wires_.size(); ++w) {
    auto& ev = events[w];
    if (ev.empty()) {
      ++d.free_loops_;
      continue;
    }
    std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) {
      if (a.seg != b.seg) return a.seg < b.seg;
      return a.t < b.t;
    });
    const int n = static_cast<int>(ev.size());
    for (int i = 0; i < n; ++i) {
      StrandEnd& se = hits[ev[i].hit].end[ev[i].role];
      se.arc_out = arc_id + i;
      se.arc_in = arc_id + (i + n - 1) % n;
    }
    arc_id += n;
  }
  d.arc_count_ = arc_id;

  // Assemble crossings: four rays in counterclockwise order.
  d.crossings_.reserve(hits.size());
  for (const RawHit& h : hits) {
    struct Ray {
      Pt dir;
      int arc;
      int strand;
    };
    std::array<Ray, 4> rays = {{
        {h.end[0].fwd, h.end[0].arc_out, 0},
        {Pt() - h.end[0].fwd, h.end[0].arc_in, 0},
        {h.end[1].fwd, h.end[1].arc_out, 1},
        {Pt() - h.end[1].fwd, h.end[1].arc_in, 1},
    }};
    std::sort(rays.begin(), rays.end(), [](const Ray& a, const Ray& b) {
      return dir_ccw_less(a.dir, b.dir);
    });
    if (rays[0].strand != rays[2].strand || rays[1].strand != rays[3].strand ||
        rays[0].strand == rays[1].strand)
      throw std::runtime_error("crossing rays do not alternate");
    Crossing c;
    for (int s = 0; s < 4; ++s) c.arc[s] = rays[s].arc;
    const int over = (h.end[0].depth > h.end[1].depth) ? 0 : 1;
    c.over02 = (rays[0].strand == over);
    c.sign = sgn(cross(h.end[over].fwd, h.end[1 - over].fwd));
    c.pos = h.p;
    d.crossings_.push_back(std::move(c));
  }
  d.check_valid();
  return d;
}

void PlanarDiagram::check_valid() const {
  std::vector<int> seen(arc_count_, 0);
  for (const auto& c : crossings_)
    for (int a : c.arc) {
      if (a < 0 || a >= arc_count_)
        throw std::runtime_error("arc id out of range");
      ++seen[a];
    }
  for (int s : seen)
    if (s != 2) throw std::runtime_error("arc does not have two ends");
}

int PlanarDiagram::component_count() const {
  if (crossings_.empty()) return free_loops_;
  return trace_strands(crossings_, arc_count_).cycles + free_loops_;
}

bool PlanarDiagram::is_alternating() const {
  if (crossings_.empty()) return true;
  // Alternating: every arc has one over end and one under end.
  std::vector<int> over_ends(arc_count_, 0);
  for (const auto& c : crossings_)
    for (int s = 0; s < 4; ++s)
      if ((s % 2 == 0) == c.over02) ++over_ends[c.arc[s]];
  for (int a = 0; a < arc_count_; ++a)
    if (over_ends[a] != 1) return false;
  return true;
}

IntLaurent PlanarDiagram::bracket_bruteforce() const {
  const int k = crossing_count();
  if (k > 24)
    throw std::runtime_error("bracket guard: more than 24 crossings");
  const SmoothTables st = build_smooth_tables(crossings_, arc_count_);
  const int np = 4 * k;

  const int max_circles = k + 1 + free_loops_;
  std::vector<std::vector<unsigned long long>> counts(
      k + 1, std::vector<unsigned long long>(max_circles + 1, 0));
  std::vector<int> vis(np, -1);
  const unsigned long nstates = 1ul << k;
  for (unsigned long state = 0; state < nstates; ++state) {
    int circles = free_loops_;
    const int stamp = static_cast<int>(state);
    for (int p0 = 0; p0 < np; ++p0) {
      if (vis[p0] == stamp) continue;
      ++circles;
      int p = p0;
      do {
        vis[p] = stamp;
        const int c = p >> 2;
        const int q = ((state >> c) & 1ul) ? st.pos_pair[p] : st.neg_pair[p];
        vis[q] = stamp;
        p = st.arc_partner[q];
      } while (p != p0);
    }
    ++counts[std::popcount(state)][circles];
  }

  // Assemble the sum over (positive count, circle count) cells.
  const IntLaurent delta = IntLaurent::from_terms({{2, -1}, {-2, -1}});
  std::vector<IntLaurent> dpow(max_circles + 1);
  dpow[0] = IntLaurent::one();
  for (int c = 1; c <= max_circles; ++c) dpow[c] = dpow[c - 1] * delta;
  std::map<int, mpz_class> acc;
  for (int pos = 0; pos <= k; ++pos)
    for (int c = 0; c <= max_circles; ++c) {
      if (counts[pos][c] == 0) continue;
      const mpz_class mult(static_cast<unsigned long>(counts[pos][c]));
      const int shift = 2 * pos - k;
      for (const auto& [e, co] : dpow[c].terms()) acc[e + shift] += co * mult;
    }
  std::vector<IntLaurent::Term> ts;
  for (auto& [e, co] : acc)
    if (co != 0) ts.push_back({e, co});
  return IntLaurent::from_terms(std::move(ts));
}

PlanarDiagram::SmoothCounts PlanarDiagram::smooth_and_count() const {
  const int k = crossing_count();
  const SmoothTables st = build_smooth_tables(crossings_, arc_count_);
  const int np = 4 * k;
  auto count_state = [&](bool positive) {
    int circles = free_loops_;
    std::vector<char> vis(np, 0);
    for (int p0 = 0; p0 < np; ++p0) {
      if (vis[p0]) continue;
      ++circles;
      int p = p0;
      do {
        vis[p] = 1;
        const int q = positive ? st.pos_pair[p] : st.neg_pair[p];
        vis[q] = 1;
        p = st.arc_partner[q];
      } while (p != p0);
    }
    return circles;
  };
  SmoothCounts sc;
  sc.s_plus = count_state(true);
  sc.s_minus = count_state(false);
  return sc;
}

int PlanarDiagram::writhe() const {
  if (!wires_.empty()) {
    int w = 0;
    for (const auto& c : crossings_) w += c.sign;
    return w;
  }
  if (crossings_.empty()) return 0;
  // Parsed diagram: orient strands by traversal, then read each sign off the
  // counterclockwise slot order (under strand leaving one step
  // counterclockwise from the over strand means positive).
  const StrandTrace tr = trace_strands(crossings_, arc_count_);
  int w = 0;
  for (int c = 0; c < crossing_count(); ++c) {
    const int over_par = crossings_[c].over02 ? 0 : 1;
    const int oo = tr.out_slot[c][over_par];
    const int uo = tr.out_slot[c][1 - over_par];
    if (uo == (oo + 1) % 4)
      ++w;
    else if (uo == (oo + 3) % 4)
      --w;
    else
      throw std::runtime_error("inconsistent strand trace");
  }
  return w;
}

PlanarDiagram PlanarDiagram::cable(int j) const {
  if (j < 0) throw std::runtime_error("cable takes j >= 0");
  if (j == 0) return PlanarDiagram();
  if (wires_.empty() && (crossing_count() > 0 || free_loops_ > 0))
    throw std::runtime_error("cable needs diagram geometry");
  const int k = crossing_count();
  mpq_class off(1, 64);
  for (int attempt = 0; attempt < 18; ++attempt, off /= 4) {
    std::vector<Wire> cables;
    for (const Wire& w : wires_) {
      const int n = static_cast<int>(w.pts.size());
      for (int copy = 0; copy < j; ++copy) {
        const mpq_class d = off * (2 * copy - (j - 1));
        Wire cw;
        cw.depth = w.depth;
        cw.pts.resize(n);
        for (int i = 0; i < n; ++i) {
          // Vertex i joins segments i-1 and i; meet the two offset lines.
          const int ip = (i + n - 1) % n;
          const Pt a0 = w.pts[ip], a1 = w.pts[i];
          const Pt b1 = w.pts[(i + 1) % n];
          const Pt da = a1 - a0, db = b1 - a1;
          const Pt na{-da.y * d, da.x * d};
          const Pt nb{-db.y * d, db.x * d};
          const mpq_class den = cross(da, db);
          if (den == 0) {
            cw.pts[i] = a1 + nb;
            continue;
          }
          // Solve (a0 + na) + s*da = (a1 + nb) + r*db for s.
          const Pt rhs = (a1 + nb) - (a0 + na);
          const mpq_class s = cross(rhs, db) / den;
          cw.pts[i] = a0 + na + da.scaled(s);
        }
        cables.push_back(std::move(cw));
      }
    }
    try {
      PlanarDiagram cd = from_wires(std::move(cables), punctures_);
      if (cd.crossing_count() == j * j * k) return cd;
    } catch (const std::runtime_error&) {
      // shrink and retry
    }
  }
  throw std::runtime_error("cable offset could not be made generic");
}

PlanarDiagram PlanarDiagram::add_kinks(int c) const {
  if (c == 0) return *this;
  if (wires_.empty())
    throw std::runtime_error("add_kinks needs diagram geometry");
  PlanarDiagram cur = *this;
  const int want_sign = c > 0 ? 1 : -1;
  const mpq_class mus[] = {mpq_class(1, 2), mpq_class(4, 9), mpq_class(5, 9),
                           mpq_class(3, 7), mpq_class(4, 7)};
  for (int done = 0; done < std::abs(c); ++done) {
    const int old_k = cur.crossing_count();
    bool placed = false;
    mpq_class alpha(1, 8), gamma(1, 16);
    for (int attempt = 0; attempt < 18 && !placed; ++attempt) {
      for (int raise = 0; raise < 2 && !placed; ++raise) {
        std::vector<Wire> ws = cur.wires_;
        Wire& w = ws[0];
        const int n = static_cast<int>(w.pts.size());
        int best = 0;
        mpq_class best_len = -1;
        for (int i = 0; i < n; ++i) {
          const Pt v = w.pts[(i + 1) % n] - w.pts[i];
          const mpq_class l2 = dot(v, v);
          if (l2 > best_len) {
            best_len = l2;
            best = i;
          }
        }
        const Pt A = w.pts[best], B = w.pts[(best + 1) % n];
        const Pt u = B - A;
        const Pt nn{-u.y, u.x};
        const Pt M = A + u.scaled(mus[attempt % 5]);
        const Pt f2 = M + u.scaled(alpha);
        const Pt f3 = f2 + nn.scaled(gamma);
        const Pt f4 = M - u.scaled(alpha) + nn.scaled(gamma);
        const Pt f5 = M + u.scaled(2 * alpha) - nn.scaled(gamma);
        const mpq_class dep = w.depth[best];
        // The loop strand passes over for a positive curl, under otherwise
        // (verified against the recompiled crossing sign below).
        const mpq_class loop_dep = dep + (raise == 0 ? 1 : -1);
        w.pts.insert(w.pts.begin() + best + 1, {f2, f3, f4, f5});
        w.depth.insert(w.depth.begin() + best + 1, {dep, dep, loop_dep, dep});
        try {
          PlanarDiagram nd = from_wires(std::move(ws), punctures_);
          if (nd.crossing_count() != old_k + 1) continue;
          int new_sign = 0;
          for (const auto& cr : nd.crossings_) {
            bool old_pt = false;
            for (const auto& co : cur.crossings_)
              if (co.pos == cr.pos) old_pt = true;
            if (!old_pt) new_sign = cr.sign;
          }
          if (new_sign != want_sign) continue;
          cur = std::move(nd);
          placed = true;
        } catch (const std::runtime_error&) {
        }
      }
      alpha /= 4;
      gamma /= 4;
    }
    if (!placed) throw std::runtime_error("kink could not be placed");
  }
  return cur;
}

PlanarDiagram PlanarDiagram::mirrored() const {
  PlanarDiagram d = *this;
  for (auto& c : d.crossings_) {
    c.over02 = !c.over02;
    c.sign = -c.sign;
  }
  for (auto& w : d.wires_)
    for (auto& dep : w.depth) dep = -dep;
  return d;
}

std::string PlanarDiagram::to_text() const {
  std::ostringstream os;
  os << "planar-diagram k=" << crossing_count() << " loops=" << free_loops_
     << "\n";
  for (const auto& c : crossings_)
    os << "X " << c.arc[0] << ' ' << c.arc[1] << ' ' << c.arc[2] << ' '
       << c.arc[3] << ' ' << (c.over02 ? 1 : 0) << "\n";
  for (const auto& p : punctures_) os << "P " << p.x << ' ' << p.y << "\n";
  for (const auto& w : wires_) {
    os << "W";
    const size_t n = w.pts.size();
    for (size_t i = 0; i < n; ++i)
      os << ' ' << w.pts[i].x << ' ' << w.pts[i].y << ' ' << w.depth[i];
    os << "\n";
  }
  return os.str();
}

PlanarDiagram PlanarDiagram::from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line.rfind("planar-diagram ", 0) != 0)
    throw std::runtime_error("missing planar-diagram header");
  int k = -1, loops = -1;
  {
    std::istringstream hs(line.substr(15));
    std::string tok;
    while (hs >> tok) {
      if (tok.rfind("k=", 0) == 0) k = std::stoi(tok.substr(2));
      if (tok.rfind("loops=", 0) == 0) loops = std::stoi(tok.substr(6));
    }
    if (k < 0 || loops < 0) throw std::runtime_error("bad header");
  }
  std::vector<Crossing> crossings;
  std::vector<Pt> punctures;
  std::vector<Wire> wires;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "X") {
      Crossing c;
      int o = -1;
      ls >> c.arc[0] >> c.arc[1] >> c.arc[2] >> c.arc[3] >> o;
      if (!ls || (o != 0 && o != 1)) throw std::runtime_error("bad X line");
      c.over02 = (o == 1);
      crossings.push_back(c);
    } else if (tag == "P") {
      std::string xs, ys;
      ls >> xs >> ys;
      if (!ls) throw std::runtime_error("bad P line");
      punctures.push_back({parse_rat(xs), parse_rat(ys)});
    } else if (tag == "W") {
      Wire w;
      std::string xs, ys, ds;
      while (ls >> xs >> ys >> ds) {
        w.pts.push_back({parse_rat(xs), parse_rat(ys)});
        w.depth.push_back(parse_rat(ds));
      }
      if (w.pts.empty()) throw std::runtime_error("bad W line");
      wires.push_back(std::move(w));
    } else {
      throw std::runtime_error("unknown line tag: " + tag);
    }
  }
  if (static_cast<int>(crossings.size()) != k)
    throw std::runtime_error("crossing count mismatch");
  if (!wires.empty()) {
    // Geometry present: recompile and cross-check the header.
    PlanarDiagram d = from_wires(std::move(wires), std::move(punctures));
    if (d.crossing_count() != k || d.free_loops_ != loops)
      throw std::runtime_error("coordinates disagree with crossing lines");
    return d;
  }
  PlanarDiagram d;
  d.crossings_ = std::move(crossings);
  d.free_loops_ = loops;
  d.punctures_ = std::move(punctures);
  int max_arc = -1;
  for (const auto& c : d.crossings_)
    for (int a : c.arc) max_arc = std::max(max_arc, a);
  d.arc_count_ = max_arc + 1;
  d.check_valid();
  return d;
}

Wire circle_wire(const mpq_class& cx, const mpq_class& cy, const mpq_class& r) {
  Wire w;
  w.pts = {{cx + r, cy}, {cx, cy + r}, {cx - r, cy}, {cx, cy - r}};
  w.depth.assign(4, 0);
  return w;
}

}  // namespace skeinlab
