#include "skeinlab/morse.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <stdexcept>
#include <utility>

namespace skeinlab {

namespace {

const IntLaurent& loop_value() {
  static const IntLaurent d = IntLaurent::from_terms({{2, -1}, {-2, -1}});
  return d;
}

}  // namespace

std::vector<MorseEvent> plat_events(const PlatWord& word) {
  std::vector<MorseEvent> ev;
  ev.push_back({MorseEvent::kBirth, 0});
  ev.push_back({MorseEvent::kBirth, 2});
  for (const PlatLetter& l : word.letters) {
    if (l.pos < 0 || l.pos > 2 || (l.sign != 1 && l.sign != -1))
      throw std::invalid_argument("bad plat letter");
    ev.push_back({MorseEvent::kCross, l.pos, l.sign});
  }
  ev.push_back({MorseEvent::kDeath, 2});
  ev.push_back({MorseEvent::kDeath, 0});
  return ev;
}

int plat_writhe(const PlatWord& word) {
  const int L = static_cast<int>(word.letters.size());
  if (L == 0) throw std::runtime_error("plat closure is not a knot");
  // Each row holds four vertical strand pieces, identified by their bottom
  // position.  The knot is traced through cups, rows and caps; a letter's
  // writhe weight is the product of the travel directions of its strands.
  std::vector<std::array<int, 2>> dirs(L, {0, 0});
  std::vector<std::array<char, 4>> seen(L, {0, 0, 0, 0});
  int passages = 0;
  int h = 0, p = 0, dir = 1;
  while (true) {
    if (dir == 1) {
      if (h == L) {
        p ^= 1;  // top cap: 0<->1, 2<->3
        dir = -1;
        continue;
      }
      const PlatLetter& l = word.letters[h];
      if (seen[h][p]) throw std::runtime_error("plat trace revisit");
      seen[h][p] = 1;
      ++passages;
      if (p == l.pos) {
        dirs[h][0] = 1;
        p = l.pos + 1;
      } else if (p == l.pos + 1) {
        dirs[h][1] = 1;
        p = l.pos;
      }
      ++h;
    } else {
      if (h == 0) {
        p ^= 1;  // bottom cup
        dir = 1;
        if (p == 0) break;  // back at the start
        continue;
      }
      const int r = h - 1;
      const PlatLetter& l = word.letters[r];
      int bottom = p;
      if (p == l.pos + 1) {
        bottom = l.pos;
        dirs[r][0] = -1;
      } else if (p == l.pos) {
        bottom = l.pos + 1;
        dirs[r][1] = -1;
      }
      if (seen[r][bottom]) throw std::runtime_error("plat trace revisit");
      seen[r][bottom] = 1;
      ++passages;
      p = bottom;
      --h;
    }
  }
  if (passages != 4 * L) throw std::runtime_error("plat closure is not a knot");
  int w = 0;
  for (int i = 0; i < L; ++i) {
    if (dirs[i][0] == 0 || dirs[i][1] == 0)
      throw std::runtime_error("plat trace incomplete");
    w += word.letters[i].sign * dirs[i][0] * dirs[i][1];
  }
  return w;
}

void append_curls(std::vector<MorseEvent>& events, int count, int sign) {
  if (count < 0 || (count > 0 && sign != 1 && sign != -1))
    throw std::invalid_argument("bad curl request");
  if (count == 0) return;
  auto it = std::find_if(events.begin(), events.end(), [](const MorseEvent& e) {
    return e.kind == MorseEvent::kBirth;
  });
  if (it == events.end())
    throw std::invalid_argument("no strand to curl");
  std::vector<MorseEvent> curl = {{MorseEvent::kBirth, 1},
                                  {MorseEvent::kCross, 0, sign},
                                  {MorseEvent::kDeath, 1}};
  for (int k = 0; k < count; ++k)
    it = events.insert(it + 1, curl.begin(), curl.end());
}

namespace {

struct Chain {
  std::vector<Pt> pts;            // strictly ascending y
  std::vector<mpq_class> depths;  // one per chain segment
};

// x-coordinate of a chain at height y (y within the chain's span).
mpq_class chain_x(const Chain& c, const mpq_class& y) {
  size_t lo = 0, hi = c.pts.size() - 1;
  while (lo + 1 < hi) {
    const size_t mid = (lo + hi) / 2;
    if (c.pts[mid].y <= y)
      lo = mid;
    else
      hi = mid;
  }
  const Pt& a = c.pts[lo];
  const Pt& b = c.pts[lo + 1];
  if (y == a.y) return a.x;
  if (y == b.y) return b.x;
  return a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
}

// Chain segment index containing height y in its interior or boundary.
size_t chain_seg(const Chain& c, const mpq_class& y) {
  size_t lo = 0, hi = c.pts.size() - 1;
  while (lo + 1 < hi) {
    const size_t mid = (lo + hi) / 2;
    if (c.pts[mid].y <= y)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

struct SweepEvent {
  mpq_class y, x;
  int kind;  // 0 birth, 1 cross, 2 death
  int a = -1, b = -1;  // chain ids (birth/death)
};

// Sweep of the wire geometry proper.  Crossing-free wires appear here as
// plain birth/death pairs, so the caller must not add them again as free
// loops.
std::vector<MorseEvent> wire_events(const PlanarDiagram& d) {
  std::vector<MorseEvent> out;
  std::vector<Chain> chains;
  std::vector<SweepEvent> evs;
  for (const Wire& w : d.wires()) {
    const size_t m = w.pts.size();
    for (size_t i = 0; i < m; ++i)
      if (w.pts[i].y == w.pts[(i + 1) % m].y)
        throw std::runtime_error("sweep needs strictly monotone segments");
    auto is_min = [&](size_t i) {
      return w.pts[(i + m - 1) % m].y > w.pts[i].y &&
             w.pts[(i + 1) % m].y > w.pts[i].y;
    };
    auto is_max = [&](size_t i) {
      return w.pts[(i + m - 1) % m].y < w.pts[i].y &&
             w.pts[(i + 1) % m].y < w.pts[i].y;
    };
    // Chains grow from each minimum in both directions up to a maximum;
    // chain ids are assigned in that order and recovered at the maxima.
    std::map<size_t, std::pair<int, int>> at_max;  // vertex -> two chain ids
    bool any_min = false;
    for (size_t i = 0; i < m; ++i) {
      if (!is_min(i)) continue;
      any_min = true;
      for (int dir : {1, -1}) {
        Chain c;
        c.pts.push_back(w.pts[i]);
        size_t v = i;
        while (true) {
          const size_t nv = (v + m + dir) % m;
          c.depths.push_back(dir == 1 ? w.depth[v] : w.depth[nv]);
          c.pts.push_back(w.pts[nv]);
          v = nv;
          if (is_max(v)) break;
        }
        const int id = static_cast<int>(chains.size());
        chains.push_back(std::move(c));
        auto [it, fresh] = at_max.try_emplace(v, id, -1);
        if (!fresh) it->second.second = id;
        if (dir == 1) {
          evs.push_back({w.pts[i].y, w.pts[i].x, 0, id, id + 1});
        }
      }
    }
    if (!any_min)
      throw std::runtime_error("wire without a height minimum");
    for (const auto& [v, ids] : at_max) {
      if (ids.second < 0)
        throw std::runtime_error("unpaired height maximum");
      evs.push_back({w.pts[v].y, w.pts[v].x, 2, ids.first, ids.second});
    }
  }
  for (const auto& cr : d.crossings())
    evs.push_back({cr.pos.y, cr.pos.x, 1});

  std::sort(evs.begin(), evs.end(), [](const SweepEvent& a, const SweepEvent& b) {
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  });
  for (size_t i = 0; i + 1 < evs.size(); ++i)
    if (evs[i].y == evs[i + 1].y && evs[i].x == evs[i + 1].x)
      throw std::runtime_error("sweep degeneracy: coincident events");

  std::vector<int> active;
  for (const SweepEvent& e : evs) {
    if (e.kind == 0) {
      // Birth: position by x among active strands, then order the twins.
      int idx = 0;
      for (int c : active) {
        const mpq_class cx = chain_x(chains[c], e.y);
        if (cx == e.x)
          throw std::runtime_error("sweep degeneracy: birth on a strand");
        if (cx < e.x) ++idx;
      }
      int c1 = e.a, c2 = e.b;
      const Pt d1{chains[c1].pts[1].x - e.x, chains[c1].pts[1].y - e.y};
      const Pt d2{chains[c2].pts[1].x - e.x, chains[c2].pts[1].y - e.y};
      const mpq_class cr = cross(d1, d2);
      if (cr == 0)
        throw std::runtime_error("sweep degeneracy: tangent birth");
      if (cr > 0) std::swap(c1, c2);
      out.push_back({MorseEvent::kBirth, idx});
      active.insert(active.begin() + idx, {c1, c2});
    } else if (e.kind == 2) {
      auto pa = std::find(active.begin(), active.end(), e.a);
      auto pb = std::find(active.begin(), active.end(), e.b);
      if (pa == active.end() || pb == active.end())
        throw std::runtime_error("sweep lost a strand");
      int i = static_cast<int>(pa - active.begin());
      int k = static_cast<int>(pb - active.begin());
      if (i > k) std::swap(i, k);
      if (k != i + 1)
        throw std::runtime_error("sweep degeneracy: non-adjacent maximum");
      out.push_back({MorseEvent::kDeath, i});
      active.erase(active.begin() + i, active.begin() + i + 2);
    } else {
      std::vector<int> hit;
      for (size_t i = 0; i < active.size(); ++i)
        if (chain_x(chains[active[i]], e.y) == e.x)
          hit.push_back(static_cast<int>(i));
      if (hit.size() != 2 || hit[1] != hit[0] + 1)
        throw std::runtime_error("sweep degeneracy: crossing mismatch");
      const Chain& cl = chains[active[hit[0]]];
      const Chain& cr_ = chains[active[hit[1]]];
      const size_t sl = chain_seg(cl, e.y);
      const size_t sr = chain_seg(cr_, e.y);
      if (cl.depths[sl] == cr_.depths[sr])
        throw std::runtime_error("sweep degeneracy: equal depths");
      const bool left_over = cl.depths[sl] > cr_.depths[sr];
      const Chain& co = left_over ? cl : cr_;
      const Chain& cu = left_over ? cr_ : cl;
      const size_t so = left_over ? sl : sr;
      const size_t su = left_over ? sr : sl;
      const Pt od{co.pts[so + 1].x - co.pts[so].x, co.pts[so + 1].y - co.pts[so].y};
      const Pt ud{cu.pts[su + 1].x - cu.pts[su].x, cu.pts[su + 1].y - cu.pts[su].y};
      const mpq_class s = cross(od, ud);
      if (s == 0) throw std::runtime_error("sweep degeneracy: parallel crossing");
      out.push_back({MorseEvent::kCross, hit[0], s > 0 ? 1 : -1});
      std::swap(active[hit[0]], active[hit[1]]);
    }
  }
  if (!active.empty()) throw std::runtime_error("sweep left open strands");
  return out;
}

}  // namespace

std::vector<MorseEvent> morse_events(const PlanarDiagram& d) {
  if (d.wires().empty()) {
    if (d.crossing_count() > 0)
      throw std::runtime_error("sweep needs wire geometry");
    std::vector<MorseEvent> out;
    for (int k = 0; k < d.free_loops(); ++k) {
      out.push_back({MorseEvent::kBirth, 0});
      out.push_back({MorseEvent::kDeath, 0});
    }
    return out;
  }
  try {
    return wire_events(d);
  } catch (const std::runtime_error&) {
  }
  // A shear (x, y) -> (x, y + x/k) carries the diagram to an equivalent one
  // (linear, orientation-preserving, identical crossings and depths) while
  // breaking horizontal segments and tied event heights.  Several slopes are
  // tried in case one lands on a fresh coincidence.
  std::exception_ptr last;
  for (const int k : {101, 211, 397, 809}) {
    std::vector<Wire> ws = d.wires();
    for (Wire& w : ws)
      for (Pt& p : w.pts) p.y += p.x / k;
    try {
      return wire_events(PlanarDiagram::from_wires(std::move(ws)));
    } catch (const std::runtime_error&) {
      last = std::current_exception();
    }
  }
  std::rethrow_exception(last);
}

namespace {

using State = std::vector<int>;
using Frontier = std::map<State, IntLaurent>;

void add_weight(Frontier& f, State key, const IntLaurent& w) {
  auto [it, fresh] = f.try_emplace(std::move(key), w);
  if (!fresh) {
    it->second += w;
    if (it->second.is_zero()) f.erase(it);
  }
}

// Closes adjacent positions (i, i+1); returns the number of loop factors.
int cap_state(State& s, int i) {
  int loops = 0;
  if (s[i] == i + 1) {
    ++loops;
  } else {
    const int p = s[i];
    const int q = s[i + 1];
    s[p] = q;
    s[q] = p;
  }
  s.erase(s.begin() + i, s.begin() + i + 2);
  for (int& v : s)
    if (v > i + 1) v -= 2;
  return loops;
}

}  // namespace

IntLaurent sweep_bracket(const std::vector<MorseEvent>& events, int j,
                         const SweepLimits& limits) {
  if (j < 0) throw std::invalid_argument("cable width must be >= 0");
  if (j == 0) return IntLaurent::one();
  const IntLaurent& delta = loop_value();
  const IntLaurent a_pos = IntLaurent::monomial(1, 1);
  const IntLaurent a_neg = IntLaurent::monomial(1, -1);

  Frontier frontier;
  frontier.emplace(State{}, IntLaurent::one());

  auto check_states = [&](const Frontier& f) {
    if (f.size() > limits.max_states)
      throw std::runtime_error("frontier state guard exceeded");
  };

  for (const MorseEvent& e : events) {
    const int C = e.pos * j;
    if (e.kind == MorseEvent::kBirth) {
      const int old_w = frontier.empty() ? 0 : static_cast<int>(frontier.begin()->first.size());
      if (old_w + 2 * j > limits.max_width)
        throw std::runtime_error("frontier width guard exceeded");
      Frontier next;
      for (auto& [key, w] : frontier) {
        State s(key.size() + 2 * j);
        for (size_t q = 0; q < key.size(); ++q) {
          const int nq = (static_cast<int>(q) < C) ? static_cast<int>(q)
                                                   : static_cast<int>(q) + 2 * j;
          const int p = key[q];
          s[nq] = (p < C) ? p : p + 2 * j;
        }
        for (int k = 0; k < j; ++k) {
          s[C + k] = C + 2 * j - 1 - k;
          s[C + 2 * j - 1 - k] = C + k;
        }
        add_weight(next, std::move(s), w);
      }
      frontier = std::move(next);
    } else if (e.kind == MorseEvent::kDeath) {
      Frontier next;
      for (auto& [key, w] : frontier) {
        State s = key;
        int loops = 0;
        for (int k = 0; k < j; ++k) loops += cap_state(s, C + j - 1 - k);
        IntLaurent nw = w;
        for (int k = 0; k < loops; ++k) nw *= delta;
        add_weight(next, std::move(s), nw);
      }
      frontier = std::move(next);
      check_states(frontier);
    } else {
      const IntLaurent& sm = (e.sign > 0) ? a_pos : a_neg;
      const IntLaurent& op = (e.sign > 0) ? a_neg : a_pos;
      for (int r = j - 1; r >= 0; --r) {
        for (int c = 0; c < j; ++c) {
          const int i = C + r + c;
          Frontier next;
          for (auto& [key, w] : frontier) {
            add_weight(next, key, w * sm);  // identity smoothing
            State s = key;
            IntLaurent nw = w * op;
            if (s[i] == i + 1) {
              nw *= delta;
            } else {
              const int p = s[i];
              const int q = s[i + 1];
              s[p] = q;
              s[q] = p;
              s[i] = i + 1;
              s[i + 1] = i;
            }
            add_weight(next, std::move(s), nw);
          }
          frontier = std::move(next);
          check_states(frontier);
        }
      }
    }
  }

  IntLaurent total;
  for (auto& [key, w] : frontier) {
    if (!key.empty()) throw std::runtime_error("sweep ended with open strands");
    total += w;
  }
  return total;
}

}  // namespace skeinlab
