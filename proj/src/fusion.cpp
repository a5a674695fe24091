#include "skeinlab/fusion.hpp"

#include <mutex>
#include <stdexcept>

#include "skeinlab/bilaurent.hpp"

namespace skeinlab {

namespace {

RatFn rf(IntLaurent p) { return RatFn::from_poly(BiLaurent::from_inner(std::move(p))); }

RatFn rf_ratio(IntLaurent num, IntLaurent den) {
  return RatFn(BiLaurent::from_inner(std::move(num)),
               BiLaurent::from_inner(std::move(den)));
}

// [n]! with [n] the balanced quantum integer in t^2.  Returned by value:
// the cache vector may reallocate while a caller still holds earlier results.
IntLaurent qfact(int n) {
  static std::vector<IntLaurent> cache{IntLaurent::one()};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(cache.size()) <= n)
    cache.push_back(cache.back() * quantum_integer(static_cast<int>(cache.size())));
  return cache[n];
}

bool admissible(int a, int b, int c) {
  return a >= 0 && b >= 0 && c >= 0 && (a + b + c) % 2 == 0 &&
         c >= std::abs(a - b) && c <= a + b;
}

// Converts a fraction known to be a Laurent polynomial back to one.
IntLaurent as_poly(const RatFn& v) {
  if (v.is_zero()) return IntLaurent::zero();
  if (v.num().span() != 0 || v.den().span() != 0 ||
      v.num().min_exp() != v.den().min_exp())
    throw std::logic_error("fusion value has a free outer variable");
  const IntLaurent num = v.num().coeff(v.num().min_exp());
  const IntLaurent den = v.den().coeff(v.den().min_exp());
  return num.divexact(den);
}

}  // namespace

IntLaurent projector_loop(int n) {
  IntLaurent d = quantum_integer(n + 1);
  return (n % 2 == 0) ? d : -d;
}

RatFn theta_net(int a, int b, int c) {
  if (!admissible(a, b, c)) throw std::invalid_argument("inadmissible theta colors");
  const int x = (a + b - c) / 2;
  const int y = (b + c - a) / 2;
  const int z = (c + a - b) / 2;
  IntLaurent num = qfact(x + y + z + 1) * qfact(x) * qfact(y) * qfact(z);
  if ((x + y + z) % 2 != 0) num = -num;
  const IntLaurent den = qfact(y + z) * qfact(z + x) * qfact(x + y);
  return rf_ratio(std::move(num), den);
}

RatFn tet_net(int A, int B, int E, int C, int D, int F) {
  if (!admissible(A, B, E) || !admissible(C, D, E) || !admissible(A, D, F) ||
      !admissible(B, C, F))
    throw std::invalid_argument("inadmissible tet colors");
  const int a1 = (A + B + E) / 2;
  const int a2 = (C + D + E) / 2;
  const int a3 = (A + D + F) / 2;
  const int a4 = (B + C + F) / 2;
  const int b1 = (A + B + C + D) / 2;
  const int b2 = (A + C + E + F) / 2;
  const int b3 = (B + D + E + F) / 2;
  const int ai[4] = {a1, a2, a3, a4};
  const int bj[3] = {b1, b2, b3};
  const int lo = std::max(std::max(a1, a2), std::max(a3, a4));
  const int hi = std::min(b1, std::min(b2, b3));

  // Sum over the common denominator C = prod [hi-ai]! * prod [bj-lo]!; each
  // term then clears to a plain product of quantum integers, so the whole
  // sum stays polynomial and only the final ratio needs reducing.
  IntLaurent sum;
  for (int s = lo; s <= hi; ++s) {
    IntLaurent term = qfact(s + 1);
    if (s % 2 != 0) term = -term;
    for (int i = 0; i < 4; ++i)
      for (int v = s - ai[i] + 1; v <= hi - ai[i]; ++v)
        term *= quantum_integer(v);
    for (int k = 0; k < 3; ++k)
      for (int v = bj[k] - s + 1; v <= bj[k] - lo; ++v)
        term *= quantum_integer(v);
    sum += term;
  }
  // Remaining factor: prod [bj-ai]! over the edge factorials and over C.
  // The factorials share most of their quantum integers, so tally signed
  // multiplicities per [v] and multiply out only the net leftover; the
  // final reduction then works on small polynomials.
  int maxb = std::max(b1, std::max(b2, b3));
  std::vector<int> cnt(static_cast<size_t>(maxb) + 1, 0);
  auto tally = [&cnt](int m, int sgn) {
    for (int v = 2; v <= m; ++v) cnt[static_cast<size_t>(v)] += sgn;
  };
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 4; ++i) tally(bj[k] - ai[i], +1);
  for (int x : {A, B, C, D, E, F}) tally(x, -1);
  for (int i = 0; i < 4; ++i) tally(hi - ai[i], -1);
  for (int k = 0; k < 3; ++k) tally(bj[k] - lo, -1);
  IntLaurent num = std::move(sum);
  IntLaurent den = IntLaurent::one();
  for (int v = 2; v <= maxb; ++v) {
    const int c = cnt[static_cast<size_t>(v)];
    for (int r = 0; r < c; ++r) num *= quantum_integer(v);
    for (int r = 0; r < -c; ++r) den *= quantum_integer(v);
  }
  return rf_ratio(std::move(num), std::move(den));
}

FusionContext::FusionContext(int color) : a_(color) {
  if (a_ < 0) throw std::invalid_argument("projector color must be >= 0");
  const int dim = a_ + 1;
  delta_a_ = projector_loop(a_);
  twist_ = IntLaurent::monomial((a_ % 2 == 0) ? 1 : -1, a_ * (a_ + 2));

  // Channel eigenvalues of a crossing between two fused projector strands:
  // channel color e = 2c, eigenvalue (-1)^{a-c} t^{+-(e(e+2)/2 - a(a+2))}.
  lam_pos_.resize(dim);
  lam_neg_.resize(dim);
  for (int c = 0; c < dim; ++c) {
    const int e = 2 * c;
    const int exp = e * (e + 2) / 2 - a_ * (a_ + 2);
    const int sg = ((a_ - c) % 2 == 0) ? 1 : -1;
    lam_pos_[c] = rf(IntLaurent::monomial(sg, exp));
    lam_neg_[c] = rf(IntLaurent::monomial(sg, -exp));
  }

  // Change of basis between the two planar pair trees.
  f_.assign(dim, std::vector<RatFn>(dim, RatFn::zero()));
  for (int cf = 0; cf < dim; ++cf) {
    const int fcol = 2 * cf;
    const RatFn norm = rf(projector_loop(fcol)) /
                       (theta_net(a_, a_, fcol) * theta_net(a_, a_, fcol));
    for (int ce = 0; ce < dim; ++ce)
      f_[cf][ce] = tet_net(a_, a_, 2 * ce, a_, a_, fcol) * norm;
  }

  // The change of basis must be an involution; its inverse is itself.  The
  // full entrywise product gets expensive at large colors, so past a modest
  // size check F(F(v)) == v on a probe vector with distinct monomial entries
  // instead.
  finv_ = f_;
  if (dim <= 7) {
    for (int i = 0; i < dim; ++i) {
      for (int k = 0; k < dim; ++k) {
        RatFn s = RatFn::zero();
        for (int m = 0; m < dim; ++m) s += f_[i][m] * f_[m][k];
        if (s != (i == k ? RatFn::one() : RatFn::zero()))
          throw std::logic_error("fusion change of basis is not an involution");
      }
    }
  } else {
    std::vector<RatFn> probe(dim);
    for (int i = 0; i < dim; ++i)
      probe[i] = rf(IntLaurent::monomial(1, 2 * i + 1));
    auto apply = [&](const std::vector<RatFn>& v) {
      std::vector<RatFn> w(dim, RatFn::zero());
      for (int i = 0; i < dim; ++i)
        for (int m = 0; m < dim; ++m)
          if (!f_[i][m].is_zero()) w[i] += f_[i][m] * v[m];
      return w;
    };
    if (apply(apply(probe)) != probe)
      throw std::logic_error("fusion change of basis is not an involution");
  }

  // Closure of the one-letter middle word is an unknot with a single curl
  // of the letter's sign, so the framed value must be exactly one twist
  // factor times the projector loop.
  const IntLaurent untwist =
      IntLaurent::monomial((a_ % 2 == 0) ? 1 : -1, -a_ * (a_ + 2));
  for (int sign : {1, -1}) {
    std::vector<RatFn> v(dim, RatFn::zero());
    v[0] = RatFn::one();
    v = mid_apply(v, sign);
    const IntLaurent want = (sign > 0 ? twist_ : untwist) * delta_a_;
    if (as_poly(v[0] * rf(delta_a_ * delta_a_)) != want)
      throw std::logic_error("fusion unknot closure check failed");
  }
}

std::vector<RatFn> FusionContext::mid_apply(const std::vector<RatFn>& v,
                                            int sign) const {
  const int dim = a_ + 1;
  const auto& lam = (sign > 0) ? lam_pos_ : lam_neg_;
  std::vector<RatFn> w(dim, RatFn::zero());
  for (int cf = 0; cf < dim; ++cf)
    for (int ce = 0; ce < dim; ++ce)
      if (!f_[cf][ce].is_zero() && !v[ce].is_zero()) w[cf] += f_[cf][ce] * v[ce];
  for (int cf = 0; cf < dim; ++cf) w[cf] *= lam[cf];
  std::vector<RatFn> out(dim, RatFn::zero());
  for (int ce = 0; ce < dim; ++ce)
    for (int cf = 0; cf < dim; ++cf)
      if (!finv_[ce][cf].is_zero() && !w[cf].is_zero())
        out[ce] += finv_[ce][cf] * w[cf];
  return out;
}

IntLaurent FusionContext::plat_bracket_framed(const PlatWord& word) const {
  const int dim = a_ + 1;
  std::vector<RatFn> v(dim, RatFn::zero());
  v[0] = RatFn::one();
  for (const PlatLetter& l : word.letters) {
    if (l.sign != 1 && l.sign != -1) throw std::invalid_argument("bad letter sign");
    if (l.pos == 0 || l.pos == 2) {
      const auto& lam = (l.sign > 0) ? lam_pos_ : lam_neg_;
      for (int c = 0; c < dim; ++c) v[c] *= lam[c];
    } else if (l.pos == 1) {
      v = mid_apply(v, l.sign);
    } else {
      throw std::invalid_argument("plat letter position out of range");
    }
  }
  return as_poly(v[0] * rf(delta_a_ * delta_a_));
}

}  // namespace skeinlab
