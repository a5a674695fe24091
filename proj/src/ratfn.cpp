#include "skeinlab/ratfn.hpp"

#include "skeinlab/modsolve.hpp"

#include <cassert>

namespace skeinlab {

namespace {

// Degree of gcd over F_p of the images under inner := c.  Returns -1 when
// the evaluation is unusable (leading coefficients of both inputs vanish).
int image_gcd_degree(const BiLaurent& a, const BiLaurent& b, uint64_t c,
                     uint64_t p) {
  auto dense = [&](const BiLaurent& f) {
    const int lo = f.min_exp();
    std::vector<uint64_t> v(static_cast<size_t>(f.max_exp() - lo) + 1, 0);
    for (const auto& [e, co] : f.terms()) {
      v[static_cast<size_t>(e - lo)] = co.eval_mod(c, p);
    }
    while (v.size() > 1 && v.back() == 0) v.pop_back();
    return v;
  };
  auto va = dense(a), vb = dense(b);
  // The degree argument needs the true leading coefficient of at least one
  // input to survive the evaluation.
  bool lc_ok = a.leading_coeff().eval_mod(c, p) != 0 ||
               b.leading_coeff().eval_mod(c, p) != 0;
  if (!lc_ok) return -1;
  auto deg = [](const std::vector<uint64_t>& v) {
    return static_cast<int>(v.size()) - 1;
  };
  auto strip = [](std::vector<uint64_t>& v) {
    while (v.size() > 1 && v.back() == 0) v.pop_back();
    if (v.size() == 1 && v[0] == 0) v.clear();
  };
  strip(va);
  strip(vb);
  while (!vb.empty()) {
    // va mod vb over F_p.
    uint64_t lb = invmod(vb.back(), p);
    while (!va.empty() && va.size() >= vb.size()) {
      uint64_t f = mulmod(va.back(), lb, p);
      size_t off = va.size() - vb.size();
      for (size_t i = 0; i < vb.size(); ++i) {
        uint64_t sub = mulmod(f, vb[i], p);
        va[off + i] = (va[off + i] + p - sub) % p;
      }
      strip(va);
      if (!va.empty() && va.size() == 1 && va[0] == 0) va.clear();
    }
    std::swap(va, vb);
  }
  return va.empty() ? -2 : deg(va);
}

// True only when the two polynomials are provably coprime as polynomials in
// the outer variable over the fraction field of the inner ring.
bool provably_outer_coprime(const BiLaurent& a, const BiLaurent& b) {
  if (a.span() == 0 || b.span() == 0) return true;
  constexpr uint64_t P = (uint64_t(1) << 61) - 1;  // Mersenne prime
  for (uint64_t c : {3ull, 5ull, 17ull, 257ull}) {
    int d = image_gcd_degree(a, b, c, P);
    if (d == 0) return true;
    if (d > 0) return false;  // likely a real common factor; let PRS decide
  }
  return false;
}

}  // namespace

BiLaurent bilaurent_gcd(const BiLaurent& a, const BiLaurent& b) {
  if (a.is_zero() && b.is_zero()) return BiLaurent();
  if (a.is_zero()) return b.shifted(-b.min_exp()).primitive_outer().mul_inner(b.content_inner());
  if (b.is_zero()) return a.shifted(-a.min_exp()).primitive_outer().mul_inner(a.content_inner());
  IntLaurent cg = IntLaurent::gcd(a.content_inner(), b.content_inner());
  if (provably_outer_coprime(a, b)) return BiLaurent::from_inner(cg);
  BiLaurent g = BiLaurent::gcd_outer(a, b);
  return g.mul_inner(cg);
}

RatFn::RatFn(BiLaurent num, BiLaurent den)
    : num_(std::move(num)), den_(std::move(den)) {
  assert(!den_.is_zero() && "RatFn: zero denominator");
  reduce();
}

RatFn::RatFn(BiLaurent num, BiLaurent den, AlreadyReduced)
    : num_(std::move(num)), den_(std::move(den)) {
  assert(!den_.is_zero());
  if (num_.is_zero()) {
    den_ = BiLaurent::one();
    return;
  }
  normalize_units();
}

void RatFn::normalize_units() {
  // The denominator gets min exponents 0 in both variables and a positive
  // leading coefficient; the offsets transfer to the numerator.
  int om = den_.min_exp();
  int im = den_.inner_min_exp();
  den_ = den_.shifted(-om);
  num_ = num_.shifted(-om);
  if (im != 0) {
    den_ = den_.mul_inner(IntLaurent::monomial(1, -im));
    num_ = num_.mul_inner(IntLaurent::monomial(1, -im));
  }
  if (den_.leading_coeff().leading_coeff() < 0) {
    den_ = -den_;
    num_ = -num_;
  }
}

void RatFn::reduce() {
  if (num_.is_zero()) {
    den_ = BiLaurent::one();
    return;
  }
  BiLaurent g = bilaurent_gcd(num_, den_);
  if (!g.is_one()) {
    num_ = num_.divexact_outer(g);
    den_ = den_.divexact_outer(g);
  }
  normalize_units();
}

RatFn RatFn::operator-() const {
  RatFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFn RatFn::operator+(const RatFn& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return RatFn(num_ + o.num_, den_);
  // With coprime reduced denominators the sum is already reduced: a common
  // factor of n1 d2 + n2 d1 and d1 would divide n1 d2, hence be a unit.
  BiLaurent g0 = bilaurent_gcd(den_, o.den_);
  if (g0.is_one()) {
    return RatFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_,
                 AlreadyReduced{});
  }
  BiLaurent d1 = den_.divexact_outer(g0);
  BiLaurent d2 = o.den_.divexact_outer(g0);
  return RatFn(num_ * d2 + o.num_ * d1, d1 * o.den_);
}

RatFn RatFn::operator-(const RatFn& o) const { return *this + (-o); }

RatFn RatFn::operator*(const RatFn& o) const {
  if (is_zero() || o.is_zero()) return RatFn();
  // Cross-cancel first; the leftover product is reduced by construction.
  BiLaurent g1 = bilaurent_gcd(num_, o.den_);
  BiLaurent g2 = bilaurent_gcd(o.num_, den_);
  BiLaurent n1 = g1.is_one() ? num_ : num_.divexact_outer(g1);
  BiLaurent d2 = g1.is_one() ? o.den_ : o.den_.divexact_outer(g1);
  BiLaurent n2 = g2.is_one() ? o.num_ : o.num_.divexact_outer(g2);
  BiLaurent d1 = g2.is_one() ? den_ : den_.divexact_outer(g2);
  return RatFn(n1 * n2, d1 * d2, AlreadyReduced{});
}

RatFn RatFn::operator/(const RatFn& o) const {
  assert(!o.is_zero() && "RatFn: division by zero");
  return *this * o.inverse();
}

RatFn RatFn::inverse() const {
  assert(!is_zero());
  return RatFn(den_, num_, AlreadyReduced{});
}

RatFn RatFn::inner_shift_by_outer(int s) const {
  return RatFn(num_.inner_shift_by_outer(s), den_.inner_shift_by_outer(s));
}

std::string RatFn::to_string(const std::string& outer,
                             const std::string& inner) const {
  if (is_poly()) return num_.to_string(outer, inner);
  return "(" + num_.to_string(outer, inner) + ") / (" +
         den_.to_string(outer, inner) + ")";
}

}  // namespace skeinlab
