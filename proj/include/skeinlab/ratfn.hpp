#pragma once

#include "skeinlab/bilaurent.hpp"

#include <string>

namespace skeinlab {

// Rational function num/den where both parts live in Z[t^{+-1}][M^{+-1}]
// (or any other inner/outer variable pair).  Always kept reduced: the parts
// are coprime, den has min exponents 0 in both variables, positive leading
// coefficient, and the integer contents of num and den are coprime.
class RatFn {
 public:
  RatFn() : num_(), den_(BiLaurent::one()) {}
  RatFn(BiLaurent num, BiLaurent den);
  static RatFn zero() { return RatFn(); }
  static RatFn one() { return RatFn(BiLaurent::one(), BiLaurent::one()); }
  static RatFn from_poly(BiLaurent p) {
    return RatFn(std::move(p), BiLaurent::one());
  }
  static RatFn from_int(long v) {
    return from_poly(BiLaurent::monomial(IntLaurent::monomial(v, 0), 0));
  }

  const BiLaurent& num() const { return num_; }
  const BiLaurent& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.is_one(); }

  RatFn operator-() const;
  RatFn operator+(const RatFn& o) const;
  RatFn operator-(const RatFn& o) const;
  RatFn operator*(const RatFn& o) const;
  RatFn operator/(const RatFn& o) const;
  bool operator==(const RatFn& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RatFn& o) const { return !(*this == o); }
  RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
  RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
  RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
  RatFn& operator/=(const RatFn& o) { return *this = *this / o; }

  RatFn inverse() const;
  // Applies BiLaurent::inner_shift_by_outer to both parts (conjugation of a
  // quantum torus coefficient by a power of L).
  RatFn inner_shift_by_outer(int s) const;

  std::string to_string(const std::string& outer = "M",
                        const std::string& inner = "t") const;

 private:
  struct AlreadyReduced {};
  RatFn(BiLaurent num, BiLaurent den, AlreadyReduced);
  void reduce();
  void normalize_units();
  BiLaurent num_, den_;
};

// Full two-variable gcd in Z[inner^{+-1}][outer^{+-1}] (outer gcd times gcd
// of inner contents), normalized with min exponents 0 and positive leading
// coefficients.
BiLaurent bilaurent_gcd(const BiLaurent& a, const BiLaurent& b);

}  // namespace skeinlab
