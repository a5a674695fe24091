#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace skeinlab {

// Modular arithmetic helpers on 64-bit words (moduli below 2^62).
uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p);
uint64_t powmod(uint64_t a, uint64_t e, uint64_t p);
uint64_t invmod(uint64_t a, uint64_t p);

// Deterministic sequence of distinct primes just below 2^62.
std::vector<uint64_t> primes62(size_t count);

// Reduced row echelon form of a matrix over F_p in place, with the pivot in
// each step chosen as the first row with a nonzero entry (deterministic, so
// pivot patterns are comparable across primes).  Returns pivot columns.
std::vector<size_t> rref_mod(std::vector<std::vector<uint64_t>>& a, uint64_t p);

// Right nullspace basis over F_p (free columns in increasing order, each
// basis vector has a 1 in its free column).
struct ModNullspace {
  std::vector<size_t> pivot_cols;
  std::vector<std::vector<uint64_t>> basis;
};
ModNullspace nullspace_mod(std::vector<std::vector<uint64_t>> a, uint64_t p);

// Incremental Chinese remaindering: value congruent to r_i mod m_i.
class CrtAccum {
 public:
  void add(const mpz_class& r, const mpz_class& m);
  void add_u64(uint64_t r, uint64_t m) { add(mpz_class_from(r), mpz_class_from(m)); }
  const mpz_class& value() const { return value_; }
  const mpz_class& modulus() const { return modulus_; }
  bool empty() const { return modulus_ == 1; }

 private:
  static mpz_class mpz_class_from(uint64_t v);
  mpz_class value_ = 0, modulus_ = 1;
};

// Rational reconstruction: p/q with r*q = p (mod m), |p|, |q| <= sqrt(m/2).
std::optional<mpq_class> rat_reconstruct(const mpz_class& r,
                                         const mpz_class& m);

// Exact nullspace over the rationals (same pivot policy as rref_mod).
std::vector<size_t> rref_mpq(std::vector<std::vector<mpq_class>>& a);
std::vector<std::vector<mpq_class>> nullspace_mpq(
    std::vector<std::vector<mpq_class>> a);

// Rational function fitting: finds P/Q with deg P <= dnum, deg Q <= dden,
// Q(x_i) != 0 and P(x_i)/Q(x_i) = y_i for all sample points, or nullopt.
// Coefficient vectors run from degree 0 upward; Q is normalized so its
// highest nonzero coefficient is 1.
struct RatInterp {
  std::vector<mpq_class> num, den;
};
std::optional<RatInterp> rational_interpolate(
    const std::vector<std::pair<mpq_class, mpq_class>>& pts, int dnum,
    int dden);

}  // namespace skeinlab
