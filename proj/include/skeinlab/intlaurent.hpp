#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace skeinlab {

// Laurent polynomial in one variable with arbitrary-precision integer
// coefficients.  Terms are kept sorted by ascending exponent with no zero
// coefficients, so equality is plain vector equality.
class IntLaurent {
 public:
  using Term = std::pair<int, mpz_class>;  // (exponent, coefficient)

  IntLaurent() = default;
  static IntLaurent zero() { return IntLaurent(); }
  static IntLaurent one() { return monomial(1, 0); }
  static IntLaurent monomial(mpz_class c, int e);
  // Canonicalizes an arbitrary term list (sorts, merges, drops zeros).
  static IntLaurent from_terms(std::vector<Term> ts);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }
  // True when every exponent is divisible by k.
  bool exponents_divisible_by(int k) const;

  int min_exp() const;  // requires nonzero
  int max_exp() const;  // requires nonzero
  int span() const { return is_zero() ? 0 : max_exp() - min_exp(); }
  const std::vector<Term>& terms() const { return terms_; }
  mpz_class coeff(int e) const;
  mpz_class leading_coeff() const;   // coefficient at max_exp
  mpz_class trailing_coeff() const;  // coefficient at min_exp

  IntLaurent operator-() const;
  IntLaurent operator+(const IntLaurent& o) const;
  IntLaurent operator-(const IntLaurent& o) const;
  IntLaurent operator*(const IntLaurent& o) const;
  bool operator==(const IntLaurent& o) const { return terms_ == o.terms_; }
  bool operator!=(const IntLaurent& o) const { return !(*this == o); }

  IntLaurent& operator+=(const IntLaurent& o) { return *this = *this + o; }
  IntLaurent& operator-=(const IntLaurent& o) { return *this = *this - o; }
  IntLaurent& operator*=(const IntLaurent& o) { return *this = *this * o; }

  IntLaurent mul_scalar(const mpz_class& c) const;
  IntLaurent shifted(int e) const;  // multiply by t^e
  IntLaurent pow(unsigned k) const;
  // Substitutes t -> t^k (k may be negative, e.g. mirror image t -> 1/t).
  IntLaurent subst_power(int k) const;

  // Exact division; nullopt if the division leaves a remainder.
  std::optional<IntLaurent> try_divexact(const IntLaurent& d) const;
  // Exact division; aborts if the division leaves a remainder.
  IntLaurent divexact(const IntLaurent& d) const;
  bool divisible_by(const IntLaurent& d) const;

  // gcd of integer coefficients, always >= 0 (0 for the zero polynomial).
  mpz_class content() const;
  IntLaurent primitive_part() const;  // divides by content, leading coeff > 0

  // Polynomial gcd over the integers (primitive PRS).  Result is primitive
  // with positive leading coefficient times gcd of contents, min_exp 0.
  static IntLaurent gcd(const IntLaurent& a, const IntLaurent& b);

  // Value at t = num/den as an exact rational (den > 0, gcd(num,den)=1).
  mpq_class eval_q(const mpq_class& t) const;
  // Value at t = c modulo prime p; negative exponents use the inverse of c.
  uint64_t eval_mod(uint64_t c, uint64_t p) const;
  // Substitute t = -1 (sign-alternating coefficient sum).
  mpz_class eval_pm1() const;

  std::string to_string(const std::string& var = "t") const;
  static std::optional<IntLaurent> parse(const std::string& s,
                                         const std::string& var = "t");

 private:
  std::vector<Term> terms_;
};

// Quantum integer [n] = (t^{2n} - t^{-2n}) / (t^2 - t^{-2}).
IntLaurent quantum_integer(int n);

}  // namespace skeinlab
