#pragma once

#include "skeinlab/intlaurent.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace skeinlab {

// Laurent polynomial in an "outer" variable whose coefficients are integer
// Laurent polynomials in an "inner" variable.  The structure is used in two
// roles: outer=M over inner=t (recurrence operator coefficients) and
// outer=L over inner=M (defining polynomials of character varieties and
// epsilon images of operators).  Variable names only matter for printing.
class BiLaurent {
 public:
  using Term = std::pair<int, IntLaurent>;  // (outer exponent, inner poly)

  BiLaurent() = default;
  static BiLaurent zero() { return BiLaurent(); }
  static BiLaurent one() { return monomial(IntLaurent::one(), 0); }
  static BiLaurent monomial(IntLaurent c, int e);
  static BiLaurent from_terms(std::vector<Term> ts);
  // Embeds an inner polynomial as the outer-degree-0 coefficient.
  static BiLaurent from_inner(IntLaurent c) { return monomial(std::move(c), 0); }
  // Lifts a polynomial in one variable to a polynomial in the outer variable.
  static BiLaurent from_outer(const IntLaurent& p);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  int min_exp() const;
  int max_exp() const;
  int span() const { return is_zero() ? 0 : max_exp() - min_exp(); }
  // Smallest inner exponent appearing in any coefficient (requires nonzero).
  int inner_min_exp() const;
  int inner_max_exp() const;
  const std::vector<Term>& terms() const { return terms_; }
  IntLaurent coeff(int e) const;
  const IntLaurent& leading_coeff() const;
  size_t term_count() const;  // total number of inner monomials

  BiLaurent operator-() const;
  BiLaurent operator+(const BiLaurent& o) const;
  BiLaurent operator-(const BiLaurent& o) const;
  BiLaurent operator*(const BiLaurent& o) const;
  bool operator==(const BiLaurent& o) const { return terms_ == o.terms_; }
  bool operator!=(const BiLaurent& o) const { return !(*this == o); }
  BiLaurent& operator+=(const BiLaurent& o) { return *this = *this + o; }
  BiLaurent& operator-=(const BiLaurent& o) { return *this = *this - o; }
  BiLaurent& operator*=(const BiLaurent& o) { return *this = *this * o; }

  BiLaurent mul_inner(const IntLaurent& c) const;
  BiLaurent mul_scalar(const mpz_class& c) const;
  BiLaurent shifted(int e) const;  // multiply by outer^e
  BiLaurent pow(unsigned k) const;

  // Multiplies the coefficient of outer^m by inner^{s*m} for every m.
  // With outer=M, inner=t and s=2k this realizes M -> t^{2k} M, the
  // conjugation of a coefficient by L^k in the quantum torus.
  BiLaurent inner_shift_by_outer(int s) const;
  // Substitutes outer = inner^p, collapsing to an inner polynomial.
  IntLaurent eval_outer_at_inner_power(int p) const;
  // Substitutes inner = -1, giving an integer polynomial in the outer
  // variable (the classical limit t -> -1 when inner is t).
  IntLaurent collapse_inner_pm1() const;
  // Substitutes inner -> inner^k in every coefficient (k = -1: mirror).
  BiLaurent map_inner_power(int k) const;
  // Substitutes outer -> outer^k (k may be negative).
  BiLaurent map_outer_power(int k) const;
  // Swaps the two variables (only valid mathematically; always defined).
  BiLaurent transpose() const;

  // gcd of all coefficients, as content w.r.t. the outer variable.
  // Normalized like IntLaurent::gcd (min_exp 0, positive leading coeff).
  IntLaurent content_inner() const;
  BiLaurent divexact_inner(const IntLaurent& c) const;
  // Primitive part w.r.t. the outer variable: content removed and sign
  // fixed so the leading coefficient has positive leading coefficient.
  BiLaurent primitive_outer() const;

  BiLaurent derivative_outer() const;

  // gcd of all integer coefficients across both variables (>= 0).
  mpz_class int_content() const;

  // Exact division in Z[inner^{+-1}][outer^{+-1}].
  std::optional<BiLaurent> try_divexact_outer(const BiLaurent& d) const;
  // Same, aborting if not exact.
  BiLaurent divexact_outer(const BiLaurent& d) const;
  // True when d divides this over the fraction field of the inner ring,
  // i.e. in Q(inner)[outer].  (Decided through a gcd computation.)
  bool divides_into(const BiLaurent& f) const;

  // gcd as polynomials in the outer variable over Z[inner], primitive PRS.
  // Result is outer-primitive with min outer exp 0.
  static BiLaurent gcd_outer(const BiLaurent& a, const BiLaurent& b);
  // Squarefree part w.r.t. the outer variable, over Q(inner); input and
  // output are outer-primitive with min exps 0.
  BiLaurent squarefree_outer() const;

  // Evaluation with both variables at rational points.
  mpq_class eval_q(const mpq_class& outer, const mpq_class& inner) const;
  // Evaluation mod p with inner variable at c (outer stays symbolic).
  std::vector<std::pair<int, uint64_t>> eval_inner_mod(uint64_t c,
                                                       uint64_t p) const;

  std::string to_string(const std::string& outer = "M",
                        const std::string& inner = "t") const;
  static std::optional<BiLaurent> parse(const std::string& s,
                                        const std::string& outer = "M",
                                        const std::string& inner = "t");

 private:
  std::vector<Term> terms_;
};

}  // namespace skeinlab
