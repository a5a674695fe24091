#pragma once

#include "skeinlab/bilaurent.hpp"

#include <map>
#include <string>
#include <vector>

namespace skeinlab {

// Sparse polynomial in several variables with integer coefficients.
// Exponents may be negative in any variable (Laurent monomials appear
// naturally in matrix entries of the representations we eliminate from);
// the resultant is only ever taken with respect to a variable in which all
// exponents are nonnegative.
class MultiPoly {
 public:
  using Exps = std::vector<int>;

  MultiPoly() : nvars_(0) {}
  explicit MultiPoly(int nvars) : nvars_(nvars) {}
  static MultiPoly constant(int nvars, mpz_class c);
  static MultiPoly monomial(int nvars, mpz_class c, Exps e);
  static MultiPoly var(int nvars, int i, int power = 1);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const std::map<Exps, mpz_class>& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  int degree(int var) const;   // max exponent of var, 0 for the zero poly
  int min_exp(int var) const;  // min exponent of var, 0 for the zero poly
  bool depends_on(int var) const;

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly mul_scalar(const mpz_class& c) const;
  MultiPoly pow(unsigned k) const;
  // Multiplies by var^k (k may be negative); clears denominators and such.
  MultiPoly shifted(int var, int k) const;

  // gcd of all integer coefficients (>= 0; 0 for the zero polynomial).
  mpz_class int_content() const;

  // Exact division in the Laurent polynomial ring.
  std::optional<MultiPoly> try_divexact(const MultiPoly& d) const;
  // Same, aborting if not exact.
  MultiPoly divexact(const MultiPoly& d) const;

  // Full gcd by primitive-part recursion on the main variable; result has
  // min exponent 0 in every variable and lex-positive leading coefficient.
  static MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);
  // gcd of the coefficients of this viewed as a polynomial in var.
  MultiPoly content_in(int var) const;
  // Removes repeated factors involving var; factors free of var (the
  // content) pass through untouched.
  MultiPoly squarefree_part(int var) const;

  // Coefficients as polynomials in the other variables, keyed by the
  // exponent of var (which is zeroed out in the values).
  std::map<int, MultiPoly> coeffs_in(int var) const;
  static MultiPoly from_coeffs_in(int var, int nvars,
                                  const std::map<int, MultiPoly>& cs);

  MultiPoly derivative(int var) const;
  // Substitutes var := value (a polynomial in the same variable set).
  // Requires nonnegative exponents of var.
  MultiPoly substitute(int var, const MultiPoly& value) const;
  mpq_class eval_q(const std::vector<mpq_class>& xs) const;

  // Resultant of f and g with respect to var, computed as the determinant
  // of the Sylvester matrix by fraction-free elimination.  Requires both
  // arguments to have nonnegative exponents of var and positive degree in
  // at least one of them.
  static MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, int var);

  // Conversion to the two-variable view; every other variable must be
  // absent.  Exponent of outer_var becomes the outer exponent.
  BiLaurent to_bilaurent(int outer_var, int inner_var) const;
  static MultiPoly from_bilaurent(const BiLaurent& b, int nvars, int outer_var,
                                  int inner_var);

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  int nvars_;
  std::map<Exps, mpz_class> terms_;  // lex order, no zero coefficients
};

// Fraction-free determinant of a square matrix of polynomials (Bareiss).
MultiPoly multipoly_det(std::vector<std::vector<MultiPoly>> m);

}  // namespace skeinlab
