#pragma once

#include "skeinlab/linalg.hpp"
#include "skeinlab/multipoly.hpp"
#include "skeinlab/ratfn.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace skeinlab {

// Element of the quantum torus T: a Laurent polynomial in L whose
// coefficients live in Z[t^{+-1}][M^{+-1}], written in the normal order
// "coefficient(t, M) times L^b".  Multiplication uses LM = t^2 ML, i.e.
// moving L^k past a coefficient replaces M by t^{2k} M.
class QTPoly {
 public:
  using Term = std::pair<int, BiLaurent>;  // (L-exponent, coefficient)

  QTPoly() = default;
  static QTPoly zero() { return QTPoly(); }
  static QTPoly one() { return monomial(BiLaurent::one(), 0); }
  static QTPoly monomial(BiLaurent c, int lexp);
  static QTPoly from_terms(std::vector<Term> ts);
  // c * M^a L^b as a single normal-ordered term.
  static QTPoly ml_term(IntLaurent c, int a, int b);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  int min_lexp() const;
  int max_lexp() const;
  int l_span() const { return is_zero() ? 0 : max_lexp() - min_lexp(); }
  BiLaurent coeff(int lexp) const;

  QTPoly operator-() const;
  QTPoly operator+(const QTPoly& o) const;
  QTPoly operator-(const QTPoly& o) const;
  QTPoly operator*(const QTPoly& o) const;  // skew product
  bool operator==(const QTPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const QTPoly& o) const { return !(*this == o); }
  QTPoly& operator+=(const QTPoly& o) { return *this = *this + o; }
  QTPoly& operator-=(const QTPoly& o) { return *this = *this - o; }
  QTPoly& operator*=(const QTPoly& o) { return *this = *this * o; }

  QTPoly mul_bilaurent(const BiLaurent& c) const;  // left multiply by c(t,M)
  QTPoly mul_scalar(const mpz_class& c) const;

  // The involution M^a L^b -> M^{-a} L^{-b} (t fixed).
  QTPoly sigma() const;
  bool is_symmetric() const { return sigma() == *this; }

  // Canonical unit scaling: minimal L-, M- and t-exponents all zero and the
  // lexicographically last term has positive coefficient.  The allowed unit
  // group is exactly {+- t^a M^b} together with L-shifts.
  QTPoly canonical_unit_form() const;

  std::string to_string() const;  // terms ascending by (t, M, L) exponents
  static std::optional<QTPoly> parse(const std::string& s);

 private:
  std::vector<Term> terms_;
};

// True when a = u * b for a unit u = +- t^x M^y L^z.
bool equal_up_to_unit(const QTPoly& a, const QTPoly& b);

// Element of the localized ring: Laurent polynomial in L with coefficients
// in the fraction field Q(t)(M).
class SkewLaurent {
 public:
  using Term = std::pair<int, RatFn>;

  SkewLaurent() = default;
  static SkewLaurent zero() { return SkewLaurent(); }
  static SkewLaurent one() { return monomial(RatFn::one(), 0); }
  static SkewLaurent monomial(RatFn c, int lexp);
  static SkewLaurent from_terms(std::vector<Term> ts);
  static SkewLaurent from_qtpoly(const QTPoly& p);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  int min_lexp() const;
  int max_lexp() const;
  int l_span() const { return is_zero() ? 0 : max_lexp() - min_lexp(); }
  RatFn coeff(int lexp) const;

  SkewLaurent operator-() const;
  SkewLaurent operator+(const SkewLaurent& o) const;
  SkewLaurent operator-(const SkewLaurent& o) const;
  SkewLaurent operator*(const SkewLaurent& o) const;  // skew product
  bool operator==(const SkewLaurent& o) const { return terms_ == o.terms_; }
  bool operator!=(const SkewLaurent& o) const { return !(*this == o); }
  SkewLaurent& operator+=(const SkewLaurent& o) { return *this = *this + o; }
  SkewLaurent& operator-=(const SkewLaurent& o) { return *this = *this - o; }
  SkewLaurent& operator*=(const SkewLaurent& o) { return *this = *this * o; }

  SkewLaurent mul_ratfn(const RatFn& c) const;  // left multiply

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

// u = q * v + r with the L-span of r strictly below the L-span of v (or
// r = 0); the quotient acts from the left.
struct SkewDivision {
  SkewLaurent quotient, remainder;
};
SkewDivision skew_left_divide(const SkewLaurent& u, const SkewLaurent& v);

// Generator of the left ideal spanned by the inputs (iterated one-sided
// Euclid on L-spans); at least one input must be nonzero.
SkewLaurent skew_ideal_generator(const std::vector<SkewLaurent>& gens);

// Clears denominators and common polynomial content, shifts all exponents
// to be nonnegative and minimal, and applies the canonical sign.
QTPoly normalize_to_Tplus(const SkewLaurent& u);

// Substitute t = -1.  Result lives in Z[M, L] with variables (M, L) in
// slots (0, 1); negative exponents are cleared by a monomial shift.
MultiPoly qt_epsilon(const QTPoly& u);

// A simple closed curve on the torus through slope (a, b); (a, b) and
// (-a, -b) name the same curve.
struct TorusCurve {
  int a = 0, b = 0;
  TorusCurve() = default;
  TorusCurve(int a_, int b_);
  bool operator==(const TorusCurve& o) const { return a == o.a && b == o.b; }
};

// Image of the curve in the quantum torus:
// (-1)^{a+b} t^{ab} (M^a L^b + M^{-a} L^{-b}) for primitive (a, b), the
// degree-d Chebyshev composite for (a, b) = d (a', b'), and 2 for (0, 0).
QTPoly phi_map(const TorusCurve& c);

// Chebyshev families: T_0 = 2, T_1 = x, T_{n+1} = x T_n - T_{n-1} with
// T_{-n} = T_n; S_0 = 1, S_1 = x with S_{-n} = -S_{n-2}.
IntLaurent chebyshev_T(int n);
IntLaurent chebyshev_S(int n);

// L-primitive part of an (M, L) polynomial: divides by the Z[M]-content
// taken across L-coefficients, then shifts exponents to minimal >= 0 and
// fixes the sign.
MultiPoly l_primitive_part(const MultiPoly& f);

// True iff f = u * g with u a rational function of M alone (both nonzero).
bool m_essential_equal(const MultiPoly& f, const MultiPoly& g);

// True iff g divides f in Q(M)[L^{+-1}].
bool m_essential_divides(const MultiPoly& g, const MultiPoly& f);

}  // namespace skeinlab
