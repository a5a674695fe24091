#include "skeinlab/qtorus.hpp"

#include <random>

#include "doctest.h"

using namespace skeinlab;

namespace {

std::mt19937 rng(20240817);

IntLaurent random_intlaurent(int max_terms, int max_exp, int max_coeff) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> exp(-max_exp, max_exp);
  std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
  std::vector<IntLaurent::Term> ts;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) ts.push_back({exp(rng), coeff(rng)});
  return IntLaurent::from_terms(std::move(ts));
}

BiLaurent random_bilaurent(int max_terms, int max_exp, int max_coeff) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> exp(-max_exp, max_exp);
  std::vector<BiLaurent::Term> ts;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i)
    ts.push_back({exp(rng), random_intlaurent(2, max_exp, max_coeff)});
  return BiLaurent::from_terms(std::move(ts));
}

QTPoly random_qtpoly(int max_lterms, int max_lexp) {
  std::uniform_int_distribution<int> nterms(0, max_lterms);
  std::uniform_int_distribution<int> exp(-max_lexp, max_lexp);
  std::vector<QTPoly::Term> ts;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i)
    ts.push_back({exp(rng), random_bilaurent(2, 2, 3)});
  return QTPoly::from_terms(std::move(ts));
}

SkewLaurent random_skew(int max_lterms, int max_lexp) {
  return SkewLaurent::from_qtpoly(random_qtpoly(max_lterms, max_lexp));
}

// c * t^texp * M^mexp * L^lexp with a single integer coefficient.
SkewLaurent skew_term(long c, int texp, int mexp, int lexp) {
  return SkewLaurent::monomial(
      RatFn::from_poly(
          BiLaurent::monomial(IntLaurent::monomial(c, texp), mexp)),
      lexp);
}

QTPoly qt_term(long c, int texp, int mexp, int lexp) {
  return QTPoly::ml_term(IntLaurent::monomial(c, texp), mexp, lexp);
}

// The recurrence operator of the right-hand trefoil:
// (t^4 M^10 - M^6) L^2 - (t^2 M^10 + t^-18 - t^-10 M^6 - t^-14 M^4) L
//   + (t^-16 - t^-4 M^4).
QTPoly trefoil_operator() {
  return qt_term(1, 4, 10, 2) + qt_term(-1, 0, 6, 2) + qt_term(-1, 2, 10, 1) +
         qt_term(-1, -18, 0, 1) + qt_term(1, -10, 6, 1) +
         qt_term(1, -14, 4, 1) + qt_term(1, -16, 0, 0) + qt_term(-1, -4, 4, 0);
}

}  // namespace

TEST_CASE("skew product follows the commutation rule") {
  SkewLaurent L = skew_term(1, 0, 0, 1);
  SkewLaurent M = skew_term(1, 0, 1, 0);
  CHECK(L * M == skew_term(1, 2, 1, 1));      // LM = t^2 ML
  CHECK(M * L == skew_term(1, 0, 1, 1));      // ML is already normal ordered
  SkewLaurent ml = M * L;
  CHECK(ml * ml == skew_term(1, 2, 2, 2));    // (ML)^2 = t^2 M^2 L^2
  SkewLaurent v = random_skew(3, 2);
  CHECK(SkewLaurent::one() * v == v);
  CHECK(v * SkewLaurent::one() == v);
}

TEST_CASE("skew product is associative on random triples") {
  for (int trial = 0; trial < 12; ++trial) {
    SkewLaurent a = random_skew(2, 2), b = random_skew(2, 2),
                c = random_skew(2, 2);
    CHECK((a * b) * c == a * (b * c));
    QTPoly x = random_qtpoly(2, 2), y = random_qtpoly(2, 2),
           z = random_qtpoly(2, 2);
    CHECK((x * y) * z == x * (y * z));
    CHECK(SkewLaurent::from_qtpoly(x * y) ==
          SkewLaurent::from_qtpoly(x) * SkewLaurent::from_qtpoly(y));
  }
}

TEST_CASE("left division reconstructs and reduces the span") {
  SkewLaurent v = random_skew(3, 2);
  while (v.is_zero()) v = random_skew(3, 2);
  auto [q0, r0] = skew_left_divide(v, v);
  CHECK(q0 == SkewLaurent::one());
  CHECK(r0.is_zero());

  SkewLaurent lsq = skew_term(1, 0, 0, 2) - skew_term(1, 0, 0, 0);
  SkewLaurent lm1 = skew_term(1, 0, 0, 1) - skew_term(1, 0, 0, 0);
  auto [q1, r1] = skew_left_divide(lsq, lm1);
  CHECK(q1 == skew_term(1, 0, 0, 1) + skew_term(1, 0, 0, 0));
  CHECK(r1.is_zero());

  // A left multiple of the trefoil operator divides back exactly.
  SkewLaurent alpha = SkewLaurent::from_qtpoly(trefoil_operator());
  SkewLaurent gamma = skew_term(1, 0, 2, 1) + skew_term(-1, 2, 0, 0);
  auto [q2, r2] = skew_left_divide(gamma * alpha, alpha);
  CHECK(r2.is_zero());
  CHECK(q2 == gamma);

  for (int trial = 0; trial < 10; ++trial) {
    SkewLaurent u = random_skew(3, 2);
    SkewLaurent w = random_skew(3, 2);
    while (w.is_zero()) w = random_skew(3, 2);
    auto [q, r] = skew_left_divide(u, w);
    CHECK(q * w + r == u);
    CHECK((r.is_zero() || r.l_span() < w.l_span()));
  }
}

TEST_CASE("ideal generators via one-sided Euclid") {
  SkewLaurent lm1 = skew_term(1, 0, 0, 1) - skew_term(1, 0, 0, 0);
  SkewLaurent lsq = skew_term(1, 0, 0, 2) - skew_term(1, 0, 0, 0);
  SkewLaurent g = skew_ideal_generator({lm1, lsq});
  CHECK(equal_up_to_unit(normalize_to_Tplus(g), normalize_to_Tplus(lm1)));

  SkewLaurent beta = random_skew(3, 2);
  while (beta.is_zero()) beta = random_skew(3, 2);
  CHECK(skew_ideal_generator({beta}) == beta);

  // L - 1 and L - M together span everything: one Euclid step leaves
  // M - 1, a unit of the coefficient field.
  SkewLaurent lmM = skew_term(1, 0, 0, 1) - skew_term(1, 0, 1, 0);
  SkewLaurent u = skew_ideal_generator({lm1, lmM});
  CHECK(u.l_span() == 0);
  CHECK(normalize_to_Tplus(u) == QTPoly::one());
}

TEST_CASE("normalization into the positive torus") {
  BiLaurent m2m1 = BiLaurent::monomial(IntLaurent::one(), 2) -
                   BiLaurent::one();  // M^2 - 1
  SkewLaurent u = (skew_term(1, 0, 0, 1) - skew_term(1, 0, 0, 0))
                      .mul_ratfn(RatFn(BiLaurent::one(), m2m1));
  QTPoly lm1 = qt_term(1, 0, 0, 1) - qt_term(1, 0, 0, 0);
  CHECK(normalize_to_Tplus(u) == lm1.canonical_unit_form());

  SkewLaurent v = skew_term(1, 0, -3, 1) + skew_term(1, 0, -2, 0);  // M^-3(L+M)
  QTPoly lpm = qt_term(1, 0, 0, 1) + qt_term(1, 0, 1, 0);
  CHECK(equal_up_to_unit(normalize_to_Tplus(v), lpm));

  // A denominator-laden multiple of the trefoil operator normalizes back
  // to the operator, up to unit.
  QTPoly P = trefoil_operator();
  RatFn junk(BiLaurent::monomial(IntLaurent::monomial(3, -5), 1),
             BiLaurent::monomial(IntLaurent::monomial(1, 4), 2) -
                 BiLaurent::monomial(IntLaurent::monomial(2, 0), 0));
  SkewLaurent raw = SkewLaurent::from_qtpoly(P).mul_ratfn(junk);
  CHECK(equal_up_to_unit(normalize_to_Tplus(raw), P));

  // Normalized output has jointly coprime coefficients and minimal
  // nonnegative exponents.
  QTPoly n = normalize_to_Tplus(raw);
  BiLaurent content = n.terms().front().second;
  for (const auto& [e, c] : n.terms()) content = bilaurent_gcd(content, c);
  CHECK(content == BiLaurent::one());
  CHECK(n.min_lexp() == 0);
  int mmin = n.terms().front().second.min_exp();
  for (const auto& [e, c] : n.terms()) mmin = std::min(mmin, c.min_exp());
  CHECK(mmin == 0);
}

TEST_CASE("sigma involution and symmetric elements") {
  QTPoly ml = qt_term(1, 0, 1, 1);
  CHECK(ml.sigma() == qt_term(1, 0, -1, -1));
  CHECK((ml + ml.sigma()).is_symmetric());
  CHECK(!ml.is_symmetric());
  for (int trial = 0; trial < 20; ++trial) {
    QTPoly u = random_qtpoly(3, 2);
    CHECK(u.sigma().sigma() == u);
    CHECK((u + u.sigma()).is_symmetric());
  }
}

TEST_CASE("epsilon reduction at t = -1") {
  CHECK(qt_epsilon(qt_term(1, 2, 1, 0)) == MultiPoly::var(2, 0));
  MultiPoly minus_m = MultiPoly::monomial(2, -1, {1, 0});
  CHECK(qt_epsilon(qt_term(1, 1, 1, 0)) == minus_m);

  MultiPoly M = MultiPoly::var(2, 0), L = MultiPoly::var(2, 1);
  MultiPoly one = MultiPoly::constant(2, 1);
  MultiPoly expect = (M.pow(4) - one) * (L - one) * (L * M.pow(6) + one);
  CHECK(qt_epsilon(trefoil_operator()) == expect);
}

TEST_CASE("epsilon commutes with sigma up to monomial clearing") {
  // Both routes are compared after shifting the minimal exponent of each
  // variable to zero, since clearing itself is only defined up to M^a L^b.
  auto canon = [](const MultiPoly& p) {
    return p.shifted(0, -p.min_exp(0)).shifted(1, -p.min_exp(1));
  };
  for (int trial = 0; trial < 20; ++trial) {
    QTPoly u = random_qtpoly(3, 2);
    MultiPoly e = qt_epsilon(u);
    MultiPoly inv(2);
    for (const auto& [exps, c] : e.terms())
      inv = inv + MultiPoly::monomial(2, c, {-exps[0], -exps[1]});
    CHECK(canon(qt_epsilon(u.sigma())) == canon(inv));
  }
}

TEST_CASE("phi map values and symmetry") {
  QTPoly mm = qt_term(-1, 0, 1, 0) + qt_term(-1, 0, -1, 0);
  CHECK(phi_map(TorusCurve(1, 0)) == mm);
  QTPoly mele = qt_term(1, 1, 1, 1) + qt_term(1, 1, -1, -1);
  CHECK(phi_map(TorusCurve(1, 1)) == mele);
  QTPoly m2 = qt_term(1, 0, 2, 0) + qt_term(1, 0, -2, 0);
  CHECK(phi_map(TorusCurve(2, 0)) == m2);
  CHECK(phi_map(TorusCurve(0, 0)) == QTPoly::one().mul_scalar(2));
  CHECK(phi_map(TorusCurve(-1, -1)) == phi_map(TorusCurve(1, 1)));

  // Composite curves go through the Chebyshev recursion multiplicatively.
  QTPoly t2 = phi_map(TorusCurve(1, 1)) * phi_map(TorusCurve(1, 1)) -
              QTPoly::one().mul_scalar(2);
  CHECK(phi_map(TorusCurve(2, 2)) == t2);

  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) CHECK(phi_map(TorusCurve(a, b)).is_symmetric());
}

TEST_CASE("chebyshev families with negative indices") {
  IntLaurent x = IntLaurent::monomial(1, 1);
  CHECK(chebyshev_T(2) == x * x - IntLaurent::monomial(2, 0));
  CHECK(chebyshev_S(-1).is_zero());
  CHECK(chebyshev_T(-3) == chebyshev_T(3));
  CHECK(chebyshev_T(3) == x.pow(3) - x.mul_scalar(3));
  CHECK(chebyshev_S(2) == x * x - IntLaurent::one());
  CHECK(chebyshev_S(-2) == -IntLaurent::one());
  for (int n = -4; n <= 5; ++n) {
    CHECK(chebyshev_T(n + 1) + chebyshev_T(n - 1) == x * chebyshev_T(n));
    CHECK(chebyshev_S(n + 1) + chebyshev_S(n - 1) == x * chebyshev_S(n));
  }
}

TEST_CASE("m essential comparison of classical polynomials") {
  MultiPoly M = MultiPoly::var(2, 0), L = MultiPoly::var(2, 1);
  MultiPoly one = MultiPoly::constant(2, 1);
  CHECK(m_essential_equal((M * M - one) * (L - one), L - one));
  CHECK(m_essential_equal(qt_epsilon(trefoil_operator()),
                          (L - one) * (L * M.pow(6) + one)));
  CHECK(!m_essential_equal(L - one, L + one));

  // Equivalence relation on a family sharing the L-primitive part.
  MultiPoly h = (L - one) * (L * M.pow(3) + M);
  MultiPoly f = h * (M.pow(2) + one);
  MultiPoly g = h.shifted(0, 2).mul_scalar(-3);
  CHECK(m_essential_equal(f, f));
  CHECK(m_essential_equal(f, g));
  CHECK(m_essential_equal(g, f));
  MultiPoly k = h * (M - one);
  CHECK(m_essential_equal(f, k));
  CHECK(m_essential_equal(g, k));
  CHECK(!m_essential_equal(f, h * L + one));

  CHECK(m_essential_divides(L - one, (M * M - one) * (L - one) * (L + one)));
  CHECK(!m_essential_divides(L + one, L - one));
  MultiPoly prod = (L * M.pow(2) - one) * (L + M);
  CHECK(m_essential_divides(L + M, prod));
  CHECK(m_essential_divides(L * M.pow(2) - one, prod));
  CHECK(!m_essential_divides(L - one, prod));
}

TEST_CASE("serialization round trips in canonical order") {
  QTPoly u = qt_term(1, 0, 2, 0) + qt_term(1, 2, 1, 1) + qt_term(-1, 0, 0, 1);
  CHECK(u.to_string() == "-1*L + 1*M^2 + 1*t^2*M*L");
  auto back = QTPoly::parse(u.to_string());
  REQUIRE(back.has_value());
  CHECK(*back == u);

  QTPoly P = trefoil_operator();
  auto pback = QTPoly::parse(P.to_string());
  REQUIRE(pback.has_value());
  CHECK(*pback == P);

  CHECK(QTPoly::parse("0").has_value());
  CHECK(QTPoly::parse("0")->is_zero());
  CHECK(!QTPoly::parse("").has_value());
  CHECK(!QTPoly::parse("L^").has_value());
  CHECK(!QTPoly::parse("2 + ").has_value());

  for (int trial = 0; trial < 15; ++trial) {
    QTPoly w = random_qtpoly(3, 3);
    auto r = QTPoly::parse(w.to_string());
    REQUIRE(r.has_value());
    CHECK(*r == w);
  }
}
