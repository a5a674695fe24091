#include "skeinlab/qtorus.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace skeinlab {

namespace {

// Sorts by L-exponent and drops zero coefficients; shared by both rings.
template <typename Term>
std::vector<Term> normalize_terms(std::vector<Term> ts) {
  std::sort(ts.begin(), ts.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  for (auto& t : ts) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
      if (out.back().second.is_zero()) out.pop_back();
    } else if (!t.second.is_zero()) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

template <typename Term>
std::vector<Term> add_terms(const std::vector<Term>& a,
                            const std::vector<Term>& b) {
  std::vector<Term> ts = a;
  ts.insert(ts.end(), b.begin(), b.end());
  return normalize_terms<Term>(std::move(ts));
}

}  // namespace

QTPoly QTPoly::monomial(BiLaurent c, int lexp) {
  QTPoly p;
  if (!c.is_zero()) p.terms_.push_back({lexp, std::move(c)});
  return p;
}

QTPoly QTPoly::from_terms(std::vector<Term> ts) {
  QTPoly p;
  p.terms_ = normalize_terms<Term>(std::move(ts));
  return p;
}

QTPoly QTPoly::ml_term(IntLaurent c, int a, int b) {
  return monomial(BiLaurent::monomial(std::move(c), a), b);
}

int QTPoly::min_lexp() const {
  assert(!is_zero());
  return terms_.front().first;
}

int QTPoly::max_lexp() const {
  assert(!is_zero());
  return terms_.back().first;
}

BiLaurent QTPoly::coeff(int lexp) const {
  for (const auto& [e, c] : terms_)
    if (e == lexp) return c;
  return BiLaurent::zero();
}

QTPoly QTPoly::operator-() const {
  QTPoly p;
  p.terms_.reserve(terms_.size());
  for (const auto& [e, c] : terms_) p.terms_.push_back({e, -c});
  return p;
}

QTPoly QTPoly::operator+(const QTPoly& o) const {
  QTPoly p;
  p.terms_ = add_terms<Term>(terms_, o.terms_);
  return p;
}

QTPoly QTPoly::operator-(const QTPoly& o) const { return *this + (-o); }

QTPoly QTPoly::operator*(const QTPoly& o) const {
  // (c L^i)(c' L^j) = c * c'(t^{2i} M) L^{i+j}.
  std::vector<Term> ts;
  for (const auto& [i, ci] : terms_)
    for (const auto& [j, cj] : o.terms_)
      ts.push_back({i + j, ci * cj.inner_shift_by_outer(2 * i)});
  QTPoly p;
  p.terms_ = normalize_terms<Term>(std::move(ts));
  return p;
}

QTPoly QTPoly::mul_bilaurent(const BiLaurent& c) const {
  std::vector<Term> ts;
  for (const auto& [e, ce] : terms_) ts.push_back({e, c * ce});
  return from_terms(std::move(ts));
}

QTPoly QTPoly::mul_scalar(const mpz_class& c) const {
  std::vector<Term> ts;
  for (const auto& [e, ce] : terms_) ts.push_back({e, ce.mul_scalar(c)});
  return from_terms(std::move(ts));
}

QTPoly QTPoly::sigma() const {
  std::vector<Term> ts;
  for (const auto& [e, c] : terms_) ts.push_back({-e, c.map_outer_power(-1)});
  return from_terms(std::move(ts));
}

QTPoly QTPoly::canonical_unit_form() const {
  if (is_zero()) return *this;
  int lmin = min_lexp();
  int mmin = terms_.front().second.min_exp();
  int tmin = terms_.front().second.inner_min_exp();
  for (const auto& [e, c] : terms_) {
    mmin = std::min(mmin, c.min_exp());
    tmin = std::min(tmin, c.inner_min_exp());
  }
  IntLaurent tshift = IntLaurent::monomial(1, -tmin);
  std::vector<Term> ts;
  for (const auto& [e, c] : terms_)
    ts.push_back({e - lmin, c.shifted(-mmin).mul_inner(tshift)});
  QTPoly p;
  p.terms_ = normalize_terms<Term>(std::move(ts));
  if (p.terms_.back().second.leading_coeff().leading_coeff() < 0) p = -p;
  return p;
}

bool equal_up_to_unit(const QTPoly& a, const QTPoly& b) {
  return a.canonical_unit_form() == b.canonical_unit_form();
}

std::string QTPoly::to_string() const {
  if (is_zero()) return "0";
  // Flatten to (t, M, L) exponent triples, ascending.
  std::map<std::tuple<int, int, int>, mpz_class> flat;
  for (const auto& [lexp, c] : terms_)
    for (const auto& [mexp, inner] : c.terms())
      for (const auto& [texp, z] : inner.terms())
        flat[{texp, mexp, lexp}] = z;
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, z] : flat) {
    if (!first) os << " + ";
    first = false;
    os << z.get_str();
    auto [texp, mexp, lexp] = key;
    if (texp != 0) {
      os << "*t";
      if (texp != 1) os << "^" << texp;
    }
    if (mexp != 0) {
      os << "*M";
      if (mexp != 1) os << "^" << mexp;
    }
    if (lexp != 0) {
      os << "*L";
      if (lexp != 1) os << "^" << lexp;
    }
  }
  return os.str();
}

std::optional<QTPoly> QTPoly::parse(const std::string& s) {
  // Terms separated by '+'; factors in a term separated by '*'.
  std::map<std::tuple<int, int, int>, mpz_class> flat;
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  };
  skip_ws();
  if (pos >= s.size()) return std::nullopt;
  while (pos < s.size()) {
    mpz_class coeff = 1;
    int texp = 0, mexp = 0, lexp = 0;
    bool any_factor = false;
    while (true) {
      skip_ws();
      if (pos < s.size() &&
          (s[pos] == '-' || s[pos] == '+' ||
           std::isdigit(static_cast<unsigned char>(s[pos])))) {
        size_t start = pos;
        if (s[pos] == '-' || s[pos] == '+') ++pos;
        size_t digits = 0;
        while (pos < s.size() &&
               std::isdigit(static_cast<unsigned char>(s[pos]))) {
          ++pos;
          ++digits;
        }
        if (digits == 0) return std::nullopt;
        coeff *= mpz_class(s.substr(start, pos - start));
      } else if (pos < s.size() &&
                 (s[pos] == 't' || s[pos] == 'M' || s[pos] == 'L')) {
        char v = s[pos++];
        int e = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          size_t start = pos;
          if (pos < s.size() && s[pos] == '-') ++pos;
          while (pos < s.size() &&
                 std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
          if (pos == start || (s[start] == '-' && pos == start + 1))
            return std::nullopt;
          e = std::stoi(s.substr(start, pos - start));
        }
        (v == 't' ? texp : v == 'M' ? mexp : lexp) += e;
      } else {
        return std::nullopt;
      }
      any_factor = true;
      skip_ws();
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!any_factor) return std::nullopt;
    flat[{texp, mexp, lexp}] += coeff;
    skip_ws();
    if (pos >= s.size()) break;
    if (s[pos] != '+') return std::nullopt;
    ++pos;
    skip_ws();
    if (pos >= s.size()) return std::nullopt;  // trailing '+'
  }
  std::map<int, std::vector<BiLaurent::Term>> by_l;
  for (const auto& [key, z] : flat) {
    if (z == 0) continue;
    auto [texp, mexp, lexp] = key;
    by_l[lexp].push_back({mexp, IntLaurent::monomial(z, texp)});
  }
  std::vector<Term> ts;
  for (auto& [lexp, bts] : by_l)
    ts.push_back({lexp, BiLaurent::from_terms(std::move(bts))});
  return from_terms(std::move(ts));
}

SkewLaurent SkewLaurent::monomial(RatFn c, int lexp) {
  SkewLaurent p;
  if (!c.is_zero()) p.terms_.push_back({lexp, std::move(c)});
  return p;
}

SkewLaurent SkewLaurent::from_terms(std::vector<Term> ts) {
  SkewLaurent p;
  p.terms_ = normalize_terms<Term>(std::move(ts));
  return p;
}

SkewLaurent SkewLaurent::from_qtpoly(const QTPoly& p) {
  std::vector<Term> ts;
  for (const auto& [e, c] : p.terms()) ts.push_back({e, RatFn::from_poly(c)});
  return from_terms(std::move(ts));
}

int SkewLaurent::min_lexp() const {
  assert(!is_zero());
  return terms_.front().first;
}

int SkewLaurent::max_lexp() const {
  assert(!is_zero());
  return terms_.back().first;
}

RatFn SkewLaurent::coeff(int lexp) const {
  for (const auto& [e, c] : terms_)
    if (e == lexp) return c;
  return RatFn::zero();
}

SkewLaurent SkewLaurent::operator-() const {
  SkewLaurent p;
  p.terms_.reserve(terms_.size());
  for (const auto& [e, c] : terms_) p.terms_.push_back({e, -c});
  return p;
}

SkewLaurent SkewLaurent::operator+(const SkewLaurent& o) const {
  SkewLaurent p;
  p.terms_ = add_terms<Term>(terms_, o.terms_);
  return p;
}

SkewLaurent SkewLaurent::operator-(const SkewLaurent& o) const {
  return *this + (-o);
}

SkewLaurent SkewLaurent::operator*(const SkewLaurent& o) const {
  std::vector<Term> ts;
  for (const auto& [i, ci] : terms_)
    for (const auto& [j, cj] : o.terms_)
      ts.push_back({i + j, ci * cj.inner_shift_by_outer(2 * i)});
  SkewLaurent p;
  p.terms_ = normalize_terms<Term>(std::move(ts));
  return p;
}

SkewLaurent SkewLaurent::mul_ratfn(const RatFn& c) const {
  std::vector<Term> ts;
  for (const auto& [e, ce] : terms_) ts.push_back({e, c * ce});
  return from_terms(std::move(ts));
}

std::string SkewLaurent::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    if (e != 0) {
      os << "*L";
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

SkewDivision skew_left_divide(const SkewLaurent& u, const SkewLaurent& v) {
  assert(!v.is_zero());
  SkewLaurent q, r = u;
  // Cancelling the top term with c L^k from the left needs
  // c * lead(v)(t^{2k} M) = lead(r); while the span of r stays at or above
  // the span of v the minimal L-exponent of r never drops, so the span
  // shrinks every round and the loop ends.
  while (!r.is_zero() && r.l_span() >= v.l_span()) {
    int k = r.max_lexp() - v.max_lexp();
    RatFn c = r.coeff(r.max_lexp()) /
              v.coeff(v.max_lexp()).inner_shift_by_outer(2 * k);
    SkewLaurent step = SkewLaurent::monomial(c, k);
    q += step;
    r -= step * v;
  }
  return {q, r};
}

SkewLaurent skew_ideal_generator(const std::vector<SkewLaurent>& gens) {
  SkewLaurent g;
  for (const auto& x : gens) {
    if (x.is_zero()) continue;
    if (g.is_zero()) {
      g = x;
      continue;
    }
    SkewLaurent a = g, b = x;
    while (!b.is_zero()) {
      SkewLaurent r = skew_left_divide(a, b).remainder;
      a = b;
      b = r;
    }
    g = a;
  }
  assert(!g.is_zero());
  return g;
}

QTPoly normalize_to_Tplus(const SkewLaurent& u) {
  if (u.is_zero()) return QTPoly::zero();
  // Least common multiple of the denominators.
  BiLaurent lcm = BiLaurent::one();
  for (const auto& [e, c] : u.terms()) {
    const BiLaurent& d = c.den();
    lcm = lcm * d.divexact_outer(bilaurent_gcd(lcm, d));
  }
  RatFn scale = RatFn::from_poly(lcm);
  std::vector<QTPoly::Term> ts;
  for (const auto& [e, c] : u.terms()) {
    RatFn cleared = c * scale;
    assert(cleared.is_poly());
    ts.push_back({e, cleared.num()});
  }
  // Strip the common content so the coefficients are jointly coprime.
  BiLaurent content = ts.front().second;
  if (ts.size() == 1) content = bilaurent_gcd(content, content);
  for (size_t i = 1; i < ts.size(); ++i)
    content = bilaurent_gcd(content, ts[i].second);
  for (auto& [e, c] : ts) c = c.divexact_outer(content);
  return QTPoly::from_terms(std::move(ts)).canonical_unit_form();
}

MultiPoly qt_epsilon(const QTPoly& u) {
  MultiPoly out(2);
  if (u.is_zero()) return out;
  int mmin = 0, lmin = 0;
  for (const auto& [lexp, c] : u.terms()) {
    lmin = std::min(lmin, lexp);
    IntLaurent cl = c.collapse_inner_pm1();
    if (!cl.is_zero()) mmin = std::min(mmin, cl.min_exp());
  }
  for (const auto& [lexp, c] : u.terms()) {
    IntLaurent cl = c.collapse_inner_pm1();
    for (const auto& [mexp, z] : cl.terms())
      out = out + MultiPoly::monomial(2, z, {mexp - mmin, lexp - lmin});
  }
  return out;
}

TorusCurve::TorusCurve(int a_, int b_) : a(a_), b(b_) {
  if (a < 0 || (a == 0 && b < 0)) {
    a = -a;
    b = -b;
  }
}

namespace {

QTPoly cheb_T_at(const QTPoly& x, int d) {
  assert(d >= 0);
  QTPoly two = QTPoly::one().mul_scalar(2);
  if (d == 0) return two;
  QTPoly prev = two, cur = x;
  for (int i = 1; i < d; ++i) {
    QTPoly next = x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

QTPoly phi_map(const TorusCurve& c) {
  if (c.a == 0 && c.b == 0) return QTPoly::one().mul_scalar(2);
  int d = std::gcd(std::abs(c.a), std::abs(c.b));
  int ap = c.a / d, bp = c.b / d;
  long sign = ((ap + bp) % 2 + 2) % 2 == 0 ? 1 : -1;
  IntLaurent z = IntLaurent::monomial(sign, ap * bp);
  QTPoly prim = QTPoly::ml_term(z, ap, bp) + QTPoly::ml_term(z, -ap, -bp);
  return cheb_T_at(prim, d);
}

IntLaurent chebyshev_T(int n) {
  if (n < 0) n = -n;
  IntLaurent prev = IntLaurent::monomial(2, 0);  // T_0
  if (n == 0) return prev;
  IntLaurent x = IntLaurent::monomial(1, 1);
  IntLaurent cur = x;  // T_1
  for (int i = 1; i < n; ++i) {
    IntLaurent next = x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

IntLaurent chebyshev_S(int n) {
  if (n == -1) return IntLaurent::zero();
  if (n < -1) return -chebyshev_S(-n - 2);
  IntLaurent prev = IntLaurent::one();  // S_0
  if (n == 0) return prev;
  IntLaurent x = IntLaurent::monomial(1, 1);
  IntLaurent cur = x;  // S_1
  for (int i = 1; i < n; ++i) {
    IntLaurent next = x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

MultiPoly l_primitive_part(const MultiPoly& f) {
  if (f.is_zero()) return f;
  assert(f.nvars() == 2);
  BiLaurent b = f.to_bilaurent(/*outer_var=*/1, /*inner_var=*/0);
  b = b.divexact_inner(b.content_inner());
  int im = b.inner_min_exp();
  if (im != 0) b = b.mul_inner(IntLaurent::monomial(1, -im));
  b = b.shifted(-b.min_exp());
  if (b.leading_coeff().leading_coeff() < 0) b = -b;
  return MultiPoly::from_bilaurent(b, 2, /*outer_var=*/1, /*inner_var=*/0);
}

bool m_essential_equal(const MultiPoly& f, const MultiPoly& g) {
  if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
  return l_primitive_part(f) == l_primitive_part(g);
}

bool m_essential_divides(const MultiPoly& g, const MultiPoly& f) {
  if (f.is_zero()) return true;
  if (g.is_zero()) return false;
  BiLaurent bg = g.to_bilaurent(1, 0);
  BiLaurent bf = f.to_bilaurent(1, 0);
  return bg.divides_into(bf);
}

}  // namespace skeinlab
