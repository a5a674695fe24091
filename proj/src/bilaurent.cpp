#include "skeinlab/bilaurent.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <map>
#include <sstream>

namespace skeinlab {

BiLaurent BiLaurent::monomial(IntLaurent c, int e) {
  BiLaurent r;
  if (!c.is_zero()) r.terms_.emplace_back(e, std::move(c));
  return r;
}

BiLaurent BiLaurent::from_terms(std::vector<Term> ts) {
  std::sort(ts.begin(), ts.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  BiLaurent r;
  for (auto& [e, c] : ts) {
    if (!r.terms_.empty() && r.terms_.back().first == e) {
      r.terms_.back().second += c;
      if (r.terms_.back().second.is_zero()) r.terms_.pop_back();
    } else if (!c.is_zero()) {
      r.terms_.emplace_back(e, std::move(c));
    }
  }
  return r;
}

BiLaurent BiLaurent::from_outer(const IntLaurent& p) {
  BiLaurent r;
  for (const auto& [e, c] : p.terms()) {
    r.terms_.emplace_back(e, IntLaurent::monomial(c, 0));
  }
  return r;
}

bool BiLaurent::is_one() const {
  return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second.is_one();
}

int BiLaurent::min_exp() const {
  assert(!terms_.empty());
  return terms_.front().first;
}

int BiLaurent::max_exp() const {
  assert(!terms_.empty());
  return terms_.back().first;
}

int BiLaurent::inner_min_exp() const {
  assert(!terms_.empty());
  int m = terms_.front().second.min_exp();
  for (const auto& [e, c] : terms_) m = std::min(m, c.min_exp());
  return m;
}

int BiLaurent::inner_max_exp() const {
  assert(!terms_.empty());
  int m = terms_.front().second.max_exp();
  for (const auto& [e, c] : terms_) m = std::max(m, c.max_exp());
  return m;
}

IntLaurent BiLaurent::coeff(int e) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), e,
      [](const Term& t, int x) { return t.first < x; });
  if (it != terms_.end() && it->first == e) return it->second;
  return IntLaurent();
}

const IntLaurent& BiLaurent::leading_coeff() const {
  assert(!terms_.empty());
  return terms_.back().second;
}

size_t BiLaurent::term_count() const {
  size_t n = 0;
  for (const auto& [e, c] : terms_) n += c.terms().size();
  return n;
}

BiLaurent BiLaurent::operator-() const {
  BiLaurent r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

BiLaurent BiLaurent::operator+(const BiLaurent& o) const {
  BiLaurent r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() && b != o.terms_.end()) {
    if (a->first < b->first) {
      r.terms_.push_back(*a++);
    } else if (b->first < a->first) {
      r.terms_.push_back(*b++);
    } else {
      IntLaurent s = a->second + b->second;
      if (!s.is_zero()) r.terms_.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  r.terms_.insert(r.terms_.end(), a, terms_.end());
  r.terms_.insert(r.terms_.end(), b, o.terms_.end());
  return r;
}

BiLaurent BiLaurent::operator-(const BiLaurent& o) const { return *this + (-o); }

BiLaurent BiLaurent::operator*(const BiLaurent& o) const {
  if (is_zero() || o.is_zero()) return BiLaurent();
  std::map<int, IntLaurent> acc;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      acc[ea + eb] += ca * cb;
    }
  }
  BiLaurent r;
  for (auto& [e, c] : acc) {
    if (!c.is_zero()) r.terms_.emplace_back(e, std::move(c));
  }
  return r;
}

BiLaurent BiLaurent::mul_inner(const IntLaurent& c) const {
  if (c.is_zero()) return BiLaurent();
  BiLaurent r = *this;
  for (auto& [e, co] : r.terms_) co *= c;
  return r;
}

BiLaurent BiLaurent::mul_scalar(const mpz_class& c) const {
  if (c == 0) return BiLaurent();
  BiLaurent r = *this;
  for (auto& [e, co] : r.terms_) co = co.mul_scalar(c);
  return r;
}

BiLaurent BiLaurent::shifted(int e) const {
  BiLaurent r = *this;
  for (auto& [ex, c] : r.terms_) ex += e;
  return r;
}

BiLaurent BiLaurent::pow(unsigned k) const {
  BiLaurent r = one();
  BiLaurent base = *this;
  while (k) {
    if (k & 1) r *= base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

BiLaurent BiLaurent::inner_shift_by_outer(int s) const {
  BiLaurent r = *this;
  for (auto& [e, c] : r.terms_) c = c.shifted(s * e);
  return r;
}

IntLaurent BiLaurent::eval_outer_at_inner_power(int p) const {
  IntLaurent acc;
  for (const auto& [e, c] : terms_) acc += c.shifted(p * e);
  return acc;
}

IntLaurent BiLaurent::collapse_inner_pm1() const {
  std::vector<IntLaurent::Term> ts;
  for (const auto& [e, c] : terms_) ts.emplace_back(e, c.eval_pm1());
  return IntLaurent::from_terms(std::move(ts));
}

BiLaurent BiLaurent::map_inner_power(int k) const {
  BiLaurent r = *this;
  for (auto& [e, c] : r.terms_) c = c.subst_power(k);
  return r;
}

BiLaurent BiLaurent::map_outer_power(int k) const {
  assert(k != 0);
  BiLaurent r;
  r.terms_ = terms_;
  for (auto& [e, c] : r.terms_) e *= k;
  if (k < 0) std::reverse(r.terms_.begin(), r.terms_.end());
  return r;
}

BiLaurent BiLaurent::transpose() const {
  std::vector<Term> out;
  std::map<int, std::vector<IntLaurent::Term>> rows;
  for (const auto& [e, c] : terms_) {
    for (const auto& [ie, co] : c.terms()) {
      rows[ie].emplace_back(e, co);
    }
  }
  BiLaurent r;
  for (auto& [ie, ts] : rows) {
    r.terms_.emplace_back(ie, IntLaurent::from_terms(std::move(ts)));
  }
  return r;
}

IntLaurent BiLaurent::content_inner() const {
  IntLaurent g;
  for (const auto& [e, c] : terms_) {
    g = IntLaurent::gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

BiLaurent BiLaurent::divexact_inner(const IntLaurent& c) const {
  BiLaurent r;
  for (const auto& [e, co] : terms_) {
    r.terms_.emplace_back(e, co.divexact(c));
  }
  return r;
}

BiLaurent BiLaurent::primitive_outer() const {
  if (is_zero()) return BiLaurent();
  IntLaurent g = content_inner();
  BiLaurent r = divexact_inner(g);
  if (r.leading_coeff().leading_coeff() < 0) r = -r;
  return r;
}

BiLaurent BiLaurent::derivative_outer() const {
  BiLaurent r;
  for (const auto& [e, c] : terms_) {
    if (e != 0) r.terms_.emplace_back(e - 1, c.mul_scalar(e));
  }
  // Terms stay sorted; e=0 dropped, others shift uniformly by -1.
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  return r;
}

mpz_class BiLaurent::int_content() const {
  mpz_class g = 0;
  for (const auto& [e, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.content().get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

std::optional<BiLaurent> BiLaurent::try_divexact_outer(
    const BiLaurent& d) const {
  assert(!d.is_zero());
  if (is_zero()) return BiLaurent();
  const int shift = min_exp() - d.min_exp();
  BiLaurent rem = shifted(-min_exp());
  BiLaurent dd = d.shifted(-d.min_exp());
  BiLaurent quot;
  const int dm = dd.max_exp();
  const IntLaurent dl = dd.leading_coeff();
  while (!rem.is_zero() && rem.max_exp() >= dm) {
    auto q = rem.leading_coeff().try_divexact(dl);
    if (!q) return std::nullopt;
    BiLaurent step = monomial(std::move(*q), rem.max_exp() - dm);
    quot += step;
    rem -= dd * step;
  }
  if (!rem.is_zero()) return std::nullopt;
  return quot.shifted(shift);
}

BiLaurent BiLaurent::divexact_outer(const BiLaurent& d) const {
  auto q = try_divexact_outer(d);
  assert(q && "divexact_outer: not divisible");
  return *q;
}

namespace {
// Pseudo-remainder lc(g)^{deg f - deg g + 1} f mod g in the outer variable.
BiLaurent bi_prem(const BiLaurent& f, const BiLaurent& g) {
  const int dg = g.max_exp();
  const IntLaurent lg = g.leading_coeff();
  BiLaurent r = f;
  int e = f.max_exp() - dg + 1;
  while (!r.is_zero() && r.max_exp() >= dg) {
    BiLaurent s = BiLaurent::monomial(r.leading_coeff(), r.max_exp() - dg);
    r = r.mul_inner(lg) - g * s;
    --e;
  }
  if (e > 0) r = r.mul_inner(lg.pow(static_cast<unsigned>(e)));
  return r;
}
}  // namespace

// Subresultant PRS in the outer variable over Z[inner^{+-1}].
BiLaurent BiLaurent::gcd_outer(const BiLaurent& a, const BiLaurent& b) {
  if (a.is_zero()) return b.is_zero() ? BiLaurent() : b.shifted(-b.min_exp()).primitive_outer();
  if (b.is_zero()) return a.shifted(-a.min_exp()).primitive_outer();
  BiLaurent f = a.shifted(-a.min_exp()).primitive_outer();
  BiLaurent g = b.shifted(-b.min_exp()).primitive_outer();
  if (f.max_exp() < g.max_exp()) std::swap(f, g);
  IntLaurent gg = IntLaurent::one(), h = IntLaurent::one();
  for (;;) {
    int delta = f.max_exp() - g.max_exp();
    BiLaurent r = bi_prem(f, g);
    if (r.is_zero()) return g.shifted(-g.min_exp()).primitive_outer();
    if (r.max_exp() - r.min_exp() == 0) return one();
    f = std::move(g);
    g = r.divexact_outer(from_inner(gg * h.pow(static_cast<unsigned>(delta))));
    gg = f.leading_coeff();
    if (delta > 0) {
      h = gg.pow(static_cast<unsigned>(delta))
              .divexact(h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
}

bool BiLaurent::divides_into(const BiLaurent& f) const {
  assert(!is_zero());
  if (f.is_zero()) return true;
  BiLaurent d = shifted(-min_exp()).primitive_outer();
  if (d.max_exp() == 0) return true;  // unit of Q(inner)[outer]
  BiLaurent g = gcd_outer(f, d);
  return g.max_exp() == d.max_exp();
}

BiLaurent BiLaurent::squarefree_outer() const {
  if (is_zero()) return BiLaurent();
  BiLaurent f = shifted(-min_exp()).primitive_outer();
  if (f.max_exp() == 0) return one();
  BiLaurent g = gcd_outer(f, f.derivative_outer());
  if (g.max_exp() == 0) return f;
  return f.divexact_outer(g).primitive_outer();
}

mpq_class BiLaurent::eval_q(const mpq_class& outer, const mpq_class& inner) const {
  mpq_class result = 0;
  for (const auto& [e, c] : terms_) {
    mpq_class p = 1;
    mpq_class b = e >= 0 ? outer : mpq_class(1 / outer);
    int k = e >= 0 ? e : -e;
    while (k) {
      if (k & 1) p *= b;
      b *= b;
      k >>= 1;
    }
    result += c.eval_q(inner) * p;
  }
  result.canonicalize();
  return result;
}

std::vector<std::pair<int, uint64_t>> BiLaurent::eval_inner_mod(
    uint64_t c, uint64_t p) const {
  std::vector<std::pair<int, uint64_t>> out;
  out.reserve(terms_.size());
  for (const auto& [e, co] : terms_) {
    out.emplace_back(e, co.eval_mod(c, p));
  }
  return out;
}

std::string BiLaurent::to_string(const std::string& outer,
                                 const std::string& inner) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (const auto& [ie, ic] : c.terms()) {
      if (!first) os << " + ";
      first = false;
      os << ic.get_str();
      if (ie != 0) {
        os << "*" << inner;
        if (ie != 1) os << "^" << ie;
      }
      if (e != 0) {
        os << "*" << outer;
        if (e != 1) os << "^" << e;
      }
    }
  }
  return os.str();
}

std::optional<BiLaurent> BiLaurent::parse(const std::string& s,
                                          const std::string& outer,
                                          const std::string& inner) {
  // Accepts sums of terms c*inner^a*outer^b with any factor optional and
  // factors in either order.
  std::vector<Term> acc;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip_ws();
  if (i >= s.size()) return std::nullopt;
  bool leading = true;
  while (i < s.size()) {
    int sign = 1;
    skip_ws();
    if (!leading) {
      if (s[i] == '+') {
        ++i;
      } else if (s[i] == '-') {
        sign = -1;
        ++i;
      } else {
        return std::nullopt;
      }
      skip_ws();
    }
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      ++i;
      skip_ws();
    }
    leading = false;
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
    }
    mpz_class coef = digits.empty() ? mpz_class(1) : mpz_class(digits);
    if (sign < 0) coef = -coef;
    int oe = 0, ie = 0;
    bool saw_factor = !digits.empty();
    for (;;) {
      skip_ws();
      size_t save = i;
      if (i < s.size() && s[i] == '*') {
        ++i;
        skip_ws();
      }
      int* slot = nullptr;
      // Longest-match between the two variable names.
      bool m_outer = s.compare(i, outer.size(), outer) == 0;
      bool m_inner = s.compare(i, inner.size(), inner) == 0;
      if (m_outer && m_inner) {
        if (outer.size() >= inner.size()) m_inner = false;
        else m_outer = false;
      }
      if (m_outer) {
        slot = &oe;
        i += outer.size();
      } else if (m_inner) {
        slot = &ie;
        i += inner.size();
      } else {
        i = save;
        break;
      }
      saw_factor = true;
      skip_ws();
      int expo = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        skip_ws();
        int es = 1;
        if (i < s.size() && s[i] == '-') {
          es = -1;
          ++i;
        }
        std::string ed;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
          ed += s[i++];
        }
        if (ed.empty()) return std::nullopt;
        expo = es * std::stoi(ed);
      }
      *slot += expo;
    }
    if (!saw_factor) return std::nullopt;
    acc.emplace_back(oe, IntLaurent::monomial(coef, ie));
    skip_ws();
  }
  return from_terms(std::move(acc));
}

}  // namespace skeinlab
