#include "skeinlab/intlaurent.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

namespace skeinlab {

IntLaurent IntLaurent::monomial(mpz_class c, int e) {
  IntLaurent r;
  if (c != 0) r.terms_.emplace_back(e, std::move(c));
  return r;
}

IntLaurent IntLaurent::from_terms(std::vector<Term> ts) {
  std::sort(ts.begin(), ts.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  IntLaurent r;
  for (auto& [e, c] : ts) {
    if (!r.terms_.empty() && r.terms_.back().first == e) {
      r.terms_.back().second += c;
      if (r.terms_.back().second == 0) r.terms_.pop_back();
    } else if (c != 0) {
      r.terms_.emplace_back(e, std::move(c));
    }
  }
  return r;
}

bool IntLaurent::is_one() const {
  return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1;
}

bool IntLaurent::exponents_divisible_by(int k) const {
  assert(k != 0);
  for (const auto& [e, c] : terms_) {
    if (e % k != 0) return false;
  }
  return true;
}

int IntLaurent::min_exp() const {
  assert(!terms_.empty());
  return terms_.front().first;
}

int IntLaurent::max_exp() const {
  assert(!terms_.empty());
  return terms_.back().first;
}

mpz_class IntLaurent::coeff(int e) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), e,
      [](const Term& t, int x) { return t.first < x; });
  if (it != terms_.end() && it->first == e) return it->second;
  return 0;
}

mpz_class IntLaurent::leading_coeff() const {
  assert(!terms_.empty());
  return terms_.back().second;
}

mpz_class IntLaurent::trailing_coeff() const {
  assert(!terms_.empty());
  return terms_.front().second;
}

IntLaurent IntLaurent::operator-() const {
  IntLaurent r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

IntLaurent IntLaurent::operator+(const IntLaurent& o) const {
  IntLaurent r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() && b != o.terms_.end()) {
    if (a->first < b->first) {
      r.terms_.push_back(*a++);
    } else if (b->first < a->first) {
      r.terms_.push_back(*b++);
    } else {
      mpz_class s = a->second + b->second;
      if (s != 0) r.terms_.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  r.terms_.insert(r.terms_.end(), a, terms_.end());
  r.terms_.insert(r.terms_.end(), b, o.terms_.end());
  return r;
}

IntLaurent IntLaurent::operator-(const IntLaurent& o) const {
  return *this + (-o);
}

IntLaurent IntLaurent::operator*(const IntLaurent& o) const {
  if (is_zero() || o.is_zero()) return IntLaurent();
  // Dense accumulation over the combined span; products arising here
  // (recurrence checks, state sums) tend to fill their span anyway.
  const int lo = min_exp() + o.min_exp();
  const int hi = max_exp() + o.max_exp();
  std::vector<mpz_class> acc(static_cast<size_t>(hi - lo) + 1);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      acc[static_cast<size_t>(ea + eb - lo)] += ca * cb;
    }
  }
  IntLaurent r;
  for (size_t i = 0; i < acc.size(); ++i) {
    if (acc[i] != 0) r.terms_.emplace_back(lo + static_cast<int>(i), std::move(acc[i]));
  }
  return r;
}

IntLaurent IntLaurent::mul_scalar(const mpz_class& c) const {
  if (c == 0) return IntLaurent();
  IntLaurent r = *this;
  for (auto& [e, co] : r.terms_) co *= c;
  return r;
}

IntLaurent IntLaurent::shifted(int e) const {
  IntLaurent r = *this;
  for (auto& [ex, c] : r.terms_) ex += e;
  return r;
}

IntLaurent IntLaurent::pow(unsigned k) const {
  IntLaurent r = one();
  IntLaurent base = *this;
  while (k) {
    if (k & 1) r *= base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

IntLaurent IntLaurent::subst_power(int k) const {
  assert(k != 0);
  IntLaurent r;
  r.terms_ = terms_;
  for (auto& [e, c] : r.terms_) e *= k;
  if (k < 0) std::reverse(r.terms_.begin(), r.terms_.end());
  return r;
}

// Laurent divisibility reduces to ordinary polynomial divisibility after
// shifting both operands to min_exp 0 (t is a unit, the shifts are units).
std::optional<IntLaurent> IntLaurent::try_divexact(const IntLaurent& d) const {
  assert(!d.is_zero());
  if (is_zero()) return IntLaurent();
  const int shift = min_exp() - d.min_exp();
  IntLaurent rem = shifted(-min_exp());
  IntLaurent dd = d.shifted(-d.min_exp());
  IntLaurent quot;
  const int dm = dd.max_exp();
  const mpz_class dl = dd.leading_coeff();
  while (!rem.is_zero() && rem.max_exp() >= dm) {
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.leading_coeff().get_mpz_t(),
                dl.get_mpz_t());
    if (r != 0) return std::nullopt;
    IntLaurent step = monomial(q, rem.max_exp() - dm);
    quot += step;
    rem -= dd * step;
  }
  if (!rem.is_zero()) return std::nullopt;
  return quot.shifted(shift);
}

IntLaurent IntLaurent::divexact(const IntLaurent& d) const {
  auto q = try_divexact(d);
  assert(q && "divexact: not divisible");
  return *q;
}

bool IntLaurent::divisible_by(const IntLaurent& d) const {
  assert(!d.is_zero());
  if (is_zero()) return true;
  IntLaurent rem = shifted(-min_exp());
  IntLaurent dd = d.shifted(-d.min_exp());
  const int dm = dd.max_exp();
  const mpz_class dl = dd.leading_coeff();
  while (!rem.is_zero() && rem.max_exp() >= dm) {
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.leading_coeff().get_mpz_t(),
                dl.get_mpz_t());
    if (r != 0) return false;
    rem -= dd * monomial(q, rem.max_exp() - dm);
  }
  return rem.is_zero();
}

mpz_class IntLaurent::content() const {
  mpz_class g = 0;
  for (const auto& [e, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntLaurent IntLaurent::primitive_part() const {
  if (is_zero()) return IntLaurent();
  mpz_class g = content();
  if (leading_coeff() < 0) g = -g;
  IntLaurent r = *this;
  for (auto& [e, c] : r.terms_) c /= g;
  return r;
}

namespace {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>(
      static_cast<unsigned __int128>(a) * b % p);
}
inline uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, p);
    a = mulmod_u64(a, a, p);
    e >>= 1;
  }
  return r;
}

// Pseudo-remainder lc(g)^{deg f - deg g + 1} f mod g, multiplying by lc(g)
// one round at a time (keeps dead rounds cheap); both min_exp 0.
IntLaurent int_prem(const IntLaurent& f, const IntLaurent& g) {
  const int dg = g.max_exp();
  const mpz_class lg = g.leading_coeff();
  IntLaurent r = f;
  int e = f.max_exp() - dg + 1;
  while (!r.is_zero() && r.max_exp() >= dg) {
    IntLaurent s = IntLaurent::monomial(r.leading_coeff(), r.max_exp() - dg);
    r = r.mul_scalar(lg) - g * s;
    --e;
  }
  if (e > 0) {
    mpz_class mult;
    mpz_pow_ui(mult.get_mpz_t(), lg.get_mpz_t(), static_cast<unsigned long>(e));
    r = r.mul_scalar(mult);
  }
  return r;
}
// Subresultant PRS (keeps intermediate coefficients polynomially bounded).
// Inputs are primitive with min_exp 0; returns the primitive gcd.
IntLaurent gcd_prs(IntLaurent f, IntLaurent g) {
  if (f.max_exp() < g.max_exp()) std::swap(f, g);
  mpz_class gg = 1, h = 1;
  for (;;) {
    int delta = f.max_exp() - g.max_exp();
    IntLaurent r = int_prem(f, g);
    if (r.is_zero()) return g.shifted(-g.min_exp()).primitive_part();
    if (r.max_exp() - r.min_exp() == 0) return IntLaurent::one();
    f = std::move(g);
    mpz_class hd;
    mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta));
    g = r.divexact(IntLaurent::monomial(gg * hd, 0));
    gg = f.leading_coeff();
    if (delta > 0) {
      mpz_class gd;
      mpz_pow_ui(gd.get_mpz_t(), gg.get_mpz_t(), static_cast<unsigned long>(delta));
      mpz_class hd1;
      mpz_pow_ui(hd1.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
      h = gd / hd1;
      assert(gd % hd1 == 0);
    }
  }
}

// Coefficients of a min_exp-0 polynomial mod p, low to high.
std::vector<uint64_t> dense_mod(const IntLaurent& f, uint64_t p) {
  std::vector<uint64_t> v(static_cast<size_t>(f.max_exp()) + 1, 0);
  for (const auto& [e, c] : f.terms()) {
    uint64_t r = mpz_fdiv_ui(c.get_mpz_t(), p);
    v[static_cast<size_t>(e)] = r;
  }
  while (v.size() > 1 && v.back() == 0) v.pop_back();
  if (v.size() == 1 && v[0] == 0) v.clear();
  return v;
}

// Monic gcd of dense coefficient vectors over F_p (empty means zero).
std::vector<uint64_t> gcd_mod_p(std::vector<uint64_t> a, std::vector<uint64_t> b,
                                uint64_t p) {
  auto strip = [](std::vector<uint64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  strip(a);
  strip(b);
  while (!b.empty()) {
    const uint64_t li = powmod_u64(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
      const uint64_t f = mulmod_u64(a.back(), li, p);
      const size_t off = a.size() - b.size();
      for (size_t i = 0; i + 1 < b.size(); ++i) {
        const uint64_t s = mulmod_u64(f, b[i], p);
        a[off + i] = (a[off + i] + p - s) % p;
      }
      a.pop_back();
      strip(a);
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    const uint64_t li = powmod_u64(a.back(), p - 2, p);
    for (uint64_t& c : a) c = mulmod_u64(c, li, p);
  }
  return a;
}

// Word-size primes for modular gcd images, generated once.
const std::vector<uint64_t>& gcd_primes() {
  static const std::vector<uint64_t> primes = [] {
    std::vector<uint64_t> ps;
    mpz_class p = (mpz_class(1) << 62) - (mpz_class(1) << 16);
    for (int i = 0; i < 64; ++i) {
      mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
      ps.push_back(p.get_ui());
    }
    return ps;
  }();
  return primes;
}

}  // namespace

// Modular gcd (images mod word-size primes, incremental CRT, certification
// by trial division).  The image degree can only overestimate the true gcd
// degree when p misses gcd(lc f, lc g), so a degree-zero image proves
// coprimality and the candidate test proves everything else.
IntLaurent IntLaurent::gcd(const IntLaurent& a, const IntLaurent& b) {
  if (a.is_zero()) return b.is_zero() ? IntLaurent() : b.shifted(-b.min_exp()).primitive_part().mul_scalar(b.content());
  if (b.is_zero()) return a.shifted(-a.min_exp()).primitive_part().mul_scalar(a.content());
  mpz_class cg;
  mpz_gcd(cg.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
  IntLaurent f = a.shifted(-a.min_exp()).primitive_part();
  IntLaurent g = b.shifted(-b.min_exp()).primitive_part();
  if (f.max_exp() < g.max_exp()) std::swap(f, g);
  if (g.max_exp() == 0) return monomial(cg, 0);
  mpz_class gamma;
  mpz_gcd(gamma.get_mpz_t(), f.leading_coeff().get_mpz_t(),
          g.leading_coeff().get_mpz_t());
  int dbound = g.max_exp();
  std::vector<mpz_class> acc;  // CRT accumulator, low to high, in [0, mod)
  mpz_class mod = 0;
  IntLaurent prev;
  bool have_prev = false;
  for (const uint64_t p : gcd_primes()) {
    if (mpz_fdiv_ui(gamma.get_mpz_t(), p) == 0) continue;
    std::vector<uint64_t> h = gcd_mod_p(dense_mod(f, p), dense_mod(g, p), p);
    const int d = static_cast<int>(h.size()) - 1;
    if (d == 0) return monomial(cg, 0);
    if (d > dbound) continue;  // unlucky prime
    if (d < dbound) {
      dbound = d;
      acc.clear();
      mod = 0;
      have_prev = false;
    }
    const uint64_t gp = mpz_fdiv_ui(gamma.get_mpz_t(), p);
    for (uint64_t& c : h) c = mulmod_u64(c, gp, p);
    if (mod == 0) {
      acc.assign(h.begin(), h.end());
      mod = p;
    } else {
      const uint64_t minv = powmod_u64(mpz_fdiv_ui(mod.get_mpz_t(), p), p - 2, p);
      for (size_t i = 0; i < acc.size(); ++i) {
        const uint64_t r = mpz_fdiv_ui(acc[i].get_mpz_t(), p);
        const uint64_t delta = mulmod_u64((h[i] + p - r) % p, minv, p);
        acc[i] += mod * mpz_class(delta);
      }
      mod *= p;
    }
    std::vector<Term> ts;
    for (size_t i = 0; i < acc.size(); ++i) {
      mpz_class c = acc[i];
      if (2 * c > mod) c -= mod;  // symmetric representative
      if (c != 0) ts.emplace_back(static_cast<int>(i), std::move(c));
    }
    IntLaurent cand = from_terms(std::move(ts)).primitive_part();
    if (have_prev && cand == prev) {
      if (f.divisible_by(cand) && g.divisible_by(cand))
        return cand.mul_scalar(cg);
    }
    prev = std::move(cand);
    have_prev = true;
  }
  return gcd_prs(std::move(f), std::move(g)).mul_scalar(cg);
}

mpq_class IntLaurent::eval_q(const mpq_class& t) const {
  if (is_zero()) return 0;
  assert(t != 0 || min_exp() >= 0);
  mpq_class tinv = t != 0 ? mpq_class(1 / t) : mpq_class(0);
  mpq_class result = 0;
  // Direct term-by-term sum is fine at desk scale: exponents are small.
  for (const auto& [e, c] : terms_) {
    mpq_class p = 1;
    mpq_class b = e >= 0 ? t : tinv;
    int k = e >= 0 ? e : -e;
    while (k) {
      if (k & 1) p *= b;
      b *= b;
      k >>= 1;
    }
    result += mpq_class(c) * p;
  }
  result.canonicalize();
  return result;
}

uint64_t IntLaurent::eval_mod(uint64_t c, uint64_t p) const {
  if (is_zero()) return 0;
  const uint64_t cinv = powmod_u64(c % p, p - 2, p);  // p prime, c != 0 mod p
  uint64_t acc = 0;
  for (const auto& [e, co] : terms_) {
    uint64_t base = e >= 0 ? c % p : cinv;
    uint64_t ae = static_cast<uint64_t>(e >= 0 ? e : -e);
    uint64_t pw = powmod_u64(base, ae, p);
    mpz_class cm = co % mpz_class(p);
    if (cm < 0) cm += p;
    uint64_t cu = cm.get_ui();
    acc = (acc + mulmod_u64(cu, pw, p)) % p;
  }
  return acc;
}

mpz_class IntLaurent::eval_pm1() const {
  mpz_class s = 0;
  for (const auto& [e, c] : terms_) {
    if (e % 2 == 0) {
      s += c;
    } else {
      s -= c;
    }
  }
  return s;
}

std::string IntLaurent::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    if (e != 0) {
      os << "*" << var;
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

std::optional<IntLaurent> IntLaurent::parse(const std::string& s,
                                            const std::string& var) {
  std::vector<Term> ts;
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
    // coefficient (optional if term starts with the variable)
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
    }
    mpz_class coef = digits.empty() ? mpz_class(1) : mpz_class(digits);
    if (sign < 0) coef = -coef;
    skip_ws();
    int expo = 0;
    bool saw_var = false;
    if (i < s.size() && s[i] == '*') {
      ++i;
      skip_ws();
    }
    if (s.compare(i, var.size(), var) == 0) {
      saw_var = true;
      i += var.size();
      skip_ws();
      expo = 1;
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
    }
    if (digits.empty() && !saw_var) return std::nullopt;
    ts.emplace_back(expo, coef);
    skip_ws();
  }
  return from_terms(std::move(ts));
}

IntLaurent quantum_integer(int n) {
  // [n] = t^{2(n-1)} + t^{2(n-3)} + ... + t^{-2(n-1)}, [0] = 0, [-n] = -[n].
  if (n == 0) return IntLaurent();
  int a = n > 0 ? n : -n;
  std::vector<IntLaurent::Term> ts;
  for (int e = -(a - 1); e <= a - 1; e += 2) {
    ts.emplace_back(2 * e, n > 0 ? 1 : -1);
  }
  return IntLaurent::from_terms(std::move(ts));
}

}  // namespace skeinlab
