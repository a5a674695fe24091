#include "skeinlab/multipoly.hpp"

#include <cassert>
#include <sstream>

namespace skeinlab {

MultiPoly MultiPoly::constant(int nvars, mpz_class c) {
  return monomial(nvars, std::move(c), Exps(static_cast<size_t>(nvars), 0));
}

MultiPoly MultiPoly::monomial(int nvars, mpz_class c, Exps e) {
  assert(static_cast<int>(e.size()) == nvars);
  MultiPoly r(nvars);
  if (c != 0) r.terms_.emplace(std::move(e), std::move(c));
  return r;
}

MultiPoly MultiPoly::var(int nvars, int i, int power) {
  Exps e(static_cast<size_t>(nvars), 0);
  e[static_cast<size_t>(i)] = power;
  return monomial(nvars, 1, std::move(e));
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (int e : terms_.begin()->first) {
    if (e != 0) return false;
  }
  return true;
}

int MultiPoly::degree(int var) const {
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    int x = e[static_cast<size_t>(var)];
    if (first || x > d) d = x;
    first = false;
  }
  return d;
}

int MultiPoly::min_exp(int var) const {
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    int x = e[static_cast<size_t>(var)];
    if (first || x < d) d = x;
    first = false;
  }
  return d;
}

bool MultiPoly::depends_on(int var) const {
  for (const auto& [e, c] : terms_) {
    if (e[static_cast<size_t>(var)] != 0) return true;
  }
  return false;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  assert(nvars_ == o.nvars_);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) {
    auto [it, fresh] = r.terms_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) r.terms_.erase(it);
    }
  }
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  assert(nvars_ == o.nvars_);
  MultiPoly r(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Exps e(ea);
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      auto [it, fresh] = r.terms_.emplace(std::move(e), ca * cb);
      if (!fresh) {
        it->second += ca * cb;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  }
  return r;
}

MultiPoly MultiPoly::mul_scalar(const mpz_class& c) const {
  if (c == 0) return MultiPoly(nvars_);
  MultiPoly r = *this;
  for (auto& [e, co] : r.terms_) co *= c;
  return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly r = constant(nvars_, 1);
  MultiPoly base = *this;
  while (k) {
    if (k & 1) r *= base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

MultiPoly MultiPoly::shifted(int var, int k) const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exps e2(e);
    e2[static_cast<size_t>(var)] += k;
    r.terms_.emplace(std::move(e2), c);
  }
  return r;
}

mpz_class MultiPoly::int_content() const {
  mpz_class g = 0;
  for (const auto& [e, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

std::optional<MultiPoly> MultiPoly::try_divexact(const MultiPoly& d) const {
  assert(nvars_ == d.nvars_);
  assert(!d.is_zero());
  if (is_zero()) return MultiPoly(nvars_);
  // Laurent divisibility: shift every variable to min exponent 0 in both
  // operands (minimal exponents are additive under multiplication, so the
  // shifted quotient is an honest polynomial), divide, shift back.
  MultiPoly rem = *this;
  MultiPoly dd = d;
  Exps back(static_cast<size_t>(nvars_), 0);
  for (int v = 0; v < nvars_; ++v) {
    int mf = rem.min_exp(v), md = dd.min_exp(v);
    if (mf != 0) rem = rem.shifted(v, -mf);
    if (md != 0) dd = dd.shifted(v, -md);
    back[static_cast<size_t>(v)] = mf - md;
  }
  MultiPoly quot(nvars_);
  // Lex-leading term division; each step is exact when dd divides rem, and
  // the lex-leading monomial strictly decreases, so the loop terminates.
  const auto& dl = *dd.terms_.rbegin();
  while (!rem.is_zero()) {
    const auto& rl = *rem.terms_.rbegin();
    Exps e(rl.first);
    for (size_t i = 0; i < e.size(); ++i) {
      e[i] -= dl.first[i];
      if (e[i] < 0) return std::nullopt;
    }
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rl.second.get_mpz_t(),
                dl.second.get_mpz_t());
    if (r != 0) return std::nullopt;
    MultiPoly step = monomial(nvars_, std::move(q), std::move(e));
    quot += step;
    rem -= dd * step;
  }
  MultiPoly shiftmono = monomial(nvars_, 1, std::move(back));
  return quot * shiftmono;
}

MultiPoly MultiPoly::divexact(const MultiPoly& d) const {
  auto q = try_divexact(d);
  assert(q && "MultiPoly::divexact: not divisible");
  return *q;
}

namespace {

// Division-free pseudo-remainder with respect to var; both inputs must have
// nonnegative exponents of var and deg_var(f) >= deg_var(g) > 0.
MultiPoly pseudo_rem(const MultiPoly& f, const MultiPoly& g, int var) {
  const int dg = g.degree(var);
  auto gc = g.coeffs_in(var);
  MultiPoly lg = gc.rbegin()->second.shifted(var, 0);
  MultiPoly r = f;
  int e = f.degree(var) - dg + 1;
  while (!r.is_zero() && r.degree(var) >= dg) {
    auto rc = r.coeffs_in(var);
    int dr = rc.rbegin()->first;
    MultiPoly s = rc.rbegin()->second.shifted(var, dr - dg);
    r = r * lg - s * g;
    --e;
  }
  if (e > 0) {
    r = r * lg.pow(static_cast<unsigned>(e));
  }
  return r;
}

}  // namespace

MultiPoly MultiPoly::content_in(int var) const {
  MultiPoly g(nvars_);
  for (const auto& [d, c] : coeffs_in(var)) {
    g = gcd(g, c);
  }
  return g;
}

MultiPoly MultiPoly::gcd(const MultiPoly& a, const MultiPoly& b) {
  assert(a.nvars_ == b.nvars_);
  const int nv = a.nvars_;
  auto normalize = [nv](MultiPoly p) {
    if (p.is_zero()) return p;
    for (int v = 0; v < nv; ++v) {
      int m = p.min_exp(v);
      if (m != 0) p = p.shifted(v, -m);
    }
    if (p.terms_.rbegin()->second < 0) p = -p;
    return p;
  };
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  int var = -1;
  for (int v = nv - 1; v >= 0; --v) {
    if (a.depends_on(v) || b.depends_on(v)) {
      var = v;
      break;
    }
  }
  if (var < 0) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.terms_.begin()->second.get_mpz_t(),
            b.terms_.begin()->second.get_mpz_t());
    return constant(nv, g);
  }
  MultiPoly f = normalize(a), g = normalize(b);
  MultiPoly cf = f.content_in(var), cg = g.content_in(var);
  MultiPoly cont = gcd(cf, cg);
  f = f.divexact(cf);
  g = g.divexact(cg);
  if (f.degree(var) < g.degree(var)) std::swap(f, g);
  // Subresultant PRS on the chosen variable, primitive recursion on the
  // contents above; final primitive part taken at the end.
  MultiPoly gg = constant(nv, 1), h = constant(nv, 1);
  for (;;) {
    int delta = f.degree(var) - g.degree(var);
    MultiPoly r = pseudo_rem(f, g, var);
    if (r.is_zero()) {
      MultiPoly pp = normalize(g);
      return normalize(cont * pp.divexact(pp.content_in(var)));
    }
    if (r.degree(var) == 0 && r.min_exp(var) == 0) return normalize(cont);
    f = std::move(g);
    g = r.divexact(gg * h.pow(static_cast<unsigned>(delta)));
    auto fc = f.coeffs_in(var);
    gg = fc.rbegin()->second;
    if (delta > 0) {
      h = gg.pow(static_cast<unsigned>(delta))
              .divexact(h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
}

MultiPoly MultiPoly::squarefree_part(int var) const {
  assert(!is_zero());
  MultiPoly c = content_in(var);
  MultiPoly pp = divexact(c);
  if (pp.degree(var) == 0) return *this;
  MultiPoly g = gcd(pp, pp.derivative(var));
  if (g.degree(var) == 0) return *this;
  return c * pp.divexact(g);
}

std::map<int, MultiPoly> MultiPoly::coeffs_in(int var) const {
  std::map<int, MultiPoly> out;
  for (const auto& [e, c] : terms_) {
    Exps e2(e);
    int d = e2[static_cast<size_t>(var)];
    e2[static_cast<size_t>(var)] = 0;
    auto it = out.find(d);
    if (it == out.end()) it = out.emplace(d, MultiPoly(nvars_)).first;
    it->second.terms_.emplace(std::move(e2), c);
  }
  return out;
}

MultiPoly MultiPoly::from_coeffs_in(int var, int nvars,
                                    const std::map<int, MultiPoly>& cs) {
  MultiPoly r(nvars);
  for (const auto& [d, p] : cs) {
    r += p.shifted(var, d);
  }
  return r;
}

MultiPoly MultiPoly::derivative(int var) const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    int x = e[static_cast<size_t>(var)];
    if (x == 0) continue;
    Exps e2(e);
    e2[static_cast<size_t>(var)] = x - 1;
    mpz_class c2 = c * x;
    auto [it, fresh] = r.terms_.emplace(std::move(e2), std::move(c2));
    if (!fresh) it->second += c * x;
  }
  return r;
}

MultiPoly MultiPoly::substitute(int var, const MultiPoly& value) const {
  assert(min_exp(var) >= 0);
  auto cs = coeffs_in(var);
  // Horner from the top degree down.
  MultiPoly acc(nvars_);
  int prev = -1;
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
    if (prev >= 0) {
      for (int k = 0; k < prev - it->first; ++k) acc *= value;
    }
    acc += it->second;
    prev = it->first;
  }
  if (prev > 0) {
    for (int k = 0; k < prev; ++k) acc *= value;
  }
  return acc;
}

mpq_class MultiPoly::eval_q(const std::vector<mpq_class>& xs) const {
  assert(static_cast<int>(xs.size()) == nvars_);
  mpq_class result = 0;
  for (const auto& [e, c] : terms_) {
    mpq_class term(c);
    for (size_t i = 0; i < xs.size(); ++i) {
      int k = e[i];
      if (k == 0) continue;
      mpq_class b = k > 0 ? xs[i] : mpq_class(1 / xs[i]);
      int a = k > 0 ? k : -k;
      mpq_class p = 1;
      while (a) {
        if (a & 1) p *= b;
        b *= b;
        a >>= 1;
      }
      term *= p;
    }
    result += term;
  }
  result.canonicalize();
  return result;
}

MultiPoly multipoly_det(std::vector<std::vector<MultiPoly>> m) {
  const size_t n = m.size();
  assert(n > 0 && m[0].size() == n);
  const int nv = m[0][0].nvars();
  int sign = 1;
  MultiPoly prev = MultiPoly::constant(nv, 1);
  for (size_t k = 0; k + 1 < n; ++k) {
    size_t piv = k;
    while (piv < n && m[piv][k].is_zero()) ++piv;
    if (piv == n) return MultiPoly(nv);
    if (piv != k) {
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        MultiPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = num.divexact(prev);
      }
      m[i][k] = MultiPoly(nv);
    }
    prev = m[k][k];
  }
  MultiPoly det = m[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

MultiPoly MultiPoly::resultant(const MultiPoly& f, const MultiPoly& g,
                               int var) {
  assert(f.min_exp(var) >= 0 && g.min_exp(var) >= 0);
  const int df = f.degree(var), dg = g.degree(var);
  assert(!f.is_zero() && !g.is_zero());
  if (df == 0 && dg == 0) return constant(f.nvars(), 1);
  if (df == 0) return f.pow(static_cast<unsigned>(dg));
  if (dg == 0) return g.pow(static_cast<unsigned>(df));
  auto fc = f.coeffs_in(var);
  auto gc = g.coeffs_in(var);
  auto at = [&](std::map<int, MultiPoly>& cs, int d) {
    auto it = cs.find(d);
    return it == cs.end() ? MultiPoly(f.nvars()) : it->second;
  };
  const size_t n = static_cast<size_t>(df + dg);
  std::vector<std::vector<MultiPoly>> syl(
      n, std::vector<MultiPoly>(n, MultiPoly(f.nvars())));
  // dg rows of f coefficients, then df rows of g coefficients.
  for (int r = 0; r < dg; ++r) {
    for (int j = 0; j <= df; ++j) {
      syl[static_cast<size_t>(r)][static_cast<size_t>(r + j)] = at(fc, df - j);
    }
  }
  for (int r = 0; r < df; ++r) {
    for (int j = 0; j <= dg; ++j) {
      syl[static_cast<size_t>(dg + r)][static_cast<size_t>(r + j)] =
          at(gc, dg - j);
    }
  }
  return multipoly_det(std::move(syl));
}

BiLaurent MultiPoly::to_bilaurent(int outer_var, int inner_var) const {
  std::vector<BiLaurent::Term> acc;
  std::map<int, std::vector<IntLaurent::Term>> rows;
  for (const auto& [e, c] : terms_) {
    for (size_t i = 0; i < e.size(); ++i) {
      assert(static_cast<int>(i) == outer_var || static_cast<int>(i) == inner_var ||
             e[i] == 0);
    }
    rows[e[static_cast<size_t>(outer_var)]].emplace_back(
        e[static_cast<size_t>(inner_var)], c);
  }
  for (auto& [oe, ts] : rows) {
    acc.emplace_back(oe, IntLaurent::from_terms(std::move(ts)));
  }
  return BiLaurent::from_terms(std::move(acc));
}

MultiPoly MultiPoly::from_bilaurent(const BiLaurent& b, int nvars,
                                    int outer_var, int inner_var) {
  MultiPoly r(nvars);
  for (const auto& [oe, c] : b.terms()) {
    for (const auto& [ie, co] : c.terms()) {
      Exps e(static_cast<size_t>(nvars), 0);
      e[static_cast<size_t>(outer_var)] = oe;
      e[static_cast<size_t>(inner_var)] = ie;
      r.terms_.emplace(std::move(e), co);
    }
  }
  return r;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
  assert(static_cast<int>(names.size()) == nvars_);
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*" << names[i];
      if (e[i] != 1) os << "^" << e[i];
    }
  }
  return os.str();
}

}  // namespace skeinlab
