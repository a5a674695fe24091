#include "skeinlab/recurrence.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

namespace skeinlab {

namespace {

// ---------------------------------------------------------------------------
// Word-size arithmetic mod a 62-bit prime.

uint64_t addm(uint64_t a, uint64_t b, uint64_t p) {
  uint64_t s = a + b;
  return s >= p ? s - p : s;
}

uint64_t subm(uint64_t a, uint64_t b, uint64_t p) { return addm(a, p - b, p); }

uint64_t mulm(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t powm(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  for (; e; e >>= 1) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
  }
  return r;
}

uint64_t invm(uint64_t a, uint64_t p) { return powm(a, p - 2, p); }

const std::vector<uint64_t>& fit_primes() {
  static const std::vector<uint64_t> primes = [] {
    std::vector<uint64_t> out;
    mpz_class p = (mpz_class(1) << 62) - (mpz_class(1) << 24);
    while (out.size() < 24) {
      mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
      out.push_back(mpz_get_ui(p.get_mpz_t()));
    }
    return out;
  }();
  return primes;
}

// ---------------------------------------------------------------------------
// Dense polynomials over F_p: coefficients ascending, no trailing zeros.

using Poly = std::vector<uint64_t>;

void strip(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

uint64_t poly_eval(const Poly& f, uint64_t x, uint64_t p) {
  uint64_t r = 0;
  for (size_t i = f.size(); i-- > 0;) r = addm(mulm(r, x, p), f[i], p);
  return r;
}

Poly poly_scale(const Poly& f, uint64_t c, uint64_t p) {
  Poly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = mulm(f[i], c, p);
  strip(r);
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b, uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = subm(r[i], b[i], p);
  strip(r);
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = addm(r[i + j], mulm(a[i], b[j], p), p);
  }
  strip(r);
  return r;
}

// quotient and in-place remainder
Poly poly_divrem(Poly& num, const Poly& den, uint64_t p) {
  if (den.empty()) throw std::logic_error("modular poly division by zero");
  if (num.size() < den.size()) return {};
  Poly q(num.size() - den.size() + 1, 0);
  const uint64_t dinv = invm(den.back(), p);
  for (size_t k = num.size(); k-- >= den.size();) {
    uint64_t c = mulm(num[k], dinv, p);
    if (c != 0) {
      q[k - den.size() + 1] = c;
      for (size_t j = 0; j < den.size(); ++j) {
        size_t at = k - den.size() + 1 + j;
        num[at] = subm(num[at], mulm(c, den[j], p), p);
      }
    }
    if (k == 0) break;
  }
  strip(num);
  strip(q);
  return q;
}

Poly poly_gcd(Poly a, Poly b, uint64_t p) {
  while (!b.empty()) {
    poly_divrem(a, b, p);
    std::swap(a, b);
  }
  if (!a.empty() && a.back() != 1) a = poly_scale(a, invm(a.back(), p), p);
  return a;
}

Poly poly_divexact(Poly num, const Poly& den, uint64_t p) {
  Poly q = poly_divrem(num, den, p);
  if (!num.empty()) throw std::logic_error("modular poly division not exact");
  return q;
}

// ---------------------------------------------------------------------------
// Rational function reconstruction from point samples.  Incremental
// Lagrange interpolation builds Y with Y(x_s) = y_s and G = prod (x - x_s);
// the half-extended Euclid step then finds N/D = Y mod G with both degrees
// below S/2.  Returns false when no balanced-degree fraction fits, which the
// caller treats as "collect more points".

struct RatPoly {
  Poly num, den;
};

bool reconstruct_ratfn(const std::vector<uint64_t>& xs,
                       const std::vector<uint64_t>& ys, uint64_t p,
                       RatPoly& out) {
  const size_t S = xs.size();
  Poly Y, G{1};
  for (size_t s = 0; s < S; ++s) {
    uint64_t have = poly_eval(Y, xs[s], p);
    if (have != ys[s]) {
      uint64_t c = mulm(subm(ys[s], have, p), invm(poly_eval(G, xs[s], p), p), p);
      Y = poly_sub(Y, poly_scale(G, p - c, p), p);
    }
    G = poly_mul(G, Poly{p - xs[s], 1}, p);
  }
  if (Y.empty()) {
    out = {Poly{}, Poly{1}};
    return true;
  }
  Poly r0 = G, r1 = Y;
  Poly t0, t1{1};
  while (2 * static_cast<size_t>(deg(r1)) >= S) {
    Poly q = poly_divrem(r0, r1, p);  // r0 becomes the remainder in place
    std::swap(r0, r1);
    Poly tn = poly_sub(t0, poly_mul(q, t1, p), p);
    t0 = std::move(t1);
    t1 = std::move(tn);
    if (r1.empty()) return false;
  }
  if (t1.empty()) return false;
  Poly g = poly_gcd(r1, t1, p);
  if (deg(g) > 0) return false;
  out = {std::move(r1), std::move(t1)};
  return true;
}

// ---------------------------------------------------------------------------
// One modular elimination: specialize t -> tau, build the fit matrix, and
// return the reduced-echelon nullspace.

struct PointKernel {
  uint64_t tau = 0;
  int nullity = 0;
  std::vector<int> pivots;                    // pivot column indices
  std::vector<std::vector<uint64_t>> basis;   // basis[r][col], one per free col
};

struct ModImage {
  std::vector<int32_t> exps;
  std::vector<uint64_t> coeffs;
  int min_exp = 0, max_exp = 0;
};

ModImage reduce_value(const IntLaurent& v, uint64_t p) {
  ModImage img;
  for (const auto& [e, c] : v.terms()) {
    uint64_t r = mpz_fdiv_ui(c.get_mpz_t(), p);
    if (r == 0) continue;
    img.exps.push_back(e);
    img.coeffs.push_back(r);
  }
  if (!img.exps.empty()) {
    img.min_exp = img.exps.front();
    img.max_exp = img.exps.back();
  }
  return img;
}

class ModularFit {
 public:
  ModularFit(const std::vector<IntLaurent>* vals, int first_index,
             const GuessConfig& cfg, int d)
      : vals_(vals), first_(first_index), cfg_(cfg), d_(d) {
    cols_ = (d_ + 1) * (cfg_.m_degree + 1);
  }

  void set_prime(uint64_t p) {
    p_ = p;
    images_.clear();
    points_.clear();
    int lo = cfg_.fit_lo, hi = cfg_.fit_hi + d_;
    images_.resize(static_cast<size_t>(hi - lo + 1));
    glob_min_ = 0;
    glob_max_ = 0;
    for (int m = lo; m <= hi; ++m) {
      ModImage img = reduce_value((*vals_)[static_cast<size_t>(m - first_)], p);
      if (!img.exps.empty()) {
        glob_min_ = std::min(glob_min_, img.min_exp);
        glob_max_ = std::max(glob_max_, img.max_exp);
      }
      images_[static_cast<size_t>(m - lo)] = std::move(img);
    }
  }

  enum class Collect { kOk, kFullRank, kExhausted };

  // Adds points until `want` with a consistent kernel signature are held.
  // A single full-rank point proves the nullspace over the rational
  // function field is empty, since specialization can only lower the rank.
  Collect collect_points(size_t want) {
    while (points_.size() < want) {
      if (next_tau_ > 200000) return Collect::kExhausted;
      uint64_t tau = next_tau_++;
      PointKernel k = eliminate(tau);
      if (k.nullity == 0) return Collect::kFullRank;
      if (points_.empty()) {
        points_.push_back(std::move(k));
        continue;
      }
      const PointKernel& ref = points_.front();
      if (k.nullity > ref.nullity) continue;  // unlucky point, rank dropped
      if (k.nullity < ref.nullity ||
          (k.nullity == ref.nullity && k.pivots != ref.pivots)) {
        // Previous points were the unlucky ones; restart from this one.
        points_.clear();
      }
      points_.push_back(std::move(k));
    }
    return Collect::kOk;
  }

  int nullity() const { return points_.empty() ? -1 : points_.front().nullity; }
  int cols() const { return cols_; }
  uint64_t prime() const { return p_; }

  // Reconstructs basis vector r as a vector of cleared, content-free
  // polynomials in t, scaled so the lowest coefficient of the first nonzero
  // coordinate is 1.  Empty return means "need more points".
  std::optional<std::vector<Poly>> reconstruct(int r) {
    const size_t S = points_.size();
    std::vector<uint64_t> xs(S);
    for (size_t s = 0; s < S; ++s) xs[s] = points_[s].tau;
    std::vector<RatPoly> coords(static_cast<size_t>(cols_));
    std::vector<uint64_t> ys(S);
    for (int c = 0; c < cols_; ++c) {
      for (size_t s = 0; s < S; ++s)
        ys[s] = points_[s].basis[static_cast<size_t>(r)][static_cast<size_t>(c)];
      if (!reconstruct_ratfn(xs, ys, p_, coords[static_cast<size_t>(c)]))
        return std::nullopt;
    }
    Poly lcm{1};
    for (const auto& rp : coords) {
      Poly g = poly_gcd(lcm, rp.den, p_);
      lcm = poly_mul(lcm, poly_divexact(rp.den, g, p_), p_);
    }
    std::vector<Poly> cleared(static_cast<size_t>(cols_));
    for (int c = 0; c < cols_; ++c) {
      const auto& rp = coords[static_cast<size_t>(c)];
      cleared[static_cast<size_t>(c)] =
          poly_mul(rp.num, poly_divexact(lcm, rp.den, p_), p_);
    }
    Poly content;
    for (const auto& f : cleared)
      if (!f.empty()) content = content.empty() ? f : poly_gcd(content, f, p_);
    if (content.empty()) return std::nullopt;  // all-zero vector; impossible
    uint64_t pin = 0;
    for (auto& f : cleared) {
      if (f.empty()) continue;
      f = poly_divexact(f, content, p_);
      if (pin == 0) {
        for (uint64_t c : f)
          if (c != 0) {
            pin = invm(c, p_);
            break;
          }
      }
    }
    for (auto& f : cleared) f = poly_scale(f, pin, p_);
    return cleared;
  }

 private:
  PointKernel eliminate(uint64_t tau) const {
    const int R = cfg_.fit_hi - cfg_.fit_lo + 1;
    const int C = cols_;
    // Shared power table covering every exponent of every value.
    std::vector<uint64_t> pows(static_cast<size_t>(glob_max_ - glob_min_ + 1));
    {
      uint64_t ti = invm(tau, p_);
      uint64_t acc = 1;
      for (int e = 0; e <= glob_max_; ++e) {
        if (e >= glob_min_) pows[static_cast<size_t>(e - glob_min_)] = acc;
        acc = mulm(acc, tau, p_);
      }
      acc = 1;
      for (int e = 0; e >= glob_min_; --e) {
        if (e <= glob_max_) pows[static_cast<size_t>(e - glob_min_)] = acc;
        acc = mulm(acc, ti, p_);
      }
    }
    std::vector<uint64_t> vals_at(images_.size());
    for (size_t i = 0; i < images_.size(); ++i) {
      const ModImage& img = images_[i];
      uint64_t acc = 0;
      for (size_t t = 0; t < img.exps.size(); ++t)
        acc = addm(acc,
                   mulm(img.coeffs[t],
                        pows[static_cast<size_t>(img.exps[t] - glob_min_)], p_),
                   p_);
      vals_at[i] = acc;
    }
    std::vector<std::vector<uint64_t>> m(
        static_cast<size_t>(R), std::vector<uint64_t>(static_cast<size_t>(C)));
    for (int row = 0; row < R; ++row) {
      int n = cfg_.fit_lo + row;
      uint64_t u = powm(tau, static_cast<uint64_t>(2 * n), p_);
      for (int i = 0; i <= d_; ++i) {
        uint64_t jv = vals_at[static_cast<size_t>(n + i - cfg_.fit_lo)];
        uint64_t up = 1;
        for (int j = 0; j <= cfg_.m_degree; ++j) {
          m[static_cast<size_t>(row)][static_cast<size_t>(i * (cfg_.m_degree + 1) + j)] =
              mulm(jv, up, p_);
          up = mulm(up, u, p_);
        }
      }
    }
    // Reduced row echelon form.
    PointKernel out;
    out.tau = tau;
    int prow = 0;
    for (int col = 0; col < C && prow < R; ++col) {
      int sel = -1;
      for (int row = prow; row < R; ++row)
        if (m[static_cast<size_t>(row)][static_cast<size_t>(col)] != 0) {
          sel = row;
          break;
        }
      if (sel < 0) continue;
      std::swap(m[static_cast<size_t>(sel)], m[static_cast<size_t>(prow)]);
      auto& pr = m[static_cast<size_t>(prow)];
      uint64_t inv = invm(pr[static_cast<size_t>(col)], p_);
      for (int c = col; c < C; ++c)
        pr[static_cast<size_t>(c)] = mulm(pr[static_cast<size_t>(c)], inv, p_);
      for (int row = 0; row < R; ++row) {
        if (row == prow) continue;
        uint64_t f = m[static_cast<size_t>(row)][static_cast<size_t>(col)];
        if (f == 0) continue;
        auto& rr = m[static_cast<size_t>(row)];
        for (int c = col; c < C; ++c)
          rr[static_cast<size_t>(c)] =
              subm(rr[static_cast<size_t>(c)], mulm(f, pr[static_cast<size_t>(c)], p_), p_);
      }
      out.pivots.push_back(col);
      ++prow;
    }
    out.nullity = C - static_cast<int>(out.pivots.size());
    if (out.nullity == 0) return out;
    std::vector<bool> is_pivot(static_cast<size_t>(C), false);
    for (int c : out.pivots) is_pivot[static_cast<size_t>(c)] = true;
    for (int f = 0; f < C; ++f) {
      if (is_pivot[static_cast<size_t>(f)]) continue;
      std::vector<uint64_t> x(static_cast<size_t>(C), 0);
      x[static_cast<size_t>(f)] = 1;
      for (size_t r = 0; r < out.pivots.size(); ++r) {
        uint64_t v = m[r][static_cast<size_t>(f)];
        if (v != 0) x[static_cast<size_t>(out.pivots[r])] = p_ - v;
      }
      out.basis.push_back(std::move(x));
    }
    return out;
  }

  const std::vector<IntLaurent>* vals_;
  int first_;
  GuessConfig cfg_;
  int d_;
  int cols_ = 0;
  uint64_t p_ = 0;
  uint64_t next_tau_ = 2;
  int glob_min_ = 0, glob_max_ = 0;
  std::vector<ModImage> images_;
  std::vector<PointKernel> points_;
};

// ---------------------------------------------------------------------------
// Rational number reconstruction (balanced numerator and denominator both
// below sqrt(m/2)); the result is only trusted after exact certification.

bool rational_reconstruct(const mpz_class& residue, const mpz_class& m,
                          mpq_class& out) {
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class u0 = m, u1 = residue % m;
  if (u1 < 0) u1 += m;
  mpz_class v0 = 0, v1 = 1;
  while (u1 > bound) {
    mpz_class q = u0 / u1;
    u0 -= q * u1;
    std::swap(u0, u1);
    v0 -= q * v1;
    std::swap(v0, v1);
  }
  if (v1 == 0) return false;
  if (v1 < 0) {
    v1 = -v1;
    u1 = -u1;
  }
  if (v1 > bound) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), u1.get_mpz_t(), v1.get_mpz_t());
  if (g != 1 && !(u1 == 0 && v1 == 1)) return false;
  out = mpq_class(u1, v1);
  return true;
}

// ---------------------------------------------------------------------------
// Exact certification.  The straightforward route multiplies IntLaurent
// values; the dense route accumulates coefficient products in 128-bit
// integers over the exponent range, which is what makes deep windows (value
// spans in the hundreds of thousands) checkable.  The dense route is only
// taken when an a-priori bound on every slot sum fits well inside 128 bits,
// so both routes are exact.

bool to_int64(const mpz_class& z, int64_t& out) {
  if (!z.fits_slong_p()) return false;
  out = z.get_si();
  return true;
}

using SmallTerms = std::vector<std::pair<int, int64_t>>;

bool extract_small(const IntLaurent& f, SmallTerms& out) {
  out.clear();
  out.reserve(f.terms().size());
  for (const auto& [e, c] : f.terms()) {
    int64_t v;
    if (!to_int64(c, v)) return false;
    out.emplace_back(e, v);
  }
  return true;
}

bool annihilates_row(const QTPoly& op, const std::vector<IntLaurent>& vals,
                     int first_index, int n) {
  // Evaluate coefficients at M = t^{2n} once.
  std::vector<std::pair<int, IntLaurent>> evs;
  evs.reserve(op.terms().size());
  for (const auto& [i, ci] : op.terms())
    evs.emplace_back(i, ci.eval_outer_at_inner_power(2 * n));

  // Slot-sum bound deciding whether 128-bit accumulation is exact.
  mpz_class op_sum = 0, max_val = 0;
  int lo = 0, hi = 0;
  bool any = false;
  for (const auto& [i, ce] : evs) {
    const IntLaurent& jv = vals[static_cast<size_t>(n + i - first_index)];
    if (ce.is_zero() || jv.is_zero()) continue;
    for (const auto& [e, c] : ce.terms()) op_sum += abs(c);
    for (const auto& [e, c] : jv.terms()) {
      mpz_class a = abs(c);
      if (a > max_val) max_val = a;
    }
    int l = ce.min_exp() + jv.min_exp(), h = ce.max_exp() + jv.max_exp();
    lo = any ? std::min(lo, l) : l;
    hi = any ? std::max(hi, h) : h;
    any = true;
  }
  if (!any) return true;
  static const mpz_class kCap = mpz_class(1) << 120;
  bool fast = op_sum * max_val < kCap;

  if (fast) {
    std::vector<__int128> acc(static_cast<size_t>(hi - lo + 1), 0);
    SmallTerms a_terms, b_terms;
    for (const auto& [i, ce] : evs) {
      const IntLaurent& jv = vals[static_cast<size_t>(n + i - first_index)];
      if (ce.is_zero() || jv.is_zero()) continue;
      if (!extract_small(ce, a_terms) || !extract_small(jv, b_terms)) {
        fast = false;
        break;
      }
      for (const auto& [e1, c1] : a_terms) {
        const int off = e1 - lo;
        for (const auto& [e2, c2] : b_terms)
          acc[static_cast<size_t>(off + e2)] += static_cast<__int128>(c1) * c2;
      }
    }
    if (fast) {
      for (__int128 v : acc)
        if (v != 0) return false;
      return true;
    }
  }
  IntLaurent total;
  for (const auto& [i, ce] : evs)
    total += ce * vals[static_cast<size_t>(n + i - first_index)];
  return total.is_zero();
}

bool annihilates_range(const QTPoly& op, const std::vector<IntLaurent>& vals,
                       int first_index, int n_lo, int n_hi) {
  const int rows = n_hi - n_lo + 1;
  if (rows <= 0) return true;
  unsigned workers = std::min(std::thread::hardware_concurrency(), 8u);
  if (workers <= 1 || rows < 16) {
    for (int n = n_lo; n <= n_hi; ++n)
      if (!annihilates_row(op, vals, first_index, n)) return false;
    return true;
  }
  std::vector<char> ok(static_cast<size_t>(workers), 1);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int n = n_lo + static_cast<int>(w); n <= n_hi;
           n += static_cast<int>(workers))
        if (!annihilates_row(op, vals, first_index, n)) {
          ok[w] = 0;
          return;
        }
    });
  }
  for (auto& th : pool) th.join();
  for (char c : ok)
    if (!c) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Candidate assembly from a reconstructed rational vector.

QTPoly assemble_operator(const std::vector<std::vector<mpq_class>>& coords,
                         int d, int m_degree) {
  // coords[c] holds the t-polynomial of ansatz cell c as rationals.
  mpz_class den = 1;
  for (const auto& poly : coords)
    for (const auto& q : poly) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), den.get_mpz_t(),
              q.get_den().get_mpz_t());
      den = den / g * q.get_den();
    }
  std::vector<QTPoly::Term> terms;
  for (int i = 0; i <= d; ++i) {
    std::vector<BiLaurent::Term> mterms;
    for (int j = 0; j <= m_degree; ++j) {
      const auto& poly = coords[static_cast<size_t>(i * (m_degree + 1) + j)];
      std::vector<IntLaurent::Term> ts;
      for (size_t e = 0; e < poly.size(); ++e) {
        mpz_class c = poly[e].get_num() * (den / poly[e].get_den());
        if (c != 0) ts.emplace_back(static_cast<int>(e), c);
      }
      IntLaurent cij = IntLaurent::from_terms(std::move(ts));
      if (!cij.is_zero()) mterms.emplace_back(j, std::move(cij));
    }
    BiLaurent ci = BiLaurent::from_terms(std::move(mterms));
    if (!ci.is_zero()) terms.emplace_back(i, std::move(ci));
  }
  QTPoly raw = QTPoly::from_terms(std::move(terms));
  if (raw.is_zero()) return raw;
  return normalize_to_Tplus(SkewLaurent::from_qtpoly(raw));
}

int op_m_span_total(const QTPoly& op) {
  int total = 0;
  for (const auto& [i, ci] : op.terms()) total += ci.span();
  return total;
}

enum class FitStatus { kFound, kEmptyProven, kUnresolved };

struct FitOutcome {
  FitStatus status = FitStatus::kUnresolved;
  std::optional<RecurrenceCandidate> cand;
};

// Full pipeline for one L-degree: modular kernels, interpolation, CRT with
// rational reconstruction, exact certification, deterministic tie-break.
FitOutcome fit_degree(const std::vector<IntLaurent>& vals, int first_index,
                      const GuessConfig& cfg, int d) {
  ModularFit fit(&vals, first_index, cfg, d);
  const int cols = fit.cols();

  // CRT state per basis vector: dense rational residues and modulus.
  struct Accum {
    std::vector<std::vector<mpz_class>> res;  // [col][t-exp]
    bool live = false;
  };
  std::vector<Accum> accums;
  mpz_class modulus = 1;
  int primes_used = 0;

  std::vector<RecurrenceCandidate> certified;

  for (uint64_t p : fit_primes()) {
    fit.set_prime(p);
    size_t S = 64;
    std::vector<std::vector<Poly>> vectors;  // per basis vector
    bool resolved = false;
    while (S <= 8192) {
      ModularFit::Collect got = fit.collect_points(S);
      if (got == ModularFit::Collect::kFullRank)
        return {FitStatus::kEmptyProven, {}};
      if (got == ModularFit::Collect::kExhausted) break;
      vectors.clear();
      bool all_ok = true;
      for (int r = 0; r < fit.nullity(); ++r) {
        auto v = fit.reconstruct(r);
        if (!v) {
          all_ok = false;
          break;
        }
        vectors.push_back(std::move(*v));
      }
      if (all_ok) {
        resolved = true;
        break;
      }
      S *= 2;
    }
    if (!resolved) continue;  // try the next prime from scratch

    // Merge into the CRT state; shape mismatches discard older primes.
    auto shapes_match = [&](const Accum& a, const std::vector<Poly>& v) {
      for (int c = 0; c < cols; ++c)
        if (a.res[static_cast<size_t>(c)].size() != v[static_cast<size_t>(c)].size())
          return false;
      return true;
    };
    bool restart = accums.size() != vectors.size();
    if (!restart)
      for (size_t r = 0; r < vectors.size() && !restart; ++r)
        restart = !shapes_match(accums[r], vectors[r]);
    if (restart) {
      accums.assign(vectors.size(), {});
      modulus = 1;
      primes_used = 0;
      for (size_t r = 0; r < vectors.size(); ++r) {
        accums[r].res.resize(static_cast<size_t>(cols));
        for (int c = 0; c < cols; ++c) {
          const Poly& f = vectors[r][static_cast<size_t>(c)];
          accums[r].res[static_cast<size_t>(c)].assign(f.size(), 0);
        }
        accums[r].live = true;
      }
    }
    uint64_t minv = modulus == 1
                        ? 0
                        : invm(mpz_fdiv_ui(modulus.get_mpz_t(), p), p);
    for (size_t r = 0; r < vectors.size(); ++r) {
      for (int c = 0; c < cols; ++c) {
        auto& dst = accums[r].res[static_cast<size_t>(c)];
        const Poly& src = vectors[r][static_cast<size_t>(c)];
        for (size_t e = 0; e < src.size(); ++e) {
          if (modulus == 1) {
            dst[e] = src[e];
          } else {
            uint64_t have = mpz_fdiv_ui(dst[e].get_mpz_t(), p);
            uint64_t delta = mulm(subm(src[e], have, p), minv, p);
            dst[e] += modulus * delta;
          }
        }
      }
    }
    modulus *= p;
    ++primes_used;

    // Attempt rational lift of every basis vector, certify the survivors.
    for (size_t r = 0; r < accums.size(); ++r) {
      std::vector<std::vector<mpq_class>> coords(static_cast<size_t>(cols));
      bool lifted = true;
      for (int c = 0; c < cols && lifted; ++c) {
        const auto& res = accums[r].res[static_cast<size_t>(c)];
        auto& out = coords[static_cast<size_t>(c)];
        out.resize(res.size());
        for (size_t e = 0; e < res.size() && lifted; ++e)
          lifted = rational_reconstruct(res[e], modulus, out[e]);
      }
      if (!lifted) continue;
      QTPoly op = assemble_operator(coords, d, cfg.m_degree);
      if (op.is_zero()) continue;
      if (annihilates_range(op, vals, first_index, cfg.fit_lo,
                            cfg.confirm_hi - d)) {
        RecurrenceCandidate cand;
        cand.op = std::move(op);
        cand.certified_up_to = cfg.confirm_hi;
        certified.push_back(std::move(cand));
      }
    }
    if (!certified.empty()) {
      std::sort(certified.begin(), certified.end(),
                [](const RecurrenceCandidate& a, const RecurrenceCandidate& b) {
                  int sa = op_m_span_total(a.op), sb = op_m_span_total(b.op);
                  if (sa != sb) return sa < sb;
                  return a.op.to_string() < b.op.to_string();
                });
      return {FitStatus::kFound, std::move(certified.front())};
    }
    if (primes_used >= 8) break;
  }
  return {FitStatus::kUnresolved, {}};
}

void validate_config(const GuessConfig& cfg) {
  if (cfg.l_degree < 1) throw std::invalid_argument("L-degree must be >= 1");
  if (cfg.m_degree < 0) throw std::invalid_argument("M-degree must be >= 0");
  if (cfg.fit_lo < 0)
    throw std::invalid_argument("fit window must start at index >= 0");
  if (cfg.fit_lo > cfg.fit_hi)
    throw std::invalid_argument("empty fit window");
  if (cfg.confirm_hi < cfg.fit_hi + 10)
    throw std::invalid_argument(
        "confirmation window must reach at least 10 past the fit window");
  if (cfg.confirm_hi - cfg.l_degree <= cfg.fit_hi)
    throw std::invalid_argument(
        "confirmation window too short for the requested L-degree");
  int rows = cfg.fit_hi - cfg.fit_lo + 1;
  int cols = (cfg.l_degree + 1) * (cfg.m_degree + 1);
  if (rows < cols)
    throw std::invalid_argument(
        "underdetermined fit: " + std::to_string(rows) + " rows for " +
        std::to_string(cols) + " unknowns");
}

void validate_window(const std::vector<IntLaurent>& vals, int first_index,
                     const GuessConfig& cfg) {
  int need_lo = cfg.fit_lo, need_hi = cfg.confirm_hi + cfg.l_degree;
  if (first_index > need_lo ||
      first_index + static_cast<int>(vals.size()) <= need_hi)
    throw std::invalid_argument("sequence does not cover the fit and "
                                "confirmation windows");
  bool all_zero = true;
  for (int n = cfg.fit_lo; n <= cfg.fit_hi && all_zero; ++n)
    all_zero = vals[static_cast<size_t>(n - first_index)].is_zero();
  if (all_zero)
    throw std::domain_error("degenerate input: every fit value is zero");
  int tail = 2 * (cfg.l_degree + 1);
  bool tail_zero = true;
  int tail_lo = std::max(cfg.confirm_hi - tail + 1, cfg.fit_lo);
  for (int n = tail_lo; n <= cfg.confirm_hi && tail_zero; ++n)
    tail_zero = vals[static_cast<size_t>(n - first_index)].is_zero();
  if (tail_zero)
    throw std::domain_error(
        "degenerate input: the sequence tail is identically zero");
}

std::vector<IntLaurent> materialize(JonesTable& table, const GuessConfig& cfg) {
  std::vector<IntLaurent> vals;
  int hi = cfg.confirm_hi + cfg.l_degree;
  vals.reserve(static_cast<size_t>(hi - cfg.fit_lo + 1));
  for (int n = cfg.fit_lo; n <= hi; ++n) vals.push_back(table.get(n));
  return vals;
}

}  // namespace

IntLaurent apply_operator(const QTPoly& op, JonesTable& table, int n) {
  IntLaurent total;
  for (const auto& [i, ci] : op.terms())
    total += ci.eval_outer_at_inner_power(2 * n) * table.get(n + i);
  return total;
}

IntLaurent apply_operator(const QTPoly& op, const std::vector<IntLaurent>& vals,
                          int first_index, int n) {
  IntLaurent total;
  for (const auto& [i, ci] : op.terms()) {
    int at = n + i - first_index;
    if (at < 0 || at >= static_cast<int>(vals.size()))
      throw std::domain_error("operator application touches index " +
                              std::to_string(n + i) +
                              " outside the stored sequence");
    total += ci.eval_outer_at_inner_power(2 * n) * vals[static_cast<size_t>(at)];
  }
  return total;
}

std::optional<RecurrenceCandidate> guess_recurrence(
    const std::vector<IntLaurent>& vals, int first_index,
    const GuessConfig& cfg) {
  validate_config(cfg);
  validate_window(vals, first_index, cfg);
  FitOutcome out = fit_degree(vals, first_index, cfg, cfg.l_degree);
  switch (out.status) {
    case FitStatus::kFound:
      return out.cand;
    case FitStatus::kEmptyProven:
      return std::nullopt;
    case FitStatus::kUnresolved:
      break;
  }
  throw std::runtime_error(
      "recurrence reconstruction did not stabilize within the prime and "
      "sample budget");
}

std::optional<RecurrenceCandidate> guess_recurrence(JonesTable& table,
                                                    const GuessConfig& cfg) {
  validate_config(cfg);
  std::vector<IntLaurent> vals = materialize(table, cfg);
  return guess_recurrence(vals, cfg.fit_lo, cfg);
}

std::optional<RecurrenceCandidate> minimize(const std::vector<IntLaurent>& vals,
                                            int first_index,
                                            const GuessConfig& cfg) {
  validate_config(cfg);
  validate_window(vals, first_index, cfg);
  // L-degree 0 never annihilates a nondegenerate window (some fit value is
  // nonzero), but run the rank certificate so minimality at degree 1 is
  // evidence, not convention.
  bool all_proven = true;
  {
    FitOutcome out = fit_degree(vals, first_index, cfg, 0);
    if (out.status == FitStatus::kFound)
      throw std::domain_error(
          "window admits an L-free annihilator; the sequence support is too "
          "sparse to pin a recurrence");
    all_proven = out.status == FitStatus::kEmptyProven;
  }
  for (int d = 1; d <= cfg.l_degree; ++d) {
    FitOutcome out = fit_degree(vals, first_index, cfg, d);
    if (out.status == FitStatus::kFound) {
      out.cand->minimal = all_proven;
      return out.cand;
    }
    if (out.status != FitStatus::kEmptyProven) all_proven = false;
  }
  return std::nullopt;
}

std::optional<RecurrenceCandidate> minimize(JonesTable& table,
                                            const GuessConfig& cfg) {
  validate_config(cfg);
  std::vector<IntLaurent> vals = materialize(table, cfg);
  return minimize(vals, cfg.fit_lo, cfg);
}

AlphaChecks alpha_structure_checks(const RecurrenceCandidate& cand,
                                   const TwoBridgeSpec& knot) {
  AlphaChecks out;
  const QTPoly& op = cand.op;
  out.epsilon = qt_epsilon(op);

  out.l_degree = op.l_span();
  bool first = true;
  int m_lo = 0, m_hi = 0;
  out.only_even_t_powers = true;
  for (const auto& [i, ci] : op.terms()) {
    if (first) {
      m_lo = ci.min_exp();
      m_hi = ci.max_exp();
      first = false;
    } else {
      m_lo = std::min(m_lo, ci.min_exp());
      m_hi = std::max(m_hi, ci.max_exp());
    }
    for (const auto& [j, c] : ci.terms())
      if (!c.exponents_divisible_by(2)) out.only_even_t_powers = false;
  }
  out.m_degree = first ? 0 : m_hi - m_lo;

  MultiPoly l_minus_1 =
      MultiPoly::var(2, 1) - MultiPoly::constant(2, 1);
  if (auto q = out.epsilon.try_divexact(l_minus_1)) {
    out.divisible_by_l_minus_one = true;
    out.epsilon_over_l1 = *q;
  }
  out.m_content = out.epsilon.content_in(1);
  if (auto q = out.epsilon.try_divexact(out.m_content)) out.l_primitive = *q;
  if (!out.l_primitive.is_zero())
    out.squarefree_l = out.l_primitive.squarefree_part(1);

  bool alternating = knot.p >= 3;
  out.l_degree_lower_ok = !alternating || out.l_degree >= 2;
  out.l_degree_upper_ok = out.l_degree <= (knot.p + 1) / 2;
  out.passed = out.divisible_by_l_minus_one && out.l_degree_lower_ok &&
               out.l_degree_upper_ok;
  return out;
}

std::string recurrence_report_json(const RecurrenceCandidate& cand,
                                   const GuessConfig& cfg,
                                   const AlphaChecks* checks) {
  nlohmann::json j;
  j["operator"] = cand.op.to_string();
  j["l_degree"] = cand.op.l_span();
  j["fit"] = {cfg.fit_lo, cfg.fit_hi};
  j["confirm"] = {cfg.fit_hi + 1, cfg.confirm_hi};
  j["certified_up_to"] = cand.certified_up_to;
  j["minimal"] = cand.minimal;
  if (checks != nullptr) {
    nlohmann::json s;
    const std::vector<std::string> ml = {"M", "L"};
    s["epsilon"] = checks->epsilon.to_string(ml);
    s["divisible_by_L_minus_1"] = checks->divisible_by_l_minus_one;
    if (checks->divisible_by_l_minus_one)
      s["epsilon_over_L_minus_1"] = checks->epsilon_over_l1.to_string(ml);
    s["m_content"] = checks->m_content.to_string(ml);
    s["l_primitive"] = checks->l_primitive.to_string(ml);
    s["squarefree_l"] = checks->squarefree_l.to_string(ml);
    s["only_even_t_powers"] = checks->only_even_t_powers;
    s["l_degree_lower_ok"] = checks->l_degree_lower_ok;
    s["l_degree_upper_ok"] = checks->l_degree_upper_ok;
    s["passed"] = checks->passed;
    j["structure"] = s;
  }
  return j.dump(2);
}

}  // namespace skeinlab
