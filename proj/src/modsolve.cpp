#include "skeinlab/modsolve.hpp"

#include <cassert>

namespace skeinlab {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

uint64_t invmod(uint64_t a, uint64_t p) {
  assert(a % p != 0);
  return powmod(a, p - 2, p);  // p prime
}

std::vector<uint64_t> primes62(size_t count) {
  std::vector<uint64_t> out;
  mpz_class c = (mpz_class(1) << 62) - 1;
  while (out.size() < count) {
    while (mpz_probab_prime_p(c.get_mpz_t(), 40) == 0) c -= 2;
    out.push_back(c.get_ui());
    c -= 2;
  }
  return out;
}

std::vector<size_t> rref_mod(std::vector<std::vector<uint64_t>>& a,
                             uint64_t p) {
  std::vector<size_t> pivots;
  if (a.empty()) return pivots;
  const size_t rows = a.size(), cols = a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && a[sel][c] % p == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[r]);
    uint64_t inv = invmod(a[r][c] % p, p);
    for (size_t j = c; j < cols; ++j) a[r][j] = mulmod(a[r][j] % p, inv, p);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      uint64_t f = a[i][c] % p;
      if (f == 0) continue;
      for (size_t j = c; j < cols; ++j) {
        uint64_t sub = mulmod(f, a[r][j], p);
        a[i][j] = (a[i][j] % p + p - sub) % p;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

ModNullspace nullspace_mod(std::vector<std::vector<uint64_t>> a, uint64_t p) {
  ModNullspace out;
  if (a.empty()) return out;
  const size_t cols = a[0].size();
  out.pivot_cols = rref_mod(a, p);
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : out.pivot_cols) is_pivot[c] = true;
  for (size_t freec = 0; freec < cols; ++freec) {
    if (is_pivot[freec]) continue;
    std::vector<uint64_t> v(cols, 0);
    v[freec] = 1;
    for (size_t i = 0; i < out.pivot_cols.size(); ++i) {
      v[out.pivot_cols[i]] = (p - a[i][freec] % p) % p;
    }
    out.basis.push_back(std::move(v));
  }
  return out;
}

mpz_class CrtAccum::mpz_class_from(uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

void CrtAccum::add(const mpz_class& r, const mpz_class& m) {
  if (modulus_ == 1) {
    value_ = r % m;
    modulus_ = m;
    return;
  }
  // x = value_ + modulus_ * k with x = r mod m.
  mpz_class g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
             modulus_.get_mpz_t(), m.get_mpz_t());
  assert(g == 1 && "CrtAccum: moduli not coprime");
  mpz_class k = ((r - value_) % m) * s % m;
  value_ += modulus_ * k;
  modulus_ *= m;
  value_ %= modulus_;
  if (value_ < 0) value_ += modulus_;
}

std::optional<mpq_class> rat_reconstruct(const mpz_class& r,
                                         const mpz_class& m) {
  // Half-extended Euclid until the remainder drops below sqrt(m/2).
  mpz_class bound;
  mpz_sqrt(bound.get_mpz_t(), mpz_class(m / 2).get_mpz_t());
  mpz_class r0 = m, r1 = r % m;
  if (r1 < 0) r1 += m;
  mpz_class t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    mpz_class t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0) return std::nullopt;
  mpz_class den = t1, num = r1;
  if (den < 0) {
    den = -den;
    num = -num;
  }
  if (den > bound) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) return std::nullopt;  // spurious reconstruction
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

std::vector<size_t> rref_mpq(std::vector<std::vector<mpq_class>>& a) {
  std::vector<size_t> pivots;
  if (a.empty()) return pivots;
  const size_t rows = a.size(), cols = a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && a[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[r]);
    mpq_class inv = 1 / a[r][c];
    for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::vector<mpq_class>> nullspace_mpq(
    std::vector<std::vector<mpq_class>> a) {
  std::vector<std::vector<mpq_class>> basis;
  if (a.empty()) return basis;
  const size_t cols = a[0].size();
  std::vector<size_t> pivots = rref_mpq(a);
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  for (size_t freec = 0; freec < cols; ++freec) {
    if (is_pivot[freec]) continue;
    std::vector<mpq_class> v(cols, mpq_class(0));
    v[freec] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) {
      v[pivots[i]] = -a[i][freec];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatInterp> rational_interpolate(
    const std::vector<std::pair<mpq_class, mpq_class>>& pts, int dnum,
    int dden) {
  // Linearized conditions P(x) - y Q(x) = 0; any nullspace vector with
  // Q(x_i) != 0 everywhere gives the function.
  const size_t ncoef = static_cast<size_t>(dnum + dden + 2);
  std::vector<std::vector<mpq_class>> a;
  for (const auto& [x, y] : pts) {
    std::vector<mpq_class> row;
    row.reserve(ncoef);
    mpq_class xp = 1;
    for (int i = 0; i <= dnum; ++i) {
      row.push_back(xp);
      xp *= x;
    }
    xp = 1;
    for (int i = 0; i <= dden; ++i) {
      row.push_back(-y * xp);
      xp *= x;
    }
    a.push_back(std::move(row));
  }
  auto basis = nullspace_mpq(std::move(a));
  for (const auto& v : basis) {
    RatInterp out;
    out.num.assign(v.begin(), v.begin() + dnum + 1);
    out.den.assign(v.begin() + dnum + 1, v.end());
    bool den_zero = true;
    for (const auto& c : out.den) {
      if (c != 0) den_zero = false;
    }
    if (den_zero) continue;
    // Verify honestly: linearization admits spurious common roots.
    bool ok = true;
    for (const auto& [x, y] : pts) {
      mpq_class pv = 0, qv = 0, xp = 1;
      for (const auto& c : out.num) {
        pv += c * xp;
        xp *= x;
      }
      xp = 1;
      for (const auto& c : out.den) {
        qv += c * xp;
        xp *= x;
      }
      if (qv == 0 || pv != y * qv) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    int top = dden;
    while (top > 0 && out.den[static_cast<size_t>(top)] == 0) --top;
    mpq_class lead = out.den[static_cast<size_t>(top)];
    for (auto& c : out.num) c /= lead;
    for (auto& c : out.den) c /= lead;
    return out;
  }
  return std::nullopt;
}

}  // namespace skeinlab
