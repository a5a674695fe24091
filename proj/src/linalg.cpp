#include "skeinlab/linalg.hpp"

#include <cassert>

namespace skeinlab {

namespace {

// Clears denominators row by row (row scaling does not change the nullspace).
std::vector<std::vector<BiLaurent>> clear_rows(const RatMat& a) {
  std::vector<std::vector<BiLaurent>> m;
  m.reserve(a.size());
  for (const auto& row : a) {
    BiLaurent mult = BiLaurent::one();
    for (const auto& e : row) mult *= e.den();
    std::vector<BiLaurent> out;
    out.reserve(row.size());
    for (const auto& e : row) {
      out.push_back(e.num() * mult.divexact_outer(e.den()));
    }
    m.push_back(std::move(out));
  }
  return m;
}

}  // namespace

std::vector<RatVec> ratfn_nullspace(const RatMat& a) {
  if (a.empty()) return {};
  const size_t rows = a.size(), cols = a[0].size();
  auto m = clear_rows(a);
  // One-step Bareiss: entries stay polynomial, divisions are exact.
  std::vector<size_t> pivot_cols;
  BiLaurent prev = BiLaurent::one();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && m[sel][c].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j) {
        BiLaurent num = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        m[i][j] = num.divexact_outer(prev);
      }
      m[i][c] = BiLaurent();
    }
    prev = m[r][c];
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivot_cols) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (size_t freec = 0; freec < cols; ++freec) {
    if (is_pivot[freec]) continue;
    RatVec v(cols, RatFn::zero());
    v[freec] = RatFn::one();
    for (size_t i = pivot_cols.size(); i-- > 0;) {
      size_t pc = pivot_cols[i];
      RatFn acc = RatFn::zero();
      for (size_t j = pc + 1; j < cols; ++j) {
        if (v[j].is_zero() || m[i][j].is_zero()) continue;
        acc += RatFn::from_poly(m[i][j]) * v[j];
      }
      v[pc] = -acc / RatFn::from_poly(m[i][pc]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVec> ratfn_solve(const RatMat& a, const RatVec& b) {
  const size_t n = a.size();
  assert(!a.empty() && a[0].size() == n && b.size() == n);
  RatMat aug = a;
  for (size_t i = 0; i < n; ++i) aug[i].push_back(-b[i]);
  auto basis = ratfn_nullspace(aug);
  if (basis.size() != 1 || basis[0][n].is_zero()) return std::nullopt;
  RatFn scale = basis[0][n].inverse();
  RatVec x(n);
  for (size_t i = 0; i < n; ++i) x[i] = basis[0][i] * scale;
  return x;
}

}  // namespace skeinlab
