#include "rootcert/linalg.hpp"

#include <cstdlib>
#include <utility>

#include "rootcert/error.hpp"

namespace rootcert {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("integer addition overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("integer multiplication overflow");
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

namespace {

// row_a -= q * row_b
void axpy(IntVec& a, const IntVec& b, std::int64_t q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = checked_add(a[j], -checked_mul(q, b[j]));
}

}  // namespace

IntMatrix hermite_normal_form(IntMatrix rows) {
  if (rows.empty()) return {};
  const std::size_t ncols = rows.front().size();
  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < ncols && pivot_row < rows.size(); ++col) {
    // Euclid on column `col` among rows pivot_row.. until one nonzero remains.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = pivot_row; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        if (best == rows.size() || std::abs(rows[r][col]) < std::abs(rows[best][col])) best = r;
      }
      if (best == rows.size()) break;
      std::swap(rows[pivot_row], rows[best]);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        axpy(rows[r], rows[pivot_row], rows[r][col] / rows[pivot_row][col]);
        if (rows[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[pivot_row][col] == 0) continue;
    if (rows[pivot_row][col] < 0)
      for (auto& v : rows[pivot_row]) v = -v;
    pivot_cols.push_back(col);
    ++pivot_row;
  }
  rows.resize(pivot_row);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t col = pivot_cols[i];
    for (std::size_t r = 0; r < i; ++r) axpy(rows[r], rows[i], floor_div(rows[r][col], rows[i][col]));
  }
  return rows;
}

RatMatrix identity_matrix(std::size_t n) {
  RatMatrix m(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
  const std::size_t n = a.size(), inner = b.size(), m = b.empty() ? 0 : b.front().size();
  RatMatrix c(n, RatVec(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

RatVec multiply(const RatMatrix& a, const RatVec& x) {
  RatVec y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

RatMatrix transpose(const RatMatrix& a) {
  if (a.empty()) return {};
  RatMatrix t(a.front().size(), RatVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

RatMatrix inverse(RatMatrix a) {
  const std::size_t n = a.size();
  RatMatrix inv = identity_matrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw ConsistencyError("inverse of a singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const Rational p = a[r][c];
    for (auto& v : a[r]) v /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t matrix_rank(RatMatrix a) { return rref(a).size(); }

RatMatrix nullspace(RatMatrix a) {
  if (a.empty()) return {};
  const std::size_t cols = a.front().size();
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  RatMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RatVec v(cols);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace rootcert
