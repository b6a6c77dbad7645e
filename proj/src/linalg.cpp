#include "dcx/linalg.hpp"

#include <stdexcept>

namespace dcx {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  RationalMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

std::vector<Rational> RationalMatrix::apply(std::span<const Rational> v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix apply dimension mismatch");
  std::vector<Rational> r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != 0) r[i] += at(i, j) * v[j];
  return r;
}

namespace {

// Reduced row echelon form, in place; returns pivot column per pivot row.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Rational inv = Rational(1) / rows[r][c];
    for (std::size_t j = c; j < cols; ++j) rows[r][j] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::vector<Rational>> to_rows(const RationalMatrix& m) {
  std::vector<std::vector<Rational>> rows(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m.at(i, j);
  return rows;
}

}  // namespace

RankNullspace rank_nullspace(const RationalMatrix& m) {
  auto rows = to_rows(m);
  auto pivots = rref(rows, m.cols());
  RankNullspace out;
  out.rank = pivots.size();
  std::vector<long> pivot_of_col(m.cols(), -1);
  for (std::size_t r = 0; r < pivots.size(); ++r) pivot_of_col[pivots[r]] = static_cast<long>(r);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (pivot_of_col[c] >= 0) continue;
    std::vector<Rational> v(m.cols());
    v[c] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][c];
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

std::size_t rank(const RationalMatrix& m) {
  auto rows = to_rows(m);
  return rref(rows, m.cols()).size();
}

std::optional<std::vector<Rational>> solve_linear(const RationalMatrix& m,
                                                  std::span<const Rational> v) {
  if (v.size() != m.rows()) throw std::invalid_argument("solve_linear dimension mismatch");
  std::vector<std::vector<Rational>> rows(m.rows(), std::vector<Rational>(m.cols() + 1));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m.at(i, j);
    rows[i][m.cols()] = v[i];
  }
  auto pivots = rref(rows, m.cols() + 1);
  for (std::size_t p : pivots)
    if (p == m.cols()) return std::nullopt;  // pivot in the augmented column: inconsistent
  std::vector<Rational> x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = rows[r][m.cols()];
  return x;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  std::size_t n = m.rows();
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = m.at(i, j);
    rows[i][n + i] = 1;
  }
  auto pivots = rref(rows, 2 * n);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = rows[i][n + j];
  return inv;
}

bool SpanTracker::insert(std::vector<Rational> v) {
  if (v.size() != dim_) throw std::invalid_argument("SpanTracker dimension mismatch");
  for (const auto& [p, row] : rows_) {
    if (v[p] == 0) continue;
    Rational f = v[p];
    for (std::size_t j = 0; j < dim_; ++j) v[j] -= f * row[j];
  }
  std::size_t p = 0;
  while (p < dim_ && v[p] == 0) ++p;
  if (p == dim_) return false;
  Rational inv = Rational(1) / v[p];
  for (auto& x : v) x *= inv;
  rows_.emplace_back(p, std::move(v));
  return true;
}

bool SpanTracker::contains(std::vector<Rational> v) const {
  for (const auto& [p, row] : rows_) {
    if (v[p] == 0) continue;
    Rational f = v[p];
    for (std::size_t j = 0; j < dim_; ++j) v[j] -= f * row[j];
  }
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace dcx
