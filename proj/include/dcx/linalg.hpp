#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dcx/rational.hpp"

namespace dcx {

// Dense matrix over the rationals. Sizes in this project stay in the low
// hundreds, so a dense representation with normalized fraction pivoting is
// the right tradeoff.
class RationalMatrix {
 public:
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  RationalMatrix operator*(const RationalMatrix& o) const;
  std::vector<Rational> apply(std::span<const Rational> v) const;
  bool operator==(const RationalMatrix&) const = default;

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> a_;
};

struct RankNullspace {
  std::size_t rank = 0;
  // Canonical basis from the reduced row echelon form: one vector per free
  // column, with a 1 in that coordinate.
  std::vector<std::vector<Rational>> nullspace;
};

RankNullspace rank_nullspace(const RationalMatrix& m);
std::size_t rank(const RationalMatrix& m);

// Exact particular solution of M x = v, or nullopt when v is outside the
// column space (equivalent to rank(M) < rank([M|v])).
std::optional<std::vector<Rational>> solve_linear(const RationalMatrix& m,
                                                  std::span<const Rational> v);

// Inverse of a square matrix, or nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

// Incremental span of row vectors; insert() reports whether the vector
// enlarged the span. Used for image bases and representative selection.
class SpanTracker {
 public:
  explicit SpanTracker(std::size_t dim) : dim_(dim) {}
  bool insert(std::vector<Rational> v);
  bool contains(std::vector<Rational> v) const;
  std::size_t rank() const { return rows_.size(); }

 private:
  std::size_t dim_;
  std::vector<std::pair<std::size_t, std::vector<Rational>>> rows_;  // (pivot, reduced row)
};

}  // namespace dcx
