#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "dcx/polynomial.hpp"

namespace dcx {

using MultiIndex = std::vector<unsigned>;

inline unsigned multi_order(const MultiIndex& a) {
  unsigned s = 0;
  for (unsigned v : a) s += v;
  return s;
}

// Weight of an operator under a variable weighting: the w with
// D : (degree g) -> (degree g + w) when it exists. The zero operator is
// homogeneous of every weight.
struct OpWeight {
  enum class Kind { Zero, Homogeneous, Inhomogeneous };
  Kind kind = Kind::Zero;
  long weight = 0;
};

// Linear differential operator with polynomial coefficients in normal form:
// sum over multi-indices alpha of p_alpha * D^alpha, derivatives to the right.
// Equality of normal forms decides operator equality.
class DiffOp {
 public:
  // The displayed operators have order <= 3; compositions past this cap are
  // runaway bugs, not legitimate values.
  static constexpr unsigned kOrderCap = 8;

  DiffOp() : nvars_(0) {}  // zero over an empty variable list
  explicit DiffOp(std::size_t nvars) : nvars_(nvars) {}

  static DiffOp zero(std::size_t nvars) { return DiffOp(nvars); }
  static DiffOp identity(std::size_t nvars);
  static DiffOp partial(std::size_t nvars, std::size_t var);
  static DiffOp from_poly(const Polynomial& p);  // multiplication operator
  static DiffOp term(const MultiIndex& alpha, const Polynomial& coeff);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned order() const;
  const std::map<MultiIndex, Polynomial>& terms() const { return terms_; }

  DiffOp operator+(const DiffOp& o) const;
  DiffOp operator-(const DiffOp& o) const;
  DiffOp operator-() const;
  DiffOp scaled(const Rational& c) const;
  bool operator==(const DiffOp&) const = default;

  Polynomial apply(const Polynomial& f) const;

  // Normal-ordered product: (this o other)(f) = this(other(f)). Reordering
  // uses the Leibniz rule D^a (q g) = sum C(a,c) (D^c q) (D^{a-c} g).
  DiffOp compose(const DiffOp& other) const;
  DiffOp bracket(const DiffOp& other) const;  // this∘other − other∘this

  bool is_vector_field() const;  // every term has |alpha| = 1
  // Coefficient of d/dx_i per variable; requires a vector field (or zero).
  std::vector<Polynomial> field_coeffs() const;

  OpWeight weight(std::span<const int> weights) const;

  bool coeffs_depend_on(std::size_t var) const;
  // Substitute d/dx_v -> 0 for killed variables and drop them from the
  // ambient list (coefficients must not depend on killed variables).
  DiffOp drop_vars(const std::vector<bool>& kill) const;

  void add_term(const MultiIndex& alpha, const Polynomial& coeff);

  std::string str(std::span<const std::string> names) const;

 private:
  std::size_t nvars_;
  std::map<MultiIndex, Polynomial> terms_;
};

// Matrix of operators over a shared ambient variable list; rows act on the
// target slot, columns on the source slot.
class OpMatrix {
 public:
  OpMatrix(std::size_t rows, std::size_t cols, std::size_t nvars);

  static OpMatrix identity(std::size_t n, std::size_t nvars);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nvars() const { return nvars_; }
  DiffOp& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const DiffOp& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  OpMatrix compose(const OpMatrix& other) const;  // this ∘ other
  OpMatrix operator+(const OpMatrix& o) const;
  OpMatrix operator-(const OpMatrix& o) const;
  std::vector<Polynomial> apply(std::span<const Polynomial> v) const;
  bool is_zero() const;
  bool operator==(const OpMatrix&) const = default;

  OpMatrix submatrix(std::span<const std::size_t> row_idx,
                     std::span<const std::size_t> col_idx) const;
  void scale_row(std::size_t r, const Rational& c);
  void scale_col(std::size_t c, const Rational& s);

 private:
  std::size_t rows_, cols_, nvars_;
  std::vector<DiffOp> a_;
};

}  // namespace dcx
