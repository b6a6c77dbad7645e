#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "dcx/frame.hpp"
#include "dcx/polynomial.hpp"

namespace dcx {

// Exterior form over a frame's coframe. Only strictly increasing label index
// sets are stored, so antisymmetry is canonical.
class Form {
 public:
  Form(const Frame& frame, unsigned degree);

  static Form function(const Frame& frame, const Polynomial& p);

  const Frame& frame() const { return *frame_; }
  unsigned degree() const { return degree_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<std::vector<std::size_t>, Polynomial>& coeffs() const { return coeffs_; }
  Polynomial coeff(std::span<const std::size_t> idx) const;  // zero if absent

  void add(const std::vector<std::size_t>& idx, const Polynomial& p);  // idx strictly increasing
  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;
  Form scaled(const Rational& c) const;
  bool operator==(const Form& o) const;

  std::string str() const;

 private:
  const Frame* frame_;
  unsigned degree_;
  std::map<std::vector<std::size_t>, Polynomial> coeffs_;
};

// Sort a label sequence into increasing order with the permutation sign;
// returns sign 0 for repeated labels.
std::pair<int, std::vector<std::size_t>> sort_with_sign(std::vector<std::size_t> idx);

// Exterior derivative through the structure equations:
// d(g sigma_I) = sum_i (E_i g) sigma^i ∧ sigma_I + g d(sigma_I).
// Throws std::invalid_argument when the frame has no coframe.
Form exterior_d(const Form& w);

// The unique degree-1 lift a xi + b eta + (Xb - Ya) zeta over the heisenberg
// frame; its exterior derivative has no xi∧eta component.
Form rumin_lift(const Polynomial& a, const Polynomial& b);

}  // namespace dcx
