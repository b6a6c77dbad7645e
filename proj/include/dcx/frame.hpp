#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcx/diffop.hpp"
#include "dcx/linalg.hpp"

namespace dcx {

// Declared bracket relation: [lhs, rhs] must equal the named field, or zero
// when expected is "0".
struct BracketCheck {
  std::string lhs, rhs, expected;
};

// Coframe dual to the frame fields, with constant structure equations
// d sigma^i = sum c_{jk} sigma^j ∧ sigma^k (j < k).
struct Coframe {
  std::vector<std::string> labels;
  std::vector<int> label_weights;
  // Covector coefficients in the coordinate differentials: rows[i][k] is the
  // dx_k-coefficient of sigma^i.
  std::vector<std::vector<Polynomial>> rows;
  std::vector<std::map<std::pair<std::size_t, std::size_t>, Rational>> structure;
};

struct Frame {
  std::string name;
  std::vector<std::string> variables;
  std::vector<int> weights;
  std::vector<std::string> field_names;  // X, Y, then derived fields
  std::map<std::string, DiffOp> fields;
  std::vector<BracketCheck> brackets;
  std::string degenerate_desc;
  // Fields whose pointwise span detects the degenerate locus, and its
  // generic dimension.
  std::vector<std::string> span_fields;
  std::size_t generic_rank = 0;
  std::optional<Coframe> coframe;

  std::size_t nvars() const { return variables.size(); }
  const DiffOp& field(const std::string& name) const;
  std::size_t var_index(const std::string& name) const;
};

const Frame& frame_registry(std::string_view name);  // throws on unknown name
const std::vector<std::string>& frame_names();

struct BracketResult {
  std::string lhs, rhs, expected;
  DiffOp actual;
  bool pass;
};
struct BracketReport {
  std::string frame;
  std::vector<BracketResult> checks;
  bool pass = true;
};
BracketReport verify_brackets(const Frame& f);

// Dimension of the span of the chosen fields' coefficient vectors at a point.
std::size_t span_dim_at(const Frame& f, std::span<const std::string> field_names,
                        std::span<const Rational> point);

bool degenerate_at(const Frame& f, std::span<const Rational> point);

// Iterate brackets starting from {X, Y} until the Q-linear span of operators
// stabilizes; returns the pointwise span dimension of the closure.
std::size_t bracket_closure_span_dim(const Frame& f, std::span<const Rational> point);

// Exact checks that the stored coframe is dual to the fields (pairing is the
// identity) and that the declared structure equations match the coordinate
// exterior derivative of each covector.
bool verify_coframe(const Frame& f);

}  // namespace dcx
