#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcx/complex_spec.hpp"
#include "dcx/linalg.hpp"

namespace dcx {

// Element of one slot: a coefficient polynomial per component.
struct Cochain {
  std::vector<Polynomial> comps;
  bool operator==(const Cochain&) const = default;
};

struct BasisElem {
  std::size_t comp;
  Monomial mono;
};

// Monomial basis of a slot at total weighted degree g: all (component,
// monomial) pairs with wdeg(monomial) + offset = g, ordered by (monomial,
// component). `reversed` flips the enumeration (used to check that reported
// dimensions do not depend on basis order).
std::vector<BasisElem> slot_basis(const DiffComplex& c, std::size_t slot, long g,
                                  bool reversed = false);

// Matrix of diffs[k] restricted to the degree-g slices.
RationalMatrix transfer_matrix(const DiffComplex& c, std::size_t k, long g, bool reversed = false);

Cochain cochain_from_coords(const DiffComplex& c, std::size_t slot,
                            const std::vector<BasisElem>& basis,
                            std::span<const Rational> coords);

struct SlotDegreeData {
  std::size_t dim = 0, kernel = 0, image = 0, h = 0;
  std::vector<Cochain> reps;
};

struct CohomologyReport {
  std::string complex;
  long max_degree = 0;
  std::vector<std::vector<SlotDegreeData>> per_degree;  // [g][slot]
  std::vector<std::size_t> totals;                      // per slot, summed over g <= G
};

// Exact graded cohomology up to weighted degree G. Representatives are
// chosen deterministically: canonical nullspace cocycles sorted by number of
// nonzero coordinates then leading coordinate, greedily extending the image
// basis, normalized to leading coefficient 1.
CohomologyReport cohomology(const DiffComplex& c, long max_degree, bool reversed = false);

// Rank-nullity consistency at one degree:
// sum (-1)^i dim slot_i = sum (-1)^i dim H^i.
bool euler_check(const DiffComplex& c, long g);

// One displayed integrability condition, evaluated on the input:
// lhs = rhs with defect = rhs - lhs.
struct ConditionView {
  std::string display;
  Polynomial lhs, rhs, defect;
  bool pass = false;
};

struct IntegrabilityReport {
  bool ok = false;
  std::vector<Polynomial> residual;  // D_level(v), componentwise
  // Theorem-shaped view, available at level 1 of grushin1/martinet/grushin2.
  std::vector<ConditionView> conditions;
};

// True iff D_level(v) = 0 exactly.
IntegrabilityReport check_integrability(const DiffComplex& c, std::size_t level, const Cochain& v);

struct SplitConstant {
  Cochain rep;
  long degree = 0;
  Rational value;
};

// Exact splitting of a cocycle v in slot `level`:
//   D_{level-1}(u) = v + sum c_j h_j
// with h_j the canonical representatives, solved independently per weighted
// degree. With this orientation the constants are literally the C, D, E of
// the integrability theorems. `reconstructed` records the final substitution
// check (always true on success).
struct SplitResult {
  bool ok = false;  // false: not a cocycle, see integrability
  IntegrabilityReport integrability;
  Cochain potential;
  std::vector<SplitConstant> constants;
  bool reconstructed = false;
};

SplitResult split_cocycle(const DiffComplex& c, std::size_t level, const Cochain& v);

// Theorem-level wrapper: solves Xf = a, Yf = (affine term) + b over
// grushin1 / martinet / grushin2 (level 1), or the second-level system of
// grushin2 (level 2, constant E). Constants carry their theorem names.
struct SolveResult {
  bool ok = false;
  IntegrabilityReport integrability;
  Cochain potential;  // level 1: single f; level 2: (a, b)
  std::vector<std::pair<std::string, Rational>> constants;
};

SolveResult solve_potential(std::string_view name, const Polynomial& a, const Polynomial& b,
                            std::size_t level = 1);

}  // namespace dcx
