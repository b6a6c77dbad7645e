#pragma once

#include <string>
#include <vector>

#include "dcx/diffop.hpp"
#include "dcx/frame.hpp"

namespace dcx {

// One labeled component of a slot. The offset grades the component: an
// element of weighted degree g is a coefficient polynomial of weighted
// degree g - offset, and every differential entry is homogeneous of weight
// source offset - target offset.
struct Component {
  std::string label;
  int offset = 0;
};

struct DiffComplex {
  std::string name;
  std::string frame;  // originating frame name (informational)
  std::vector<std::string> variables;
  std::vector<int> weights;
  std::vector<std::vector<Component>> slots;
  std::vector<OpMatrix> diffs;  // diffs[i]: slot i -> slot i+1

  std::size_t nvars() const { return variables.size(); }
  std::size_t nslots() const { return slots.size(); }
};

// deRham2, rumin, engel, grushin1, grushin2, martinet
const DiffComplex& complex_registry(std::string_view name);
const std::vector<std::string>& complex_names();

struct CompositionFailure {
  std::size_t pair, row, col;
  DiffOp value;
};
struct ComposeReport {
  bool pass = true;
  std::size_t pairs_checked = 0;
  std::vector<CompositionFailure> failures;
};
// Composes each adjacent pair of differentials; passes iff every normal form
// is the zero operator.
ComposeReport verify_complex(const DiffComplex& c);

struct HomogeneityEntry {
  std::size_t diff, row, col;
  long required = 0;
  OpWeight got;
  bool pass = true;
};
struct HomogeneityReport {
  bool pass = true;
  std::vector<HomogeneityEntry> entries;
};
HomogeneityReport verify_homogeneity(const DiffComplex& c);

// Restrict to functions independent of the killed variables (implemented as
// the substitution d/dv -> 0 on normal forms). Preconditions checked: no
// operator coefficient depends on a killed variable and every entry commutes
// with the killed coordinate derivatives. Throws std::invalid_argument with
// the offending entry otherwise.
DiffComplex symmetry_reduce(const DiffComplex& c, const std::vector<std::string>& killed);

// Structural equality: variables, weights, slot offsets and all operator
// entries in normal form (component labels are not compared).
bool same_complex(const DiffComplex& a, const DiffComplex& b);

}  // namespace dcx
