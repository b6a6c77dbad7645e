#pragma once

#include <span>
#include <string>
#include <vector>

#include "dcx/complex_spec.hpp"
#include "dcx/frame.hpp"

namespace dcx {

// Record of one homological elimination: components `src` of slot i are
// cancelled against components `dst` of slot i+1 through the invertible
// block alpha of the differential between them.
struct CancellationStep {
  std::size_t slot = 0;
  std::vector<std::size_t> src, dst;
  std::vector<std::string> src_labels, dst_labels;
  OpMatrix alpha{0, 0, 0}, beta{0, 0, 0}, gamma{0, 0, 0}, delta{0, 0, 0}, alpha_inv{0, 0, 0};
};

// Inverse of A = S + N with S an invertible constant matrix and S^-1 N
// nilpotent; computed by the terminating geometric series. Throws when the
// constant part is singular or the nilpotency test fails within dim steps.
OpMatrix invert_unipotent(const OpMatrix& a);

// Full de Rham complex of a coframed frame: slots Lambda^0..Lambda^n in the
// increasing coframe basis, differentials as operator matrices in the frame
// fields. Component offsets are the sums of the coframe label weights.
DiffComplex de_rham_complex(const Frame& f);

// Cancel src (slot i) against dst (slot i+1). The middle differential
// becomes delta - gamma alpha^-1 beta, the incoming differential is
// projected to the kept rows and the outgoing one restricted to the kept
// columns. Zero-composition of the result is re-verified symbolically and a
// failure is fatal (std::logic_error).
DiffComplex cancel_pair(const DiffComplex& c, std::size_t slot, std::span<const std::size_t> src,
                        std::span<const std::size_t> dst, CancellationStep* record = nullptr);

struct EntryComparison {
  std::size_t diff, row, col;
  std::string relation;  // "equal" | "negated" | "differs"
};

struct DeriveResult {
  DiffComplex complex;  // final complex, in the documented kept-basis orientation
  std::vector<CancellationStep> steps;
  std::string registry_name;
  bool exact = false;  // entrywise equal to the registry complex
  std::vector<EntryComparison> differences;  // entries with relation != "equal"
};

// target: "rumin" (one cancellation over heisenberg) or "engel" (two
// cancellations over engel). The result is compared entrywise against the
// registry complex of the same name.
DeriveResult derive_complex(std::string_view target);

}  // namespace dcx
