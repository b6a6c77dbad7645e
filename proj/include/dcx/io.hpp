#pragma once

#include <json.hpp>

#include <string>

#include "dcx/complex_spec.hpp"
#include "dcx/diffop.hpp"
#include "dcx/polynomial.hpp"

namespace dcx {

using Json = nlohmann::ordered_json;

// Polynomial wire format (.pjson): array of
//   {"exponents": [e1,...,en], "num": "<decimal>", "den": "<decimal>"}
// in canonical term order; integers as decimal strings.
Json poly_to_json(const Polynomial& p);
Polynomial poly_from_json(const Json& j, std::size_t nvars);

Polynomial load_pjson(const std::string& path, std::size_t nvars);
void save_pjson(const std::string& path, const Polynomial& p);

// DiffOp: array of {"alpha": [...], "coeff": <polynomial>}.
Json diffop_to_json(const DiffOp& d);
// OpMatrix: row-major nested lists.
Json opmatrix_to_json(const OpMatrix& m);
Json complex_to_json(const DiffComplex& c);

}  // namespace dcx
