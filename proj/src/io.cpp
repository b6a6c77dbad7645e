#include "dcx/io.hpp"

#include <fstream>
#include <stdexcept>

namespace dcx {

Json poly_to_json(const Polynomial& p) {
  Json arr = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json t;
    t["exponents"] = m.exps();
    t["num"] = num_str(c);
    t["den"] = den_str(c);
    arr.push_back(std::move(t));
  }
  return arr;
}

Polynomial poly_from_json(const Json& j, std::size_t nvars) {
  if (!j.is_array()) throw std::invalid_argument("polynomial json: expected an array of terms");
  Polynomial p(nvars);
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("exponents") || !t.contains("num") || !t.contains("den"))
      throw std::invalid_argument("polynomial json: term needs exponents/num/den");
    const auto& ex = t["exponents"];
    if (!ex.is_array() || ex.size() != nvars)
      throw std::invalid_argument("polynomial json: exponent list must have " +
                                  std::to_string(nvars) + " entries");
    std::vector<unsigned> e;
    for (const auto& v : ex) {
      if (!v.is_number_unsigned())
        throw std::invalid_argument("polynomial json: exponents must be non-negative integers");
      e.push_back(v.get<unsigned>());
    }
    Rational c = rational_from_strings(t["num"].get<std::string>(), t["den"].get<std::string>());
    p.add_term(Monomial(std::move(e)), c);
  }
  return p;
}

Polynomial load_pjson(const std::string& path, std::size_t nvars) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument("cannot parse " + path + ": " + e.what());
  }
  return poly_from_json(j, nvars);
}

void save_pjson(const std::string& path, const Polynomial& p) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << poly_to_json(p).dump(2) << "\n";
}

Json diffop_to_json(const DiffOp& d) {
  Json arr = Json::array();
  for (const auto& [alpha, coeff] : d.terms()) {
    Json t;
    t["alpha"] = alpha;
    t["coeff"] = poly_to_json(coeff);
    arr.push_back(std::move(t));
  }
  return arr;
}

Json opmatrix_to_json(const OpMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(diffop_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json complex_to_json(const DiffComplex& c) {
  Json j;
  j["name"] = c.name;
  j["frame"] = c.frame;
  j["variables"] = c.variables;
  j["weights"] = c.weights;
  Json slots = Json::array();
  for (const auto& slot : c.slots) {
    Json s = Json::array();
    for (const auto& comp : slot) s.push_back({{"label", comp.label}, {"offset", comp.offset}});
    slots.push_back(std::move(s));
  }
  j["slots"] = std::move(slots);
  Json diffs = Json::array();
  for (const auto& d : c.diffs) diffs.push_back(opmatrix_to_json(d));
  j["differentials"] = std::move(diffs);
  return j;
}

}  // namespace dcx
