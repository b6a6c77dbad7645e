#include "dcx/frame.hpp"

#include <iterator>
#include <stdexcept>

namespace dcx {

const DiffOp& Frame::field(const std::string& fname) const {
  auto it = fields.find(fname);
  if (it == fields.end())
    throw std::invalid_argument("frame " + name + " has no field " + fname);
  return it->second;
}

std::size_t Frame::var_index(const std::string& vname) const {
  for (std::size_t i = 0; i < variables.size(); ++i)
    if (variables[i] == vname) return i;
  throw std::invalid_argument("frame " + name + " has no variable " + vname);
}

namespace {

// d/dx_i with a polynomial coefficient.
DiffOp fld(std::size_t nvars, std::initializer_list<std::pair<std::size_t, Polynomial>> parts) {
  DiffOp d(nvars);
  for (const auto& [var, coeff] : parts) {
    MultiIndex a(nvars, 0);
    a[var] = 1;
    d.add_term(a, coeff);
  }
  return d;
}

Polynomial c(std::size_t n, long v) { return Polynomial::constant(n, v); }
Polynomial mono(std::size_t n, std::size_t var, unsigned pow, long coeff = 1) {
  return Polynomial::term(Monomial::var(n, var, pow), coeff);
}

std::vector<BracketCheck> pair_table() {
  return {{"X", "Y", "Z"}, {"X", "Z", "0"}, {"Y", "Z", "0"}};
}
std::vector<BracketCheck> quad_table() {
  return {{"X", "Y", "Z"}, {"X", "Z", "W"}, {"Y", "Z", "0"},
          {"X", "W", "0"}, {"Y", "W", "0"}, {"Z", "W", "0"}};
}

Frame make_flat2() {
  Frame f;
  f.name = "flat2";
  f.variables = {"x", "y"};
  f.weights = {1, 1};
  f.field_names = {"X", "Y"};
  f.fields.emplace("X", fld(2, {{0, c(2, 1)}}));
  f.fields.emplace("Y", fld(2, {{1, c(2, 1)}}));
  f.brackets = {{"X", "Y", "0"}};
  f.degenerate_desc = "none (constant rank 2)";
  f.span_fields = {"X", "Y"};
  f.generic_rank = 2;
  Coframe cf;
  cf.labels = {"xi", "eta"};
  cf.label_weights = {1, 1};
  cf.rows = {{c(2, 1), c(2, 0)}, {c(2, 0), c(2, 1)}};
  cf.structure.resize(2);
  f.coframe = std::move(cf);
  return f;
}

Frame make_grushin1() {
  Frame f;
  f.name = "grushin1";
  f.variables = {"x", "y"};
  f.weights = {1, 2};
  f.field_names = {"X", "Y", "Z"};
  f.fields.emplace("X", fld(2, {{0, c(2, 1)}}));
  f.fields.emplace("Y", fld(2, {{1, mono(2, 0, 1)}}));  // x d/dy
  f.fields.emplace("Z", fld(2, {{1, c(2, 1)}}));
  f.brackets = pair_table();
  f.degenerate_desc = "x = 0 (the y-axis)";
  f.span_fields = {"X", "Y"};
  f.generic_rank = 2;
  return f;
}

Frame make_grushin2() {
  Frame f;
  f.name = "grushin2";
  f.variables = {"x", "y"};
  f.weights = {1, 3};
  f.field_names = {"X", "Y", "Z", "W"};
  f.fields.emplace("X", fld(2, {{0, c(2, 1)}}));
  f.fields.emplace("Y", fld(2, {{1, mono(2, 0, 2)}}));     // x^2 d/dy
  f.fields.emplace("Z", fld(2, {{1, mono(2, 0, 1, 2)}}));  // 2x d/dy
  f.fields.emplace("W", fld(2, {{1, c(2, 2)}}));           // 2 d/dy
  f.brackets = quad_table();
  f.degenerate_desc = "x = 0 (the y-axis)";
  f.span_fields = {"X", "Y"};
  f.generic_rank = 2;
  return f;
}

Frame make_heisenberg() {
  Frame f;
  f.name = "heisenberg";
  f.variables = {"x", "t", "y"};
  f.weights = {1, 1, 2};
  f.field_names = {"X", "Y", "Z"};
  f.fields.emplace("X", fld(3, {{0, c(3, 1)}}));
  f.fields.emplace("Y", fld(3, {{1, c(3, 1)}, {2, mono(3, 0, 1)}}));  // d/dt + x d/dy
  f.fields.emplace("Z", fld(3, {{2, c(3, 1)}}));
  f.brackets = pair_table();
  f.degenerate_desc = "none (contact: constant rank 3)";
  f.span_fields = {"X", "Y", "Z"};
  f.generic_rank = 3;
  // xi = dx, eta = dt, zeta = dy - x dt; d zeta = eta ∧ xi.
  Coframe cf;
  cf.labels = {"xi", "eta", "zeta"};
  cf.label_weights = {1, 1, 2};
  cf.rows = {{c(3, 1), c(3, 0), c(3, 0)},
             {c(3, 0), c(3, 1), c(3, 0)},
             {c(3, 0), -mono(3, 0, 1), c(3, 1)}};
  cf.structure.resize(3);
  cf.structure[2][{0, 1}] = -1;  // d zeta = -xi ∧ eta
  f.coframe = std::move(cf);
  return f;
}

Frame make_martinet() {
  Frame f;
  f.name = "martinet";
  f.variables = {"x", "z", "y"};
  f.weights = {1, 1, 3};
  f.field_names = {"X", "Y", "Z", "W"};
  f.fields.emplace("X", fld(3, {{0, c(3, 1)}}));
  f.fields.emplace("Y", fld(3, {{1, c(3, 1)}, {2, mono(3, 0, 2)}}));  // d/dz + x^2 d/dy
  f.fields.emplace("Z", fld(3, {{2, mono(3, 0, 1, 2)}}));             // 2x d/dy
  f.fields.emplace("W", fld(3, {{2, c(3, 2)}}));                      // 2 d/dy
  f.brackets = quad_table();
  f.degenerate_desc = "x = 0 (the (z,y)-plane)";
  f.span_fields = {"X", "Y", "Z"};
  f.generic_rank = 3;
  return f;
}

Frame make_engel() {
  Frame f;
  f.name = "engel";
  f.variables = {"x", "z", "t", "y"};
  f.weights = {1, 1, 2, 3};
  f.field_names = {"X", "Y", "Z", "W"};
  f.fields.emplace("X", fld(4, {{0, c(4, 1)}}));
  // d/dz + x d/dt + x^2 d/dy
  f.fields.emplace("Y", fld(4, {{1, c(4, 1)}, {2, mono(4, 0, 1)}, {3, mono(4, 0, 2)}}));
  f.fields.emplace("Z", fld(4, {{2, c(4, 1)}, {3, mono(4, 0, 1, 2)}}));  // d/dt + 2x d/dy
  f.fields.emplace("W", fld(4, {{3, c(4, 2)}}));                         // 2 d/dy
  f.brackets = quad_table();
  f.degenerate_desc = "none (constant rank 4)";
  f.span_fields = {"X", "Y", "Z", "W"};
  f.generic_rank = 4;
  // Dual coframe of the fields above:
  // xi = dx, eta = dz, zeta = dt - x dz, omega = (x^2/2) dz - x dt + (1/2) dy
  // with d zeta = eta ∧ xi and d omega = zeta ∧ xi.
  Coframe cf;
  cf.labels = {"xi", "eta", "zeta", "omega"};
  cf.label_weights = {1, 1, 2, 3};
  Polynomial half = Polynomial::constant(4, Rational(1) / 2);
  Polynomial half_x2 = mono(4, 0, 2).scaled(Rational(1) / 2);
  cf.rows = {{c(4, 1), c(4, 0), c(4, 0), c(4, 0)},
             {c(4, 0), c(4, 1), c(4, 0), c(4, 0)},
             {c(4, 0), -mono(4, 0, 1), c(4, 1), c(4, 0)},
             {c(4, 0), half_x2, -mono(4, 0, 1), half}};
  cf.structure.resize(4);
  cf.structure[2][{0, 1}] = -1;  // d zeta = -xi ∧ eta
  cf.structure[3][{0, 2}] = -1;  // d omega = -xi ∧ zeta
  f.coframe = std::move(cf);
  return f;
}

Frame make_engel_alt() {
  Frame f;
  f.name = "engel_alt";
  f.variables = {"x", "z", "t", "y"};
  f.weights = {1, 1, 2, 3};
  f.field_names = {"X", "Y", "Z", "W"};
  // X = d/dx - z d/dt - t d/dy, Y = d/dz, Z = d/dt, W = d/dy.
  f.fields.emplace("X", fld(4, {{0, c(4, 1)}, {2, -mono(4, 1, 1)}, {3, -mono(4, 2, 1)}}));
  f.fields.emplace("Y", fld(4, {{1, c(4, 1)}}));
  f.fields.emplace("Z", fld(4, {{2, c(4, 1)}}));
  f.fields.emplace("W", fld(4, {{3, c(4, 1)}}));
  f.brackets = quad_table();
  f.degenerate_desc = "none (constant rank 4)";
  f.span_fields = {"X", "Y", "Z", "W"};
  f.generic_rank = 4;
  return f;
}

}  // namespace

const std::vector<std::string>& frame_names() {
  static const std::vector<std::string> names = {"flat2",    "heisenberg", "engel",    "grushin1",
                                                 "grushin2", "martinet",   "engel_alt"};
  return names;
}

const Frame& frame_registry(std::string_view name) {
  static const std::map<std::string, Frame, std::less<>> reg = [] {
    std::map<std::string, Frame, std::less<>> m;
    for (Frame f : {make_flat2(), make_heisenberg(), make_engel(), make_grushin1(),
                    make_grushin2(), make_martinet(), make_engel_alt()})
      m.emplace(f.name, std::move(f));
    return m;
  }();
  auto it = reg.find(name);
  if (it == reg.end()) throw std::invalid_argument("unknown frame: " + std::string(name));
  return it->second;
}

BracketReport verify_brackets(const Frame& f) {
  BracketReport rep;
  rep.frame = f.name;
  for (const auto& bc : f.brackets) {
    BracketResult r{bc.lhs, bc.rhs, bc.expected, DiffOp(f.nvars()), false};
    r.actual = f.field(bc.lhs).bracket(f.field(bc.rhs));
    DiffOp expected =
        bc.expected == "0" ? DiffOp::zero(f.nvars()) : f.field(bc.expected);
    r.pass = (r.actual == expected);
    rep.pass = rep.pass && r.pass;
    rep.checks.push_back(std::move(r));
  }
  return rep;
}

namespace {

std::size_t span_dim_of_ops(const std::vector<const DiffOp*>& ops, const Frame& f,
                            std::span<const Rational> point) {
  if (point.size() != f.nvars())
    throw std::invalid_argument("point dimension does not match the ambient space");
  RationalMatrix m(ops.size(), f.nvars());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    auto coeffs = ops[i]->field_coeffs();
    for (std::size_t j = 0; j < f.nvars(); ++j) m.at(i, j) = coeffs[j].eval(point);
  }
  return rank(m);
}

}  // namespace

std::size_t span_dim_at(const Frame& f, std::span<const std::string> field_names,
                        std::span<const Rational> point) {
  std::vector<const DiffOp*> ops;
  for (const auto& n : field_names) ops.push_back(&f.field(n));
  return span_dim_of_ops(ops, f, point);
}

bool degenerate_at(const Frame& f, std::span<const Rational> point) {
  return span_dim_at(f, f.span_fields, point) < f.generic_rank;
}

std::size_t bracket_closure_span_dim(const Frame& f, std::span<const Rational> point) {
  // Q-linear span of the operators, tracked on flattened coefficient vectors.
  std::vector<DiffOp> closure = {f.field("X"), f.field("Y")};

  // Index all monomials that appear across coefficients to flatten exactly.
  auto flatten = [&](const DiffOp& d, const std::map<std::pair<std::size_t, Monomial>, std::size_t>& ix) {
    std::vector<Rational> v(ix.size());
    auto coeffs = d.field_coeffs();
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      for (const auto& [m, c] : coeffs[j].terms()) v[ix.at({j, m})] = c;
    return v;
  };

  bool grew = true;
  while (grew) {
    grew = false;
    std::map<std::pair<std::size_t, Monomial>, std::size_t> ix;
    std::vector<DiffOp> candidates;
    for (std::size_t i = 0; i < closure.size(); ++i)
      for (std::size_t j = i + 1; j < closure.size(); ++j) {
        DiffOp b = closure[i].bracket(closure[j]);
        if (!b.is_zero()) candidates.push_back(std::move(b));
      }
    auto index_op = [&](const DiffOp& d) {
      auto coeffs = d.field_coeffs();
      for (std::size_t j = 0; j < coeffs.size(); ++j)
        for (const auto& [m, c] : coeffs[j].terms()) ix.emplace(std::pair{j, m}, 0);
    };
    for (const auto& d : closure) index_op(d);
    for (const auto& d : candidates) index_op(d);
    std::size_t k = 0;
    for (auto& [key, val] : ix) val = k++;
    SpanTracker span(ix.size());
    for (const auto& d : closure) span.insert(flatten(d, ix));
    for (auto& cand : candidates) {
      if (span.insert(flatten(cand, ix))) {
        closure.push_back(std::move(cand));
        grew = true;
      }
    }
  }

  std::vector<const DiffOp*> ops;
  for (const auto& d : closure) ops.push_back(&d);
  return span_dim_of_ops(ops, f, point);
}

bool verify_coframe(const Frame& f) {
  if (!f.coframe) return false;
  const Coframe& cf = *f.coframe;
  std::size_t n = f.nvars();
  if (cf.labels.size() != n) return false;

  // Duality: <sigma^i, E_j> = delta_ij as polynomials.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto coeffs = f.field(f.field_names[j]).field_coeffs();
      Polynomial pairing(n);
      for (std::size_t k = 0; k < n; ++k) pairing += cf.rows[i][k] * coeffs[k];
      Polynomial expected = Polynomial::constant(n, i == j ? 1 : 0);
      if (!(pairing == expected)) return false;
    }
  }

  // Structure equations: the coordinate exterior derivative of sigma^i must
  // equal sum c_{jk} sigma^j ∧ sigma^k expanded in coordinates.
  for (std::size_t i = 0; i < n; ++i) {
    // actual[a][b] (a<b): coefficient of dx_a ∧ dx_b in d sigma^i
    std::map<std::pair<std::size_t, std::size_t>, Polynomial> actual;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t a = 0; a < n; ++a) {
        Polynomial d = cf.rows[i][k].derivative(a);  // d(C_ik) ∧ dx_k term
        if (d.is_zero() || a == k) continue;
        auto key = a < k ? std::pair{a, k} : std::pair{k, a};
        Polynomial signed_d = a < k ? d : -d;
        auto it = actual.find(key);
        if (it == actual.end())
          actual.emplace(key, signed_d);
        else
          it->second += signed_d;
      }
    }
    std::map<std::pair<std::size_t, std::size_t>, Polynomial> claimed;
    for (const auto& [jk, coeff] : cf.structure[i]) {
      auto [j, k] = jk;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          if (a == b) continue;
          Polynomial p = (cf.rows[j][a] * cf.rows[k][b]).scaled(coeff);
          auto key = a < b ? std::pair{a, b} : std::pair{b, a};
          if (a > b) p = -p;
          auto it = claimed.find(key);
          if (it == claimed.end())
            claimed.emplace(key, p);
          else
            it->second += p;
        }
    }
    auto normalize = [](std::map<std::pair<std::size_t, std::size_t>, Polynomial>& m) {
      for (auto it = m.begin(); it != m.end();)
        it = it->second.is_zero() ? m.erase(it) : std::next(it);
    };
    normalize(actual);
    normalize(claimed);
    if (!(actual == claimed)) return false;
  }
  return true;
}

}  // namespace dcx
