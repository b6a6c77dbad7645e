#include "dcx/complex_spec.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace dcx {

namespace {

// First differential of every complex here: f -> (Xf, Yf).
OpMatrix gradient(const Frame& f) {
  OpMatrix d(2, 1, f.nvars());
  d.at(0, 0) = f.field("X");
  d.at(1, 0) = f.field("Y");
  return d;
}

// Four-slot complex of the Rumin shape over a frame with fields X, Y, Z:
//   f -> (Xf, Yf)
//   (a,b) -> (X^2 b - (XY+Z) a, Y^2 a - (YX-Z) b)
//   (c,d) -> Xd + Yc
DiffComplex rumin_shape(const Frame& fr, const std::string& name) {
  const DiffOp &X = fr.field("X"), &Y = fr.field("Y"), &Z = fr.field("Z");
  std::size_t n = fr.nvars();
  DiffComplex c;
  c.name = name;
  c.frame = fr.name;
  c.variables = fr.variables;
  c.weights = fr.weights;
  c.slots = {{{"f", 0}}, {{"a", 1}, {"b", 1}}, {{"c", 3}, {"d", 3}}, {{"e", 4}}};

  OpMatrix d1(2, 2, n);
  d1.at(0, 0) = -(X.compose(Y) + Z);
  d1.at(0, 1) = X.compose(X);
  d1.at(1, 0) = Y.compose(Y);
  d1.at(1, 1) = -(Y.compose(X) - Z);

  OpMatrix d2(1, 2, n);
  d2.at(0, 0) = Y;
  d2.at(0, 1) = X;

  c.diffs = {gradient(fr), d1, d2};
  return c;
}

// Five-slot complex of the Engel shape over a frame with fields X, Y, Z, W:
//   f -> (Xf, Yf)
//   (a,b) -> (X^3 b - (X^2 Y + XZ + W) a, Y^2 a - (YX - Z) b)
//   (c,d) -> (X^3 d + (XY+Z) c, Y^2 c + (Y X^2 - ZX + W) d)
//   (g,h) -> Xh - Yg
DiffComplex engel_shape(const Frame& fr, const std::string& name) {
  const DiffOp &X = fr.field("X"), &Y = fr.field("Y"), &Z = fr.field("Z"), &W = fr.field("W");
  std::size_t n = fr.nvars();
  DiffComplex c;
  c.name = name;
  c.frame = fr.name;
  c.variables = fr.variables;
  c.weights = fr.weights;
  c.slots = {{{"f", 0}},
             {{"a", 1}, {"b", 1}},
             {{"c", 4}, {"d", 3}},
             {{"g", 6}, {"h", 6}},
             {{"e", 7}}};

  DiffOp X2 = X.compose(X);
  DiffOp X3 = X2.compose(X);

  OpMatrix d1(2, 2, n);
  d1.at(0, 0) = -(X2.compose(Y) + X.compose(Z) + W);
  d1.at(0, 1) = X3;
  d1.at(1, 0) = Y.compose(Y);
  d1.at(1, 1) = -(Y.compose(X) - Z);

  OpMatrix d2(2, 2, n);
  d2.at(0, 0) = X.compose(Y) + Z;
  d2.at(0, 1) = X3;
  d2.at(1, 0) = Y.compose(Y);
  d2.at(1, 1) = Y.compose(X2) - Z.compose(X) + W;

  OpMatrix d3(1, 2, n);
  d3.at(0, 0) = -Y;
  d3.at(0, 1) = X;

  c.diffs = {gradient(fr), d1, d2, d3};
  return c;
}

DiffComplex make_deRham2() {
  const Frame& fr = frame_registry("flat2");
  DiffComplex c;
  c.name = "deRham2";
  c.frame = fr.name;
  c.variables = fr.variables;
  c.weights = fr.weights;
  c.slots = {{{"f", 0}}, {{"a", 1}, {"b", 1}}, {{"c", 2}}};
  OpMatrix d1(1, 2, 2);
  d1.at(0, 0) = -fr.field("Y");
  d1.at(0, 1) = fr.field("X");
  c.diffs = {gradient(fr), d1};
  return c;
}

}  // namespace

const std::vector<std::string>& complex_names() {
  static const std::vector<std::string> names = {"deRham2", "rumin",    "engel",
                                                 "grushin1", "grushin2", "martinet"};
  return names;
}

const DiffComplex& complex_registry(std::string_view name) {
  static const std::map<std::string, DiffComplex, std::less<>> reg = [] {
    std::map<std::string, DiffComplex, std::less<>> m;
    m.emplace("deRham2", make_deRham2());
    m.emplace("rumin", rumin_shape(frame_registry("heisenberg"), "rumin"));
    m.emplace("grushin1", rumin_shape(frame_registry("grushin1"), "grushin1"));
    m.emplace("engel", engel_shape(frame_registry("engel"), "engel"));
    m.emplace("martinet", engel_shape(frame_registry("martinet"), "martinet"));
    m.emplace("grushin2", engel_shape(frame_registry("grushin2"), "grushin2"));
    return m;
  }();
  auto it = reg.find(name);
  if (it == reg.end()) throw std::invalid_argument("unknown complex: " + std::string(name));
  return it->second;
}

ComposeReport verify_complex(const DiffComplex& c) {
  ComposeReport rep;
  for (std::size_t i = 0; i + 1 < c.diffs.size(); ++i) {
    OpMatrix prod = c.diffs[i + 1].compose(c.diffs[i]);
    ++rep.pairs_checked;
    for (std::size_t r = 0; r < prod.rows(); ++r)
      for (std::size_t j = 0; j < prod.cols(); ++j)
        if (!prod.at(r, j).is_zero()) {
          rep.pass = false;
          rep.failures.push_back({i, r, j, prod.at(r, j)});
        }
  }
  return rep;
}

HomogeneityReport verify_homogeneity(const DiffComplex& c) {
  HomogeneityReport rep;
  for (std::size_t k = 0; k < c.diffs.size(); ++k) {
    const OpMatrix& d = c.diffs[k];
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t j = 0; j < d.cols(); ++j) {
        HomogeneityEntry e;
        e.diff = k;
        e.row = r;
        e.col = j;
        e.required = c.slots[k][j].offset - c.slots[k + 1][r].offset;
        e.got = d.at(r, j).weight(c.weights);
        e.pass = e.got.kind == OpWeight::Kind::Zero ||
                 (e.got.kind == OpWeight::Kind::Homogeneous && e.got.weight == e.required);
        rep.pass = rep.pass && e.pass;
        rep.entries.push_back(std::move(e));
      }
  }
  return rep;
}

DiffComplex symmetry_reduce(const DiffComplex& c, const std::vector<std::string>& killed) {
  std::vector<bool> kill(c.nvars(), false);
  for (const auto& v : killed) {
    auto it = std::find(c.variables.begin(), c.variables.end(), v);
    if (it == c.variables.end())
      throw std::invalid_argument("symmetry_reduce: unknown variable " + v);
    kill[static_cast<std::size_t>(it - c.variables.begin())] = true;
  }

  // Preconditions: coefficients independent of the killed variables, and
  // every entry commutes with the killed coordinate derivatives.
  for (std::size_t k = 0; k < c.diffs.size(); ++k) {
    const OpMatrix& d = c.diffs[k];
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t j = 0; j < d.cols(); ++j) {
        for (std::size_t v = 0; v < c.nvars(); ++v) {
          if (!kill[v]) continue;
          if (d.at(r, j).coeffs_depend_on(v))
            throw std::invalid_argument("symmetry_reduce: differential " + std::to_string(k) +
                                        " entry (" + std::to_string(r) + "," + std::to_string(j) +
                                        ") has a coefficient depending on " + c.variables[v]);
          DiffOp dv = DiffOp::partial(c.nvars(), v);
          if (!d.at(r, j).bracket(dv).is_zero())
            throw std::invalid_argument("symmetry_reduce: differential " + std::to_string(k) +
                                        " entry (" + std::to_string(r) + "," + std::to_string(j) +
                                        ") does not commute with d/d" + c.variables[v]);
        }
      }
  }

  DiffComplex r;
  r.name = c.name + "|reduced";
  r.frame = c.frame;
  for (std::size_t v = 0; v < c.nvars(); ++v) {
    if (kill[v]) continue;
    r.variables.push_back(c.variables[v]);
    r.weights.push_back(c.weights[v]);
  }
  r.slots = c.slots;
  for (const auto& d : c.diffs) {
    OpMatrix rd(d.rows(), d.cols(), r.variables.size());
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j) rd.at(i, j) = d.at(i, j).drop_vars(kill);
    r.diffs.push_back(std::move(rd));
  }

  ComposeReport check = verify_complex(r);
  if (!check.pass) throw std::logic_error("symmetry_reduce: reduced complex fails to compose to zero");
  return r;
}

bool same_complex(const DiffComplex& a, const DiffComplex& b) {
  if (a.variables != b.variables || a.weights != b.weights) return false;
  if (a.nslots() != b.nslots()) return false;
  for (std::size_t i = 0; i < a.nslots(); ++i) {
    if (a.slots[i].size() != b.slots[i].size()) return false;
    for (std::size_t j = 0; j < a.slots[i].size(); ++j)
      if (a.slots[i][j].offset != b.slots[i][j].offset) return false;
  }
  if (a.diffs.size() != b.diffs.size()) return false;
  for (std::size_t i = 0; i < a.diffs.size(); ++i)
    if (!(a.diffs[i] == b.diffs[i])) return false;
  return true;
}

}  // namespace dcx
