#include "dcx/cohomology.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace dcx {

namespace {

struct SliceIndex {
  std::vector<BasisElem> basis;
  std::map<std::pair<std::size_t, Monomial>, std::size_t> pos;
};

SliceIndex make_slice(const DiffComplex& c, std::size_t slot, long g, bool reversed) {
  SliceIndex s;
  std::vector<std::pair<Monomial, std::size_t>> elems;  // sort key (monomial, component)
  for (std::size_t j = 0; j < c.slots[slot].size(); ++j) {
    long d = g - c.slots[slot][j].offset;
    for (const auto& m : monomials_of_weighted_degree(c.nvars(), c.weights, d))
      elems.emplace_back(m, j);
  }
  std::sort(elems.begin(), elems.end(), [](const auto& a, const auto& b) {
    if (a.first < b.first) return true;
    if (b.first < a.first) return false;
    return a.second < b.second;
  });
  if (reversed) std::reverse(elems.begin(), elems.end());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    s.basis.push_back({elems[i].second, elems[i].first});
    s.pos.emplace(std::pair{elems[i].second, elems[i].first}, i);
  }
  return s;
}

std::vector<Rational> coords_of(const DiffComplex& c, const SliceIndex& slice, std::size_t slot,
                                const Cochain& v, long g) {
  std::vector<Rational> out(slice.basis.size());
  for (std::size_t j = 0; j < v.comps.size(); ++j) {
    for (const auto& [m, coeff] : v.comps[j].terms()) {
      if (m.weighted_degree(c.weights) + c.slots[slot][j].offset != g) continue;
      auto it = slice.pos.find({j, m});
      if (it == slice.pos.end()) throw std::logic_error("cochain term outside slice basis");
      out[it->second] = coeff;
    }
  }
  return out;
}

RationalMatrix slice_matrix(const DiffComplex& c, std::size_t k, long g, const SliceIndex& src,
                            const SliceIndex& dst) {
  RationalMatrix m(dst.basis.size(), src.basis.size());
  for (std::size_t col = 0; col < src.basis.size(); ++col) {
    const auto& [j, mono] = src.basis[col];
    Polynomial input = Polynomial::term(mono, 1);
    for (std::size_t r = 0; r < c.slots[k + 1].size(); ++r) {
      const DiffOp& entry = c.diffs[k].at(r, j);
      if (entry.is_zero()) continue;
      Polynomial out = entry.apply(input);
      for (const auto& [om, oc] : out.terms()) {
        auto it = dst.pos.find({r, om});
        if (it == dst.pos.end())
          throw std::logic_error("inhomogeneous differential: image term outside target slice");
        m.at(it->second, col) += oc;
      }
    }
  }
  return m;
}

// Deterministic representative choice: canonical nullspace cocycles, sorted
// by (number of nonzeros, leading coordinate, coordinates), greedily added to
// the image span, normalized to leading coefficient 1.
std::vector<std::vector<Rational>> choose_reps(const std::vector<std::vector<Rational>>& kernel,
                                               SpanTracker& span, std::size_t want) {
  std::vector<std::vector<Rational>> cands = kernel;
  auto leading = [](const std::vector<Rational>& v) {
    std::size_t i = 0;
    while (i < v.size() && v[i] == 0) ++i;
    return i;
  };
  std::sort(cands.begin(), cands.end(), [&](const auto& a, const auto& b) {
    std::size_t na = 0, nb = 0;
    for (const auto& x : a) na += (x != 0);
    for (const auto& x : b) nb += (x != 0);
    if (na != nb) return na < nb;
    std::size_t la = leading(a), lb = leading(b);
    if (la != lb) return la < lb;
    return a < b;
  });
  std::vector<std::vector<Rational>> reps;
  for (auto& cand : cands) {
    if (reps.size() == want) break;
    if (!span.insert(cand)) continue;
    std::size_t l = leading(cand);
    Rational inv = Rational(1) / cand[l];
    for (auto& x : cand) x *= inv;
    reps.push_back(std::move(cand));
  }
  if (reps.size() != want)
    throw std::logic_error("representative selection failed to span the cohomology");
  return reps;
}

}  // namespace

std::vector<BasisElem> slot_basis(const DiffComplex& c, std::size_t slot, long g, bool reversed) {
  return make_slice(c, slot, g, reversed).basis;
}

RationalMatrix transfer_matrix(const DiffComplex& c, std::size_t k, long g, bool reversed) {
  SliceIndex src = make_slice(c, k, g, reversed);
  SliceIndex dst = make_slice(c, k + 1, g, reversed);
  return slice_matrix(c, k, g, src, dst);
}

Cochain cochain_from_coords(const DiffComplex& c, std::size_t slot,
                            const std::vector<BasisElem>& basis,
                            std::span<const Rational> coords) {
  Cochain v;
  v.comps.assign(c.slots[slot].size(), Polynomial(c.nvars()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coords[i] != 0) v.comps[basis[i].comp].add_term(basis[i].mono, coords[i]);
  return v;
}

CohomologyReport cohomology(const DiffComplex& c, long max_degree, bool reversed) {
  HomogeneityReport hom = verify_homogeneity(c);
  if (!hom.pass) throw std::invalid_argument("cohomology: complex is not weighted-homogeneous");

  CohomologyReport rep;
  rep.complex = c.name;
  rep.max_degree = max_degree;
  rep.totals.assign(c.nslots(), 0);

  for (long g = 0; g <= max_degree; ++g) {
    std::vector<SliceIndex> slices(c.nslots());
    for (std::size_t s = 0; s < c.nslots(); ++s) slices[s] = make_slice(c, s, g, reversed);

    std::vector<RationalMatrix> mats;
    for (std::size_t k = 0; k + 1 < c.nslots(); ++k)
      mats.push_back(slice_matrix(c, k, g, slices[k], slices[k + 1]));

    std::vector<SlotDegreeData> row(c.nslots());
    for (std::size_t s = 0; s < c.nslots(); ++s) {
      SlotDegreeData& d = row[s];
      d.dim = slices[s].basis.size();

      std::vector<std::vector<Rational>> kernel;
      if (s + 1 < c.nslots()) {
        RankNullspace rn = rank_nullspace(mats[s]);
        d.kernel = d.dim - rn.rank;
        kernel = std::move(rn.nullspace);
      } else {
        d.kernel = d.dim;
        kernel.resize(d.dim, std::vector<Rational>(d.dim));
        for (std::size_t i = 0; i < d.dim; ++i) kernel[i][i] = 1;
      }

      SpanTracker span(d.dim);
      if (s > 0) {
        for (std::size_t col = 0; col < mats[s - 1].cols(); ++col) {
          std::vector<Rational> v(mats[s - 1].rows());
          for (std::size_t r = 0; r < mats[s - 1].rows(); ++r) v[r] = mats[s - 1].at(r, col);
          span.insert(std::move(v));
        }
        d.image = span.rank();
      }
      if (d.image > d.kernel) throw std::logic_error("cohomology: image exceeds kernel");
      d.h = d.kernel - d.image;
      rep.totals[s] += d.h;

      if (d.h > 0) {
        auto reps = choose_reps(kernel, span, d.h);
        for (const auto& r : reps)
          d.reps.push_back(cochain_from_coords(c, s, slices[s].basis, r));
      }
    }
    rep.per_degree.push_back(std::move(row));
  }
  return rep;
}

bool euler_check(const DiffComplex& c, long g) {
  std::vector<SliceIndex> slices(c.nslots());
  for (std::size_t s = 0; s < c.nslots(); ++s) slices[s] = make_slice(c, s, g, false);
  long lhs = 0, rhs = 0;
  long prev_rank = 0;
  for (std::size_t s = 0; s < c.nslots(); ++s) {
    long sign = (s % 2 == 0) ? 1 : -1;
    long dim = static_cast<long>(slices[s].basis.size());
    long rk = 0;
    if (s + 1 < c.nslots()) {
      RationalMatrix m = slice_matrix(c, s, g, slices[s], slices[s + 1]);
      rk = static_cast<long>(rank(m));
    }
    lhs += sign * dim;
    rhs += sign * (dim - rk - prev_rank);  // dim H^s = ker - im
    prev_rank = rk;
  }
  return lhs == rhs;
}

namespace {

bool is_theorem_complex(const DiffComplex& c) {
  return c.name == "grushin1" || c.name == "martinet" || c.name == "grushin2";
}

void attach_condition_views(const DiffComplex& c, const Cochain& v,
                            const std::vector<Polynomial>& residual, IntegrabilityReport& rep) {
  // Displayed conditions at level 1 have the shape
  //   row 0:  (lhs op) b = (rhs op) a
  //   row 1:  (lhs op) a = (rhs op) b
  // with the differential row equal to lhs - rhs, so defect = rhs - lhs.
  const OpMatrix& d1 = c.diffs[1];
  for (std::size_t r = 0; r < 2; ++r) {
    std::size_t lhs_col = 1 - r;
    ConditionView cv;
    Polynomial lhs = d1.at(r, lhs_col).apply(v.comps[lhs_col]);
    Polynomial rhs = (-d1.at(r, 1 - lhs_col)).apply(v.comps[1 - lhs_col]);
    cv.lhs = lhs;
    cv.rhs = rhs;
    cv.defect = rhs - lhs;
    cv.pass = cv.defect.is_zero();
    cv.display = r == 0 ? "condition 1 (applied to b vs a)" : "condition 2 (applied to a vs b)";
    rep.conditions.push_back(std::move(cv));
  }
  (void)residual;
}

}  // namespace

IntegrabilityReport check_integrability(const DiffComplex& c, std::size_t level, const Cochain& v) {
  if (level >= c.diffs.size())
    throw std::invalid_argument("check_integrability: level has no outgoing differential");
  if (v.comps.size() != c.slots[level].size())
    throw std::invalid_argument("check_integrability: cochain has wrong component count");
  IntegrabilityReport rep;
  rep.residual = c.diffs[level].apply(v.comps);
  rep.ok = true;
  for (const auto& p : rep.residual) rep.ok = rep.ok && p.is_zero();
  if (level == 1 && is_theorem_complex(c)) attach_condition_views(c, v, rep.residual, rep);
  return rep;
}

SplitResult split_cocycle(const DiffComplex& c, std::size_t level, const Cochain& v) {
  SplitResult res;
  res.integrability = check_integrability(c, level, v);
  if (!res.integrability.ok) return res;
  if (level == 0) throw std::invalid_argument("split_cocycle: level must be at least 1");

  res.ok = true;
  res.potential.comps.assign(c.slots[level - 1].size(), Polynomial(c.nvars()));

  // Degrees present in v.
  std::set<long> degrees;
  for (std::size_t j = 0; j < v.comps.size(); ++j)
    for (const auto& [g, part] : v.comps[j].homogeneous_parts(c.weights))
      degrees.insert(g + c.slots[level][j].offset);

  for (long g : degrees) {
    SliceIndex src = make_slice(c, level - 1, g, false);
    SliceIndex mid = make_slice(c, level, g, false);
    RationalMatrix d_in = slice_matrix(c, level - 1, g, src, mid);

    // Canonical representatives of H^level at this degree.
    SliceIndex nxt;
    RationalMatrix d_out(0, mid.basis.size());
    std::vector<std::vector<Rational>> kernel;
    if (level + 1 < c.nslots()) {
      nxt = make_slice(c, level + 1, g, false);
      d_out = slice_matrix(c, level, g, mid, nxt);
      RankNullspace rn = rank_nullspace(d_out);
      kernel = std::move(rn.nullspace);
    } else {
      kernel.resize(mid.basis.size(), std::vector<Rational>(mid.basis.size()));
      for (std::size_t i = 0; i < mid.basis.size(); ++i) kernel[i][i] = 1;
    }
    SpanTracker span(mid.basis.size());
    for (std::size_t col = 0; col < d_in.cols(); ++col) {
      std::vector<Rational> w(d_in.rows());
      for (std::size_t r = 0; r < d_in.rows(); ++r) w[r] = d_in.at(r, col);
      span.insert(std::move(w));
    }
    std::size_t h = kernel.size() - span.rank();
    std::vector<std::vector<Rational>> reps;
    if (h > 0) reps = choose_reps(kernel, span, h);

    // Solve D(u) = v_g + sum c_j h_j, i.e. [D | -H] (u; c) = v_g. With this
    // orientation the c_j are the theorems' named constants.
    RationalMatrix sys(mid.basis.size(), d_in.cols() + reps.size());
    for (std::size_t r = 0; r < mid.basis.size(); ++r)
      for (std::size_t col = 0; col < d_in.cols(); ++col) sys.at(r, col) = d_in.at(r, col);
    for (std::size_t j = 0; j < reps.size(); ++j)
      for (std::size_t r = 0; r < mid.basis.size(); ++r)
        sys.at(r, d_in.cols() + j) = -reps[j][r];

    std::vector<Rational> target = coords_of(c, mid, level, v, g);
    auto sol = solve_linear(sys, target);
    if (!sol) throw std::logic_error("split_cocycle: slice system unexpectedly inconsistent");

    Cochain u = cochain_from_coords(c, level - 1, src.basis,
                                    std::span<const Rational>(sol->data(), d_in.cols()));
    for (std::size_t j = 0; j < u.comps.size(); ++j) res.potential.comps[j] += u.comps[j];
    for (std::size_t j = 0; j < reps.size(); ++j) {
      Rational val = (*sol)[d_in.cols() + j];
      if (val == 0) continue;
      SplitConstant sc;
      sc.rep = cochain_from_coords(c, level, mid.basis, reps[j]);
      sc.degree = g;
      sc.value = val;
      res.constants.push_back(std::move(sc));
    }
  }

  // Substitution check: D(u) - sum c_j h_j == v exactly.
  std::vector<Polynomial> lhs = c.diffs[level - 1].apply(res.potential.comps);
  for (const auto& sc : res.constants)
    for (std::size_t j = 0; j < lhs.size(); ++j) lhs[j] += sc.rep.comps[j].scaled(-sc.value);
  res.reconstructed = true;
  for (std::size_t j = 0; j < lhs.size(); ++j)
    res.reconstructed = res.reconstructed && (lhs[j] == v.comps[j]);
  if (!res.reconstructed) throw std::logic_error("split_cocycle: reconstruction check failed");
  return res;
}

namespace {

// Theorem constants: representative cochains and their names per complex and
// level. The affine term of the theorem is sum (constant * representative).
struct NamedRep {
  std::string name;
  std::size_t comp;
  Polynomial poly;
};

std::vector<NamedRep> named_reps(const DiffComplex& c, std::size_t level) {
  std::vector<NamedRep> out;
  std::size_t n = c.nvars();
  auto x = Polynomial::variable(n, 0);
  auto one = Polynomial::constant(n, 1);
  if (level == 1) {
    if (c.name == "grushin1") {
      out.push_back({"C", 1, one});
    } else if (c.name == "martinet") {
      out.push_back({"C", 1, x});
    } else if (c.name == "grushin2") {
      out.push_back({"C", 1, x});
      out.push_back({"D", 1, one});
    }
  } else if (level == 2 && c.name == "grushin2") {
    out.push_back({"E", 1, one});
  }
  return out;
}

}  // namespace

SolveResult solve_potential(std::string_view name, const Polynomial& a, const Polynomial& b,
                            std::size_t level) {
  const DiffComplex& c = complex_registry(name);
  if (!is_theorem_complex(c))
    throw std::invalid_argument("solve_potential: name must be grushin1, martinet or grushin2");
  if (level != 1 && level != 2) throw std::invalid_argument("solve_potential: level must be 1 or 2");

  Cochain v;
  v.comps = {a, b};
  SolveResult out;

  SplitResult split = split_cocycle(c, level, v);
  out.integrability = split.integrability;
  if (!split.ok) return out;
  out.ok = true;
  out.potential = split.potential;

  std::vector<NamedRep> table = named_reps(c, level);
  for (const auto& nr : table) out.constants.emplace_back(nr.name, 0);
  for (const auto& sc : split.constants) {
    bool matched = false;
    for (std::size_t i = 0; i < table.size(); ++i) {
      Cochain expect;
      expect.comps.assign(c.slots[level].size(), Polynomial(c.nvars()));
      expect.comps[table[i].comp] = table[i].poly;
      if (sc.rep == expect) {
        out.constants[i].second = sc.value;
        matched = true;
        break;
      }
    }
    if (!matched)
      throw std::logic_error("solve_potential: split produced an unrecognized representative");
  }
  return out;
}

}  // namespace dcx
