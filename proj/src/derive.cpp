#include "dcx/derive.hpp"

#include <algorithm>
#include <stdexcept>

#include "dcx/form.hpp"

namespace dcx {

namespace {

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::string wedge_label(const std::vector<std::size_t>& idx, const std::vector<std::string>& labels) {
  if (idx.empty()) return "1";
  std::string s;
  for (std::size_t i : idx) {
    if (!s.empty()) s += "^";
    s += labels[i];
  }
  return s;
}

std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> idx) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (std::find(idx.begin(), idx.end(), i) == idx.end()) out.push_back(i);
  return out;
}

}  // namespace

DiffComplex de_rham_complex(const Frame& f) {
  if (!f.coframe) throw std::invalid_argument("frame " + f.name + " has no coframe");
  const Coframe& cf = *f.coframe;
  std::size_t n = cf.labels.size();

  DiffComplex c;
  c.name = "deRham(" + f.name + ")";
  c.frame = f.name;
  c.variables = f.variables;
  c.weights = f.weights;

  std::vector<std::vector<std::vector<std::size_t>>> bases(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    bases[k] = subsets_of_size(n, k);
    std::vector<Component> slot;
    for (const auto& idx : bases[k]) {
      int offset = 0;
      for (std::size_t i : idx) offset += cf.label_weights[i];
      slot.push_back({wedge_label(idx, cf.labels), offset});
    }
    c.slots.push_back(std::move(slot));
  }

  for (std::size_t k = 0; k < n; ++k) {
    // row lookup by index set
    std::map<std::vector<std::size_t>, std::size_t> row_of;
    for (std::size_t r = 0; r < bases[k + 1].size(); ++r) row_of[bases[k + 1][r]] = r;

    OpMatrix d(bases[k + 1].size(), bases[k].size(), f.nvars());
    for (std::size_t col = 0; col < bases[k].size(); ++col) {
      const auto& idx = bases[k][col];
      // sum_i (E_i g) sigma^i ∧ sigma_I
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> with = {i};
        with.insert(with.end(), idx.begin(), idx.end());
        auto [sign, sorted] = sort_with_sign(std::move(with));
        if (sign == 0) continue;
        std::size_t r = row_of.at(sorted);
        d.at(r, col) = d.at(r, col) + f.field(f.field_names[i]).scaled(sign);
      }
      // g d(sigma_I): order-0 structure contributions
      for (std::size_t pos = 0; pos < idx.size(); ++pos) {
        int leibniz = (pos % 2 == 0) ? 1 : -1;
        for (const auto& [jk, cst] : cf.structure[idx[pos]]) {
          std::vector<std::size_t> with;
          with.insert(with.end(), idx.begin(), idx.begin() + pos);
          with.push_back(jk.first);
          with.push_back(jk.second);
          with.insert(with.end(), idx.begin() + pos + 1, idx.end());
          auto [sign, sorted] = sort_with_sign(std::move(with));
          if (sign == 0) continue;
          std::size_t r = row_of.at(sorted);
          d.at(r, col) =
              d.at(r, col) + DiffOp::identity(f.nvars()).scaled(cst * sign * leibniz);
        }
      }
    }
    c.diffs.push_back(std::move(d));
  }
  return c;
}

OpMatrix invert_unipotent(const OpMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("invert_unipotent: matrix not square");
  std::size_t n = a.rows();
  std::size_t nv = a.nvars();

  // Split A = S + N with S the constant scalar part.
  RationalMatrix s(n, n);
  OpMatrix nil(n, n, nv);
  MultiIndex zero_idx(nv, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      DiffOp rest(nv);
      for (const auto& [alpha, p] : a.at(i, j).terms()) {
        if (alpha == zero_idx && p.is_constant()) {
          s.at(i, j) = p.constant_value();
        } else {
          rest.add_term(alpha, p);
        }
      }
      nil.at(i, j) = std::move(rest);
    }

  auto s_inv = inverse(s);
  if (!s_inv) throw std::invalid_argument("invert_unipotent: constant part is singular");
  OpMatrix s_inv_op(n, n, nv);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (s_inv->at(i, j) != 0)
        s_inv_op.at(i, j) = DiffOp::identity(nv).scaled(s_inv->at(i, j));

  // A^-1 = (I + S^-1 N)^-1 S^-1, geometric series terminating by nilpotency.
  OpMatrix m = s_inv_op.compose(nil);
  OpMatrix neg_m(n, n, nv);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) neg_m.at(i, j) = -m.at(i, j);

  OpMatrix acc = OpMatrix::identity(n, nv);
  OpMatrix pow = OpMatrix::identity(n, nv);
  for (std::size_t k = 1; !pow.is_zero(); ++k) {
    if (k > n) throw std::invalid_argument("invert_unipotent: nilpotency test failed");
    pow = pow.compose(neg_m);
    if (!pow.is_zero()) acc = acc + pow;
  }
  OpMatrix inv = acc.compose(s_inv_op);

  OpMatrix ident = OpMatrix::identity(n, nv);
  if (!(a.compose(inv) == ident) || !(inv.compose(a) == ident))
    throw std::logic_error("invert_unipotent: inverse verification failed");
  return inv;
}

DiffComplex cancel_pair(const DiffComplex& c, std::size_t slot, std::span<const std::size_t> src,
                        std::span<const std::size_t> dst, CancellationStep* record) {
  if (slot + 1 >= c.nslots()) throw std::invalid_argument("cancel_pair: slot out of range");
  if (src.empty() || src.size() != dst.size())
    throw std::invalid_argument("cancel_pair: src/dst size mismatch");
  for (std::size_t i : src)
    if (i >= c.slots[slot].size()) throw std::invalid_argument("cancel_pair: src index out of range");
  for (std::size_t i : dst)
    if (i >= c.slots[slot + 1].size())
      throw std::invalid_argument("cancel_pair: dst index out of range");

  std::vector<std::size_t> keep_src = complement(c.slots[slot].size(), src);
  std::vector<std::size_t> keep_dst = complement(c.slots[slot + 1].size(), dst);

  const OpMatrix& d = c.diffs[slot];
  OpMatrix alpha = d.submatrix(dst, src);
  OpMatrix beta = d.submatrix(dst, keep_src);
  OpMatrix gamma = d.submatrix(keep_dst, src);
  OpMatrix delta = d.submatrix(keep_dst, keep_src);
  OpMatrix alpha_inv = invert_unipotent(alpha);

  DiffComplex out = c;
  out.name = c.name + "/cancelled";

  auto keep_comps = [&](std::size_t s, const std::vector<std::size_t>& keep) {
    std::vector<Component> comps;
    for (std::size_t i : keep) comps.push_back(c.slots[s][i]);
    out.slots[s] = std::move(comps);
  };
  keep_comps(slot, keep_src);
  keep_comps(slot + 1, keep_dst);

  out.diffs[slot] = delta - gamma.compose(alpha_inv).compose(beta);
  if (slot > 0) {
    std::vector<std::size_t> all_cols(c.diffs[slot - 1].cols());
    for (std::size_t i = 0; i < all_cols.size(); ++i) all_cols[i] = i;
    out.diffs[slot - 1] = c.diffs[slot - 1].submatrix(keep_src, all_cols);
  }
  if (slot + 1 < c.diffs.size()) {
    std::vector<std::size_t> all_rows(c.diffs[slot + 1].rows());
    for (std::size_t i = 0; i < all_rows.size(); ++i) all_rows[i] = i;
    out.diffs[slot + 1] = c.diffs[slot + 1].submatrix(all_rows, keep_dst);
  }

  ComposeReport check = verify_complex(out);
  if (!check.pass)
    throw std::logic_error("cancel_pair: reduced complex fails zero-composition");

  if (record) {
    record->slot = slot;
    record->src.assign(src.begin(), src.end());
    record->dst.assign(dst.begin(), dst.end());
    record->src_labels.clear();
    record->dst_labels.clear();
    for (std::size_t i : src) record->src_labels.push_back(c.slots[slot][i].label);
    for (std::size_t i : dst) record->dst_labels.push_back(c.slots[slot + 1][i].label);
    record->alpha = alpha;
    record->beta = beta;
    record->gamma = gamma;
    record->delta = delta;
    record->alpha_inv = alpha_inv;
  }
  return out;
}

namespace {

std::size_t comp_index(const DiffComplex& c, std::size_t slot, const std::string& label) {
  for (std::size_t i = 0; i < c.slots[slot].size(); ++i)
    if (c.slots[slot][i].label == label) return i;
  throw std::logic_error("component " + label + " not found in slot " + std::to_string(slot));
}

// Replace a component by its negative basis vector: flips the incoming row
// and the outgoing column, and renames the component.
void flip_component(DiffComplex& c, std::size_t slot, const std::string& label,
                    const std::string& new_label) {
  std::size_t i = comp_index(c, slot, label);
  if (slot > 0) c.diffs[slot - 1].scale_row(i, -1);
  if (slot < c.diffs.size()) c.diffs[slot].scale_col(i, -1);
  c.slots[slot][i].label = new_label;
}

void compare_with_registry(DeriveResult& res) {
  const DiffComplex& reg = complex_registry(res.registry_name);
  const DiffComplex& der = res.complex;
  if (der.nslots() != reg.nslots()) throw std::logic_error("derived complex has wrong slot count");
  for (std::size_t s = 0; s < reg.nslots(); ++s) {
    if (der.slots[s].size() != reg.slots[s].size())
      throw std::logic_error("derived complex slot size mismatch");
    for (std::size_t j = 0; j < reg.slots[s].size(); ++j)
      if (der.slots[s][j].offset != reg.slots[s][j].offset)
        throw std::logic_error("derived complex offset mismatch");
  }
  res.exact = true;
  for (std::size_t k = 0; k < reg.diffs.size(); ++k)
    for (std::size_t r = 0; r < reg.diffs[k].rows(); ++r)
      for (std::size_t j = 0; j < reg.diffs[k].cols(); ++j) {
        const DiffOp& a = der.diffs[k].at(r, j);
        const DiffOp& b = reg.diffs[k].at(r, j);
        if (a == b) continue;
        res.exact = false;
        res.differences.push_back({k, r, j, a == -b ? "negated" : "differs"});
      }
}

}  // namespace

DeriveResult derive_complex(std::string_view target) {
  DeriveResult res;
  if (target == "rumin") {
    const Frame& fr = frame_registry("heisenberg");
    DiffComplex c = de_rham_complex(fr);
    CancellationStep step;
    std::size_t zeta = comp_index(c, 1, "zeta");
    std::size_t xi_eta = comp_index(c, 2, "xi^eta");
    c = cancel_pair(c, 1, std::vector{zeta}, std::vector{xi_eta}, &step);
    res.steps.push_back(std::move(step));
    // Kept-basis orientation: slot2 (xi^zeta, zeta^eta), slot3 eta^xi^zeta.
    flip_component(c, 2, "eta^zeta", "zeta^eta");
    flip_component(c, 3, "xi^eta^zeta", "eta^xi^zeta");
    c.name = "rumin(derived)";
    res.complex = std::move(c);
    res.registry_name = "rumin";
  } else if (target == "engel") {
    const Frame& fr = frame_registry("engel");
    DiffComplex c = de_rham_complex(fr);
    CancellationStep s1, s2;
    c = cancel_pair(c, 1, std::vector{comp_index(c, 1, "zeta"), comp_index(c, 1, "omega")},
                    std::vector{comp_index(c, 2, "xi^eta"), comp_index(c, 2, "xi^zeta")}, &s1);
    res.steps.push_back(std::move(s1));
    c = cancel_pair(c, 2,
                    std::vector{comp_index(c, 2, "eta^omega"), comp_index(c, 2, "zeta^omega")},
                    std::vector{comp_index(c, 3, "xi^eta^zeta"), comp_index(c, 3, "xi^eta^omega")},
                    &s2);
    res.steps.push_back(std::move(s2));
    // Kept-basis orientation: slot2 (xi^omega, zeta^eta),
    // slot3 (zeta^xi^omega, zeta^eta^omega), slot4 eta^xi^zeta^omega.
    flip_component(c, 2, "eta^zeta", "zeta^eta");
    flip_component(c, 3, "xi^zeta^omega", "zeta^xi^omega");
    flip_component(c, 3, "eta^zeta^omega", "zeta^eta^omega");
    flip_component(c, 4, "xi^eta^zeta^omega", "eta^xi^zeta^omega");
    c.name = "engel(derived)";
    res.complex = std::move(c);
    res.registry_name = "engel";
  } else {
    throw std::invalid_argument("derive_complex: unknown target " + std::string(target));
  }
  compare_with_registry(res);
  return res;
}

}  // namespace dcx
