#include "dcx/form.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcx {

Form::Form(const Frame& frame, unsigned degree) : frame_(&frame), degree_(degree) {
  if (!frame.coframe)
    throw std::invalid_argument("frame " + frame.name + " has no coframe");
  if (degree > frame.nvars()) throw std::invalid_argument("form degree exceeds ambient dimension");
}

Form Form::function(const Frame& frame, const Polynomial& p) {
  Form w(frame, 0);
  w.add({}, p);
  return w;
}

Polynomial Form::coeff(std::span<const std::size_t> idx) const {
  std::vector<std::size_t> key(idx.begin(), idx.end());
  auto it = coeffs_.find(key);
  if (it != coeffs_.end()) return it->second;
  return Polynomial(frame_->nvars());
}

void Form::add(const std::vector<std::size_t>& idx, const Polynomial& p) {
  if (idx.size() != degree_) throw std::invalid_argument("index set size does not match form degree");
  if (!std::is_sorted(idx.begin(), idx.end()) ||
      std::adjacent_find(idx.begin(), idx.end()) != idx.end())
    throw std::invalid_argument("index set must be strictly increasing");
  for (std::size_t i : idx)
    if (i >= frame_->coframe->labels.size()) throw std::invalid_argument("coframe label out of range");
  if (p.is_zero()) return;
  auto [it, inserted] = coeffs_.emplace(idx, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

Form Form::operator+(const Form& o) const {
  if (frame_ != o.frame_ || degree_ != o.degree_)
    throw std::invalid_argument("form addition frame/degree mismatch");
  Form r(*this);
  for (const auto& [idx, p] : o.coeffs_) r.add(idx, p);
  return r;
}

Form Form::operator-(const Form& o) const { return *this + o.scaled(-1); }

Form Form::scaled(const Rational& c) const {
  Form r(*frame_, degree_);
  if (c == 0) return r;
  for (const auto& [idx, p] : coeffs_) r.coeffs_.emplace(idx, p.scaled(c));
  return r;
}

bool Form::operator==(const Form& o) const {
  return frame_ == o.frame_ && degree_ == o.degree_ && coeffs_ == o.coeffs_;
}

std::string Form::str() const {
  if (coeffs_.empty()) return "0";
  const auto& labels = frame_->coframe->labels;
  std::string s;
  for (const auto& [idx, p] : coeffs_) {
    if (!s.empty()) s += " + ";
    std::string basis;
    for (std::size_t i : idx) {
      if (!basis.empty()) basis += "^";
      basis += labels[i];
    }
    if (basis.empty()) {
      s += p.str(frame_->variables);
    } else {
      s += "(" + p.str(frame_->variables) + ") " + basis;
    }
  }
  return s;
}

std::pair<int, std::vector<std::size_t>> sort_with_sign(std::vector<std::size_t> idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) return {0, {}};
  return {sign, std::move(idx)};
}

Form exterior_d(const Form& w) {
  const Frame& fr = w.frame();
  if (!fr.coframe) throw std::invalid_argument("frame " + fr.name + " has no coframe");
  const Coframe& cf = *fr.coframe;
  std::size_t n = cf.labels.size();
  Form out(fr, w.degree() + 1);
  if (w.degree() + 1 > n) return out;

  for (const auto& [idx, p] : w.coeffs()) {
    // dg ∧ sigma_I = sum_i (E_i g) sigma^i ∧ sigma_I
    for (std::size_t i = 0; i < n; ++i) {
      Polynomial eg = fr.field(fr.field_names[i]).apply(p);
      if (eg.is_zero()) continue;
      std::vector<std::size_t> with = {i};
      with.insert(with.end(), idx.begin(), idx.end());
      auto [sign, sorted] = sort_with_sign(std::move(with));
      if (sign == 0) continue;
      out.add(sorted, eg.scaled(sign));
    }
    // g d(sigma_I) = g sum_p (-1)^p sigma_{I_0} ∧ .. ∧ d sigma_{I_p} ∧ .. ;
    // the (-1)^p is the graded Leibniz sign for moving d past p one-forms.
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      int leibniz = (pos % 2 == 0) ? 1 : -1;
      for (const auto& [jk, cst] : cf.structure[idx[pos]]) {
        std::vector<std::size_t> with;
        with.reserve(idx.size() + 1);
        with.insert(with.end(), idx.begin(), idx.begin() + pos);
        with.push_back(jk.first);
        with.push_back(jk.second);
        with.insert(with.end(), idx.begin() + pos + 1, idx.end());
        auto [sign, sorted] = sort_with_sign(std::move(with));
        if (sign == 0) continue;
        out.add(sorted, p.scaled(cst * sign * leibniz));
      }
    }
  }
  return out;
}

Form rumin_lift(const Polynomial& a, const Polynomial& b) {
  const Frame& fr = frame_registry("heisenberg");
  const DiffOp &X = fr.field("X"), &Y = fr.field("Y");
  Form w(fr, 1);
  w.add({0}, a);
  w.add({1}, b);
  w.add({2}, X.apply(b) - Y.apply(a));
  return w;
}

}  // namespace dcx
