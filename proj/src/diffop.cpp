#include "dcx/diffop.hpp"

#include <functional>
#include <set>
#include <stdexcept>

namespace dcx {

namespace {

void require_same_vars(const DiffOp& a, const DiffOp& b) {
  if (a.nvars() != b.nvars())
    throw std::invalid_argument("operator operands over different variable lists");
}

// Product of componentwise binomial coefficients C(alpha, gamma).
Rational multi_binomial(const MultiIndex& alpha, const MultiIndex& gamma) {
  BigInt prod = 1;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    BigInt b = 1;
    for (unsigned k = 1; k <= gamma[i]; ++k) b = b * (alpha[i] - k + 1) / k;
    prod *= b;
  }
  return Rational(prod);
}

// Enumerate gamma <= alpha componentwise.
void each_sub_index(const MultiIndex& alpha, std::size_t pos, MultiIndex& cur,
                    const std::function<void(const MultiIndex&)>& fn) {
  if (pos == alpha.size()) {
    fn(cur);
    return;
  }
  for (unsigned g = 0; g <= alpha[pos]; ++g) {
    cur[pos] = g;
    each_sub_index(alpha, pos + 1, cur, fn);
  }
  cur[pos] = 0;
}

Polynomial apply_multi(const MultiIndex& alpha, const Polynomial& f) {
  Polynomial g = f;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (unsigned k = 0; k < alpha[i]; ++k) g = g.derivative(i);
  return g;
}

}  // namespace

DiffOp DiffOp::identity(std::size_t nvars) {
  DiffOp d(nvars);
  d.add_term(MultiIndex(nvars, 0), Polynomial::constant(nvars, 1));
  return d;
}

DiffOp DiffOp::partial(std::size_t nvars, std::size_t var) {
  DiffOp d(nvars);
  MultiIndex a(nvars, 0);
  a.at(var) = 1;
  d.add_term(a, Polynomial::constant(nvars, 1));
  return d;
}

DiffOp DiffOp::from_poly(const Polynomial& p) {
  DiffOp d(p.nvars());
  d.add_term(MultiIndex(p.nvars(), 0), p);
  return d;
}

DiffOp DiffOp::term(const MultiIndex& alpha, const Polynomial& coeff) {
  DiffOp d(coeff.nvars());
  d.add_term(alpha, coeff);
  return d;
}

void DiffOp::add_term(const MultiIndex& alpha, const Polynomial& coeff) {
  if (alpha.size() != nvars_ || coeff.nvars() != nvars_)
    throw std::invalid_argument("multi-index/coefficient variable mismatch");
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.emplace(alpha, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

unsigned DiffOp::order() const {
  unsigned o = 0;
  for (const auto& [a, p] : terms_) o = std::max(o, multi_order(a));
  return o;
}

DiffOp DiffOp::operator+(const DiffOp& o) const {
  require_same_vars(*this, o);
  DiffOp r(*this);
  for (const auto& [a, p] : o.terms_) r.add_term(a, p);
  return r;
}

DiffOp DiffOp::operator-(const DiffOp& o) const { return *this + (-o); }

DiffOp DiffOp::operator-() const { return scaled(-1); }

DiffOp DiffOp::scaled(const Rational& c) const {
  DiffOp r(nvars_);
  if (c == 0) return r;
  for (const auto& [a, p] : terms_) r.terms_.emplace(a, p.scaled(c));
  return r;
}

Polynomial DiffOp::apply(const Polynomial& f) const {
  if (f.nvars() != nvars_) throw std::invalid_argument("operator/polynomial variable mismatch");
  Polynomial out(nvars_);
  for (const auto& [a, p] : terms_) out += p * apply_multi(a, f);
  return out;
}

DiffOp DiffOp::compose(const DiffOp& other) const {
  require_same_vars(*this, other);
  DiffOp r(nvars_);
  for (const auto& [alpha, p] : terms_) {
    for (const auto& [beta, q] : other.terms_) {
      MultiIndex gamma(nvars_, 0);
      each_sub_index(alpha, 0, gamma, [&](const MultiIndex& g) {
        Polynomial dq = apply_multi(g, q);
        if (dq.is_zero()) return;
        MultiIndex idx(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) idx[i] = alpha[i] - g[i] + beta[i];
        if (multi_order(idx) > kOrderCap)
          throw std::domain_error("composition exceeds operator order cap");
        r.add_term(idx, (p * dq).scaled(multi_binomial(alpha, g)));
      });
    }
  }
  return r;
}

DiffOp DiffOp::bracket(const DiffOp& other) const {
  return compose(other) - other.compose(*this);
}

bool DiffOp::is_vector_field() const {
  for (const auto& [a, p] : terms_)
    if (multi_order(a) != 1) return false;
  return true;
}

std::vector<Polynomial> DiffOp::field_coeffs() const {
  if (!is_vector_field()) throw std::logic_error("field_coeffs on non-vector-field");
  std::vector<Polynomial> out(nvars_, Polynomial(nvars_));
  for (const auto& [a, p] : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i)
      if (a[i] == 1) out[i] = p;
  }
  return out;
}

OpWeight DiffOp::weight(std::span<const int> weights) const {
  if (weights.size() != nvars_) throw std::invalid_argument("weight vector length mismatch");
  std::set<long> seen;
  for (const auto& [a, p] : terms_) {
    long da = 0;
    for (std::size_t i = 0; i < nvars_; ++i) da += static_cast<long>(a[i]) * weights[i];
    for (const auto& [m, c] : p.terms()) seen.insert(m.weighted_degree(weights) - da);
  }
  OpWeight w;
  if (seen.empty()) return w;  // zero operator
  if (seen.size() == 1) {
    w.kind = OpWeight::Kind::Homogeneous;
    w.weight = *seen.begin();
  } else {
    w.kind = OpWeight::Kind::Inhomogeneous;
  }
  return w;
}

bool DiffOp::coeffs_depend_on(std::size_t var) const {
  for (const auto& [a, p] : terms_)
    if (p.depends_on(var)) return true;
  return false;
}

DiffOp DiffOp::drop_vars(const std::vector<bool>& kill) const {
  if (kill.size() != nvars_) throw std::invalid_argument("kill mask length mismatch");
  std::size_t kept = 0;
  for (bool k : kill)
    if (!k) ++kept;
  DiffOp r(kept);
  for (const auto& [a, p] : terms_) {
    bool uses_killed = false;
    MultiIndex idx;
    idx.reserve(kept);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (kill[i]) {
        if (a[i] > 0) uses_killed = true;
      } else {
        idx.push_back(a[i]);
      }
    }
    if (uses_killed) continue;  // d/dv -> 0
    r.add_term(idx, p.drop_vars(kill));
  }
  return r;
}

std::string DiffOp::str(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [a, p] = *it;
    if (!s.empty()) s += " + ";
    std::string ds;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (a[i] == 0) continue;
      if (!ds.empty()) ds += " ";
      ds += "D" + names[i];
      if (a[i] > 1) ds += "^" + std::to_string(a[i]);
    }
    std::string cs = p.str(names);
    if (ds.empty()) {
      s += cs;
    } else if (cs == "1") {
      s += ds;
    } else {
      s += "(" + cs + ") " + ds;
    }
  }
  return s;
}

OpMatrix::OpMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), a_(rows * cols, DiffOp(nvars)) {}

OpMatrix OpMatrix::identity(std::size_t n, std::size_t nvars) {
  OpMatrix m(n, n, nvars);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = DiffOp::identity(nvars);
  return m;
}

OpMatrix OpMatrix::compose(const OpMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("operator matrix composition dimension mismatch");
  if (nvars_ != other.nvars_) throw std::invalid_argument("operator matrix variable mismatch");
  OpMatrix r(rows_, other.cols_, nvars_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < other.cols_; ++j) {
      DiffOp acc(nvars_);
      for (std::size_t k = 0; k < cols_; ++k) {
        const DiffOp& a = at(i, k);
        const DiffOp& b = other.at(k, j);
        if (a.is_zero() || b.is_zero()) continue;
        acc = acc + a.compose(b);
      }
      r.at(i, j) = std::move(acc);
    }
  return r;
}

OpMatrix OpMatrix::operator+(const OpMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("operator matrix shape mismatch");
  OpMatrix r(rows_, cols_, nvars_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

OpMatrix OpMatrix::operator-(const OpMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("operator matrix shape mismatch");
  OpMatrix r(rows_, cols_, nvars_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

std::vector<Polynomial> OpMatrix::apply(std::span<const Polynomial> v) const {
  if (v.size() != cols_) throw std::invalid_argument("operator matrix apply dimension mismatch");
  std::vector<Polynomial> out(rows_, Polynomial(nvars_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero()) out[i] += at(i, j).apply(v[j]);
  return out;
}

bool OpMatrix::is_zero() const {
  for (const auto& d : a_)
    if (!d.is_zero()) return false;
  return true;
}

OpMatrix OpMatrix::submatrix(std::span<const std::size_t> row_idx,
                             std::span<const std::size_t> col_idx) const {
  OpMatrix r(row_idx.size(), col_idx.size(), nvars_);
  for (std::size_t i = 0; i < row_idx.size(); ++i)
    for (std::size_t j = 0; j < col_idx.size(); ++j) r.at(i, j) = at(row_idx[i], col_idx[j]);
  return r;
}

void OpMatrix::scale_row(std::size_t r, const Rational& c) {
  for (std::size_t j = 0; j < cols_; ++j) at(r, j) = at(r, j).scaled(c);
}

void OpMatrix::scale_col(std::size_t c, const Rational& s) {
  for (std::size_t i = 0; i < rows_; ++i) at(i, c) = at(i, c).scaled(s);
}

}  // namespace dcx
