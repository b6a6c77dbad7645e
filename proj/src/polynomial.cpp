#include "dcx/polynomial.hpp"

#include <stdexcept>

namespace dcx {

namespace {

void require_same_vars(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars())
    throw std::invalid_argument("polynomial operands over different variable lists");
}

}  // namespace

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial::one(nvars), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  Polynomial p(nvars);
  p.add_term(Monomial::var(nvars, i), 1);
  return p;
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p(m.nvars());
  p.add_term(m, c);
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (m.nvars() != nvars_) throw std::invalid_argument("monomial/polynomial variable mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total_degree() == 0);
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw std::logic_error("constant_value on non-constant polynomial");
  return terms_.begin()->second;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same_vars(*this, o);
  Polynomial r(*this);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same_vars(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial r(nvars_);
  if (c == 0) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same_vars(*this, o);
  Polynomial r(nvars_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma.times(mb), ca * cb);
  return r;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  Polynomial r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (auto low = m.lower(var)) r.add_term(low->second, c * low->first);
  }
  return r;
}

Rational Polynomial::eval(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point dimension mismatch");
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < m.exp(i); ++k) v *= point[i];
    total += v;
  }
  return total;
}

bool Polynomial::depends_on(std::size_t var) const {
  for (const auto& [m, c] : terms_)
    if (m.exp(var) > 0) return true;
  return false;
}

Homogeneity Polynomial::weighted_degree(std::span<const int> weights) const {
  if (weights.size() != nvars_) throw std::invalid_argument("weight vector length mismatch");
  Homogeneity h;
  if (terms_.empty()) return h;  // MinusInfinity
  bool first = true;
  for (const auto& [m, c] : terms_) {
    long d = m.weighted_degree(weights);
    if (first) {
      h.kind = Homogeneity::Kind::Homogeneous;
      h.degree = d;
      first = false;
    } else if (d != h.degree) {
      h.kind = Homogeneity::Kind::Inhomogeneous;
      h.degree = 0;
      break;
    }
  }
  return h;
}

std::map<long, Polynomial> Polynomial::homogeneous_parts(std::span<const int> weights) const {
  std::map<long, Polynomial> parts;
  for (const auto& [m, c] : terms_) {
    long d = m.weighted_degree(weights);
    auto it = parts.find(d);
    if (it == parts.end()) it = parts.emplace(d, Polynomial(nvars_)).first;
    it->second.add_term(m, c);
  }
  return parts;
}

Polynomial Polynomial::drop_vars(const std::vector<bool>& kill) const {
  if (kill.size() != nvars_) throw std::invalid_argument("kill mask length mismatch");
  std::size_t kept = 0;
  for (bool k : kill)
    if (!k) ++kept;
  Polynomial r(kept);
  for (const auto& [m, c] : terms_) {
    std::vector<unsigned> e;
    e.reserve(kept);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (kill[i]) {
        if (m.exp(i) > 0) throw std::logic_error("drop_vars: polynomial depends on killed variable");
      } else {
        e.push_back(m.exp(i));
      }
    }
    r.add_term(Monomial(std::move(e)), c);
  }
  return r;
}

std::string Polynomial::str(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string s;
  // leading term first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = c;
    if (s.empty()) {
      if (a < 0) {
        s += "-";
        a = -a;
      }
    } else {
      s += a < 0 ? " - " : " + ";
      if (a < 0) a = -a;
    }
    std::string ms = m.str(names);
    if (ms == "1") {
      s += rational_str(a);
    } else if (a == 1) {
      s += ms;
    } else {
      s += rational_str(a) + "*" + ms;
    }
  }
  return s;
}

}  // namespace dcx
