#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "dcx/monomial.hpp"
#include "dcx/rational.hpp"

namespace dcx {

class Polynomial;

// Outcome of a weighted-degree query. The zero polynomial is homogeneous of
// every degree; it reports MinusInfinity so callers can treat it as a
// distinguished bottom element.
struct Homogeneity {
  enum class Kind { MinusInfinity, Homogeneous, Inhomogeneous };
  Kind kind = Kind::MinusInfinity;
  long degree = 0;  // valid when Homogeneous
};

// Multivariate polynomial with exact rational coefficients, kept in canonical
// form: no zero coefficients, terms ordered by the global term order.
class Polynomial {
 public:
  Polynomial() : nvars_(0) {}  // zero over an empty variable list
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  static Polynomial term(const Monomial& m, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // zero polynomial -> 0
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  unsigned degree() const;  // total degree; 0 for the zero polynomial

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Rational& c) const;
  Polynomial& operator+=(const Polynomial& o);
  bool operator==(const Polynomial&) const = default;

  Polynomial derivative(std::size_t var) const;
  Rational eval(std::span<const Rational> point) const;
  bool depends_on(std::size_t var) const;

  Homogeneity weighted_degree(std::span<const int> weights) const;
  // Split into weighted-homogeneous parts (empty map for the zero polynomial).
  std::map<long, Polynomial> homogeneous_parts(std::span<const int> weights) const;

  // Remove variables flagged in `kill` (the polynomial must not depend on
  // them) and reindex the survivors.
  Polynomial drop_vars(const std::vector<bool>& kill) const;

  void add_term(const Monomial& m, const Rational& c);

  std::string str(std::span<const std::string> names) const;

 private:
  std::size_t nvars_;
  std::map<Monomial, Rational> terms_;
};

}  // namespace dcx
