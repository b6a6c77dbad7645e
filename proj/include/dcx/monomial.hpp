#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dcx {

// Exponent vector over a fixed ambient variable list. The term order is
// graded (total degree first); ties are broken by comparing exponents with
// the last variable most significant, so that with variables (x, z, y) the
// degree-one monomials sort x < z < y. Deterministic representative
// selection in the cohomology engine relies on this order.
class Monomial {
 public:
  explicit Monomial(std::vector<unsigned> exps) : exps_(std::move(exps)) {}

  static Monomial one(std::size_t nvars) { return Monomial(std::vector<unsigned>(nvars, 0)); }
  static Monomial var(std::size_t nvars, std::size_t i, unsigned power = 1) {
    std::vector<unsigned> e(nvars, 0);
    e.at(i) = power;
    return Monomial(std::move(e));
  }

  std::size_t nvars() const { return exps_.size(); }
  unsigned exp(std::size_t i) const { return exps_[i]; }
  const std::vector<unsigned>& exps() const { return exps_; }

  unsigned total_degree() const {
    unsigned d = 0;
    for (unsigned e : exps_) d += e;
    return d;
  }

  long weighted_degree(std::span<const int> w) const {
    long d = 0;
    for (std::size_t i = 0; i < exps_.size(); ++i) d += static_cast<long>(exps_[i]) * w[i];
    return d;
  }

  Monomial times(const Monomial& o) const {
    std::vector<unsigned> e(exps_);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.exps_[i];
    return Monomial(std::move(e));
  }

  // d/dx_i on the monomial: (old exponent, lowered monomial), or nullopt if
  // the exponent is zero.
  std::optional<std::pair<unsigned, Monomial>> lower(std::size_t i) const {
    if (exps_[i] == 0) return std::nullopt;
    std::vector<unsigned> e(exps_);
    unsigned k = e[i]--;
    return std::make_pair(k, Monomial(std::move(e)));
  }

  bool operator==(const Monomial&) const = default;

  bool operator<(const Monomial& o) const {
    unsigned da = total_degree(), db = o.total_degree();
    if (da != db) return da < db;
    for (std::size_t i = exps_.size(); i-- > 0;) {
      if (exps_[i] != o.exps_[i]) return exps_[i] < o.exps_[i];
    }
    return false;
  }

  std::string str(std::span<const std::string> names) const;

 private:
  std::vector<unsigned> exps_;
};

// All monomials of exact weighted degree d (weights strictly positive), in
// ascending term order.
std::vector<Monomial> monomials_of_weighted_degree(std::size_t nvars, std::span<const int> weights,
                                                   long d);

// All monomials of weighted degree <= d, ascending.
std::vector<Monomial> monomials_up_to_weighted_degree(std::size_t nvars,
                                                      std::span<const int> weights, long d);

}  // namespace dcx
