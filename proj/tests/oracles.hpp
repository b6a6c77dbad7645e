// Test-only helpers: independent oracles and seeded generators. The oracle
// routines deliberately avoid the production evaluation paths they check.
#pragma once

#include <random>
#include <vector>

#include "dcx/diffop.hpp"
#include "dcx/polynomial.hpp"

namespace dcxtest {

// Independent operator application: differentiate each input monomial by
// falling factorials on the exponent vector, then distribute the coefficient
// polynomial term by term.
inline dcx::Polynomial naive_apply(const dcx::DiffOp& d, const dcx::Polynomial& f) {
  dcx::Polynomial out(f.nvars());
  for (const auto& [alpha, coeff] : d.terms()) {
    for (const auto& [m, c] : f.terms()) {
      dcx::Rational factor = c;
      std::vector<unsigned> e = m.exps();
      bool vanished = false;
      for (std::size_t i = 0; i < e.size() && !vanished; ++i) {
        for (unsigned k = 0; k < alpha[i]; ++k) {
          if (e[i] == 0) {
            vanished = true;
            break;
          }
          factor *= e[i];
          e[i] -= 1;
        }
      }
      if (vanished) continue;
      for (const auto& [cm, cc] : coeff.terms())
        out.add_term(dcx::Monomial(e).times(cm), factor * cc);
    }
  }
  return out;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g_); }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(g_);
  }
  dcx::Rational rational() {
    int n = range(-9, 9);
    if (n == 0) n = 1;
    return dcx::Rational(n) / range(1, 4);
  }

 private:
  std::mt19937_64 g_;
};

inline dcx::Monomial random_monomial(Rng& rng, std::size_t nvars, unsigned max_total_degree) {
  std::vector<unsigned> e(nvars, 0);
  unsigned budget = static_cast<unsigned>(rng.range(0, static_cast<int>(max_total_degree)));
  for (unsigned k = 0; k < budget; ++k) e[rng.index(nvars)]++;
  return dcx::Monomial(std::move(e));
}

inline dcx::Polynomial random_poly(Rng& rng, std::size_t nvars, unsigned max_degree,
                                   int max_terms) {
  dcx::Polynomial p(nvars);
  int k = rng.range(1, max_terms);
  for (int t = 0; t < k; ++t) p.add_term(random_monomial(rng, nvars, max_degree), rng.rational());
  return p;
}

inline dcx::DiffOp random_op(Rng& rng, std::size_t nvars, unsigned max_order, unsigned max_degree,
                             int max_terms) {
  dcx::DiffOp d(nvars);
  int k = rng.range(1, max_terms);
  for (int t = 0; t < k; ++t) {
    dcx::MultiIndex a(nvars, 0);
    unsigned budget = static_cast<unsigned>(rng.range(0, static_cast<int>(max_order)));
    for (unsigned i = 0; i < budget; ++i) a[rng.index(nvars)]++;
    d.add_term(a, random_poly(rng, nvars, max_degree, 2));
  }
  return d;
}

// Random polynomial with weighted degree <= bound (used by the solver
// round-trip property).
inline dcx::Polynomial random_weighted_poly(Rng& rng, std::size_t nvars,
                                            const std::vector<int>& weights, long bound,
                                            int max_terms) {
  auto monos = dcx::monomials_up_to_weighted_degree(nvars, weights, bound);
  dcx::Polynomial p(nvars);
  int k = rng.range(1, max_terms);
  for (int t = 0; t < k; ++t) p.add_term(monos[rng.index(monos.size())], rng.rational());
  return p;
}

}  // namespace dcxtest
