#include "dcx/monomial.hpp"

#include <algorithm>
#include <cassert>

namespace dcx {

std::string Monomial::str(std::span<const std::string> names) const {
  std::string s;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (exps_[i] > 1) s += "^" + std::to_string(exps_[i]);
  }
  return s.empty() ? "1" : s;
}

namespace {

void enumerate(std::size_t var, long remaining, std::span<const int> w,
               std::vector<unsigned>& cur, std::vector<Monomial>& out) {
  if (var + 1 == cur.size()) {
    if (remaining % w[var] == 0) {
      cur[var] = static_cast<unsigned>(remaining / w[var]);
      out.emplace_back(cur);
    }
    return;
  }
  for (long e = 0; e * w[var] <= remaining; ++e) {
    cur[var] = static_cast<unsigned>(e);
    enumerate(var + 1, remaining - e * w[var], w, cur, out);
  }
  cur[var] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_weighted_degree(std::size_t nvars, std::span<const int> weights,
                                                   long d) {
  assert(weights.size() == nvars);
  for (int w : weights) assert(w > 0);
  std::vector<Monomial> out;
  if (d < 0) return out;
  if (nvars == 0) {
    if (d == 0) out.push_back(Monomial::one(0));
    return out;
  }
  std::vector<unsigned> cur(nvars, 0);
  enumerate(0, d, weights, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Monomial> monomials_up_to_weighted_degree(std::size_t nvars,
                                                      std::span<const int> weights, long d) {
  std::vector<Monomial> out;
  for (long g = 0; g <= d; ++g) {
    auto part = monomials_of_weighted_degree(nvars, weights, g);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dcx
