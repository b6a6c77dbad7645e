#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "dcx/linalg.hpp"
#include "dcx/polynomial.hpp"
#include "oracles.hpp"

using namespace dcx;
using dcxtest::Rng;

namespace {

Polynomial xvar(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }

}  // namespace

TEST_CASE("term order: graded, last variable most significant") {
  // Variables (x, z, y): 1 < x < z < y, and x^2 < xz < z^2 within degree 2.
  Monomial one = Monomial::one(3);
  Monomial x = Monomial::var(3, 0), z = Monomial::var(3, 1), y = Monomial::var(3, 2);
  CHECK(one < x);
  CHECK(x < z);
  CHECK(z < y);
  Monomial x2({2, 0, 0}), xz({1, 1, 0}), z2({0, 2, 0});
  CHECK(x2 < xz);
  CHECK(xz < z2);
  // Grading first: y (degree 1) below x^3 (degree 3).
  Monomial x3({3, 0, 0});
  CHECK(y < x3);
}

TEST_CASE("polynomial arithmetic examples") {
  Polynomial x = xvar(2, 0), y = xvar(2, 1);
  CHECK(x + x == x.scaled(2));
  CHECK((x + y) * (x - y) == x * x - y * y);
  CHECK((x * x).scaled(Rational(1) / 2) == Polynomial::term(Monomial({2, 0}), Rational(1) / 2));
  CHECK_THROWS_AS(x + xvar(3, 0), std::invalid_argument);
}

TEST_CASE("ring axioms on randomized inputs") {
  Rng rng(11);
  for (int i = 0; i < 120; ++i) {
    Polynomial p = dcxtest::random_poly(rng, 3, 4, 5);
    Polynomial q = dcxtest::random_poly(rng, 3, 4, 5);
    Polynomial r = dcxtest::random_poly(rng, 3, 4, 5);
    CHECK((p + q) + r == p + (q + r));
    CHECK(p * q == q * p);
    CHECK(p * (q + r) == p * q + p * r);
  }
}

TEST_CASE("canonical form: no zero terms, idempotent construction") {
  Polynomial x = xvar(2, 0);
  Polynomial zero = x - x;
  CHECK(zero.is_zero());
  CHECK(zero.terms().empty());
  // same polynomial assembled in different orders
  Polynomial a(2), b(2);
  a.add_term(Monomial({1, 0}), 2);
  a.add_term(Monomial({0, 1}), -3);
  b.add_term(Monomial({0, 1}), -3);
  b.add_term(Monomial({1, 0}), 5);
  b.add_term(Monomial({1, 0}), -3);
  CHECK(a == b);
}

TEST_CASE("weighted degree and homogeneous parts") {
  Polynomial x = xvar(2, 0), y = xvar(2, 1);
  std::vector<int> w12 = {1, 2}, w13 = {1, 3};

  Polynomial x2y = x * x * y;
  auto h = x2y.weighted_degree(w12);
  CHECK(h.kind == Homogeneity::Kind::Homogeneous);
  CHECK(h.degree == 4);

  auto hx_y = (x + y).weighted_degree(w13);
  CHECK(hx_y.kind == Homogeneity::Kind::Inhomogeneous);
  auto parts = (x + y).homogeneous_parts(w13);
  REQUIRE(parts.size() == 2);
  CHECK(parts.at(1) == x);
  CHECK(parts.at(3) == y);

  auto hz = Polynomial(2).weighted_degree(w12);
  CHECK(hz.kind == Homogeneity::Kind::MinusInfinity);
}

TEST_CASE("rank and nullspace on pinned matrices") {
  RationalMatrix id = RationalMatrix::identity(2);
  auto rn = rank_nullspace(id);
  CHECK(rn.rank == 2);
  CHECK(rn.nullspace.empty());

  RationalMatrix m(2, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 2;
  m.at(1, 1) = 4;
  rn = rank_nullspace(m);
  CHECK(rn.rank == 1);
  REQUIRE(rn.nullspace.size() == 1);
  CHECK(rn.nullspace[0] == std::vector<Rational>{-2, 1});
}

TEST_CASE("rank agrees with a floating-point SVD estimate") {
  Rng rng(23);
  for (int trial = 0; trial < 24; ++trial) {
    // Plant a rank by multiplying 6xr and rx8 integer matrices.
    int r = rng.range(0, 6);
    RationalMatrix a(6, static_cast<std::size_t>(std::max(r, 1)));
    RationalMatrix b(static_cast<std::size_t>(std::max(r, 1)), 8);
    if (r > 0) {
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) a.at(i, j) = rng.range(-5, 5);
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) b.at(i, j) = rng.range(-5, 5);
    }
    RationalMatrix m = r > 0 ? a * b : RationalMatrix(6, 8);

    Eigen::MatrixXd md(6, 8);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 8; ++j)
        md(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            m.at(i, j).convert_to<double>();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(md);
    double top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    std::size_t float_rank = 0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
      if (svd.singularValues()(k) > 1e-8 * std::max(1.0, top)) ++float_rank;

    auto rn = rank_nullspace(m);
    CHECK(rn.rank == float_rank);
    CHECK(rn.rank + rn.nullspace.size() == m.cols());
    for (const auto& v : rn.nullspace) {
      auto image = m.apply(v);
      for (const auto& c : image) CHECK(c == 0);
    }
  }
}

TEST_CASE("rank-nullity on random rational matrices") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t rows = 1 + rng.index(6), cols = 1 + rng.index(6);
    RationalMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (rng.range(0, 2)) m.at(i, j) = rng.rational();
    auto rn = rank_nullspace(m);
    CHECK(rn.rank + rn.nullspace.size() == cols);
  }
}

TEST_CASE("solve_linear examples") {
  RationalMatrix id = RationalMatrix::identity(2);
  std::vector<Rational> v = {3, 5};
  auto sol = solve_linear(id, v);
  REQUIRE(sol.has_value());
  CHECK(*sol == v);

  RationalMatrix row(1, 2);
  row.at(0, 0) = 1;
  row.at(0, 1) = 1;
  std::vector<Rational> two = {2};
  sol = solve_linear(row, two);
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] + (*sol)[1] == 2);

  RationalMatrix col(2, 1);
  col.at(0, 0) = 1;
  col.at(1, 0) = 2;
  std::vector<Rational> bad = {1, 3};
  CHECK(!solve_linear(col, bad).has_value());

  std::vector<Rational> wrong_dim = {1};
  CHECK_THROWS_AS(solve_linear(col, wrong_dim), std::invalid_argument);
}

TEST_CASE("solve_linear solutions always satisfy the system exactly") {
  Rng rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t rows = 1 + rng.index(5), cols = 1 + rng.index(5);
    RationalMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (rng.range(0, 2)) m.at(i, j) = rng.rational();
    std::vector<Rational> x(cols);
    for (auto& xi : x) xi = rng.rational();
    std::vector<Rational> v = m.apply(x);
    auto sol = solve_linear(m, v);
    REQUIRE(sol.has_value());
    CHECK(m.apply(*sol) == v);
  }
}

TEST_CASE("span tracker") {
  SpanTracker span(3);
  CHECK(span.insert({1, 0, 0}));
  CHECK(span.insert({1, 1, 0}));
  CHECK(!span.insert({2, 1, 0}));
  CHECK(span.contains({5, -3, 0}));
  CHECK(!span.contains({0, 0, 1}));
  CHECK(span.rank() == 2);
}

TEST_CASE("rational string io") {
  Rational q = rational_from_strings("-6", "4");
  CHECK(num_str(q) == "-3");
  CHECK(den_str(q) == "2");
  CHECK(rational_str(q) == "-3/2");
  CHECK_THROWS_AS(rational_from_strings("1", "0"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_strings("abc", "1"), std::invalid_argument);
}
