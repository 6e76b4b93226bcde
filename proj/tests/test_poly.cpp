#include <cmath>
#include <random>

#include "doctest.h"
#include "korncert/multi_index.hpp"
#include "korncert/poly.hpp"
#include "korncert/rational.hpp"
#include "test_support.hpp"

using namespace korncert;
using poly::LogRadialExpr;
using poly::MultiPoly;
using poly::parse_poly;

TEST_CASE("rational parsing accepts integer pairs only") {
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("+7") == 7);
  CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("multi-index basics") {
  MultiIndex a{2, 1, 0};
  CHECK(a.order() == 3);
  CHECK(a.to_string() == "(2,1,0)");
  CHECK_FALSE(a.minus(MultiIndex{0, 2, 0}).has_value());
  CHECK(*a.minus(MultiIndex{1, 1, 0}) == MultiIndex{1, 0, 0});
  CHECK_THROWS(MultiIndex{1, -1});
  CHECK(indices_of_order(2, 2).size() == 3);
  CHECK(indices_of_order(3, 3).size() == 10);
  CHECK(indices_of_order(2, 2).front() == MultiIndex{2, 0});
  CHECK(multi_binomial(MultiIndex{2, 1}, MultiIndex{1, 0}) == 2);
  CHECK(multi_binomial(MultiIndex{2, 1}, MultiIndex{0, 2}) == 0);
  CHECK(multi_factorial(MultiIndex{3, 2}) == 12);
}

TEST_CASE("arithmetic examples") {
  CHECK(parse_poly(2, "1/2*y2^2") + parse_poly(2, "1/2*y1^2") == parse_poly(2, "1/2*y1^2 + 1/2*y2^2"));
  CHECK(parse_poly(2, "y1*y2") * Rational(-1) == parse_poly(2, "-y1*y2"));
  CHECK(parse_poly(2, "y1") * parse_poly(2, "1/2*y2^2") == parse_poly(2, "1/2*y1*y2^2"));
  CHECK((parse_poly(2, "y1") - parse_poly(2, "y1")).is_zero());
  CHECK_THROWS_AS(parse_poly(2, "y1") + parse_poly(3, "y1"), std::invalid_argument);
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_poly(2, "y3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly(2, "0.5*y1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly(2, "y1 y2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly(2, ""), std::invalid_argument);
  CHECK(parse_poly(2, "0").is_zero());
  CHECK(parse_poly(2, "y1^2*y1") == MultiPoly::monomial(MultiIndex{3, 0}));
}

TEST_CASE("partial derivatives") {
  // Second entry of K1 differentiated in y1 gives the second entry of K.
  CHECK(parse_poly(2, "1/6*y2^3 - 1/2*y1^2*y2").diff(0) == parse_poly(2, "-y1*y2"));
  CHECK(parse_poly(2, "1/2*y2^2").diff(1) == parse_poly(2, "y2"));
  CHECK(MultiPoly::constant(2, 5).diff(0).is_zero());
  CHECK(parse_poly(3, "y1^2*y2^3").diff(MultiIndex{1, 2, 0}) == parse_poly(3, "12*y1*y2"));
}

TEST_CASE("homogeneous degree") {
  auto h = poly::homogeneous_degree(parse_poly(2, "1/2*y1*y2^2"));
  CHECK(h.kind == poly::Homogeneity::Kind::Homogeneous);
  CHECK(h.degree == 3);
  h = poly::homogeneous_degree(parse_poly(2, "1/2*y2^2"));
  CHECK(h.degree == 2);
  h = poly::homogeneous_degree(parse_poly(2, "y1 + y2^2"));
  CHECK(h.kind == poly::Homogeneity::Kind::NotHomogeneous);
  CHECK(h.witness_low == MultiIndex{1, 0});
  CHECK(h.witness_high == MultiIndex{0, 2});
  CHECK(poly::homogeneous_degree(MultiPoly(2)).kind == poly::Homogeneity::Kind::Zero);
}

TEST_CASE("Leibniz rule on random polynomials") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const MultiPoly p = testing::random_poly(rng, n, 3, 5);
    const MultiPoly q = testing::random_poly(rng, n, 3, 5);
    for (std::size_t i = 0; i < n; ++i) CHECK((p * q).diff(i) == p.diff(i) * q + p * q.diff(i));
  }
}

TEST_CASE("radial derivative examples") {
  const LogRadialExpr d1 = LogRadialExpr::log_norm().diff(0);
  CHECK(d1 == LogRadialExpr(0, parse_poly(2, "y1"), 2));
  CHECK(d1.diff(0) == LogRadialExpr(0, parse_poly(2, "y2^2 - y1^2"), 4));
  CHECK(LogRadialExpr::inverse_norm(3).diff(2) == LogRadialExpr(0, parse_poly(3, "-y3"), 3));
  // Representation slack: (x1|x|²)|x|^{-4} equals x1|x|^{-2}.
  CHECK(LogRadialExpr(0, parse_poly(2, "y1^3 + y1*y2^2"), 4) == d1);
  CHECK_THROWS(LogRadialExpr(1, MultiPoly(3), 1));
}

TEST_CASE("radial derivatives commute") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 2;
    LogRadialExpr e = LogRadialExpr::fundamental(n);
    // Random starting point: a few derivatives of the fundamental solution.
    const int depth = static_cast<int>(rng() % 3);
    for (int k = 0; k < depth; ++k) e = e.diff(rng() % n);
    const std::size_t i = rng() % n, j = rng() % n;
    CHECK(e.diff(i).diff(j) == e.diff(j).diff(i));
  }
}

TEST_CASE("radial derivatives match central differences") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 2;
    LogRadialExpr e = LogRadialExpr::fundamental(n);
    const int depth = static_cast<int>(rng() % 3);
    for (int k = 0; k < depth; ++k) e = e.diff(rng() % n);
    const auto xq = testing::random_nonzero_point(rng, n);
    std::vector<double> x;
    double norm = 0.0;
    for (const auto& c : xq) {
      x.push_back(c.get_d());
      norm += c.get_d() * c.get_d();
    }
    norm = std::sqrt(norm);
    const std::size_t axis = rng() % n;
    const double h = 1e-4 * norm;
    auto xp = x, xm = x;
    xp[axis] += h;
    xm[axis] -= h;
    const double fd = (e.evaluate(std::span<const double>(xp)) - e.evaluate(std::span<const double>(xm))) / (2 * h);
    const double exact = e.diff(axis).evaluate(std::span<const Rational>(xq)).to_double();
    const double scale = std::max(std::abs(exact), std::abs(e.evaluate(std::span<const double>(x))) / norm);
    CHECK(std::abs(fd - exact) <= 1e-6 * scale);
  }
}

TEST_CASE("exact evaluation keeps the radial factor symbolic") {
  const LogRadialExpr e = LogRadialExpr::inverse_norm(3).diff(0);
  const std::vector<Rational> x{1, 0, 0};
  const auto v = e.evaluate(std::span<const Rational>(x));
  CHECK(v.numerator == -1);
  CHECK(v.radius_squared == 1);
  CHECK(v.to_double() == doctest::Approx(-1.0));
  const std::vector<Rational> zero{0, 0, 0};
  CHECK_THROWS_AS(e.evaluate(std::span<const Rational>(zero)), std::domain_error);
}

TEST_CASE("norm-squared division") {
  auto q = poly::divide_by_norm_squared(parse_poly(2, "y1^3 + y1*y2^2"));
  REQUIRE(q.has_value());
  CHECK(*q == parse_poly(2, "y1"));
  CHECK_FALSE(poly::divide_by_norm_squared(parse_poly(2, "y1^2")).has_value());
}

TEST_CASE("determinant of a polynomial matrix") {
  poly::PolyMatrix m(2, 2, 2);
  m(0, 0) = parse_poly(2, "y1");
  m(0, 1) = parse_poly(2, "y2");
  m(1, 0) = parse_poly(2, "-y2");
  m(1, 1) = parse_poly(2, "y1");
  CHECK(poly::determinant(m) == MultiPoly::norm_squared(2));
}
