#include <random>
#include <variant>

#include "doctest.h"
#include "korncert/linalg.hpp"
#include "test_support.hpp"

using namespace korncert;
using namespace korncert::linalg;

namespace {

RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, std::size_t rank_cap) {
  // Product of r×k and k×c factors, so the rank is at most k.
  RationalMatrix a(r, rank_cap), b(rank_cap, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < rank_cap; ++j) a(i, j) = testing::small_rational(rng);
  for (std::size_t i = 0; i < rank_cap; ++i)
    for (std::size_t j = 0; j < c; ++j) b(i, j) = testing::small_rational(rng);
  return a * b;
}

}  // namespace

TEST_CASE("rank and null space") {
  RationalMatrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  CHECK(rank(m) == 2);
  CHECK(rank(m, PivotOrder::Reversed) == 2);
  const auto ns = null_space(m);
  REQUIRE(ns.size() == 1);
  CHECK((m * ns[0]) == RationalVector(3, Rational(0)));
}

TEST_CASE("consistent system returns a solution") {
  RationalMatrix a{{1, 1}, {1, -1}, {2, 0}};
  RationalVector b{3, 1, 4};
  for (auto order : {PivotOrder::Natural, PivotOrder::Reversed}) {
    auto res = solve(a, b, order);
    REQUIRE(std::holds_alternative<Consistent>(res));
    const auto& c = std::get<Consistent>(res);
    CHECK(a * c.solution == b);
    CHECK(c.nullity == 0);
  }
}

TEST_CASE("inconsistent system carries a verifying certificate") {
  RationalMatrix a{{1, 1}, {2, 2}};
  RationalVector b{1, 3};
  for (auto order : {PivotOrder::Natural, PivotOrder::Reversed}) {
    auto res = solve(a, b, order);
    REQUIRE(std::holds_alternative<Inconsistent>(res));
    const auto& lambda = std::get<Inconsistent>(res).certificate;
    CHECK(certifies_inconsistency(a, b, lambda));
    Rational dot = 0;
    for (std::size_t i = 0; i < b.size(); ++i) dot += lambda[i] * b[i];
    CHECK(dot == 1);
  }
  CHECK_FALSE(certifies_inconsistency(a, b, {1, 1}));
}

TEST_CASE("random systems agree across pivot orders") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 3 + rng() % 4, c = 3 + rng() % 4, k = 1 + rng() % 3;
    const RationalMatrix a = random_matrix(rng, r, c, k);
    RationalVector b(r);
    for (auto& v : b) v = testing::small_rational(rng);
    const auto nat = solve(a, b, PivotOrder::Natural);
    const auto rev = solve(a, b, PivotOrder::Reversed);
    REQUIRE(nat.index() == rev.index());
    CHECK(rank(a) == rank(a, PivotOrder::Reversed));
    if (auto* s = std::get_if<Consistent>(&nat)) {
      CHECK(a * s->solution == b);
      CHECK(s->nullity == std::get<Consistent>(rev).nullity);
    } else {
      CHECK(certifies_inconsistency(a, b, std::get<Inconsistent>(nat).certificate));
      CHECK(certifies_inconsistency(a, b, std::get<Inconsistent>(rev).certificate));
    }
  }
}

TEST_CASE("rank factorization reproduces the matrix") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = rng() % 4;
    const RationalMatrix m = k ? random_matrix(rng, 4, 5, k) : RationalMatrix(4, 5);
    const auto f = rank_factorize(m);
    CHECK(f.rank == rank(m));
    CHECK(f.left.cols() == f.rank);
    if (f.rank) CHECK(f.left * f.right == m);
  }
  const RationalMatrix rank_two{{1, 0}, {0, 1}};
  CHECK(rank_factorize(rank_two).rank == 2);
}

TEST_CASE("subspace intersection") {
  // span{e1,e2} ∩ span{e2,e3} = span{e2}
  RationalMatrix a{{1, 0}, {0, 1}, {0, 0}};
  RationalMatrix b{{0, 0}, {1, 0}, {0, 1}};
  const RationalMatrix i = intersect_column_spaces(a, b);
  REQUIRE(i.cols() == 1);
  CHECK(i(0, 0) == 0);
  CHECK(i(2, 0) == 0);
  CHECK(i(1, 0) != 0);
  RationalMatrix c{{1, 0}, {1, 1}, {0, 1}};
  CHECK(intersect_column_spaces(i, c).cols() == 0);
}
