#include <random>
#include <variant>

#include "doctest.h"
#include "korncert/c6.hpp"
#include "test_support.hpp"

using namespace korncert;
using namespace korncert::c6;
using composite::CompositeMatrix;
using linalg::RationalMatrix;
using linalg::RationalVector;
using poly::LogRadialExpr;

namespace {

// Integer points with integer norm, so every derivative of Φ_n (order ≥ 1)
// takes a rational value there.
std::vector<std::vector<int>> integer_norm_points(std::size_t n) {
  const std::vector<std::vector<int>> base =
      n == 2 ? std::vector<std::vector<int>>{{3, 4}, {5, 12}, {8, 15}, {7, 24}, {20, 21}}
             : std::vector<std::vector<int>>{{1, 2, 2}, {2, 3, 6}, {1, 4, 8}, {4, 4, 7}, {2, 6, 9}, {6, 6, 7}};
  std::vector<std::vector<int>> out;
  for (const auto& p : base)
    for (std::size_t shift = 0; shift < n; ++shift)
      for (int signs = 0; signs < 2; ++signs) {
        std::vector<int> q(n);
        for (std::size_t i = 0; i < n; ++i) q[i] = p[(i + shift) % n] * ((signs && i == 0) ? -1 : 1);
        out.push_back(q);
      }
  return out;
}

Rational exact_value(const LogRadialExpr& e, const std::vector<int>& x) {
  std::vector<Rational> xq(x.begin(), x.end());
  const auto v = e.evaluate(std::span<const Rational>(xq));
  REQUIRE(v.log_coeff == 0);
  long r2 = 0;
  for (int c : x) r2 += static_cast<long>(c) * c;
  long r = 0;
  while (r * r < r2) ++r;
  REQUIRE(r * r == r2);
  Rational out = v.numerator;
  for (int k = 0; k < v.power; ++k) out /= r;
  return out;
}

LogRadialExpr phi_derivative(const MultiIndex& beta) {
  LogRadialExpr e = LogRadialExpr::fundamental(beta.dim());
  for (std::size_t i = 0; i < beta.dim(); ++i)
    for (int k = 0; k < beta[i]; ++k) e = e.diff(i);
  return e;
}

// The C6 conditions imposed pointwise at (x, y) pairs, assembled without the
// normal form or coefficient matching. Unknowns are ordered as in sys.
struct PointwiseSystem {
  RationalMatrix matrix;
  RationalVector rhs;
};

PointwiseSystem pointwise_system(const presets::Bundle& b, const System& sys, std::size_t samples) {
  const std::size_t n = b.n;
  const auto xs = integer_norm_points(n);
  std::mt19937_64 rng(61);
  std::vector<std::vector<Rational>> rows;
  RationalVector rhs;
  const auto alphas = indices_of_order(n, b.l.order());
  const std::size_t e_dim = b.l.source_dim();

  for (std::size_t s = 0; s < samples; ++s) {
    const auto& x = xs[s % xs.size()];
    std::vector<Rational> y(n);
    for (auto& c : y) c = testing::small_rational(rng);
    // dG[i](v, e) = ∂_{x_i} of entry (v, e) of G.
    std::vector<RationalMatrix> dg(n, RationalMatrix(b.g.rows(), b.g.cols()));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t v = 0; v < b.g.rows(); ++v)
        for (std::size_t e = 0; e < b.g.cols(); ++e)
          if (!b.g(v, e).is_zero()) dg[i](v, e) = exact_value(b.g(v, e).closed_form().diff(i), x);
    std::vector<Rational> basis_value(sys.unknowns.size());
    for (std::size_t j = 0; j < sys.unknowns.size(); ++j)
      basis_value[j] = exact_value(phi_derivative(sys.unknowns[j].beta), x);

    auto r_alpha = [&](const MultiIndex& alpha) {
      RationalMatrix out(b.g.rows(), b.k.cols());
      for (std::size_t i = 0; i < n; ++i) {
        if (alpha[i] == 0) continue;
        const auto kd = b.k.diff(*alpha.minus(MultiIndex::unit(n, i)));
        RationalMatrix kv(kd.rows(), kd.cols());
        for (std::size_t a = 0; a < kd.rows(); ++a)
          for (std::size_t c = 0; c < kd.cols(); ++c) kv(a, c) = kd(a, c).evaluate(std::span<const Rational>(y));
        out += dg[i] * kv * Rational(alpha[i]);
      }
      return out;
    };
    auto d_monomial = [&](const MultiIndex& gamma, const MultiIndex& alpha) {
      return poly::MultiPoly::monomial(gamma).diff(alpha).evaluate(std::span<const Rational>(y));
    };

    if (sys.mode == Mode::Strict) {
      for (const auto& alpha : alphas) {
        const RationalMatrix target = r_alpha(alpha);
        for (std::size_t v = 0; v < sys.q_rows; ++v)
          for (std::size_t f = 0; f < sys.q_cols; ++f) {
            std::vector<Rational> row(sys.unknowns.size());
            for (std::size_t j = 0; j < sys.unknowns.size(); ++j) {
              const auto& u = sys.unknowns[j];
              if (u.row == v && u.col == f) row[j] = d_monomial(u.gamma, alpha) * basis_value[j];
            }
            rows.push_back(row);
            rhs.push_back(target(v, f));
          }
      }
    } else {
      RationalMatrix target(b.g.rows(), e_dim);
      for (const auto& [alpha, la] : b.l.coefficients()) target += r_alpha(alpha) * la;
      for (std::size_t v = 0; v < sys.q_rows; ++v)
        for (std::size_t e = 0; e < e_dim; ++e) {
          std::vector<Rational> row(sys.unknowns.size());
          for (std::size_t j = 0; j < sys.unknowns.size(); ++j) {
            const auto& u = sys.unknowns[j];
            if (u.row != v) continue;
            for (const auto& [alpha, la] : b.l.coefficients())
              row[j] += d_monomial(u.gamma, alpha) * la(u.col, e) * basis_value[j];
          }
          rows.push_back(row);
          rhs.push_back(target(v, e));
        }
    }
  }
  PointwiseSystem out{RationalMatrix(rows.size(), sys.unknowns.size()), rhs};
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) out.matrix(i, j) = rows[i][j];
  return out;
}

}  // namespace

TEST_CASE("unknown counts") {
  CHECK(build_system(presets::bundle("grad-r2"), Mode::Strict).unknowns.size() == 6);
  const auto curl = build_system(presets::bundle("curl-r3"), Mode::Strict);
  // Three entries × 6 quadratic y-monomials × 5 reduced second derivatives.
  CHECK(curl.unknowns.size() == 90);
  CHECK(curl.alphas.size() == 3);
  CHECK(build_system(presets::bundle("dsym-r2"), Mode::Weak).unknowns.size() == 16);
  const auto q = build_system(presets::bundle("open-question-r3"), Mode::Weak);
  CHECK(q.unknowns.size() == 50);
  CHECK(q.y_degree == 3);
  CHECK(q.x_order == 2);
  for (const auto& c : q.constraints) CHECK_FALSE(c.block.has_value());
}

TEST_CASE("the exhibited gradient factorization solves the strict system") {
  const auto b = presets::bundle("grad-r2");
  const auto sys = build_system(b, Mode::Strict);
  const auto out = solve_feasibility(sys);
  REQUIRE(out.feasible());
  CHECK(out.verified);
  CHECK(out.orders_agree);
  CHECK(out.nullity == 0);
  const auto tp = composite::multiply(b.t, *b.p);
  const auto coords = coordinates(sys, tp);
  REQUIRE(coords.has_value());
  CHECK(satisfies(sys, *coords));
  // The solution is unique, so it is the exhibited one.
  CHECK(out.q == tp);
  // Strict solutions satisfy the summed condition.
  const auto weak = build_system(b, Mode::Weak);
  CHECK(satisfies(weak, *coordinates(weak, out.q)));
  CHECK(solve_feasibility(weak).feasible());
}

TEST_CASE("factorization") {
  const auto b = presets::bundle("grad-r2");
  const auto tp = composite::multiply(b.t, *b.p);
  auto f = factor_composite(tp);
  // ∂1² ⊗ y1y2 and ∂1∂2 ⊗ (y2² - y1²)/2 are independent.
  CHECK(f.dim_m == 2);
  CHECK(composite::multiply(f.t, f.p) == tp);

  const std::size_t n = 2;
  CompositeMatrix rank_one(1, 1, n);
  rank_one(0, 0) = composite::TensorPoly::product(poly::parse_poly(2, "y1^2 + y2^2"),
                                                  greens::DerivExpr::derivative(MultiIndex{2, 0}) +
                                                      greens::DerivExpr::derivative(MultiIndex{1, 1}, 3));
  f = factor_composite(rank_one);
  CHECK(f.dim_m == 1);
  CHECK(composite::multiply(f.t, f.p) == rank_one);

  f = factor_composite(CompositeMatrix(2, 1, n));
  CHECK(f.dim_m == 0);
  CHECK(f.t.size() == 2);
  CHECK(f.p.rows() == 0);
  CHECK(composite::multiply(f.t, f.p).is_zero());
}

TEST_CASE("factorization round-trips on random composites") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 2;
    CompositeMatrix q(2, 2, n);
    const auto gammas = indices_of_order(n, 2);
    const auto betas = indices_of_order(n, 2);
    for (int t = 0; t < 6; ++t)
      q(rng() % 2, rng() % 2).add_term(gammas[rng() % gammas.size()], betas[rng() % betas.size()],
                                       testing::small_rational(rng));
    const auto f = factor_composite(q);
    CHECK(composite::multiply(f.t, f.p) == q);
    CHECK(f.dim_m <= 6);
  }
}

TEST_CASE("zero right-hand side gives Q = 0") {
  auto b = presets::bundle("grad-r2");
  b.g = greens::GreensMatrix(1, 2, 2, Rational(1, 2));
  const auto out = solve_feasibility(build_system(b, Mode::Strict));
  REQUIRE(out.feasible());
  CHECK(out.q.is_zero());
  REQUIRE(out.factors.has_value());
  CHECK(out.factors->dim_m == 0);
}

TEST_CASE("the curl representation admits no strict solution") {
  const auto b = presets::bundle("curl-r3");
  const auto sys = build_system(b, Mode::Strict);
  const auto out = solve_feasibility(sys);
  REQUIRE_FALSE(out.feasible());
  CHECK(out.verified);
  CHECK(out.orders_agree);
  CHECK(linalg::certifies_inconsistency(sys.matrix, sys.rhs, out.certificate));
  CHECK_FALSE(out.factors.has_value());
}

TEST_CASE("the Korn case is weakly feasible and contains the magic candidate") {
  const auto report = run_case("dsym-r2-weak");
  CHECK(report.outcome.feasible());
  CHECK(report.outcome.verified);
  REQUIRE(report.reference_solves.has_value());
  CHECK(*report.reference_solves);
  CHECK(report.as_expected());
}

TEST_CASE("every case reproduces under reversed pivoting and meets its expectation") {
  for (const auto& c : presets::c6_cases()) {
    const auto report = run_case(c.name);
    INFO(c.name);
    CHECK(report.outcome.orders_agree);
    CHECK(report.outcome.verified);
    CHECK(report.as_expected());
  }
}

TEST_CASE("pointwise oracle agrees with the coefficient-matching verdict") {
  for (const auto& c : presets::c6_cases()) {
    INFO(c.name);
    const auto b = presets::bundle(c.bundle);
    const auto sys = build_system(b, c.mode);
    const auto out = solve_feasibility(sys);
    const auto pw = pointwise_system(b, sys, sys.unknowns.size() + 10);
    const auto res = linalg::solve(pw.matrix, pw.rhs);
    CHECK(std::holds_alternative<linalg::Consistent>(res) == out.feasible());
    if (out.feasible()) CHECK(pw.matrix * out.solution == pw.rhs);
    CHECK(linalg::rank(pw.matrix) == out.rank);
  }
}

TEST_CASE("input validation") {
  auto b = presets::bundle("grad-r2");
  // A second-order G is inconsistent with a first-order operator.
  CHECK_THROWS_AS(build_system(b.a, b.l, b.k, b.g.diff(0), Mode::Strict), std::invalid_argument);
  auto bad = b.k;
  bad(0, 0) += poly::parse_poly(2, "y1^2");
  CHECK_THROWS_AS(build_system(b.a, b.l, bad, b.g, Mode::Strict), std::invalid_argument);
  auto scaled = b.k;
  scaled *= Rational(2);
  CHECK_THROWS_AS(build_system(b.a, b.l, scaled, b.g, Mode::Weak), std::invalid_argument);
  CHECK_THROWS_AS(run_case("nope"), std::invalid_argument);
}
