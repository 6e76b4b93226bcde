#include <cmath>
#include <random>

#include "doctest.h"
#include "korncert/greens.hpp"
#include "test_support.hpp"

using namespace korncert;
using namespace korncert::greens;

namespace {

DerivExpr d(std::initializer_list<int> beta, Rational c = 1) { return DerivExpr::derivative(MultiIndex(beta), c); }

}  // namespace

TEST_CASE("harmonic normal form") {
  CHECK(d({0, 2}) == d({2, 0}, -1));
  CHECK(d({0, 0, 2}) == d({2, 0, 0}, -1) + d({0, 2, 0}, -1));
  CHECK(d({1, 1}).terms().size() == 1);
  CHECK(d({1, 1}).coefficient(MultiIndex{1, 1}) == 1);
  // ∂2⁴ = ∂1⁴ in the plane.
  CHECK(d({0, 4}) == d({4, 0}));
  std::map<MultiIndex, Rational> raw{{MultiIndex{0, 2}, 3}, {MultiIndex{2, 0}, 3}};
  CHECK(reduce_normal_form(2, raw).is_zero());
}

TEST_CASE("normal form is idempotent, linear and canonical") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 2;
    std::map<MultiIndex, Rational> a, b;
    for (int t = 0; t < 4; ++t) {
      std::vector<int> e(n);
      for (auto& v : e) v = static_cast<int>(rng() % 4);
      a[MultiIndex(e)] += testing::small_rational(rng);
      for (auto& v : e) v = static_cast<int>(rng() % 4);
      b[MultiIndex(e)] += testing::small_rational(rng);
    }
    const DerivExpr ra = reduce_normal_form(n, a);
    CHECK(reduce_normal_form(n, ra.terms()) == ra);
    for (const auto& [beta, c] : ra.terms()) CHECK(beta[n - 1] <= 1);
    std::map<MultiIndex, Rational> sum = a;
    for (const auto& [k, v] : b) sum[k] += v;
    CHECK(reduce_normal_form(n, sum) == ra + reduce_normal_form(n, b));
  }
}

TEST_CASE("equality and differentiation") {
  CHECK(deriv_expr_equal(d({0, 2}), d({2, 0}, -1)));
  CHECK_FALSE(deriv_expr_equal(d({1, 0}), d({0, 1})));
  CHECK(deriv_expr_equal(d({2, 0, 0}) + d({0, 2, 0}) + d({0, 0, 2}), DerivExpr(3)));
  CHECK(diff_deriv_expr(d({0, 1}), 0) == d({1, 1}));
  CHECK(diff_deriv_expr(d({0, 1}), 1) == d({2, 0}, -1));
  CHECK(diff_deriv_expr(d({0, 0, 1}), 2) == d({2, 0, 0}, -1) + d({0, 2, 0}, -1));
  CHECK((d({1, 0}) + d({2, 0})).mixed_order());
  CHECK(d({2, 1}).order() == 3);
}

TEST_CASE("exact evaluation") {
  const std::vector<Rational> e1{1, 0}, e2{0, 1}, f1{1, 0, 0};
  CHECK(eval_deriv_expr(d({1, 0}), std::span<const Rational>(e1)).to_double() == doctest::Approx(1.0));
  CHECK(eval_deriv_expr(d({2, 0}), std::span<const Rational>(e2)).to_double() == doctest::Approx(1.0));
  CHECK(eval_deriv_expr(d({1, 0, 0}), std::span<const Rational>(f1)).to_double() == doctest::Approx(-1.0));
  const std::vector<Rational> zero{0, 0};
  CHECK_THROWS_AS(eval_deriv_expr(d({1, 0}), std::span<const Rational>(zero)), std::domain_error);
}

TEST_CASE("reduced derivatives match finite differences of their antiderivative") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + trial % 2;
    std::vector<int> beta(n);
    for (auto& v : beta) v = static_cast<int>(rng() % 3);
    beta[0] += 1;
    const DerivExpr base = DerivExpr::derivative(MultiIndex(beta));
    const std::size_t axis = rng() % n;
    const DerivExpr derived = base.diff(axis);
    const auto xq = testing::random_nonzero_point(rng, n);
    std::vector<double> x;
    double norm = 0.0;
    for (const auto& c : xq) {
      x.push_back(c.get_d());
      norm += c.get_d() * c.get_d();
    }
    norm = std::sqrt(norm);
    const double h = 1e-4 * norm;
    auto xp = x, xm = x;
    xp[axis] += h;
    xm[axis] -= h;
    const double fd = (eval_deriv_expr(base, std::span<const double>(xp)) -
                       eval_deriv_expr(base, std::span<const double>(xm))) / (2 * h);
    const double exact = eval_deriv_expr(derived, std::span<const Rational>(xq)).to_double();
    const double scale = std::abs(eval_deriv_expr(base, std::span<const double>(x))) / norm + std::abs(exact);
    CHECK(std::abs(fd - exact) <= 1e-6 * scale);
  }
}

TEST_CASE("compiled closed forms agree with exact evaluation") {
  std::mt19937_64 rng(43);
  const auto g = greens_preset("dsym-r2").g.diff(0).diff(1);
  const auto compiled = g.compile();
  for (int s = 0; s < 10; ++s) {
    const auto xq = testing::random_nonzero_point(rng, 2);
    const std::vector<double> x{xq[0].get_d(), xq[1].get_d()};
    for (std::size_t k = 0; k < compiled.size(); ++k) {
      const double exact = eval_deriv_expr(g(k / 3, k % 3), std::span<const Rational>(xq)).to_double();
      CHECK(compiled[k](x) == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("presets") {
  const auto dsym = greens_preset("dsym-r2");
  CHECK(dsym.g.rows() == 2);
  CHECK(dsym.g.cols() == 3);
  CHECK(dsym.g(0, 2) == d({1, 0}, -1));
  CHECK(dsym.g(1, 0) == d({0, 1}, -1));
  CHECK(dsym.g.order() == 1);
  CHECK(dsym.g.norm_over_pi() == Rational(1, 2));
  const auto grad3 = greens_preset("grad-r3");
  CHECK(grad3.g.norm_over_pi() == Rational(-1, 4));
  CHECK(grad3.g(0, 2) == d({0, 0, 1}));
  CHECK_THROWS_AS(greens_preset("curl-r4"), std::invalid_argument);

  for (const auto& name : greens_preset_names()) {
    const auto p = greens_preset(name);
    const std::size_t n = p.g.dim();
    CHECK(p.g.symbol_matrix() * p.a.symbol_matrix() ==
          poly::PolyMatrix::scaled_identity(p.a.source_dim(), poly::MultiPoly::norm_squared(n)));
  }
}

TEST_CASE("preset entries are homogeneous of degree 1 - n") {
  std::mt19937_64 rng(44);
  for (const auto& name : greens_preset_names()) {
    const auto p = greens_preset(name);
    const std::size_t n = p.g.dim();
    for (int s = 0; s < 5; ++s) {
      const auto x = testing::random_nonzero_point(rng, n);
      std::vector<Rational> x2;
      for (const auto& c : x) x2.push_back(2 * c);
      for (std::size_t i = 0; i < p.g.rows(); ++i)
        for (std::size_t j = 0; j < p.g.cols(); ++j) {
          const auto v1 = eval_deriv_expr(p.g(i, j), std::span<const Rational>(x));
          const auto v2 = eval_deriv_expr(p.g(i, j), std::span<const Rational>(x2));
          // First derivatives of Φ_n: p(x)|x|^{-s} with deg p = s - (n - 1).
          CHECK(v1.log_coeff == 0);
          CHECK(v1.power == v2.power);
          CHECK(v2.radius_squared == 4 * v1.radius_squared);
          const int deg = v1.power - static_cast<int>(n) + 1;
          Rational scale = 1;
          for (int k = 0; k < deg; ++k) scale *= 2;
          CHECK(v2.numerator == v1.numerator * scale);
        }
    }
  }
}
