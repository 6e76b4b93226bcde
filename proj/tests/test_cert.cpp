#include "doctest.h"
#include "korncert/cert.hpp"
#include "korncert/presets.hpp"

using namespace korncert;
using namespace korncert::cert;
using presets::bundle;
using presets::poly_matrix;

namespace {

poly::PolyMatrix scaled(poly::PolyMatrix m, const Rational& c) { return m *= c; }

greens::DerivExpr d(std::initializer_list<int> beta, Rational c = 1) {
  return greens::DerivExpr::derivative(MultiIndex(beta), c);
}

}  // namespace

TEST_CASE("compose-zero") {
  const auto b = bundle("dsym-r2");
  auto r = verify_compose_zero(b.l, b.a);
  CHECK(r.verified());
  CHECK(r.pointwise_agree);
  CHECK(r.pointwise_samples == kPointwiseSamples);
  const auto c = bundle("curl-r3");
  CHECK(verify_compose_zero(c.l, c.a).verified());
  // Gradient rows (∂1u1, ∂2u1, ∂2u2) without symmetrization.
  opsym::OperatorSymbol grad(2, 1, 2, 3);
  grad.set_coefficient({1, 0}, {{1, 0}, {0, 0}, {0, 0}});
  grad.set_coefficient({0, 1}, {{0, 0}, {1, 0}, {0, 1}});
  r = verify_compose_zero(b.l, grad);
  CHECK_FALSE(r.verified());
  CHECK(r.pointwise_agree);
  CHECK(r.lhs != "0");
}

TEST_CASE("partition of the identity") {
  const auto b = bundle("dsym-r2");
  CHECK(verify_partition(b.k, b.l).verified());
  auto r = verify_partition(scaled(b.k, 2), b.l);
  CHECK_FALSE(r.verified());
  CHECK(r.pointwise_agree);
  CHECK(r.lhs == scaled(poly::PolyMatrix::scaled_identity(3, poly::MultiPoly::constant(2, 1)), 2).to_string());
  const auto c = bundle("curl-r3");
  CHECK(verify_partition(c.k, c.l).verified());
  const auto q = bundle("open-question-r3");
  CHECK(verify_partition(q.k, q.l).verified());
  // A cubic K is not constant after two derivatives.
  CHECK_THROWS_AS(verify_partition(b.antiderivatives[0], b.l), std::invalid_argument);
}

TEST_CASE("antiderivatives") {
  const auto b = bundle("dsym-r2");
  CHECK(verify_antiderivatives(b.antiderivatives, b.k).verified());
  CHECK(verify_antiderivatives(bundle("open-question-r3").antiderivatives, bundle("open-question-r3").k).verified());
  auto flipped = b.antiderivatives;
  flipped[0](1, 0) = poly::parse_poly(2, "1/6*y2^3 + 1/2*y1^2*y2");
  auto r = verify_antiderivatives(flipped, b.k);
  CHECK_FALSE(r.verified());
  CHECK(r.pointwise_agree);
}

TEST_CASE("the printed second antiderivative of the Korn preset is refuted") {
  const auto b = bundle("dsym-r2");
  const auto printed = poly_matrix(2, {{"1/6*y2^3"}, {"1/6*y1^3 - 1/2*y1^2*y2"}, {"-1/2*y1*y2^2"}});
  auto r = verify_antiderivatives({b.antiderivatives[0], printed}, b.k);
  CHECK_FALSE(r.verified());
  CHECK(r.pointwise_agree);
  r = verify_magic(b.g, b.antiderivatives[0], printed);
  CHECK_FALSE(r.verified());
  CHECK(r.pointwise_agree);
}

TEST_CASE("magic identity") {
  const auto b = bundle("dsym-r2");
  auto r = verify_magic(b.g, b.antiderivatives[0], b.antiderivatives[1]);
  CHECK(r.verified());
  CHECK(r.pointwise_agree);
  CHECK(r.lhs == r.rhs);
  r = verify_magic(b.g, b.antiderivatives[0], scaled(b.antiderivatives[1], -1));
  CHECK_FALSE(r.verified());
  CHECK(r.pointwise_agree);
  const auto g2 = bundle("grad-r2");
  r = verify_reference_factorization(g2.g, g2.k, g2.t, *g2.p);
  CHECK(r.verified());
  CHECK(r.pointwise_agree);
}

TEST_CASE("the gradient in three dimensions fails the cross symmetry") {
  const auto c = bundle("curl-r3");
  auto r = verify_cross_symmetry(c.g, c.k);
  CHECK_FALSE(r.verified());
  CHECK(r.pointwise_agree);
  // ∂1G·M2 = (∂1∂3, 0, -∂1²) and ∂2G·M1 = (0, -∂2∂3, ∂2²).
  const auto lhs = composite::multiply(c.g.diff(0), c.k.diff(MultiIndex{0, 1, 0}));
  const auto rhs = composite::multiply(c.g.diff(1), c.k.diff(MultiIndex{1, 0, 0}));
  CHECK(lhs(0, 0) == composite::TensorPoly::product(poly::MultiPoly::constant(3, 1), d({1, 0, 1})));
  CHECK(lhs(0, 1).is_zero());
  CHECK(lhs(0, 2) == composite::TensorPoly::product(poly::MultiPoly::constant(3, 1), d({2, 0, 0}, -1)));
  CHECK(rhs(0, 0).is_zero());
  CHECK(rhs(0, 1) == composite::TensorPoly::product(poly::MultiPoly::constant(3, 1), d({0, 1, 1}, -1)));
  CHECK(rhs(0, 2) == composite::TensorPoly::product(poly::MultiPoly::constant(3, 1), d({0, 2, 0})));
}

TEST_CASE("Green's symbol") {
  const auto b = bundle("dsym-r2");
  CHECK(verify_greens_symbol(b.g, b.a).verified());
  const auto g2 = bundle("grad-r2");
  CHECK(verify_greens_symbol(g2.g, g2.a).verified());
  auto broken = b.g;
  for (std::size_t j = 0; j < 3; ++j) broken(1, j) = greens::DerivExpr(2);
  auto r = verify_greens_symbol(broken, b.a);
  CHECK_FALSE(r.verified());
  CHECK(r.pointwise_agree);
}

TEST_CASE("every bundle meets its registry expectations") {
  for (const auto& name : presets::bundle_names()) {
    const auto reports = certify_bundle(bundle(name));
    REQUIRE(reports.size() == 5);
    for (const auto& r : reports) {
      INFO(r.name << ": " << to_string(r.status) << "\n  lhs " << r.lhs << "\n  rhs " << r.rhs);
      CHECK(r.as_expected());
      CHECK(r.pointwise_samples == kPointwiseSamples);
    }
  }
  for (const auto& r : certify_bundle(bundle("dsym-r2"))) CHECK(r.verified());
}

TEST_CASE("reports are deterministic") {
  const auto a = certify_bundle(bundle("dsym-r2"));
  const auto b = certify_bundle(bundle("dsym-r2"));
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].lhs == b[i].lhs);
    CHECK(a[i].rhs == b[i].rhs);
    CHECK(a[i].status == b[i].status);
  }
}
