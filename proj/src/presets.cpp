#include "korncert/presets.hpp"

#include <stdexcept>

namespace korncert::presets {

using greens::DerivExpr;
using linalg::RationalMatrix;
using opsym::OperatorSymbol;

std::string to_string(IdentityKind k) {
  switch (k) {
    case IdentityKind::ComposeZero: return "compose-zero";
    case IdentityKind::Partition: return "partition";
    case IdentityKind::Antiderivatives: return "antiderivatives";
    case IdentityKind::Magic: return "magic";
    case IdentityKind::GreensSymbol: return "greens-symbol";
  }
  return "?";
}

std::string to_string(Expectation e) {
  switch (e) {
    case Expectation::Holds: return "holds";
    case Expectation::Fails: return "fails";
    case Expectation::Any: return "any";
  }
  return "?";
}

std::string to_string(C6Mode m) { return m == C6Mode::Strict ? "strict" : "weak"; }

std::string to_string(C6Expectation e) {
  switch (e) {
    case C6Expectation::Feasible: return "feasible";
    case C6Expectation::Infeasible: return "infeasible";
    case C6Expectation::Any: return "any";
  }
  return "?";
}

poly::PolyMatrix poly_matrix(std::size_t n, const std::vector<std::vector<std::string>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  poly::PolyMatrix m(rows.size(), cols, n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged polynomial matrix");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = poly::parse_poly(n, rows[i][j]);
  }
  return m;
}

namespace {

Bundle dsym_r2() {
  Bundle b;
  b.name = "dsym-r2";
  b.n = 2;
  auto gp = greens::greens_preset("dsym-r2");
  b.a = gp.a;
  b.g = gp.g;
  // L(D) = ∂2² e1* - ∂1∂2 e2* + ∂1² e3*, from R³ to R.
  b.l = OperatorSymbol(2, 2, 3, 1);
  b.l.set_coefficient({0, 2}, {{1, 0, 0}});
  b.l.set_coefficient({1, 1}, {{0, -1, 0}});
  b.l.set_coefficient({2, 0}, {{0, 0, 1}});
  b.k = poly_matrix(2, {{"1/2*y2^2"}, {"-y1*y2"}, {"1/2*y1^2"}});
  b.antiderivatives = {
      poly_matrix(2, {{"1/2*y1*y2^2"}, {"1/6*y2^3 - 1/2*y1^2*y2"}, {"1/6*y1^3"}}),
      // The sign-corrected second antiderivative; see tests for the refuted printed variant.
      poly_matrix(2, {{"1/6*y2^3"}, {"1/6*y1^3 - 1/2*y1*y2^2"}, {"1/2*y1^2*y2"}}),
  };
  b.magic = MagicForm::AntiderivativeSymmetry;
  return b;
}

Bundle grad_r2() {
  Bundle b;
  b.name = "grad-r2";
  b.n = 2;
  auto gp = greens::greens_preset("grad-r2");
  b.a = gp.a;
  b.g = gp.g;
  b.l = OperatorSymbol(2, 1, 2, 1);
  b.l.set_coefficient({0, 1}, {{1, 0}});
  b.l.set_coefficient({1, 0}, {{0, -1}});
  b.k = poly_matrix(2, {{"y2"}, {"-y1"}});
  b.antiderivatives = {
      poly_matrix(2, {{"y1*y2"}, {"-1/2*y1^2"}}),
      poly_matrix(2, {{"1/2*y2^2"}, {"-y1*y2"}}),
  };
  b.t = {{DerivExpr::derivative({2, 0}), DerivExpr::derivative({1, 1})}};
  b.p = poly_matrix(2, {{"y1*y2"}, {"1/2*y2^2 - 1/2*y1^2"}});
  b.magic = MagicForm::ReferenceFactorization;
  return b;
}

Bundle curl_r3() {
  Bundle b;
  b.name = "curl-r3";
  b.n = 3;
  auto gp = greens::greens_preset("grad-r3");
  b.a = gp.a;
  b.g = gp.g;
  // L(D) = curl/2 on R³.
  const Rational h(1, 2);
  b.l = OperatorSymbol(3, 1, 3, 3);
  b.l.set_coefficient({1, 0, 0}, {{0, 0, 0}, {0, 0, -h}, {0, h, 0}});
  b.l.set_coefficient({0, 1, 0}, {{0, 0, h}, {0, 0, 0}, {-h, 0, 0}});
  b.l.set_coefficient({0, 0, 1}, {{0, -h, 0}, {h, 0, 0}, {0, 0, 0}});
  // K(y) = y1 M1 + y2 M2 + y3 M3.
  b.k = poly_matrix(3, {{"0", "y3", "-y2"}, {"-y3", "0", "y1"}, {"y2", "-y1", "0"}});
  b.antiderivatives = {
      poly_matrix(3, {{"0", "y1*y3", "-y1*y2"}, {"-y1*y3", "0", "1/2*y1^2"}, {"y1*y2", "-1/2*y1^2", "0"}}),
      poly_matrix(3, {{"0", "y2*y3", "-1/2*y2^2"}, {"-y2*y3", "0", "y1*y2"}, {"1/2*y2^2", "-y1*y2", "0"}}),
      poly_matrix(3, {{"0", "1/2*y3^2", "-y2*y3"}, {"-1/2*y3^2", "0", "y1*y3"}, {"y2*y3", "-y1*y3", "0"}}),
  };
  b.magic = MagicForm::CrossSymmetry;
  b.expected[3] = Expectation::Fails;
  return b;
}

Bundle open_question_r3() {
  Bundle b;
  b.name = "open-question-r3";
  b.n = 3;
  auto gp = greens::greens_preset("grad-r3");
  b.a = gp.a;
  b.g = gp.g;
  b.l = OperatorSymbol(3, 2, 3, 1);
  b.l.set_coefficient({0, 1, 1}, {{1, 0, 0}});
  b.l.set_coefficient({1, 0, 1}, {{0, 1, 0}});
  b.l.set_coefficient({1, 1, 0}, {{0, 0, -2}});
  b.k = poly_matrix(3, {{"y2*y3"}, {"y1*y3"}, {"-1/2*y1*y2"}});
  b.antiderivatives = {
      poly_matrix(3, {{"y1*y2*y3"}, {"1/2*y1^2*y3"}, {"-1/4*y1^2*y2"}}),
      poly_matrix(3, {{"1/2*y2^2*y3"}, {"y1*y2*y3"}, {"-1/4*y1*y2^2"}}),
      poly_matrix(3, {{"1/2*y2*y3^2"}, {"1/2*y1*y3^2"}, {"-1/2*y1*y2*y3"}}),
  };
  b.magic = MagicForm::CandidateWeak;
  b.expected[3] = Expectation::Any;
  return b;
}

}  // namespace

std::vector<std::string> bundle_names() { return {"dsym-r2", "grad-r2", "curl-r3", "open-question-r3"}; }

Bundle bundle(const std::string& name) {
  if (name == "dsym-r2") return dsym_r2();
  if (name == "grad-r2") return grad_r2();
  if (name == "curl-r3") return curl_r3();
  if (name == "open-question-r3") return open_question_r3();
  throw std::invalid_argument("unknown preset '" + name + "'");
}

const std::vector<C6Case>& c6_cases() {
  static const std::vector<C6Case> cases = {
      {"grad-r2-strict", "grad-r2", C6Mode::Strict, C6Expectation::Feasible},
      {"dsym-r2-weak", "dsym-r2", C6Mode::Weak, C6Expectation::Feasible},
      {"curl-r3-strict", "curl-r3", C6Mode::Strict, C6Expectation::Infeasible},
      {"open-question-r3-weak", "open-question-r3", C6Mode::Weak, C6Expectation::Any},
  };
  return cases;
}

const C6Case& c6_case(const std::string& name) {
  for (const auto& c : c6_cases())
    if (c.name == name) return c;
  throw std::invalid_argument("unknown C6 case '" + name + "'");
}

}  // namespace korncert::presets
