#include "korncert/greens.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace korncert::greens {

using poly::LogRadialExpr;
using poly::MultiPoly;

DerivExpr DerivExpr::derivative(const MultiIndex& beta, const Rational& c) {
  DerivExpr e(beta.dim());
  e.add_term(beta, c);
  return e;
}

Rational DerivExpr::coefficient(const MultiIndex& beta) const {
  auto it = terms_.find(beta);
  return it == terms_.end() ? Rational(0) : it->second;
}

void DerivExpr::add_term(const MultiIndex& beta, const Rational& c) {
  if (beta.dim() != n_)
    throw std::invalid_argument("derivative index " + beta.to_string() + " does not live in R^" + std::to_string(n_));
  if (n_ != 2 && n_ != 3) throw std::invalid_argument("fundamental solutions are provided for n = 2 and n = 3 only");
  if (c == 0) return;
  const std::size_t last = n_ - 1;
  if (beta[last] >= 2) {
    const MultiIndex lowered = beta.with(last, beta[last] - 2);
    for (std::size_t i = 0; i < last; ++i) add_term(lowered.with(i, lowered[i] + 2), -c);
    return;
  }
  auto [it, inserted] = terms_.try_emplace(beta, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void DerivExpr::check_dim(const DerivExpr& other) const {
  if (n_ != other.n_)
    throw std::invalid_argument("derivative expressions in R^" + std::to_string(n_) + " and R^" +
                                std::to_string(other.n_) + " cannot be combined");
}

DerivExpr& DerivExpr::operator+=(const DerivExpr& rhs) {
  if (n_ == 0 && terms_.empty()) n_ = rhs.n_;
  check_dim(rhs);
  for (const auto& [beta, c] : rhs.terms_) add_term(beta, c);
  return *this;
}

DerivExpr& DerivExpr::operator-=(const DerivExpr& rhs) {
  if (n_ == 0 && terms_.empty()) n_ = rhs.n_;
  check_dim(rhs);
  for (const auto& [beta, c] : rhs.terms_) add_term(beta, -c);
  return *this;
}

DerivExpr& DerivExpr::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [beta, v] : terms_) v *= c;
  return *this;
}

DerivExpr DerivExpr::diff(std::size_t axis) const {
  if (axis >= n_) throw std::invalid_argument("derivative axis out of range");
  DerivExpr out(n_);
  for (const auto& [beta, c] : terms_) out.add_term(beta.with(axis, beta[axis] + 1), c);
  return out;
}

DerivExpr DerivExpr::diff(const MultiIndex& alpha) const {
  if (alpha.dim() != n_) throw std::invalid_argument("multi-index dimension mismatch");
  DerivExpr out(n_);
  for (const auto& [beta, c] : terms_) out.add_term(beta + alpha, c);
  return out;
}

std::optional<int> DerivExpr::order() const {
  if (terms_.empty() || mixed_order()) return std::nullopt;
  return terms_.begin()->first.order();
}

bool DerivExpr::mixed_order() const {
  if (terms_.empty()) return false;
  const int first = terms_.begin()->first.order();
  for (const auto& [beta, c] : terms_)
    if (beta.order() != first) return true;
  return false;
}

namespace {

LogRadialExpr derivative_of_fundamental(const MultiIndex& beta) {
  LogRadialExpr e = LogRadialExpr::fundamental(beta.dim());
  for (std::size_t i = 0; i < beta.dim(); ++i)
    for (int k = 0; k < beta[i]; ++k) e = e.diff(i);
  return e;
}

}  // namespace

LogRadialExpr DerivExpr::closed_form() const {
  LogRadialExpr out(n_);
  for (const auto& [beta, c] : terms_) out += derivative_of_fundamental(beta) * c;
  return out.canonical();
}

std::string DerivExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [beta, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < n_; ++i) {
      if (beta[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "d" + std::to_string(i + 1);
      if (beta[i] > 1) mono += "^" + std::to_string(beta[i]);
    }
    if (mono.empty()) mono = "1";
    if (mag != 1) s += mag.get_str() + "*";
    s += mono;
  }
  return s;
}

DerivExpr reduce_normal_form(std::size_t n, const std::map<MultiIndex, Rational>& raw) {
  DerivExpr e(n);
  for (const auto& [beta, c] : raw) e.add_term(beta, c);
  return e;
}

bool deriv_expr_equal(const DerivExpr& a, const DerivExpr& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("comparing derivative expressions of different dimension");
  return a.terms() == b.terms();
}

DerivExpr diff_deriv_expr(const DerivExpr& e, std::size_t axis) { return e.diff(axis); }

LogRadialExpr::Value eval_deriv_expr(const DerivExpr& e, std::span<const Rational> x) {
  return e.closed_form().evaluate(x);
}

double eval_deriv_expr(const DerivExpr& e, std::span<const double> x) { return e.closed_form().evaluate(x); }

CompiledRadial::CompiledRadial(const LogRadialExpr& e)
    : n_(e.dim()), log_coeff_(to_double(e.log_coeff())), power_(e.power()) {
  for (const auto& [exp, c] : e.numerator().terms()) {
    exponents_.push_back(exp.entries());
    coeffs_.push_back(to_double(c));
  }
}

double CompiledRadial::operator()(std::span<const double> x) const {
  double r2 = 0.0;
  for (std::size_t i = 0; i < n_; ++i) r2 += x[i] * x[i];
  double v = 0.0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    double m = coeffs_[t];
    for (std::size_t i = 0; i < n_; ++i)
      for (int k = 0; k < exponents_[t][i]; ++k) m *= x[i];
    v += m;
  }
  if (power_ != 0) v *= std::pow(r2, -0.5 * power_);
  if (log_coeff_ != 0.0) v += log_coeff_ * 0.5 * std::log(r2);
  return v;
}

GreensMatrix::GreensMatrix(std::size_t rows, std::size_t cols, std::size_t n, Rational norm_over_pi)
    : rows_(rows), cols_(cols), n_(n), norm_over_pi_(std::move(norm_over_pi)), data_(rows * cols, DerivExpr(n)) {}

double GreensMatrix::normalization() const { return to_double(norm_over_pi_) / std::numbers::pi; }

GreensMatrix GreensMatrix::diff(std::size_t axis) const {
  GreensMatrix out = *this;
  for (auto& e : out.data_) e = e.diff(axis);
  return out;
}

poly::PolyMatrix GreensMatrix::symbol_matrix() const {
  poly::PolyMatrix out(rows_, cols_, n_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [beta, c] : (*this)(i, j).terms()) out(i, j).add_term(beta, c);
  return out;
}

std::optional<int> GreensMatrix::order() const {
  std::optional<int> common;
  for (const auto& e : data_) {
    if (e.is_zero()) continue;
    auto o = e.order();
    if (!o || (common && *common != *o)) return std::nullopt;
    common = o;
  }
  return common;
}

std::vector<double> GreensMatrix::evaluate(std::span<const double> x) const {
  std::vector<double> out;
  out.reserve(data_.size());
  const double c = normalization();
  for (const auto& e : data_) out.push_back(e.is_zero() ? 0.0 : c * eval_deriv_expr(e, x));
  return out;
}

std::vector<CompiledRadial> GreensMatrix::compile() const {
  std::vector<CompiledRadial> out;
  out.reserve(data_.size());
  for (const auto& e : data_) out.emplace_back(e.closed_form());
  return out;
}

std::string GreensMatrix::to_string() const {
  std::string s = "(" + norm_over_pi_.get_str() + "/pi)*[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += ", ";
      s += (*this)(i, j).to_string();
    }
  }
  return s + "]";
}

namespace {

// Rows of B(∂) applied to Φ_n, given as first-order coefficient rows.
GreensMatrix first_order_greens(std::size_t n, const std::vector<std::vector<std::vector<int>>>& rows,
                                Rational norm_over_pi) {
  const std::size_t cols = rows.front().size();
  GreensMatrix g(rows.size(), cols, n, std::move(norm_over_pi));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t axis = 0; axis < n; ++axis)
        if (rows[i][j][axis] != 0) g(i, j).add_term(MultiIndex::unit(n, axis), rows[i][j][axis]);
  return g;
}

opsym::OperatorSymbol gradient(std::size_t n) {
  opsym::OperatorSymbol a(n, 1, 1, n);
  for (std::size_t i = 0; i < n; ++i) {
    linalg::RationalMatrix m(n, 1);
    m(i, 0) = 1;
    a.set_coefficient(MultiIndex::unit(n, i), m);
  }
  return a;
}

}  // namespace

std::vector<std::string> greens_preset_names() { return {"dsym-r2", "grad-r2", "grad-r3"}; }

GreensPreset greens_preset(const std::string& name) {
  // Normalizations make ΔΦ = δ: c_2 = 1/(2π) for log|x|, c_3 = -1/(4π) for |x|^{-1}.
  if (name == "dsym-r2") {
    opsym::OperatorSymbol a(2, 1, 2, 3);
    a.set_coefficient({1, 0}, {{1, 0}, {0, 1}, {0, 0}});
    a.set_coefficient({0, 1}, {{0, 0}, {1, 0}, {0, 1}});
    // B(∂) rows (∂1, ∂2, -∂1) and (-∂2, ∂1, ∂2); B(ξ)A(ξ) = |ξ|²Id.
    auto g = first_order_greens(2, {{{1, 0}, {0, 1}, {-1, 0}}, {{0, -1}, {1, 0}, {0, 1}}}, Rational(1, 2));
    return {name, std::move(g), std::move(a)};
  }
  if (name == "grad-r2") {
    auto g = first_order_greens(2, {{{1, 0}, {0, 1}}}, Rational(1, 2));
    return {name, std::move(g), gradient(2)};
  }
  if (name == "grad-r3") {
    auto g = first_order_greens(3, {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}, Rational(-1, 4));
    return {name, std::move(g), gradient(3)};
  }
  throw std::invalid_argument("unknown Green's preset '" + name + "'");
}

}  // namespace korncert::greens
