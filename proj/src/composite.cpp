#include "korncert/composite.hpp"

#include <stdexcept>

namespace korncert::composite {

using greens::DerivExpr;
using poly::MultiPoly;

TensorPoly TensorPoly::product(const MultiPoly& p, const DerivExpr& e) {
  if (p.dim() != e.dim()) throw std::invalid_argument("tensor factors live in different dimensions");
  TensorPoly out(p.dim());
  for (const auto& [gamma, a] : p.terms())
    for (const auto& [beta, b] : e.terms()) out.add_term(gamma, beta, a * b);
  return out;
}

void TensorPoly::add_term(const MultiIndex& gamma, const MultiIndex& beta, const Rational& c) {
  if (c == 0) return;
  if (gamma.dim() != n_ || beta.dim() != n_) throw std::invalid_argument("tensor term has wrong dimension");
  const DerivExpr reduced = DerivExpr::derivative(beta, c);
  for (const auto& [b, v] : reduced.terms()) {
    auto [it, inserted] = terms_.try_emplace(Key{gamma, b}, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) terms_.erase(it);
    }
  }
}

TensorPoly& TensorPoly::operator+=(const TensorPoly& rhs) {
  if (n_ == 0 && terms_.empty()) n_ = rhs.n_;
  if (rhs.n_ != n_) throw std::invalid_argument("tensor dimension mismatch");
  for (const auto& [k, c] : rhs.terms_) add_term(k.first, k.second, c);
  return *this;
}

TensorPoly& TensorPoly::operator-=(const TensorPoly& rhs) {
  if (n_ == 0 && terms_.empty()) n_ = rhs.n_;
  if (rhs.n_ != n_) throw std::invalid_argument("tensor dimension mismatch");
  for (const auto& [k, c] : rhs.terms_) add_term(k.first, k.second, -c);
  return *this;
}

TensorPoly& TensorPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

TensorPoly TensorPoly::diff_y(const MultiIndex& alpha) const {
  TensorPoly out(n_);
  for (const auto& [k, c] : terms_) {
    auto rest = k.first.minus(alpha);
    if (!rest) continue;
    // ∂^α y^γ = γ!/(γ-α)! y^{γ-α}
    out.add_term(*rest, k.second, c * multi_factorial(k.first) / multi_factorial(*rest));
  }
  return out;
}

TensorPoly TensorPoly::diff_x(std::size_t axis) const {
  TensorPoly out(n_);
  for (const auto& [k, c] : terms_) out.add_term(k.first, k.second.with(axis, k.second[axis] + 1), c);
  return out;
}

DerivExpr TensorPoly::at_y(std::span<const Rational> y) const {
  DerivExpr out(n_);
  for (const auto& [k, c] : terms_) {
    Rational mono = c;
    for (std::size_t i = 0; i < n_; ++i)
      for (int e = 0; e < k.first[i]; ++e) mono *= y[i];
    out.add_term(k.second, mono);
  }
  return out;
}

std::string TensorPoly::to_string() const {
  if (terms_.empty()) return "0";
  // Group by x-part: (y-polynomial)*d^beta.
  std::map<MultiIndex, MultiPoly> grouped;
  for (const auto& [k, c] : terms_) grouped.try_emplace(k.second, MultiPoly(n_)).first->second.add_term(k.first, c);
  std::string s;
  for (auto it = grouped.rbegin(); it != grouped.rend(); ++it) {
    if (!s.empty()) s += " + ";
    s += "(" + it->second.to_string('y') + ")*" + DerivExpr::derivative(it->first).to_string();
  }
  return s;
}

CompositeMatrix::CompositeMatrix(std::size_t rows, std::size_t cols, std::size_t n)
    : rows_(rows), cols_(cols), n_(n), data_(rows * cols, TensorPoly(n)) {}

bool CompositeMatrix::is_zero() const {
  for (const auto& e : data_)
    if (!e.is_zero()) return false;
  return true;
}

CompositeMatrix& CompositeMatrix::operator+=(const CompositeMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("composite shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

CompositeMatrix& CompositeMatrix::operator-=(const CompositeMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("composite shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

CompositeMatrix& CompositeMatrix::operator*=(const Rational& c) {
  for (auto& e : data_) e *= c;
  return *this;
}

CompositeMatrix CompositeMatrix::diff_y(const MultiIndex& alpha) const {
  CompositeMatrix out(rows_, cols_, n_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i].diff_y(alpha);
  return out;
}

CompositeMatrix CompositeMatrix::times(const linalg::RationalMatrix& m) const {
  if (m.rows() != cols_) throw std::invalid_argument("composite times matrix: shape mismatch");
  CompositeMatrix out(rows_, m.cols(), n_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const TensorPoly& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(k, j) != 0) out(i, j) += a * m(k, j);
    }
  return out;
}

std::vector<poly::LogRadialExpr::Value> CompositeMatrix::evaluate(std::span<const Rational> x,
                                                                  std::span<const Rational> y) const {
  std::vector<poly::LogRadialExpr::Value> out;
  for (const auto& e : data_) out.push_back(greens::eval_deriv_expr(e.at_y(y), x));
  return out;
}

std::string CompositeMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += ", ";
      s += (*this)(i, j).to_string();
    }
  }
  return s + "]";
}

CompositeMatrix multiply(const greens::GreensMatrix& g, const poly::PolyMatrix& k) {
  if (g.cols() != k.rows()) throw std::invalid_argument("G·K shape mismatch");
  CompositeMatrix out(g.rows(), k.cols(), g.dim());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t m = 0; m < g.cols(); ++m)
      for (std::size_t j = 0; j < k.cols(); ++j)
        if (!g(i, m).is_zero() && !k(m, j).is_zero()) out(i, j) += TensorPoly::product(k(m, j), g(i, m));
  return out;
}

CompositeMatrix multiply(const std::vector<std::vector<DerivExpr>>& t, const poly::PolyMatrix& p) {
  const std::size_t rows = t.size();
  const std::size_t inner = rows ? t.front().size() : 0;
  if (inner != p.rows()) throw std::invalid_argument("T·P shape mismatch");
  CompositeMatrix out(rows, p.cols(), p.dim());
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t m = 0; m < inner; ++m)
      for (std::size_t j = 0; j < p.cols(); ++j)
        if (!t[i][m].is_zero() && !p(m, j).is_zero()) out(i, j) += TensorPoly::product(p(m, j), t[i][m]);
  return out;
}


CompositeMatrix product_rule_rhs(const greens::GreensMatrix& g, const poly::PolyMatrix& k, const MultiIndex& alpha) {
  CompositeMatrix out(g.rows(), k.cols(), g.dim());
  for (std::size_t i = 0; i < alpha.dim(); ++i) {
    if (alpha[i] == 0) continue;
    const MultiIndex ei = MultiIndex::unit(alpha.dim(), i);
    CompositeMatrix term = multiply(g.diff(i), k.diff(*alpha.minus(ei)));
    term *= multi_binomial(alpha, ei);
    out += term;
  }
  return out;
}

}  // namespace korncert::composite
