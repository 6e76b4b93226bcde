#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "korncert/greens.hpp"
#include "korncert/linalg.hpp"
#include "korncert/poly.hpp"

namespace korncert::composite {

/// Σ c·y^γ ⊗ ∂^βΦ_n(x) with β in harmonic normal form. Keys are (γ, β).
class TensorPoly {
 public:
  using Key = std::pair<MultiIndex, MultiIndex>;
  using TermMap = std::map<Key, Rational>;

  explicit TensorPoly(std::size_t n = 0) : n_(n) {}
  static TensorPoly product(const poly::MultiPoly& p, const greens::DerivExpr& e);

  std::size_t dim() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  /// Adds c·y^gamma ⊗ ∂^beta, reducing beta first.
  void add_term(const MultiIndex& gamma, const MultiIndex& beta, const Rational& c);

  TensorPoly& operator+=(const TensorPoly& rhs);
  TensorPoly& operator-=(const TensorPoly& rhs);
  TensorPoly& operator*=(const Rational& c);
  friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) { return a += b; }
  friend TensorPoly operator-(TensorPoly a, const TensorPoly& b) { return a -= b; }
  friend TensorPoly operator*(TensorPoly a, const Rational& c) { return a *= c; }
  bool operator==(const TensorPoly& other) const = default;

  TensorPoly diff_y(const MultiIndex& alpha) const;
  TensorPoly diff_x(std::size_t axis) const;

  /// The x-expression obtained by fixing y.
  greens::DerivExpr at_y(std::span<const Rational> y) const;

  std::string to_string() const;

 private:
  std::size_t n_;
  TermMap terms_;
};

/// Matrix of TensorPoly entries; houses products like ∂_{x_i}G(x)·K(y).
class CompositeMatrix {
 public:
  CompositeMatrix() = default;
  CompositeMatrix(std::size_t rows, std::size_t cols, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim() const { return n_; }

  TensorPoly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const TensorPoly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  bool operator==(const CompositeMatrix& other) const = default;

  CompositeMatrix& operator+=(const CompositeMatrix& rhs);
  CompositeMatrix& operator-=(const CompositeMatrix& rhs);
  CompositeMatrix& operator*=(const Rational& c);
  friend CompositeMatrix operator+(CompositeMatrix a, const CompositeMatrix& b) { return a += b; }
  friend CompositeMatrix operator-(CompositeMatrix a, const CompositeMatrix& b) { return a -= b; }

  CompositeMatrix diff_y(const MultiIndex& alpha) const;
  /// this · m for a constant matrix m.
  CompositeMatrix times(const linalg::RationalMatrix& m) const;

  /// Exact value at rational (x, y), x ≠ 0, as closed forms per entry.
  std::vector<poly::LogRadialExpr::Value> evaluate(std::span<const Rational> x, std::span<const Rational> y) const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t n_ = 0;
  std::vector<TensorPoly> data_;
};

/// G'(x)·K(y) for a derivative matrix G' (rows × inner) and a polynomial
/// matrix K (inner × cols). The normalization of G' is not applied.
CompositeMatrix multiply(const greens::GreensMatrix& g, const poly::PolyMatrix& k);

/// T(x)·P(y) for T (rows × m) of derivative expressions and P (m × cols).
CompositeMatrix multiply(const std::vector<std::vector<greens::DerivExpr>>& t, const poly::PolyMatrix& p);

/// R_α = Σ_{e_i ≤ α} binom(α, e_i) ∂_{x_i}G(x)·∂_y^{α-e_i}K(y), the
/// right-hand side the composite T(x)P(y) must match under ∂_y^α.
CompositeMatrix product_rule_rhs(const greens::GreensMatrix& g, const poly::PolyMatrix& k, const MultiIndex& alpha);

}  // namespace korncert::composite
