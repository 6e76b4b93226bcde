#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "korncert/multi_index.hpp"
#include "korncert/opsym.hpp"
#include "korncert/poly.hpp"

namespace korncert::greens {

/// Σ c_β ∂^β Φ_n, where Φ_2 = log|x| and Φ_3 = |x|^{-1}. Stored in harmonic
/// normal form: every β has β_n ≤ 1. Since the reduced derivatives are
/// linearly independent functions on R^n \ {0}, two expressions are equal
/// iff their term maps are equal.
class DerivExpr {
 public:
  using TermMap = std::map<MultiIndex, Rational>;

  explicit DerivExpr(std::size_t n = 0) : n_(n) {}

  /// c·∂^β Φ_n, reduced.
  static DerivExpr derivative(const MultiIndex& beta, const Rational& c = 1);

  std::size_t dim() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  Rational coefficient(const MultiIndex& beta) const;

  /// Adds c·∂^β Φ_n for an arbitrary β, reducing as it goes.
  void add_term(const MultiIndex& beta, const Rational& c);

  DerivExpr& operator+=(const DerivExpr& rhs);
  DerivExpr& operator-=(const DerivExpr& rhs);
  DerivExpr& operator*=(const Rational& c);
  friend DerivExpr operator+(DerivExpr a, const DerivExpr& b) { return a += b; }
  friend DerivExpr operator-(DerivExpr a, const DerivExpr& b) { return a -= b; }
  friend DerivExpr operator*(DerivExpr a, const Rational& c) { return a *= c; }
  DerivExpr operator-() const { return *this * Rational(-1); }
  bool operator==(const DerivExpr& other) const = default;

  DerivExpr diff(std::size_t axis) const;
  DerivExpr diff(const MultiIndex& alpha) const;

  /// Common derivative order, or nullopt for zero and mixed-order sums.
  std::optional<int> order() const;
  bool mixed_order() const;

  /// Closed form log_coeff·log|x| + p(x)|x|^{-s}.
  poly::LogRadialExpr closed_form() const;

  /// "d1^2 - d2" style, with the fundamental solution implied.
  std::string to_string() const;

 private:
  void check_dim(const DerivExpr& other) const;

  std::size_t n_;
  TermMap terms_;
};

/// Normal form of Σ c_β ∂^β Φ_n for n ∈ {2, 3}: β with β_n ≥ 2 becomes
/// -Σ_{i<n} (β - 2e_n + 2e_i), repeatedly.
DerivExpr reduce_normal_form(std::size_t n, const std::map<MultiIndex, Rational>& raw);

bool deriv_expr_equal(const DerivExpr& a, const DerivExpr& b);
DerivExpr diff_deriv_expr(const DerivExpr& e, std::size_t axis);

/// Throws std::domain_error at x = 0.
poly::LogRadialExpr::Value eval_deriv_expr(const DerivExpr& e, std::span<const Rational> x);
double eval_deriv_expr(const DerivExpr& e, std::span<const double> x);

/// Double-precision form of a closed form log_coeff·log|x| + p(x)|x|^{-s},
/// for evaluation at many points.
class CompiledRadial {
 public:
  CompiledRadial() = default;
  explicit CompiledRadial(const poly::LogRadialExpr& e);
  double operator()(std::span<const double> x) const;

 private:
  std::size_t n_ = 0;
  double log_coeff_ = 0.0;
  int power_ = 0;
  std::vector<std::vector<int>> exponents_;
  std::vector<double> coeffs_;
};

/// V×E matrix of DerivExpr entries, scaled by c_n = norm_over_pi / π.
class GreensMatrix {
 public:
  GreensMatrix() = default;
  GreensMatrix(std::size_t rows, std::size_t cols, std::size_t n, Rational norm_over_pi);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim() const { return n_; }
  const Rational& norm_over_pi() const { return norm_over_pi_; }
  double normalization() const;

  DerivExpr& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const DerivExpr& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  bool operator==(const GreensMatrix& other) const = default;

  /// Entrywise ∂_axis; the normalization is kept.
  GreensMatrix diff(std::size_t axis) const;

  /// Entries obtained by replacing ∂^β with ξ^β (no normalization). Only
  /// meaningful modulo |ξ|² for entries of order ≥ 2, since the normal form
  /// discards multiples of the Laplacian.
  poly::PolyMatrix symbol_matrix() const;

  /// Common order of all nonzero entries, or nullopt if mixed.
  std::optional<int> order() const;

  /// c_n·G(x) in floating point, row-major.
  std::vector<double> evaluate(std::span<const double> x) const;
  /// Closed forms of the entries, row-major, without the normalization.
  std::vector<CompiledRadial> compile() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t n_ = 0;
  Rational norm_over_pi_ = 1;
  std::vector<DerivExpr> data_;
};

struct GreensPreset {
  std::string name;
  GreensMatrix g;
  opsym::OperatorSymbol a;
};

/// "dsym-r2", "grad-r2" or "grad-r3". Throws std::invalid_argument otherwise.
GreensPreset greens_preset(const std::string& name);
std::vector<std::string> greens_preset_names();

}  // namespace korncert::greens
