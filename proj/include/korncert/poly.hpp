#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "korncert/multi_index.hpp"
#include "korncert/rational.hpp"

namespace korncert::poly {

/// Multivariate polynomial with rational coefficients in n variables.
/// Zero coefficients are never stored, so two polynomials are equal iff
/// their term maps are equal.
class MultiPoly {
 public:
  using TermMap = std::map<MultiIndex, Rational>;

  explicit MultiPoly(std::size_t n = 0) : n_(n) {}

  static MultiPoly constant(std::size_t n, const Rational& c);
  static MultiPoly monomial(const MultiIndex& exponent, const Rational& c = 1);
  /// The coordinate function y_{axis+1}.
  static MultiPoly variable(std::size_t n, std::size_t axis);
  /// |y|^2 = y_1^2 + ... + y_n^2
  static MultiPoly norm_squared(std::size_t n);

  std::size_t dim() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  Rational coefficient(const MultiIndex& exponent) const;

  /// Adds c·y^exponent, dropping the term if the result cancels.
  void add_term(const MultiIndex& exponent, const Rational& c);

  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly lhs, const MultiPoly& rhs) { return lhs += rhs; }
  friend MultiPoly operator-(MultiPoly lhs, const MultiPoly& rhs) { return lhs -= rhs; }
  friend MultiPoly operator*(MultiPoly lhs, const Rational& c) { return lhs *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly rhs) { return rhs *= c; }
  friend MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs);
  MultiPoly operator-() const;

  bool operator==(const MultiPoly& other) const;

  /// Partial derivative along a 0-based axis.
  MultiPoly diff(std::size_t axis) const;
  /// ∂^alpha
  MultiPoly diff(const MultiIndex& alpha) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  /// Human-readable form, e.g. "1/2*y1^2 - y1*y2".
  std::string to_string(char var = 'y') const;

 private:
  void check_dim(const MultiPoly& other) const;

  std::size_t n_;
  TermMap terms_;
};

/// Parses sums of terms like "1/2*y1*y2^2 - y3". Variables are `var`
/// followed by a 1-based index. Throws std::invalid_argument with the
/// offending position.
MultiPoly parse_poly(std::size_t n, std::string_view text, char var = 'y');

/// Result of homogeneous_degree().
struct Homogeneity {
  enum class Kind { Homogeneous, NotHomogeneous, Zero };
  Kind kind = Kind::Zero;
  int degree = 0;
  /// Two terms of different order when kind == NotHomogeneous.
  MultiIndex witness_low;
  MultiIndex witness_high;
};

Homogeneity homogeneous_degree(const MultiPoly& p);

/// Quotient of p by |x|^2 when the division is exact.
std::optional<MultiPoly> divide_by_norm_squared(const MultiPoly& p);

/// Closed form log_coeff·log|x| + p(x)·|x|^{-s}. Used for derivatives of
/// the fundamental solutions log|x| (n = 2) and |x|^{-1} (n = 3).
class LogRadialExpr {
 public:
  explicit LogRadialExpr(std::size_t n = 0) : n_(n), p_(n) {}
  LogRadialExpr(Rational log_coeff, MultiPoly p, int s);

  /// log|x| for n = 2, |x|^{-1} for n = 3.
  static LogRadialExpr fundamental(std::size_t n);
  static LogRadialExpr log_norm();
  static LogRadialExpr inverse_norm(std::size_t n);

  std::size_t dim() const { return n_; }
  const Rational& log_coeff() const { return log_coeff_; }
  const MultiPoly& numerator() const { return p_; }
  int power() const { return s_; }
  bool is_zero() const { return log_coeff_ == 0 && p_.is_zero(); }

  /// ∂_axis, using ∂_i log|x| = x_i|x|^{-2} and
  /// ∂_i [p|x|^{-s}] = [(∂_i p)|x|^2 - s x_i p] |x|^{-(s+2)}.
  LogRadialExpr diff(std::size_t axis) const;

  /// Cancels common factors of |x|^2 between numerator and radial power.
  LogRadialExpr canonical() const;
  /// Rewrites with radial power `s` (s >= power(), same parity).
  LogRadialExpr with_power(int s) const;

  LogRadialExpr& operator+=(const LogRadialExpr& rhs);
  LogRadialExpr& operator*=(const Rational& c);
  friend LogRadialExpr operator+(LogRadialExpr a, const LogRadialExpr& b) { return a += b; }
  friend LogRadialExpr operator*(LogRadialExpr a, const Rational& c) { return a *= c; }

  /// Equality as functions on R^n \ {0}: both sides are brought to a common
  /// radial power before comparing numerators.
  bool operator==(const LogRadialExpr& other) const;

  /// Exact evaluation at a rational point. The radial factor may be
  /// irrational for odd s, so the value is kept in parts.
  struct Value {
    Rational log_coeff;
    Rational radius_squared;
    Rational numerator;
    int power = 0;
    /// log_coeff·log|x| + numerator·|x|^{-power}, rounded.
    double to_double() const;
  };
  Value evaluate(std::span<const Rational> x) const;
  double evaluate(std::span<const double> x) const;

  std::string to_string() const;

 private:
  std::size_t n_;
  Rational log_coeff_;
  MultiPoly p_;
  int s_ = 0;
};

/// Dense matrix of polynomials.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim() const { return n_; }

  MultiPoly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const MultiPoly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  bool operator==(const PolyMatrix& other) const;

  PolyMatrix diff(const MultiIndex& alpha) const;
  PolyMatrix diff(std::size_t axis) const;
  PolyMatrix& operator+=(const PolyMatrix& rhs);
  PolyMatrix& operator*=(const Rational& c);
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);

  /// Identity scaled by a polynomial.
  static PolyMatrix scaled_identity(std::size_t size, const MultiPoly& p);

  std::string to_string(char var = 'y') const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t n_ = 0;
  std::vector<MultiPoly> data_;
};

/// Determinant of a square polynomial matrix (cofactor expansion; the
/// matrices here are at most 4x4).
MultiPoly determinant(const PolyMatrix& m);

}  // namespace korncert::poly
