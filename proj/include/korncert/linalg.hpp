#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

#include "korncert/rational.hpp"

namespace korncert::linalg {

using RationalVector = std::vector<Rational>;

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix identity(std::size_t size);
  /// Single column.
  static RationalMatrix column(const RationalVector& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  bool operator==(const RationalMatrix& other) const = default;

  RationalMatrix transpose() const;
  RationalMatrix& operator+=(const RationalMatrix& rhs);
  RationalMatrix& operator*=(const Rational& c);
  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator*(RationalMatrix a, const Rational& c) { return a *= c; }
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  RationalVector operator*(const RationalVector& v) const;

  RationalVector row(std::size_t r) const;
  RationalVector col(std::size_t c) const;
  /// Rows of `below` appended under this matrix.
  RationalMatrix stacked(const RationalMatrix& below) const;
  /// Columns of `right` appended to this matrix.
  RationalMatrix augmented(const RationalMatrix& right) const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Order in which Gaussian elimination scans columns for pivots. Reversed
/// scans right to left and prefers the bottom-most nonzero row, which gives
/// an independent elimination path for cross-checking.
enum class PivotOrder { Natural, Reversed };

struct Echelon {
  RationalMatrix reduced;            ///< reduced row echelon form
  std::vector<std::size_t> pivots;   ///< pivot column per nonzero row
  std::size_t rank() const { return pivots.size(); }
};

Echelon row_reduce(const RationalMatrix& m, PivotOrder order = PivotOrder::Natural);
std::size_t rank(const RationalMatrix& m, PivotOrder order = PivotOrder::Natural);

/// Basis of {x : m x = 0}, one vector per free column.
std::vector<RationalVector> null_space(const RationalMatrix& m, PivotOrder order = PivotOrder::Natural);

/// Basis of the column space, taken as the pivot columns of m.
RationalMatrix column_space(const RationalMatrix& m);

/// Basis of span(a) ∩ span(b) (as columns of the result).
RationalMatrix intersect_column_spaces(const RationalMatrix& a, const RationalMatrix& b);

struct Consistent {
  RationalVector solution;   ///< one particular solution, free variables set to zero
  std::size_t nullity = 0;
};

/// λ with λᵀ A = 0 and λᵀ b = 1.
struct Inconsistent {
  RationalVector certificate;
};

using SolveResult = std::variant<Consistent, Inconsistent>;

/// Exact solution of A x = b. Inconsistent systems come with a Farkas-style
/// certificate taken from the left null space of A.
SolveResult solve(const RationalMatrix& a, const RationalVector& b, PivotOrder order = PivotOrder::Natural);

/// λᵀ A = 0 and λᵀ b ≠ 0, checked independently of the solver.
bool certifies_inconsistency(const RationalMatrix& a, const RationalVector& b, const RationalVector& lambda);

/// m = left · right with inner dimension rank(m).
struct RankFactorization {
  RationalMatrix left;
  RationalMatrix right;
  std::size_t rank = 0;
};

RankFactorization rank_factorize(const RationalMatrix& m);

}  // namespace korncert::linalg
