#include "korncert/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace korncert::linalg {

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

RationalMatrix RationalMatrix::identity(std::size_t size) {
  RationalMatrix m(size, size);
  for (std::size_t i = 0; i < size; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::column(const RationalVector& v) {
  RationalMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& c) {
  for (auto& x : data_) x *= c;
  return *this;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
  RationalMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

RationalVector RationalMatrix::operator*(const RationalVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
  RationalVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

RationalVector RationalMatrix::row(std::size_t r) const {
  return RationalVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

RationalVector RationalMatrix::col(std::size_t c) const {
  RationalVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

RationalMatrix RationalMatrix::stacked(const RationalMatrix& below) const {
  if (rows_ == 0) return below;
  if (below.cols_ != cols_) throw std::invalid_argument("column count mismatch when stacking");
  RationalMatrix out = *this;
  out.rows_ += below.rows_;
  out.data_.insert(out.data_.end(), below.data_.begin(), below.data_.end());
  return out;
}

RationalMatrix RationalMatrix::augmented(const RationalMatrix& right) const {
  if (right.rows_ != rows_) throw std::invalid_argument("row count mismatch when augmenting");
  RationalMatrix out(rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) out(i, cols_ + j) = right(i, j);
  }
  return out;
}

std::string RationalMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += " ";
      s += (*this)(i, j).get_str();
    }
  }
  return s + "]";
}

namespace {

// Only the first `pivot_cols` columns are eligible as pivots; the rest are
// carried along (augmented right-hand sides).
Echelon reduce_limited(const RationalMatrix& m, PivotOrder order, std::size_t pivot_cols) {
  Echelon e{m, {}};
  RationalMatrix& a = e.reduced;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();

  std::vector<std::size_t> col_order(pivot_cols);
  std::iota(col_order.begin(), col_order.end(), 0);
  if (order == PivotOrder::Reversed) std::reverse(col_order.begin(), col_order.end());

  std::size_t next_row = 0;
  for (std::size_t c : col_order) {
    if (next_row == rows) break;
    std::size_t pivot = rows;
    if (order == PivotOrder::Natural) {
      for (std::size_t r = next_row; r < rows; ++r)
        if (a(r, c) != 0) {
          pivot = r;
          break;
        }
    } else {
      for (std::size_t r = rows; r-- > next_row;)
        if (a(r, c) != 0) {
          pivot = r;
          break;
        }
    }
    if (pivot == rows) continue;
    if (pivot != next_row)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(pivot, j), a(next_row, j));

    const Rational inv = 1 / a(next_row, c);
    for (std::size_t j = 0; j < cols; ++j) a(next_row, j) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == next_row || a(r, c) == 0) continue;
      const Rational f = a(r, c);
      for (std::size_t j = 0; j < cols; ++j)
        if (a(next_row, j) != 0) a(r, j) -= f * a(next_row, j);
    }
    e.pivots.push_back(c);
    ++next_row;
  }
  return e;
}

}  // namespace

Echelon row_reduce(const RationalMatrix& m, PivotOrder order) { return reduce_limited(m, order, m.cols()); }

std::size_t rank(const RationalMatrix& m, PivotOrder order) { return row_reduce(m, order).rank(); }

std::vector<RationalVector> null_space(const RationalMatrix& m, PivotOrder order) {
  const Echelon e = row_reduce(m, order);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;

  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

RationalMatrix column_space(const RationalMatrix& m) {
  const Echelon e = row_reduce(m);
  RationalMatrix out(m.rows(), e.rank());
  for (std::size_t k = 0; k < e.rank(); ++k)
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, k) = m(i, e.pivots[k]);
  return out;
}

RationalMatrix intersect_column_spaces(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("subspaces live in different spaces");
  const RationalMatrix ba = column_space(a);
  const RationalMatrix bb = column_space(b);
  if (ba.cols() == 0 || bb.cols() == 0) return RationalMatrix(a.rows(), 0);
  // Ba·s = Bb·t  <=>  [Ba | -Bb] (s, t) = 0
  const RationalMatrix joint = ba.augmented(bb * Rational(-1));
  RationalMatrix spanning(a.rows(), 0);
  for (const auto& v : null_space(joint)) {
    RationalVector s(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(ba.cols()));
    spanning = spanning.augmented(RationalMatrix::column(ba * s));
  }
  return column_space(spanning);
}

SolveResult solve(const RationalMatrix& a, const RationalVector& b, PivotOrder order) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length mismatch");

  // Left null space first: any λ in it with λ·b ≠ 0 proves inconsistency.
  for (auto& lambda : null_space(a.transpose(), order)) {
    Rational dot = 0;
    for (std::size_t i = 0; i < b.size(); ++i) dot += lambda[i] * b[i];
    if (dot != 0) {
      for (auto& x : lambda) x /= dot;
      return Inconsistent{std::move(lambda)};
    }
  }

  const Echelon e = reduce_limited(a.augmented(RationalMatrix::column(b)), order, a.cols());
  Consistent out;
  out.solution.assign(a.cols(), Rational(0));
  std::size_t rank_a = 0;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    const std::size_t c = e.pivots[r];
    out.solution[c] = e.reduced(r, a.cols());
    ++rank_a;
  }
  out.nullity = a.cols() - rank_a;
  return out;
}

bool certifies_inconsistency(const RationalMatrix& a, const RationalVector& b, const RationalVector& lambda) {
  if (lambda.size() != a.rows() || b.size() != a.rows()) return false;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += lambda[i] * a(i, j);
    if (s != 0) return false;
  }
  Rational dot = 0;
  for (std::size_t i = 0; i < b.size(); ++i) dot += lambda[i] * b[i];
  return dot != 0;
}

RankFactorization rank_factorize(const RationalMatrix& m) {
  const Echelon e = row_reduce(m);
  RankFactorization f;
  f.rank = e.rank();
  f.left = RationalMatrix(m.rows(), f.rank);
  f.right = RationalMatrix(f.rank, m.cols());
  for (std::size_t k = 0; k < f.rank; ++k) {
    for (std::size_t i = 0; i < m.rows(); ++i) f.left(i, k) = m(i, e.pivots[k]);
    for (std::size_t j = 0; j < m.cols(); ++j) f.right(k, j) = e.reduced(k, j);
  }
  return f;
}

}  // namespace korncert::linalg
