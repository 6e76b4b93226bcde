#include "korncert/poly.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace korncert::poly {

// ---------------------------------------------------------------------------
// MultiPoly

MultiPoly MultiPoly::constant(std::size_t n, const Rational& c) {
  MultiPoly p(n);
  p.add_term(MultiIndex::zero(n), c);
  return p;
}

MultiPoly MultiPoly::monomial(const MultiIndex& exponent, const Rational& c) {
  MultiPoly p(exponent.dim());
  p.add_term(exponent, c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t n, std::size_t axis) {
  return monomial(MultiIndex::unit(n, axis));
}

MultiPoly MultiPoly::norm_squared(std::size_t n) {
  MultiPoly p(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 2;
    p.add_term(MultiIndex(e), 1);
  }
  return p;
}

Rational MultiPoly::coefficient(const MultiIndex& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const MultiIndex& exponent, const Rational& c) {
  if (exponent.dim() != n_) throw std::invalid_argument("monomial dimension mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::check_dim(const MultiPoly& other) const {
  if (other.n_ != n_)
    throw std::invalid_argument("polynomial dimension mismatch: " + std::to_string(n_) + " vs " +
                                std::to_string(other.n_));
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  check_dim(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
  check_dim(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs) {
  lhs.check_dim(rhs);
  MultiPoly out(lhs.n_);
  for (const auto& [e1, c1] : lhs.terms_)
    for (const auto& [e2, c2] : rhs.terms_) out.add_term(e1 + e2, c1 * c2);
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  return out *= -1;
}

bool MultiPoly::operator==(const MultiPoly& other) const {
  return n_ == other.n_ && terms_ == other.terms_;
}

MultiPoly MultiPoly::diff(std::size_t axis) const {
  if (axis >= n_) throw std::invalid_argument("derivative axis out of range");
  MultiPoly out(n_);
  for (const auto& [e, c] : terms_) {
    const int k = e[axis];
    if (k == 0) continue;
    out.add_term(e.with(axis, k - 1), c * k);
  }
  return out;
}

MultiPoly MultiPoly::diff(const MultiIndex& alpha) const {
  if (alpha.dim() != n_) throw std::invalid_argument("derivative multi-index dimension mismatch");
  MultiPoly out = *this;
  for (std::size_t i = 0; i < n_; ++i)
    for (int j = 0; j < alpha[i]; ++j) out = out.diff(i);
  return out;
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != n_) throw std::invalid_argument("evaluation point dimension mismatch");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < n_; ++i)
      for (int k = 0; k < e[i]; ++k) term *= point[i];
    sum += term;
  }
  return sum;
}

double MultiPoly::evaluate(std::span<const double> point) const {
  if (point.size() != n_) throw std::invalid_argument("evaluation point dimension mismatch");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c.get_d();
    for (std::size_t i = 0; i < n_; ++i) term *= std::pow(point[i], e[i]);
    sum += term;
  }
  return sum;
}

std::string MultiPoly::to_string(char var) const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.dim(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += var;
      mono += std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      s += mag.get_str();
    } else if (mag == 1) {
      s += mono;
    } else {
      s += mag.get_str() + "*" + mono;
    }
  }
  return s;
}

Homogeneity homogeneous_degree(const MultiPoly& p) {
  Homogeneity h;
  if (p.is_zero()) return h;
  const auto& terms = p.terms();
  const MultiIndex& first = terms.begin()->first;
  h.kind = Homogeneity::Kind::Homogeneous;
  h.degree = first.order();
  for (const auto& [e, c] : terms) {
    if (e.order() != h.degree) {
      h.kind = Homogeneity::Kind::NotHomogeneous;
      h.witness_low = e.order() < h.degree ? e : first;
      h.witness_high = e.order() < h.degree ? first : e;
      return h;
    }
  }
  return h;
}

std::optional<MultiPoly> divide_by_norm_squared(const MultiPoly& p) {
  // {|x|^2} is a Groebner basis on its own; reduce by its lex-leading term x_1^2.
  const std::size_t n = p.dim();
  if (n == 0) return std::nullopt;
  const MultiPoly r2 = MultiPoly::norm_squared(n);
  MultiPoly rest = p;
  MultiPoly quotient(n);
  while (!rest.is_zero()) {
    const auto& [lead, c] = *rest.terms().rbegin();
    if (lead[0] < 2) return std::nullopt;
    const MultiPoly q = MultiPoly::monomial(lead.with(0, lead[0] - 2), c);
    quotient += q;
    rest -= q * r2;
  }
  return quotient;
}

// ---------------------------------------------------------------------------
// LogRadialExpr

LogRadialExpr::LogRadialExpr(Rational log_coeff, MultiPoly p, int s)
    : n_(p.dim()), log_coeff_(std::move(log_coeff)), p_(std::move(p)), s_(s) {
  if (s_ < 0) throw std::invalid_argument("radial power must be non-negative");
  if (log_coeff_ != 0 && n_ != 2) throw std::invalid_argument("log|x| terms are only used for n = 2");
  if (p_.is_zero()) s_ = 0;
}

LogRadialExpr LogRadialExpr::fundamental(std::size_t n) {
  if (n == 2) return log_norm();
  if (n == 3) return inverse_norm(3);
  throw std::invalid_argument("fundamental solutions are provided for n = 2 and n = 3 only");
}

LogRadialExpr LogRadialExpr::log_norm() { return LogRadialExpr(1, MultiPoly(2), 0); }

LogRadialExpr LogRadialExpr::inverse_norm(std::size_t n) {
  return LogRadialExpr(0, MultiPoly::constant(n, 1), 1);
}

LogRadialExpr LogRadialExpr::diff(std::size_t axis) const {
  if (axis >= n_) throw std::invalid_argument("derivative axis out of range");
  const MultiPoly xi = MultiPoly::variable(n_, axis);
  LogRadialExpr out(n_);
  if (log_coeff_ != 0) out += LogRadialExpr(0, xi * log_coeff_, 2);
  if (!p_.is_zero()) {
    MultiPoly num = p_.diff(axis) * MultiPoly::norm_squared(n_) - (xi * p_) * Rational(s_);
    out += LogRadialExpr(0, std::move(num), s_ + 2);
  }
  return out.canonical();
}

LogRadialExpr LogRadialExpr::canonical() const {
  LogRadialExpr out = *this;
  if (out.p_.is_zero()) {
    out.s_ = 0;
    return out;
  }
  while (out.s_ >= 2) {
    auto q = divide_by_norm_squared(out.p_);
    if (!q) break;
    out.p_ = std::move(*q);
    out.s_ -= 2;
  }
  return out;
}

LogRadialExpr LogRadialExpr::with_power(int s) const {
  if (p_.is_zero()) {
    LogRadialExpr out = *this;
    out.s_ = s;
    return out;
  }
  if (s < s_ || (s - s_) % 2 != 0)
    throw std::invalid_argument("radial power can only be raised by even steps");
  LogRadialExpr out = *this;
  const MultiPoly r2 = MultiPoly::norm_squared(n_);
  for (int k = s_; k < s; k += 2) out.p_ = out.p_ * r2;
  out.s_ = s;
  return out;
}

LogRadialExpr& LogRadialExpr::operator+=(const LogRadialExpr& rhs) {
  if (n_ != rhs.n_) throw std::invalid_argument("radial expression dimension mismatch");
  log_coeff_ += rhs.log_coeff_;
  if (rhs.p_.is_zero()) return *this;
  if (p_.is_zero()) {
    p_ = rhs.p_;
    s_ = rhs.s_;
    return *this;
  }
  const int s = std::max(s_, rhs.s_);
  if ((s - s_) % 2 != 0 || (s - rhs.s_) % 2 != 0)
    throw std::invalid_argument("cannot add radial expressions of different parity");
  *this = with_power(s);
  p_ += rhs.with_power(s).p_;
  if (p_.is_zero()) s_ = 0;
  return *this;
}

LogRadialExpr& LogRadialExpr::operator*=(const Rational& c) {
  log_coeff_ *= c;
  p_ *= c;
  if (p_.is_zero()) s_ = 0;
  return *this;
}

bool LogRadialExpr::operator==(const LogRadialExpr& other) const {
  if (n_ != other.n_ || log_coeff_ != other.log_coeff_) return false;
  if (p_.is_zero() || other.p_.is_zero()) return p_.is_zero() && other.p_.is_zero();
  if ((s_ - other.s_) % 2 != 0) return false;
  const int s = std::max(s_, other.s_);
  return with_power(s).p_ == other.with_power(s).p_;
}

double LogRadialExpr::Value::to_double() const {
  const double r2 = radius_squared.get_d();
  double v = numerator.get_d() * std::pow(r2, -0.5 * power);
  if (log_coeff != 0) v += log_coeff.get_d() * 0.5 * std::log(r2);
  return v;
}

LogRadialExpr::Value LogRadialExpr::evaluate(std::span<const Rational> x) const {
  if (x.size() != n_) throw std::invalid_argument("evaluation point dimension mismatch");
  Value v;
  v.log_coeff = log_coeff_;
  v.radius_squared = 0;
  for (const auto& xi : x) v.radius_squared += xi * xi;
  if (v.radius_squared == 0) throw std::domain_error("radial expressions are singular at x = 0");
  v.numerator = p_.evaluate(x);
  v.power = s_;
  return v;
}

double LogRadialExpr::evaluate(std::span<const double> x) const {
  if (x.size() != n_) throw std::invalid_argument("evaluation point dimension mismatch");
  double r2 = 0.0;
  for (double xi : x) r2 += xi * xi;
  double v = p_.evaluate(x) * std::pow(r2, -0.5 * s_);
  if (log_coeff_ != 0) v += log_coeff_.get_d() * 0.5 * std::log(r2);
  return v;
}

std::string LogRadialExpr::to_string() const {
  std::string s;
  if (log_coeff_ != 0) s = (log_coeff_ == 1 ? std::string() : log_coeff_.get_str() + "*") + "log|x|";
  if (!p_.is_zero()) {
    if (!s.empty()) s += " + ";
    s += "(" + p_.to_string('x') + ")";
    if (s_ != 0) s += "*|x|^-" + std::to_string(s_);
  }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------
// PolyMatrix

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t n)
    : rows_(rows), cols_(cols), n_(n), data_(rows * cols, MultiPoly(n)) {}

bool PolyMatrix::is_zero() const {
  for (const auto& p : data_)
    if (!p.is_zero()) return false;
  return true;
}

bool PolyMatrix::operator==(const PolyMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && n_ == other.n_ && data_ == other.data_;
}

PolyMatrix PolyMatrix::diff(const MultiIndex& alpha) const {
  PolyMatrix out = *this;
  for (auto& p : out.data_) p = p.diff(alpha);
  return out;
}

PolyMatrix PolyMatrix::diff(std::size_t axis) const {
  PolyMatrix out = *this;
  for (auto& p : out.data_) p = p.diff(axis);
  return out;
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

PolyMatrix& PolyMatrix::operator*=(const Rational& c) {
  for (auto& p : data_) p *= c;
  return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_)
    throw std::invalid_argument("matrix shape mismatch: " + std::to_string(a.rows_) + "x" +
                                std::to_string(a.cols_) + " times " + std::to_string(b.rows_) + "x" +
                                std::to_string(b.cols_));
  if (a.n_ != b.n_) throw std::invalid_argument("polynomial dimension mismatch");
  PolyMatrix out(a.rows_, b.cols_, a.n_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j)
      for (std::size_t k = 0; k < a.cols_; ++k) out(i, j) += a(i, k) * b(k, j);
  return out;
}

PolyMatrix PolyMatrix::scaled_identity(std::size_t size, const MultiPoly& p) {
  PolyMatrix out(size, size, p.dim());
  for (std::size_t i = 0; i < size; ++i) out(i, i) = p;
  return out;
}

std::string PolyMatrix::to_string(char var) const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += ", ";
      s += (*this)(i, j).to_string(var);
    }
  }
  return s + "]";
}

MultiPoly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t size = m.rows();
  if (size == 0) return MultiPoly::constant(m.dim(), 1);
  if (size == 1) return m(0, 0);
  MultiPoly det(m.dim());
  for (std::size_t j = 0; j < size; ++j) {
    if (m(0, j).is_zero()) continue;
    PolyMatrix minor(size - 1, size - 1, m.dim());
    for (std::size_t r = 1; r < size; ++r)
      for (std::size_t c = 0, cc = 0; c < size; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    MultiPoly term = m(0, j) * determinant(minor);
    if (j % 2) det -= term;
    else det += term;
  }
  return det;
}

}  // namespace korncert::poly

namespace korncert::poly {

namespace {

class PolyParser {
 public:
  PolyParser(std::size_t n, std::string_view text, char var) : n_(n), text_(text), var_(var) {}

  MultiPoly parse() {
    MultiPoly out(n_);
    skip_space();
    if (pos_ == text_.size()) fail("empty polynomial");
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [exp, c] = term();
      out.add_term(exp, c * sign);
      skip_space();
    }
    return out;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument(what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  long integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }

  std::pair<MultiIndex, Rational> term() {
    std::vector<int> exp(n_, 0);
    Rational c = 1;
    bool need_factor = true;
    while (need_factor) {
      skip_space();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        const std::size_t start = pos_;
        integer();
        if (peek() == '/') {
          ++pos_;
          integer();
        }
        c *= parse_rational(text_.substr(start, pos_ - start));
      } else if (peek() == var_) {
        ++pos_;
        const long axis = integer();
        if (axis < 1 || static_cast<std::size_t>(axis) > n_)
          fail("variable index " + std::to_string(axis) + " outside 1.." + std::to_string(n_));
        long power = 1;
        if (peek() == '^') {
          ++pos_;
          power = integer();
        }
        exp[static_cast<std::size_t>(axis - 1)] += static_cast<int>(power);
      } else {
        fail("expected a coefficient or variable");
      }
      skip_space();
      need_factor = peek() == '*';
      if (need_factor) ++pos_;
    }
    return {MultiIndex(std::move(exp)), c};
  }

  std::size_t n_;
  std::string_view text_;
  char var_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::size_t n, std::string_view text, char var) { return PolyParser(n, text, var).parse(); }

}  // namespace korncert::poly
