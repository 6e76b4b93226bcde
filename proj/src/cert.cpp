#include "korncert/cert.hpp"

#include <chrono>
#include <functional>
#include <stdexcept>

namespace korncert::cert {

using composite::CompositeMatrix;
using greens::DerivExpr;
using greens::GreensMatrix;
using linalg::RationalMatrix;
using linalg::RationalVector;
using poly::LogRadialExpr;
using poly::MultiPoly;
using poly::PolyMatrix;
using presets::IdentityKind;

bool IdentityReport::as_expected() const {
  switch (expected) {
    case presets::Expectation::Holds: return verified() && pointwise_agree;
    case presets::Expectation::Fails: return !verified() && pointwise_agree;
    case presets::Expectation::Any: return pointwise_agree;
  }
  return false;
}

std::string to_string(IdentityReport::Status s) { return s == IdentityReport::Status::Verified ? "verified" : "refuted"; }

namespace {

constexpr std::uint64_t kXSeed = 0x78a3c1d2e5f60718ULL;
constexpr std::uint64_t kYSeed = 0x79b4d2e3f6071829ULL;

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<RationalVector> sample_points(std::size_t n, std::uint64_t seed) {
  opsym::FrequencySampler s(n, seed);
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i < kPointwiseSamples; ++i) out.push_back(s.next());
  return out;
}

RationalMatrix evaluate(const PolyMatrix& m, const RationalVector& y) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).evaluate(std::span<const Rational>(y));
  return out;
}

PolyMatrix constant(const RationalMatrix& m, std::size_t n) {
  PolyMatrix out(m.rows(), m.cols(), n);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = MultiPoly::constant(n, m(i, j));
  return out;
}

using MatrixFn = std::function<RationalMatrix(const RationalVector&)>;

// ∂^α f(y) from the five-point stencil per unit derivative, which is exact
// for polynomials of degree ≤ 4 in each variable.
RationalMatrix stencil_derivative(const MatrixFn& f, const RationalVector& y, const MultiIndex& alpha) {
  for (std::size_t i = 0; i < alpha.dim(); ++i) {
    if (alpha[i] == 0) continue;
    const MultiIndex rest = alpha.with(i, alpha[i] - 1);
    const Rational h(1, 3);
    auto at = [&](const Rational& shift) {
      RationalVector z = y;
      z[i] += shift;
      return stencil_derivative(f, z, rest);
    };
    RationalMatrix d = (at(h) + at(-h) * Rational(-1)) * Rational(8);
    d += (at(2 * h) + at(-2 * h) * Rational(-1)) * Rational(-1);
    return d * Rational(Rational(1) / (12 * h));
  }
  return f(y);
}

RationalMatrix stencil_derivative(const PolyMatrix& m, const RationalVector& y, const MultiIndex& alpha) {
  return stencil_derivative([&m](const RationalVector& z) { return evaluate(m, z); }, y, alpha);
}

// Matrix of closed forms, combined entrywise.
struct RadialMatrix {
  std::size_t rows = 0, cols = 0, n = 0;
  std::vector<LogRadialExpr> data;

  RadialMatrix(std::size_t r, std::size_t c, std::size_t dim) : rows(r), cols(c), n(dim), data(r * c, LogRadialExpr(dim)) {}
  LogRadialExpr& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const LogRadialExpr& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  RadialMatrix times(const RationalMatrix& m) const {
    RadialMatrix out(rows, m.cols(), n);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < cols; ++k)
        for (std::size_t j = 0; j < m.cols(); ++j)
          if (m(k, j) != 0) out(i, j) += (*this)(i, k) * m(k, j);
    return out;
  }
  RadialMatrix& operator+=(const RadialMatrix& o) {
    for (std::size_t i = 0; i < data.size(); ++i) data[i] += o.data[i];
    return *this;
  }
  RadialMatrix& operator-=(const RadialMatrix& o) {
    for (std::size_t i = 0; i < data.size(); ++i) data[i] += o.data[i] * Rational(-1);
    return *this;
  }
};

// log|x| is transcendental for rational |x|² ≠ 1, so a value vanishes iff
// both parts do.
bool vanishes_at(const LogRadialExpr& e, std::span<const Rational> x) {
  const auto v = e.evaluate(x);
  return v.numerator == 0 && (v.log_coeff == 0 || v.radius_squared == 1);
}

bool vanishes_at(const RadialMatrix& m, const RationalVector& x) {
  for (const auto& e : m.data)
    if (!vanishes_at(e, std::span<const Rational>(x))) return false;
  return true;
}

// ∂_{x_axis}G as closed forms, differentiated as functions rather than
// through the harmonic normal form.
RadialMatrix raw_dg(const GreensMatrix& g, std::size_t axis) {
  RadialMatrix out(g.rows(), g.cols(), g.dim());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) out(i, j) = g(i, j).closed_form().diff(axis);
  return out;
}

RadialMatrix closed_forms(const std::vector<std::vector<DerivExpr>>& t, std::size_t n) {
  const std::size_t cols = t.empty() ? 0 : t.front().size();
  RadialMatrix out(t.size(), cols, n);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = t[i][j].closed_form();
  return out;
}

// A verified identity must hold at every sample; a refuted one must fail
// at some sample.
void record(IdentityReport& r, bool holds_here, std::size_t& holding) {
  ++r.pointwise_samples;
  if (holds_here) ++holding;
}

void conclude(IdentityReport& r, std::size_t holding) {
  r.pointwise_agree = r.verified() ? holding == r.pointwise_samples : holding < r.pointwise_samples;
}

IdentityReport start(IdentityKind kind, std::string statement) {
  IdentityReport r;
  r.kind = kind;
  r.name = presets::to_string(kind);
  r.statement = std::move(statement);
  return r;
}

}  // namespace

IdentityReport verify_compose_zero(const opsym::OperatorSymbol& l, const opsym::OperatorSymbol& a) {
  Timer timer;
  IdentityReport r = start(IdentityKind::ComposeZero, "L(xi)A(xi) = 0");
  std::size_t holding = 0;
  const PolyMatrix product = opsym::compose_symbols(l, a);
  r.status = product.is_zero() ? IdentityReport::Status::Verified : IdentityReport::Status::Refuted;
  r.lhs = product.to_string('x');
  r.rhs = "0";
  for (const auto& xi : sample_points(a.dim(), kXSeed)) {
    const RationalMatrix v = opsym::symbol_at(l, xi) * opsym::symbol_at(a, xi);
    record(r, v.is_zero(), holding);
  }
  conclude(r, holding);
  r.elapsed_ms = timer.ms();
  return r;
}

IdentityReport verify_partition(const PolyMatrix& k, const opsym::OperatorSymbol& l) {
  Timer timer;
  IdentityReport r = start(IdentityKind::Partition, "sum_alpha d^alpha K(y) L_alpha = Id_E");
  std::size_t holding = 0;
  if (k.cols() != l.target_dim() || k.rows() != l.source_dim())
    throw std::invalid_argument("K must map F to E: expected " + std::to_string(l.source_dim()) + "x" +
                                std::to_string(l.target_dim()) + ", got " + std::to_string(k.rows()) + "x" +
                                std::to_string(k.cols()));
  const std::size_t n = l.dim();
  PolyMatrix sum(k.rows(), k.rows(), n);
  for (const auto& [alpha, la] : l.coefficients()) {
    const PolyMatrix d = k.diff(alpha);
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j) {
        const auto h = poly::homogeneous_degree(d(i, j));
        if (h.kind != poly::Homogeneity::Kind::Zero && !(h.kind == poly::Homogeneity::Kind::Homogeneous && h.degree == 0))
          throw std::invalid_argument("d^" + alpha.to_string() + " K is not constant: entry (" + std::to_string(i) +
                                      "," + std::to_string(j) + ") = " + d(i, j).to_string());
      }
    sum += d * constant(la, n);
  }
  const PolyMatrix id = PolyMatrix::scaled_identity(k.rows(), MultiPoly::constant(n, 1));
  r.status = sum == id ? IdentityReport::Status::Verified : IdentityReport::Status::Refuted;
  r.lhs = sum.to_string();
  r.rhs = id.to_string();
  for (const auto& y : sample_points(n, kYSeed)) {
    RationalMatrix v(k.rows(), k.rows());
    for (const auto& [alpha, la] : l.coefficients()) v += stencil_derivative(k, y, alpha) * la;
    record(r, v == RationalMatrix::identity(k.rows()), holding);
  }
  conclude(r, holding);
  r.elapsed_ms = timer.ms();
  return r;
}

IdentityReport verify_antiderivatives(const std::vector<PolyMatrix>& ks, const PolyMatrix& k) {
  Timer timer;
  IdentityReport r = start(IdentityKind::Antiderivatives, "d_{y_i} K_i(y) = K(y) for every i");
  std::size_t holding = 0;
  bool ok = !ks.empty();
  std::string lhs;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const PolyMatrix d = ks[i].diff(i);
    if (!(d == k)) ok = false;
    if (i) lhs += " | ";
    lhs += "d" + std::to_string(i + 1) + "K" + std::to_string(i + 1) + " = " + d.to_string();
  }
  r.status = ok ? IdentityReport::Status::Verified : IdentityReport::Status::Refuted;
  r.lhs = ks.empty() ? "no antiderivatives supplied" : lhs;
  r.rhs = k.to_string();
  for (const auto& y : sample_points(k.dim(), kYSeed)) {
    bool all = !ks.empty();
    const RationalMatrix target = evaluate(k, y);
    for (std::size_t i = 0; i < ks.size(); ++i)
      if (!(stencil_derivative(ks[i], y, MultiIndex::unit(k.dim(), i)) == target)) all = false;
    record(r, all, holding);
  }
  conclude(r, holding);
  r.elapsed_ms = timer.ms();
  return r;
}

IdentityReport verify_magic(const GreensMatrix& g, const PolyMatrix& k1, const PolyMatrix& k2) {
  Timer timer;
  IdentityReport r = start(IdentityKind::Magic, "d_{x1}G(x) K_1(y) = d_{x2}G(x) K_2(y)");
  std::size_t holding = 0;
  const CompositeMatrix lhs = composite::multiply(g.diff(0), k1);
  const CompositeMatrix rhs = composite::multiply(g.diff(1), k2);
  r.status = lhs == rhs ? IdentityReport::Status::Verified : IdentityReport::Status::Refuted;
  r.lhs = lhs.to_string();
  r.rhs = rhs.to_string();
  const RadialMatrix dg1 = raw_dg(g, 0), dg2 = raw_dg(g, 1);
  const auto xs = sample_points(g.dim(), kXSeed);
  const auto ys = sample_points(g.dim(), kYSeed);
  for (std::size_t s = 0; s < xs.size(); ++s) {
    RadialMatrix diff = dg1.times(evaluate(k1, ys[s]));
    diff -= dg2.times(evaluate(k2, ys[s]));
    record(r, vanishes_at(diff, xs[s]), holding);
  }
  conclude(r, holding);
  r.elapsed_ms = timer.ms();
  return r;
}

IdentityReport verify_reference_factorization(const GreensMatrix& g, const PolyMatrix& k,
                                              const std::vector<std::vector<DerivExpr>>& t, const PolyMatrix& p) {
  Timer timer;
  IdentityReport r = start(IdentityKind::Magic, "d_{x_i}G(x) K(y) = d_{y_i}(T(x)P(y)) for every i");
  std::size_t holding = 0;
  const std::size_t n = g.dim();
  const CompositeMatrix tp = composite::multiply(t, p);
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const CompositeMatrix lhs = composite::multiply(g.diff(i), k);
    const CompositeMatrix rhs = tp.diff_y(MultiIndex::unit(n, i));
    if (!(lhs == rhs)) ok = false;
    if (i) {
      r.lhs += " | ";
      r.rhs += " | ";
    }
    r.lhs += lhs.to_string();
    r.rhs += rhs.to_string();
  }
  r.status = ok ? IdentityReport::Status::Verified : IdentityReport::Status::Refuted;
  const RadialMatrix tc = closed_forms(t, n);
  const auto xs = sample_points(n, kXSeed);
  const auto ys = sample_points(n, kYSeed);
  for (std::size_t s = 0; s < xs.size(); ++s) {
    bool all = true;
    for (std::size_t i = 0; i < n; ++i) {
      RadialMatrix diff = raw_dg(g, i).times(evaluate(k, ys[s]));
      diff -= tc.times(stencil_derivative(p, ys[s], MultiIndex::unit(n, i)));
      if (!vanishes_at(diff, xs[s])) all = false;
    }
    record(r, all, holding);
  }
  conclude(r, holding);
  r.elapsed_ms = timer.ms();
  return r;
}

IdentityReport verify_cross_symmetry(const GreensMatrix& g, const PolyMatrix& k) {
  Timer timer;
  IdentityReport r = start(IdentityKind::Magic, "d_{x1}G(x) d_{y2}K = d_{x2}G(x) d_{y1}K");
  std::size_t holding = 0;
  const std::size_t n = g.dim();
  const MultiIndex e1 = MultiIndex::unit(n, 0), e2 = MultiIndex::unit(n, 1);
  const CompositeMatrix lhs = composite::multiply(g.diff(0), k.diff(e2));
  const CompositeMatrix rhs = composite::multiply(g.diff(1), k.diff(e1));
  r.status = lhs == rhs ? IdentityReport::Status::Verified : IdentityReport::Status::Refuted;
  r.lhs = lhs.to_string();
  r.rhs = rhs.to_string();
  const RadialMatrix dg1 = raw_dg(g, 0), dg2 = raw_dg(g, 1);
  const auto xs = sample_points(n, kXSeed);
  const auto ys = sample_points(n, kYSeed);
  for (std::size_t s = 0; s < xs.size(); ++s) {
    RadialMatrix diff = dg1.times(stencil_derivative(k, ys[s], e2));
    diff -= dg2.times(stencil_derivative(k, ys[s], e1));
    record(r, vanishes_at(diff, xs[s]), holding);
  }
  conclude(r, holding);
  r.elapsed_ms = timer.ms();
  return r;
}

IdentityReport verify_candidate_weak(const GreensMatrix& g, const PolyMatrix& k, const std::vector<PolyMatrix>& ks,
                                     const opsym::OperatorSymbol& l) {
  Timer timer;
  IdentityReport r =
      start(IdentityKind::Magic, "Q = sum_i d_{x_i}G K_i satisfies sum_alpha d_y^alpha Q L_alpha = sum_alpha R_alpha L_alpha");
  std::size_t holding = 0;
  const std::size_t n = g.dim();
  if (ks.size() != n) throw std::invalid_argument("candidate needs one antiderivative per axis");
  CompositeMatrix q(g.rows(), k.cols(), n);
  for (std::size_t i = 0; i < n; ++i) q += composite::multiply(g.diff(i), ks[i]);
  CompositeMatrix lhs(g.rows(), l.source_dim(), n), rhs(g.rows(), l.source_dim(), n);
  for (const auto& [alpha, la] : l.coefficients()) {
    lhs += q.diff_y(alpha).times(la);
    rhs += composite::product_rule_rhs(g, k, alpha).times(la);
  }
  r.status = lhs == rhs ? IdentityReport::Status::Verified : IdentityReport::Status::Refuted;
  r.lhs = lhs.to_string();
  r.rhs = rhs.to_string();
  std::vector<RadialMatrix> dg;
  for (std::size_t i = 0; i < n; ++i) dg.push_back(raw_dg(g, i));
  const auto xs = sample_points(n, kXSeed);
  const auto ys = sample_points(n, kYSeed);
  for (std::size_t s = 0; s < xs.size(); ++s) {
    RadialMatrix diff(g.rows(), l.source_dim(), n);
    for (const auto& [alpha, la] : l.coefficients())
      for (std::size_t i = 0; i < n; ++i) {
        diff += dg[i].times(stencil_derivative(ks[i], ys[s], alpha) * la);
        if (alpha[i] == 0) continue;
        const MultiIndex rest = *alpha.minus(MultiIndex::unit(n, i));
        diff -= dg[i].times(stencil_derivative(k, ys[s], rest) * la * Rational(alpha[i]));
      }
    record(r, vanishes_at(diff, xs[s]), holding);
  }
  conclude(r, holding);
  r.elapsed_ms = timer.ms();
  return r;
}

IdentityReport verify_greens_symbol(const GreensMatrix& g, const opsym::OperatorSymbol& a) {
  Timer timer;
  IdentityReport r = start(IdentityKind::GreensSymbol, "B(xi)A(xi) = |xi|^2 Id_V");
  std::size_t holding = 0;
  const std::size_t n = a.dim();
  const PolyMatrix product = g.symbol_matrix() * a.symbol_matrix();
  const PolyMatrix target = PolyMatrix::scaled_identity(a.source_dim(), MultiPoly::norm_squared(n));
  r.status = product == target ? IdentityReport::Status::Verified : IdentityReport::Status::Refuted;
  r.lhs = product.to_string('x');
  r.rhs = target.to_string('x');
  const PolyMatrix b = g.symbol_matrix();
  for (const auto& xi : sample_points(n, kXSeed)) {
    Rational norm2 = 0;
    for (const auto& c : xi) norm2 += c * c;
    const RationalMatrix v = evaluate(b, xi) * opsym::symbol_at(a, xi);
    record(r, v == RationalMatrix::identity(a.source_dim()) * norm2, holding);
  }
  conclude(r, holding);
  r.elapsed_ms = timer.ms();
  return r;
}

std::vector<IdentityReport> certify_bundle(const presets::Bundle& b) {
  std::vector<IdentityReport> out;
  out.push_back(verify_compose_zero(b.l, b.a));
  out.push_back(verify_partition(b.k, b.l));
  out.push_back(verify_antiderivatives(b.antiderivatives, b.k));
  switch (b.magic) {
    case presets::MagicForm::AntiderivativeSymmetry:
      if (b.antiderivatives.size() < 2) throw std::invalid_argument(b.name + ": magic identity needs K_1 and K_2");
      out.push_back(verify_magic(b.g, b.antiderivatives[0], b.antiderivatives[1]));
      break;
    case presets::MagicForm::ReferenceFactorization:
      if (!b.p) throw std::invalid_argument(b.name + ": reference factorization needs T and P");
      out.push_back(verify_reference_factorization(b.g, b.k, b.t, *b.p));
      break;
    case presets::MagicForm::CrossSymmetry:
      out.push_back(verify_cross_symmetry(b.g, b.k));
      break;
    case presets::MagicForm::CandidateWeak:
      out.push_back(verify_candidate_weak(b.g, b.k, b.antiderivatives, b.l));
      break;
  }
  out.push_back(verify_greens_symbol(b.g, b.a));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].expected = b.expected[i];
    out[i].name = b.name + "/" + out[i].name;
  }
  return out;
}

}  // namespace korncert::cert
