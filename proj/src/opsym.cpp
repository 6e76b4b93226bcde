#include "korncert/opsym.hpp"

#include <algorithm>
#include <stdexcept>

namespace korncert::opsym {

using poly::MultiPoly;
using poly::PolyMatrix;

OperatorSymbol::OperatorSymbol(std::size_t n, int order, std::size_t source_dim, std::size_t target_dim)
    : n_(n), order_(order), source_dim_(source_dim), target_dim_(target_dim) {
  if (n == 0) throw std::invalid_argument("operator dimension must be positive");
  if (order < 0) throw std::invalid_argument("operator order must be non-negative");
}

void OperatorSymbol::set_coefficient(const MultiIndex& alpha, RationalMatrix coefficient) {
  if (alpha.dim() != n_)
    throw std::invalid_argument("multi-index " + alpha.to_string() + " has length " + std::to_string(alpha.dim()) +
                                ", expected " + std::to_string(n_));
  if (alpha.order() != order_)
    throw std::invalid_argument("multi-index " + alpha.to_string() + " has order " + std::to_string(alpha.order()) +
                                ", expected " + std::to_string(order_));
  if (coefficient.rows() != target_dim_ || coefficient.cols() != source_dim_)
    throw std::invalid_argument("coefficient for " + alpha.to_string() + " is " + std::to_string(coefficient.rows()) +
                                "x" + std::to_string(coefficient.cols()) + ", expected " +
                                std::to_string(target_dim_) + "x" + std::to_string(source_dim_));
  if (coefficient.is_zero()) {
    coeffs_.erase(alpha);
    return;
  }
  coeffs_[alpha] = std::move(coefficient);
}

RationalMatrix OperatorSymbol::coefficient(const MultiIndex& alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? RationalMatrix(target_dim_, source_dim_) : it->second;
}

PolyMatrix OperatorSymbol::symbol_matrix() const {
  PolyMatrix out(target_dim_, source_dim_, n_);
  for (const auto& [alpha, m] : coeffs_)
    for (std::size_t i = 0; i < target_dim_; ++i)
      for (std::size_t j = 0; j < source_dim_; ++j)
        if (m(i, j) != 0) out(i, j).add_term(alpha, m(i, j));
  return out;
}

RationalMatrix OperatorSymbol::stacked_coefficients() const {
  RationalMatrix out(0, source_dim_);
  for (const auto& [alpha, m] : coeffs_) out = out.stacked(m);
  return out;
}

RationalMatrix symbol_at(const OperatorSymbol& op, std::span<const Rational> xi) {
  if (xi.size() != op.dim())
    throw std::invalid_argument("frequency has " + std::to_string(xi.size()) + " components, operator acts on R^" +
                                std::to_string(op.dim()));
  RationalMatrix out(op.target_dim(), op.source_dim());
  for (const auto& [alpha, m] : op.coefficients()) {
    Rational mono = 1;
    for (std::size_t i = 0; i < xi.size(); ++i)
      for (int k = 0; k < alpha[i]; ++k) mono *= xi[i];
    if (mono != 0) out += m * mono;
  }
  return out;
}

PolyMatrix compose_symbols(const OperatorSymbol& l, const OperatorSymbol& a) {
  if (l.dim() != a.dim()) throw std::invalid_argument("operators act on different dimensions");
  if (l.source_dim() != a.target_dim())
    throw std::invalid_argument("shape mismatch: L expects dimension " + std::to_string(l.source_dim()) +
                                ", A produces " + std::to_string(a.target_dim()));
  return l.symbol_matrix() * a.symbol_matrix();
}

std::string to_string(PropertyVerdict::Property p) {
  switch (p) {
    case PropertyVerdict::Property::Elliptic: return "elliptic";
    case PropertyVerdict::Property::Canceling: return "canceling";
    case PropertyVerdict::Property::Cocanceling: return "cocanceling";
    case PropertyVerdict::Property::ComposeZero: return "compose-zero";
  }
  return "?";
}

std::string to_string(PropertyVerdict::Kind k) {
  switch (k) {
    case PropertyVerdict::Kind::HoldsCertified: return "holds-certified";
    case PropertyVerdict::Kind::HoldsSampled: return "holds-sampled";
    case PropertyVerdict::Kind::Fails: return "fails";
  }
  return "?";
}

FrequencySampler::FrequencySampler(std::size_t n, std::uint64_t seed) : n_(n), engine_(seed) {}

RationalVector FrequencySampler::next() {
  RationalVector xi(n_, Rational(0));
  const std::size_t k = emitted_++;
  if (k < n_) {
    xi[k] = 1;
    return xi;
  }
  if (k == n_ && n_ > 1) {
    std::fill(xi.begin(), xi.end(), Rational(1));
    return xi;
  }
  // Raw engine output reduced by modulo keeps the stream identical across
  // standard library implementations.
  bool nonzero = false;
  while (!nonzero) {
    for (auto& c : xi) {
      const auto num = static_cast<long>(engine_() % 13) - 6;
      const auto den = static_cast<long>(engine_() % 4) + 1;
      c = Rational(num, den);
      c.canonicalize();
      nonzero = nonzero || c != 0;
    }
  }
  return xi;
}

PropertyVerdict check_cocanceling(const OperatorSymbol& l) {
  PropertyVerdict v;
  v.property = PropertyVerdict::Property::Cocanceling;
  const RationalMatrix stacked = l.stacked_coefficients();
  const auto kernel = linalg::null_space(stacked.rows() ? stacked : RationalMatrix(1, l.source_dim()));
  if (kernel.empty()) {
    v.kind = PropertyVerdict::Kind::HoldsCertified;
    v.notes = "stacked coefficient matrix (" + std::to_string(stacked.rows()) + "x" +
              std::to_string(stacked.cols()) + ") has full column rank " + std::to_string(l.source_dim()) +
              ", so L_alpha e = 0 for all alpha forces e = 0";
    return v;
  }
  v.kind = PropertyVerdict::Kind::Fails;
  v.witness_vector = kernel.front();
  v.notes = "e is annihilated by every L_alpha, hence by L(xi) for all xi; kernel dimension " +
            std::to_string(kernel.size());
  return v;
}

namespace {

// Univariate polynomials over Q, coefficients low to high, no trailing zeros.
using Univariate = std::vector<Rational>;

void trim(Univariate& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Univariate& p) { return static_cast<int>(p.size()) - 1; }

Univariate derivative(const Univariate& p) {
  Univariate d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

// Remainder and quotient of a / b.
std::pair<Univariate, Univariate> divmod(Univariate a, const Univariate& b) {
  if (b.empty()) throw std::domain_error("division by the zero polynomial");
  Univariate q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Rational f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

Univariate gcd(Univariate a, Univariate b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

Rational eval(const Univariate& p, const Rational& t) {
  Rational v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * t + *it;
  return v;
}

int sign(const Rational& x) { return sgn(x); }

std::vector<Univariate> sturm_chain(const Univariate& p) {
  std::vector<Univariate> chain{p, derivative(p)};
  while (!chain.back().empty()) {
    auto r = divmod(chain[chain.size() - 2], chain.back()).second;
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  if (chain.back().empty()) chain.pop_back();
  return chain;
}

int sign_changes_at(const std::vector<Univariate>& chain, const Rational& t) {
  int changes = 0, last = 0;
  for (const auto& p : chain) {
    const int s = sign(eval(p, t));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int sign_changes_at_infinity(const std::vector<Univariate>& chain, bool positive) {
  int changes = 0, last = 0;
  for (const auto& p : chain) {
    int s = sign(p.back());
    if (!positive && degree(p) % 2 == 1) s = -s;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::vector<mpz_class> divisors(mpz_class m) {
  m = abs(m);
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= m; ++d)
    if (m % d == 0) {
      out.push_back(d);
      if (d * d != m) out.push_back(m / d);
    }
  return out;
}

// Exact rational root, if p has one and its coefficients are small enough
// for the rational root theorem to be cheap.
std::optional<Rational> rational_root(const Univariate& p) {
  if (p.empty()) return Rational(0);
  if (p.front() == 0) return Rational(0);
  mpz_class lcm_den = 1;
  for (const auto& c : p) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  const mpz_class a0 = Rational(p.front() * lcm_den).get_num();
  const mpz_class an = Rational(p.back() * lcm_den).get_num();
  if (abs(a0) > 1000000 || abs(an) > 1000000) return std::nullopt;
  for (const auto& num : divisors(a0))
    for (const auto& den : divisors(an))
      for (int s : {1, -1}) {
        Rational t(num * s, den);
        t.canonicalize();
        if (eval(p, t) == 0) return t;
      }
  return std::nullopt;
}

struct RealRoot {
  std::optional<Rational> exact;
  Rational lo, hi;
};

// One real root of a square-free p with at least one real root.
RealRoot isolate_root(const Univariate& p, const std::vector<Univariate>& chain) {
  if (auto r = rational_root(p)) return {r, *r, *r};
  Rational bound = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) bound = std::max(bound, Rational(abs(p[i] / p.back())));
  bound += 1;
  Rational lo = -bound, hi = bound;
  const Rational width = Rational(1, 1 << 30);
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    if (eval(p, mid) == 0) return {mid, mid, mid};
    if (sign_changes_at(chain, lo) - sign_changes_at(chain, mid) > 0) hi = mid;
    else lo = mid;
  }
  return {std::nullopt, lo, hi};
}

RationalVector kernel_vector(const RationalMatrix& m) {
  auto k = linalg::null_space(m);
  return k.empty() ? RationalVector{} : k.front();
}

PropertyVerdict elliptic_fails_at(PropertyVerdict v, const OperatorSymbol& a, RationalVector xi, std::string notes) {
  v.kind = PropertyVerdict::Kind::Fails;
  v.witness_vector = kernel_vector(symbol_at(a, xi));
  v.witness_frequency = std::move(xi);
  v.notes = std::move(notes);
  return v;
}

std::vector<std::vector<std::size_t>> row_subsets(std::size_t rows, std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (pick.size() == size) {
      out.push_back(pick);
      return;
    }
    for (std::size_t r = start; r < rows; ++r) {
      pick.push_back(r);
      self(self, r + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

PropertyVerdict elliptic_planar(PropertyVerdict v, const OperatorSymbol& a) {
  const PolyMatrix sym = a.symbol_matrix();
  const std::size_t k = a.source_dim();
  std::vector<MultiPoly> minors;
  for (const auto& rows : row_subsets(a.target_dim(), k)) {
    PolyMatrix sub(k, k, 2);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = sym(rows[i], j);
    minors.push_back(poly::determinant(sub));
  }

  bool all_zero = std::all_of(minors.begin(), minors.end(), [](const MultiPoly& p) { return p.is_zero(); });
  if (all_zero)
    return elliptic_fails_at(std::move(v), a, {1, 0}, "every maximal minor vanishes identically");

  // Direction xi = (1, 0): the dehomogenization F(1, s) at s = 0.
  bool all_vanish_at_e1 = true;
  Univariate g;
  for (const auto& m : minors) {
    Univariate f;
    Rational at_e1 = 0;
    for (const auto& [e, c] : m.terms()) {
      if (static_cast<int>(f.size()) <= e[0]) f.resize(static_cast<std::size_t>(e[0]) + 1, Rational(0));
      f[static_cast<std::size_t>(e[0])] += c;
      if (e[1] == 0) at_e1 += c;
    }
    trim(f);
    if (at_e1 != 0) all_vanish_at_e1 = false;
    g = gcd(g, f);
  }
  if (all_vanish_at_e1)
    return elliptic_fails_at(std::move(v), a, {1, 0}, "all maximal minors vanish at xi = (1,0)");

  // Common real roots of the minors along xi = (t, 1) are the real roots of g.
  const std::string count = std::to_string(minors.size()) + " maximal minors";
  if (degree(g) <= 0) {
    v.kind = PropertyVerdict::Kind::HoldsCertified;
    v.notes = "gcd of the " + count + " is constant and they do not all vanish at (1,0)";
    return v;
  }
  const Univariate squarefree = divmod(g, gcd(g, derivative(g))).first;
  const auto chain = sturm_chain(squarefree);
  const int real_roots = sign_changes_at_infinity(chain, false) - sign_changes_at_infinity(chain, true);
  if (real_roots == 0) {
    v.kind = PropertyVerdict::Kind::HoldsCertified;
    v.notes = "gcd of the " + count + " has degree " + std::to_string(degree(g)) +
              " and no real root (Sturm count 0); minors do not all vanish at (1,0)";
    return v;
  }
  const RealRoot root = isolate_root(squarefree, chain);
  if (root.exact)
    return elliptic_fails_at(std::move(v), a, {*root.exact, 1},
                             "common real root of the " + count + " at xi = (" + root.exact->get_str() + ", 1)");
  v.kind = PropertyVerdict::Kind::Fails;
  v.witness_interval = std::make_pair(root.lo, root.hi);
  v.notes = "the " + count + " share an irrational real root xi = (t, 1), t in [" + root.lo.get_str() + ", " +
            root.hi.get_str() + "]";
  return v;
}

}  // namespace

PropertyVerdict check_injectively_elliptic(const OperatorSymbol& a, std::size_t budget, std::uint64_t seed) {
  PropertyVerdict v;
  v.property = PropertyVerdict::Property::Elliptic;
  if (a.target_dim() < a.source_dim()) {
    RationalVector e1(a.dim(), Rational(0));
    e1[0] = 1;
    return elliptic_fails_at(std::move(v), a, std::move(e1), "dim E < dim V, so A(xi) always has a kernel");
  }
  if (a.dim() == 1) {
    const RationalMatrix top = a.coefficient(MultiIndex{a.order()});
    if (linalg::rank(top) == a.source_dim()) {
      v.kind = PropertyVerdict::Kind::HoldsCertified;
      v.notes = "n = 1: A(xi) = xi^k A_k with A_k injective";
      return v;
    }
    return elliptic_fails_at(std::move(v), a, {1}, "n = 1: A_k has a kernel");
  }
  if (a.dim() == 2) return elliptic_planar(std::move(v), a);

  FrequencySampler sampler(a.dim(), seed);
  for (std::size_t s = 0; s < budget; ++s) {
    RationalVector xi = sampler.next();
    v.frequencies.push_back(xi);
    v.sample_count = s + 1;
    if (linalg::rank(symbol_at(a, xi)) < a.source_dim())
      return elliptic_fails_at(std::move(v), a, std::move(xi), "A(xi) is rank deficient at a sampled frequency");
  }
  v.kind = PropertyVerdict::Kind::HoldsSampled;
  v.notes = "A(xi) injective at " + std::to_string(v.sample_count) + " sampled frequencies";
  return v;
}

PropertyVerdict check_canceling(const OperatorSymbol& a, std::size_t budget, std::uint64_t seed) {
  PropertyVerdict v;
  v.property = PropertyVerdict::Property::Canceling;
  FrequencySampler sampler(a.dim(), seed);
  RationalMatrix common = RationalMatrix::identity(a.target_dim());
  std::size_t stable = 0;
  std::size_t last_dim = common.cols();
  for (std::size_t s = 0; s < budget; ++s) {
    RationalVector xi = sampler.next();
    common = linalg::intersect_column_spaces(common, symbol_at(a, xi));
    v.frequencies.push_back(std::move(xi));
    v.sample_count = s + 1;
    if (common.cols() == 0) {
      v.kind = PropertyVerdict::Kind::HoldsCertified;
      v.notes = "images of A(xi) at " + std::to_string(v.sample_count) +
                " sampled frequencies already intersect in {0}";
      return v;
    }
    stable = common.cols() == last_dim ? stable + 1 : 0;
    last_dim = common.cols();
    if (stable >= 3) break;
  }
  v.kind = PropertyVerdict::Kind::Fails;
  v.witness_basis = common;
  v.notes = "intersection of images stabilized at dimension " + std::to_string(common.cols()) +
            "; witness validity certified only on sampled frequencies";
  return v;
}

PropertyVerdict check_compose_zero(const OperatorSymbol& l, const OperatorSymbol& a) {
  PropertyVerdict v;
  v.property = PropertyVerdict::Property::ComposeZero;
  const PolyMatrix product = compose_symbols(l, a);
  if (product.is_zero()) {
    v.kind = PropertyVerdict::Kind::HoldsCertified;
    v.notes = "L(xi)A(xi) is the zero polynomial matrix";
  } else {
    v.kind = PropertyVerdict::Kind::Fails;
    v.notes = "L(xi)A(xi) = " + product.to_string('x');
  }
  return v;
}

}  // namespace korncert::opsym
