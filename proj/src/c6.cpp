#include "korncert/c6.hpp"

#include <chrono>
#include <map>
#include <stdexcept>
#include <tuple>
#include <variant>

#include "korncert/cert.hpp"

namespace korncert::c6 {

using composite::CompositeMatrix;
using composite::TensorPoly;
using greens::DerivExpr;
using linalg::PivotOrder;
using linalg::RationalMatrix;
using linalg::RationalVector;
using poly::MultiPoly;
using poly::PolyMatrix;

namespace {

// (block, row, col, gamma, beta); the block is empty in weak mode.
using RowKey = std::tuple<std::vector<int>, std::size_t, std::size_t, MultiIndex, MultiIndex>;

std::vector<MultiIndex> reduced_basis(std::size_t n, int order) {
  std::vector<MultiIndex> out;
  for (const auto& beta : indices_of_order(n, order))
    if (beta[n - 1] <= 1) out.push_back(beta);
  return out;
}

// The constraint images of a composite: one matrix per α (strict) or the
// single sum Σ_α (·)L_α (weak).
std::vector<CompositeMatrix> images(const CompositeMatrix& q, const opsym::OperatorSymbol& l,
                                    const std::vector<MultiIndex>& alphas, Mode mode) {
  std::vector<CompositeMatrix> out;
  if (mode == Mode::Strict) {
    for (const auto& alpha : alphas) out.push_back(q.diff_y(alpha));
    return out;
  }
  CompositeMatrix sum(q.rows(), l.source_dim(), q.dim());
  for (const auto& [alpha, la] : l.coefficients()) sum += q.diff_y(alpha).times(la);
  out.push_back(std::move(sum));
  return out;
}

std::vector<CompositeMatrix> right_hand_sides(const greens::GreensMatrix& g, const PolyMatrix& k,
                                              const opsym::OperatorSymbol& l, const std::vector<MultiIndex>& alphas,
                                              Mode mode) {
  std::vector<CompositeMatrix> out;
  if (mode == Mode::Strict) {
    for (const auto& alpha : alphas) out.push_back(composite::product_rule_rhs(g, k, alpha));
    return out;
  }
  CompositeMatrix sum(g.rows(), l.source_dim(), g.dim());
  for (const auto& [alpha, la] : l.coefficients()) sum += composite::product_rule_rhs(g, k, alpha).times(la);
  out.push_back(std::move(sum));
  return out;
}

template <typename Visit>
void for_each_term(const std::vector<CompositeMatrix>& blocks, const std::vector<MultiIndex>& alphas, Mode mode,
                   Visit&& visit) {
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const std::vector<int> block = mode == Mode::Strict ? alphas[bi].entries() : std::vector<int>{};
    const CompositeMatrix& m = blocks[bi];
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& [key, coeff] : m(r, c).terms()) visit(RowKey{block, r, c, key.first, key.second}, coeff);
  }
}

bool has_order(const DerivExpr& e, int order) {
  for (const auto& [beta, c] : e.terms())
    if (beta.order() != order) return false;
  return true;
}

}  // namespace

std::string to_string(Outcome::Status s) { return s == Outcome::Status::Feasible ? "feasible" : "infeasible"; }

System build_system(const opsym::OperatorSymbol& a, const opsym::OperatorSymbol& l, const PolyMatrix& k,
                    const greens::GreensMatrix& g, Mode mode) {
  const std::size_t n = g.dim();
  if (n != 2 && n != 3) throw std::invalid_argument("C6 system: only n = 2 and n = 3 are supported");
  if (a.dim() != n || l.dim() != n || k.dim() != n) throw std::invalid_argument("C6 system: dimension mismatch");
  if (g.cols() != a.target_dim() || g.rows() != a.source_dim())
    throw std::invalid_argument("C6 system: G must map E to V");
  if (k.rows() != l.source_dim() || k.cols() != l.target_dim())
    throw std::invalid_argument("C6 system: K must map F to E");
  if (!cert::verify_compose_zero(l, a).verified()) throw std::invalid_argument("C6 system: L(D)A(D) is not zero");
  if (!cert::verify_partition(k, l).verified())
    throw std::invalid_argument("C6 system: the partition of the identity fails");

  const int ell = l.order();
  for (std::size_t i = 0; i < k.rows(); ++i)
    for (std::size_t j = 0; j < k.cols(); ++j) {
      const auto h = poly::homogeneous_degree(k(i, j));
      if (h.kind == poly::Homogeneity::Kind::NotHomogeneous || (h.kind == poly::Homogeneity::Kind::Homogeneous &&
                                                                h.degree != ell))
        throw std::invalid_argument("C6 system: K is not homogeneous of degree " + std::to_string(ell));
    }
  // G is homogeneous of degree k - n, so it carries 2 - k derivatives of Φ_n.
  const int g_order = 2 - a.order();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (!has_order(g(i, j), g_order))
        throw std::invalid_argument("C6 system: G is not homogeneous of degree k - n");

  System sys;
  sys.mode = mode;
  sys.n = n;
  sys.q_rows = g.rows();
  sys.q_cols = k.cols();
  sys.y_degree = ell + 1;
  sys.x_order = g_order + 1;
  sys.alphas = indices_of_order(n, ell);

  const auto gammas = indices_of_order(n, sys.y_degree);
  const auto betas = reduced_basis(n, sys.x_order);
  for (std::size_t r = 0; r < sys.q_rows; ++r)
    for (std::size_t c = 0; c < sys.q_cols; ++c)
      for (const auto& gamma : gammas)
        for (const auto& beta : betas) sys.unknowns.push_back({r, c, gamma, beta});

  // Sparse columns first, then rows keyed by every term that can appear.
  std::map<RowKey, std::size_t> rows;
  std::vector<std::vector<std::pair<RowKey, Rational>>> columns;
  for (const auto& u : sys.unknowns) {
    CompositeMatrix q(sys.q_rows, sys.q_cols, n);
    q(u.row, u.col).add_term(u.gamma, u.beta, 1);
    auto& col = columns.emplace_back();
    for_each_term(images(q, l, sys.alphas, mode), sys.alphas, mode, [&](const RowKey& key, const Rational& c) {
      col.emplace_back(key, c);
      rows.try_emplace(key, 0);
    });
  }
  std::vector<std::pair<RowKey, Rational>> rhs_terms;
  for_each_term(right_hand_sides(g, k, l, sys.alphas, mode), sys.alphas, mode,
                [&](const RowKey& key, const Rational& c) {
                  rhs_terms.emplace_back(key, c);
                  rows.try_emplace(key, 0);
                });

  std::size_t index = 0;
  for (auto& [key, i] : rows) {
    i = index++;
    const auto& [block, r, c, gamma, beta] = key;
    sys.constraints.push_back(
        {block.empty() ? std::nullopt : std::optional<MultiIndex>(MultiIndex(block)), r, c, gamma, beta});
  }
  sys.matrix = RationalMatrix(rows.size(), sys.unknowns.size());
  sys.rhs.assign(rows.size(), Rational(0));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [key, c] : columns[j]) sys.matrix(rows.at(key), j) += c;
  for (const auto& [key, c] : rhs_terms) sys.rhs[rows.at(key)] += c;
  return sys;
}

System build_system(const presets::Bundle& b, Mode mode) { return build_system(b.a, b.l, b.k, b.g, mode); }

CompositeMatrix composite_from(const System& sys, const RationalVector& q) {
  if (q.size() != sys.unknowns.size()) throw std::invalid_argument("composite_from: wrong number of coordinates");
  CompositeMatrix out(sys.q_rows, sys.q_cols, sys.n);
  for (std::size_t j = 0; j < q.size(); ++j) {
    const Unknown& u = sys.unknowns[j];
    out(u.row, u.col).add_term(u.gamma, u.beta, q[j]);
  }
  return out;
}

std::optional<RationalVector> coordinates(const System& sys, const CompositeMatrix& q) {
  if (q.rows() != sys.q_rows || q.cols() != sys.q_cols) return std::nullopt;
  std::map<std::tuple<std::size_t, std::size_t, MultiIndex, MultiIndex>, std::size_t> index;
  for (std::size_t j = 0; j < sys.unknowns.size(); ++j) {
    const Unknown& u = sys.unknowns[j];
    index[{u.row, u.col, u.gamma, u.beta}] = j;
  }
  RationalVector out(sys.unknowns.size(), Rational(0));
  for (std::size_t r = 0; r < q.rows(); ++r)
    for (std::size_t c = 0; c < q.cols(); ++c)
      for (const auto& [key, coeff] : q(r, c).terms()) {
        const auto it = index.find({r, c, key.first, key.second});
        if (it == index.end()) return std::nullopt;
        out[it->second] = coeff;
      }
  return out;
}

bool satisfies(const System& sys, const RationalVector& q) {
  return q.size() == sys.unknowns.size() && sys.matrix * q == sys.rhs;
}

Factorization factor_composite(const CompositeMatrix& q) {
  // Rows (V-row, β), columns (γ, F-column).
  std::map<std::pair<std::size_t, MultiIndex>, std::size_t> row_index;
  std::map<std::pair<MultiIndex, std::size_t>, std::size_t> col_index;
  for (std::size_t r = 0; r < q.rows(); ++r)
    for (std::size_t c = 0; c < q.cols(); ++c)
      for (const auto& [key, coeff] : q(r, c).terms()) {
        row_index.try_emplace({r, key.second}, 0);
        col_index.try_emplace({key.first, c}, 0);
      }
  std::size_t i = 0;
  for (auto& [key, v] : row_index) v = i++;
  i = 0;
  for (auto& [key, v] : col_index) v = i++;

  RationalMatrix m(row_index.size(), col_index.size());
  for (std::size_t r = 0; r < q.rows(); ++r)
    for (std::size_t c = 0; c < q.cols(); ++c)
      for (const auto& [key, coeff] : q(r, c).terms())
        m(row_index.at({r, key.second}), col_index.at({key.first, c})) = coeff;

  Factorization f;
  const auto rf = m.rows() && m.cols() ? linalg::rank_factorize(m) : linalg::RankFactorization{};
  f.dim_m = rf.rank;
  f.t.assign(q.rows(), std::vector<DerivExpr>(f.dim_m, DerivExpr(q.dim())));
  f.p = PolyMatrix(f.dim_m, q.cols(), q.dim());
  for (const auto& [key, row] : row_index)
    for (std::size_t j = 0; j < f.dim_m; ++j)
      if (rf.left(row, j) != 0) f.t[key.first][j].add_term(key.second, rf.left(row, j));
  for (const auto& [key, col] : col_index)
    for (std::size_t j = 0; j < f.dim_m; ++j)
      if (rf.right(j, col) != 0) f.p(j, key.second).add_term(key.first, rf.right(j, col));
  return f;
}

Outcome solve_feasibility(const System& sys) {
  Outcome out;
  out.unknowns = sys.unknowns.size();
  out.equations = sys.matrix.rows();
  out.rank = linalg::rank(sys.matrix);
  const auto natural = linalg::solve(sys.matrix, sys.rhs, PivotOrder::Natural);
  const auto reversed = linalg::solve(sys.matrix, sys.rhs, PivotOrder::Reversed);
  out.orders_agree = natural.index() == reversed.index() &&
                     linalg::rank(sys.matrix, PivotOrder::Reversed) == out.rank;

  if (const auto* c = std::get_if<linalg::Consistent>(&natural)) {
    out.status = Outcome::Status::Feasible;
    out.nullity = c->nullity;
    out.solution = c->solution;
    out.q = composite_from(sys, c->solution);
    out.factors = factor_composite(out.q);
    out.verified = satisfies(sys, c->solution) && composite::multiply(out.factors->t, out.factors->p) == out.q;
    if (const auto* r = std::get_if<linalg::Consistent>(&reversed))
      out.orders_agree = out.orders_agree && r->nullity == c->nullity && satisfies(sys, r->solution);
  } else {
    out.status = Outcome::Status::Infeasible;
    out.certificate = std::get<linalg::Inconsistent>(natural).certificate;
    out.verified = linalg::certifies_inconsistency(sys.matrix, sys.rhs, out.certificate);
    if (const auto* r = std::get_if<linalg::Inconsistent>(&reversed))
      out.orders_agree = out.orders_agree && linalg::certifies_inconsistency(sys.matrix, sys.rhs, r->certificate);
  }
  return out;
}

bool CaseReport::as_expected() const {
  if (!outcome.verified || !outcome.orders_agree) return false;
  switch (spec.expected) {
    case presets::C6Expectation::Feasible:
      return outcome.feasible();
    case presets::C6Expectation::Infeasible:
      return !outcome.feasible();
    case presets::C6Expectation::Any:
      return true;
  }
  return false;
}

CaseReport run_case(const std::string& name) {
  const auto start = std::chrono::steady_clock::now();
  CaseReport report;
  report.spec = presets::c6_case(name);
  const presets::Bundle b = presets::bundle(report.spec.bundle);
  const System sys = build_system(b, report.spec.mode);
  report.outcome = solve_feasibility(sys);

  std::optional<CompositeMatrix> reference;
  if (b.p) {
    report.reference_name = "T*P";
    reference = composite::multiply(b.t, *b.p);
  } else if (b.magic == presets::MagicForm::AntiderivativeSymmetry && !b.antiderivatives.empty()) {
    report.reference_name = "2*d1G*K1";
    reference = composite::multiply(b.g.diff(0), b.antiderivatives[0]);
    *reference *= Rational(2);
  } else if (b.antiderivatives.size() == b.n) {
    report.reference_name = "sum_i diG*Ki";
    reference = CompositeMatrix(b.g.rows(), b.k.cols(), b.n);
    for (std::size_t i = 0; i < b.n; ++i) *reference += composite::multiply(b.g.diff(i), b.antiderivatives[i]);
  }
  if (reference) {
    const auto coords = coordinates(sys, *reference);
    report.reference_solves = coords && satisfies(sys, *coords);
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace korncert::c6
