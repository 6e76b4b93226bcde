#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "korncert/composite.hpp"
#include "korncert/greens.hpp"
#include "korncert/linalg.hpp"
#include "korncert/opsym.hpp"
#include "korncert/poly.hpp"
#include "korncert/presets.hpp"

namespace korncert::c6 {

using Mode = presets::C6Mode;

/// One coordinate of the composite Q: the coefficient of y^gamma ⊗ ∂^beta Φ_n
/// in entry (row, col).
struct Unknown {
  std::size_t row = 0;
  std::size_t col = 0;
  MultiIndex gamma;
  MultiIndex beta;
};

/// One coefficient-matching equation. `block` is the multi-index α of the
/// strict condition, or nullopt for the summed (weak) condition.
struct Constraint {
  std::optional<MultiIndex> block;
  std::size_t row = 0;
  std::size_t col = 0;
  MultiIndex gamma;
  MultiIndex beta;
};

/// Linear system M q = b in the coordinates of Q(x, y) = T(x)P(y).
struct System {
  Mode mode = Mode::Strict;
  std::size_t n = 0;
  std::size_t q_rows = 0;   ///< dim V
  std::size_t q_cols = 0;   ///< dim F
  int y_degree = 0;         ///< ℓ + 1
  int x_order = 0;          ///< order of the x-derivatives in Q
  std::vector<MultiIndex> alphas;
  std::vector<Unknown> unknowns;
  std::vector<Constraint> constraints;
  linalg::RationalMatrix matrix;
  linalg::RationalVector rhs;
};

/// Throws std::invalid_argument when L·A ≠ 0, the partition identity fails,
/// K is not homogeneous of degree ℓ, or the order of G does not match the
/// order of A.
System build_system(const opsym::OperatorSymbol& a, const opsym::OperatorSymbol& l, const poly::PolyMatrix& k,
                    const greens::GreensMatrix& g, Mode mode);
System build_system(const presets::Bundle& b, Mode mode);

/// Q as a matrix of tensor polynomials.
composite::CompositeMatrix composite_from(const System& sys, const linalg::RationalVector& q);
/// Coordinates of q in the system's unknowns, or nullopt if q has a term
/// outside the unknown basis.
std::optional<linalg::RationalVector> coordinates(const System& sys, const composite::CompositeMatrix& q);
bool satisfies(const System& sys, const linalg::RationalVector& q);

/// Q = T·P with T: M→V of derivative expressions and P: F→M polynomial.
struct Factorization {
  std::vector<std::vector<greens::DerivExpr>> t;
  poly::PolyMatrix p;
  std::size_t dim_m = 0;
};

/// Minimal-dimension factorization through the rank of the coefficient
/// matrix indexed by (V-row, β) × (γ, F-column).
Factorization factor_composite(const composite::CompositeMatrix& q);

struct Outcome {
  enum class Status { Feasible, Infeasible };
  Status status = Status::Infeasible;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
  /// Dimension of the solution space (affine), zero when infeasible.
  std::size_t nullity = 0;
  linalg::RationalVector solution;
  composite::CompositeMatrix q;
  std::optional<Factorization> factors;
  /// λ with λᵀM = 0 and λᵀb ≠ 0.
  linalg::RationalVector certificate;
  /// Re-substitution of the solution, or the independent certificate check.
  bool verified = false;
  /// Reversed pivoting gives the same status, rank and nullity.
  bool orders_agree = false;

  bool feasible() const { return status == Status::Feasible; }
};

std::string to_string(Outcome::Status s);

Outcome solve_feasibility(const System& sys);

struct CaseReport {
  presets::C6Case spec;
  Outcome outcome;
  /// Named candidate Q and whether it solves the system.
  std::optional<std::string> reference_name;
  std::optional<bool> reference_solves;
  double elapsed_ms = 0.0;

  bool as_expected() const;
};

/// Runs one of presets::c6_cases(). The reference candidate is the
/// exhibited T·P when the bundle has one, otherwise Σ ∂_{x_i}G·K_i for
/// weak cases and 2∂_{x1}G·K_1 for bundles with the antiderivative symmetry.
CaseReport run_case(const std::string& name);

}  // namespace korncert::c6
