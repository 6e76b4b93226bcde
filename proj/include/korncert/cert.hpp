#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "korncert/composite.hpp"
#include "korncert/greens.hpp"
#include "korncert/opsym.hpp"
#include "korncert/poly.hpp"
#include "korncert/presets.hpp"

namespace korncert::cert {

struct IdentityReport {
  enum class Status { Verified, Refuted };

  std::string name;
  presets::IdentityKind kind = presets::IdentityKind::ComposeZero;
  Status status = Status::Refuted;
  std::string statement;
  /// Both sides after reduction; always filled so refutations can be read.
  std::string lhs;
  std::string rhs;
  /// Exact re-evaluation of both sides at sample points, bypassing the
  /// symbolic route. Zero when the identity has no pointwise form.
  std::size_t pointwise_samples = 0;
  bool pointwise_agree = true;
  presets::Expectation expected = presets::Expectation::Holds;
  double elapsed_ms = 0.0;

  bool verified() const { return status == Status::Verified; }
  bool as_expected() const;
};

std::string to_string(IdentityReport::Status s);

inline constexpr std::size_t kPointwiseSamples = 10;

/// L(ξ)A(ξ) ≡ 0.
IdentityReport verify_compose_zero(const opsym::OperatorSymbol& l, const opsym::OperatorSymbol& a);

/// Σ_{|α|=ℓ} ∂^α K(y) L_α = Id_E. Throws std::invalid_argument when some
/// ∂^α K is not constant.
IdentityReport verify_partition(const poly::PolyMatrix& k, const opsym::OperatorSymbol& l);

/// ∂_{y_i} K_i = K for every i.
IdentityReport verify_antiderivatives(const std::vector<poly::PolyMatrix>& ks, const poly::PolyMatrix& k);

/// ∂_{x_1}G·K_1 = ∂_{x_2}G·K_2, compared in harmonic normal form.
IdentityReport verify_magic(const greens::GreensMatrix& g, const poly::PolyMatrix& k1, const poly::PolyMatrix& k2);

/// ∂_{x_i}G·K = ∂_{y_i}(T·P) for every i.
IdentityReport verify_reference_factorization(const greens::GreensMatrix& g, const poly::PolyMatrix& k,
                                              const std::vector<std::vector<greens::DerivExpr>>& t,
                                              const poly::PolyMatrix& p);

/// ∂_{x_1}G·∂_{y_2}K = ∂_{x_2}G·∂_{y_1}K.
IdentityReport verify_cross_symmetry(const greens::GreensMatrix& g, const poly::PolyMatrix& k);

/// Q = Σ_i ∂_{x_i}G·K_i satisfies Σ_α ∂_y^α Q L_α = Σ_α R_α L_α.
IdentityReport verify_candidate_weak(const greens::GreensMatrix& g, const poly::PolyMatrix& k,
                                     const std::vector<poly::PolyMatrix>& ks, const opsym::OperatorSymbol& l);

/// B(ξ)A(ξ) = |ξ|²Id_V, where B is G's symbol.
IdentityReport verify_greens_symbol(const greens::GreensMatrix& g, const opsym::OperatorSymbol& a);

/// The fixed five-identity set for a bundle, in presets::kIdentityKinds order.
std::vector<IdentityReport> certify_bundle(const presets::Bundle& b);

}  // namespace korncert::cert
