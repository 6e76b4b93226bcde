#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "korncert/greens.hpp"
#include "korncert/opsym.hpp"
#include "korncert/poly.hpp"

namespace korncert::presets {

enum class IdentityKind { ComposeZero, Partition, Antiderivatives, Magic, GreensSymbol };
inline constexpr std::array<IdentityKind, 5> kIdentityKinds = {
    IdentityKind::ComposeZero, IdentityKind::Partition, IdentityKind::Antiderivatives, IdentityKind::Magic,
    IdentityKind::GreensSymbol};
std::string to_string(IdentityKind k);

/// Which statement the "magic" slot of the identity set certifies.
enum class MagicForm {
  /// ∂_{x1}G·K1 = ∂_{x2}G·K2
  AntiderivativeSymmetry,
  /// ∂_{xi}G·K = ∂_{yi}(T·P) for every i, with the bundle's T and P
  ReferenceFactorization,
  /// ∂_{x1}G·∂_{y2}K = ∂_{x2}G·∂_{y1}K
  CrossSymmetry,
  /// Q = Σ ∂_{xi}G·K_i satisfies the summed (weak) condition
  CandidateWeak,
};

enum class Expectation { Holds, Fails, Any };
std::string to_string(Expectation e);

/// Everything a Korn-type argument needs for one operator: A: V→E with
/// Green's matrix G, cocanceling L: E→F, the partition polynomial K (E×F)
/// and optional antiderivatives K_i with ∂_{y_i}K_i = K.
struct Bundle {
  std::string name;
  std::size_t n = 0;
  opsym::OperatorSymbol a;
  opsym::OperatorSymbol l;
  poly::PolyMatrix k;
  std::vector<poly::PolyMatrix> antiderivatives;
  greens::GreensMatrix g;
  /// Exhibited factorization Q = T·P, when one is known.
  std::vector<std::vector<greens::DerivExpr>> t;
  std::optional<poly::PolyMatrix> p;
  MagicForm magic = MagicForm::AntiderivativeSymmetry;
  /// Expected status per IdentityKind, in kIdentityKinds order.
  std::array<Expectation, 5> expected{Expectation::Holds, Expectation::Holds, Expectation::Holds, Expectation::Holds,
                                      Expectation::Holds};
};

/// "dsym-r2", "grad-r2", "curl-r3", "open-question-r3".
Bundle bundle(const std::string& name);
std::vector<std::string> bundle_names();

enum class C6Mode { Strict, Weak };
std::string to_string(C6Mode m);

enum class C6Expectation { Feasible, Infeasible, Any };
std::string to_string(C6Expectation e);

struct C6Case {
  std::string name;
  std::string bundle;
  C6Mode mode;
  C6Expectation expected;
};

/// grad-r2-strict, dsym-r2-weak, curl-r3-strict, open-question-r3-weak.
const std::vector<C6Case>& c6_cases();
/// Throws std::invalid_argument for unknown names.
const C6Case& c6_case(const std::string& name);

/// Entries parsed with poly::parse_poly, one row per inner vector.
poly::PolyMatrix poly_matrix(std::size_t n, const std::vector<std::vector<std::string>>& rows);

}  // namespace korncert::presets
