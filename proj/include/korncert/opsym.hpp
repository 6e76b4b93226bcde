#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "korncert/linalg.hpp"
#include "korncert/multi_index.hpp"
#include "korncert/poly.hpp"

namespace korncert::opsym {

using linalg::RationalMatrix;
using linalg::RationalVector;

/// Constant-coefficient homogeneous operator Σ_{|α|=k} A_α ∂^α from V to E,
/// stored as its α-indexed coefficient matrices (dimE × dimV each).
class OperatorSymbol {
 public:
  OperatorSymbol() = default;
  OperatorSymbol(std::size_t n, int order, std::size_t source_dim, std::size_t target_dim);

  std::size_t dim() const { return n_; }
  int order() const { return order_; }
  std::size_t source_dim() const { return source_dim_; }
  std::size_t target_dim() const { return target_dim_; }

  /// Throws std::invalid_argument when |alpha| != order or the matrix shape
  /// is not target_dim × source_dim. Setting a zero matrix removes alpha.
  void set_coefficient(const MultiIndex& alpha, RationalMatrix coefficient);
  /// Zero matrix for absent indices.
  RationalMatrix coefficient(const MultiIndex& alpha) const;
  const std::map<MultiIndex, RationalMatrix>& coefficients() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }
  bool operator==(const OperatorSymbol& other) const = default;

  /// A(ξ) as a polynomial matrix in ξ.
  poly::PolyMatrix symbol_matrix() const;
  /// All A_α stacked vertically in the order of coefficients().
  RationalMatrix stacked_coefficients() const;

 private:
  std::size_t n_ = 0;
  int order_ = 0;
  std::size_t source_dim_ = 0;
  std::size_t target_dim_ = 0;
  std::map<MultiIndex, RationalMatrix> coeffs_;
};

/// Σ_α A_α ξ^α, exact.
RationalMatrix symbol_at(const OperatorSymbol& op, std::span<const Rational> xi);

/// L(ξ)A(ξ) as a polynomial matrix; requires L.source_dim == A.target_dim.
poly::PolyMatrix compose_symbols(const OperatorSymbol& l, const OperatorSymbol& a);

struct PropertyVerdict {
  enum class Property { Elliptic, Canceling, Cocanceling, ComposeZero };
  enum class Kind { HoldsCertified, HoldsSampled, Fails };

  Property property = Property::Elliptic;
  Kind kind = Kind::Fails;
  std::size_t sample_count = 0;
  /// Frequencies examined, in order (sampling-based checks only).
  std::vector<RationalVector> frequencies;
  /// Failing frequency, when one is known exactly.
  std::optional<RationalVector> witness_frequency;
  /// Failing direction ξ = (t, 1) with t in [lo, hi], when only isolated.
  std::optional<std::pair<Rational, Rational>> witness_interval;
  /// Kernel vector (elliptic, cocanceling) at the witness.
  std::optional<RationalVector> witness_vector;
  /// Candidate common image (canceling), as columns.
  std::optional<RationalMatrix> witness_basis;
  std::string notes;

  bool holds() const { return kind != Kind::Fails; }
};

std::string to_string(PropertyVerdict::Property p);
std::string to_string(PropertyVerdict::Kind k);

inline constexpr std::size_t kDefaultBudget = 32;
inline constexpr std::uint64_t kDefaultSeed = 0x4b6f726e48617264ULL;

/// Reproducible frequency stream: the coordinate vectors, then (1,...,1),
/// then small random rationals drawn from a fixed-seed generator. Zero is
/// never returned.
class FrequencySampler {
 public:
  explicit FrequencySampler(std::size_t n, std::uint64_t seed = kDefaultSeed);
  RationalVector next();

 private:
  std::size_t n_;
  std::size_t emitted_ = 0;
  std::mt19937_64 engine_;
};

PropertyVerdict check_cocanceling(const OperatorSymbol& l);
PropertyVerdict check_injectively_elliptic(const OperatorSymbol& a, std::size_t budget = kDefaultBudget,
                                           std::uint64_t seed = kDefaultSeed);
PropertyVerdict check_canceling(const OperatorSymbol& a, std::size_t budget = kDefaultBudget,
                                std::uint64_t seed = kDefaultSeed);
PropertyVerdict check_compose_zero(const OperatorSymbol& l, const OperatorSymbol& a);

}  // namespace korncert::opsym
