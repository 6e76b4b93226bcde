#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace korncert::numverify {

using Vec2 = std::array<double, 2>;
/// Row-major 2×2 Jacobian: {∂1u1, ∂2u1, ∂1u2, ∂2u2}.
using Jacobian = std::array<double, 4>;

enum class FieldFamily { RadialBump, OscillatoryBump, RigidPerturbation, TranslatedBump, RandomMixture };
std::string to_string(FieldFamily f);
FieldFamily parse_field_family(const std::string& name);

struct FieldSpec {
  FieldFamily family = FieldFamily::RadialBump;
  double radius = 1.0;
  Vec2 direction{1.0, 0.0};
  Vec2 wave{4.0, 0.0};
  Vec2 center{0.0, 0.0};
  std::uint64_t seed = 1;
  int components = 4;  ///< random-mixture only
};

/// exp(1/(s-1)) with s = |x-c|²/R², extended by zero, times a vector
/// multiplier.
struct BumpTerm {
  enum class Multiplier { Constant, Oscillatory, Rotation };
  Vec2 center{0.0, 0.0};
  double radius = 1.0;
  Multiplier multiplier = Multiplier::Constant;
  Vec2 vector{1.0, 0.0};  ///< direction, or wave vector for Oscillatory
  double weight = 1.0;
};

/// Smooth compactly supported u: R² → R² with analytic first derivatives.
/// The optional dilation and rotation act as u(x) ↦ Q u(Qᵀx / s).
class TestField {
 public:
  TestField() = default;
  TestField(std::string label, std::vector<BumpTerm> terms);

  const std::string& label() const { return label_; }
  const std::vector<BumpTerm>& terms() const { return terms_; }

  Vec2 value(const Vec2& x) const;
  Jacobian jacobian(const Vec2& x) const;
  /// (∂1u1, ∂2u1 + ∂1u2, ∂2u2)
  std::array<double, 3> korn(const Vec2& x) const;
  /// Frobenius norm of the symmetrized Jacobian.
  double dsym_norm(const Vec2& x) const;

  /// Smallest disk containing the support.
  Vec2 support_center() const;
  double support_radius() const;

  TestField dilated(double s) const;
  TestField rotated(double theta) const;
  bool is_zero() const { return terms_.empty(); }

 private:
  Vec2 to_reference(const Vec2& x) const;

  std::string label_;
  std::vector<BumpTerm> terms_;
  double scale_ = 1.0;
  double cos_ = 1.0;
  double sin_ = 0.0;
};

/// Throws std::invalid_argument for a non-positive radius.
TestField make_test_field(const FieldSpec& spec);

/// ρ(t) = 1 on [0, 1/4], 0 on [1/2, ∞), exponential smoothstep in between.
class CutoffProfile {
 public:
  CutoffProfile();
  double value(double t) const;
  double d1(double t) const;
  double d2(double t) const;
  double sup_d1() const { return sup_d1_; }
  double sup_d2() const { return sup_d2_; }

  static constexpr double kPlateauEnd = 0.25;
  static constexpr double kSupportEnd = 0.5;

 private:
  double sup_d1_ = 0.0;
  double sup_d2_ = 0.0;
};

/// ψ(t) = e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}) on (0, 1), clamped outside;
/// ψ(t) + ψ(1 - t) = 1. Returns {ψ, ψ', ψ''}.
std::array<double, 3> smoothstep(double t);

}  // namespace korncert::numverify
