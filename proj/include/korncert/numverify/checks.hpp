#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "korncert/greens.hpp"
#include "korncert/numverify/fields.hpp"
#include "korncert/numverify/quadrature.hpp"

namespace korncert::numverify {

/// Exponents with (2 + b)/q = 1 + a.
struct InequalityParams {
  double q = 1.0;
  double a = 1.0;
  double b = 0.0;

  /// b = q(1 + a) - 2. Throws std::invalid_argument unless q ∈ [1, 2) and
  /// a, b > -2.
  static InequalityParams from(double q, double a);
  bool theorem_regime() const { return a >= 1.0 && a < 2.0; }
};

/// 2×3 matrix, row-major.
using Mat23 = std::array<double, 6>;

/// Splits G(x - y) into a cut-off first-order Taylor part H and the
/// remainder K = G(x - y) - H, with H = ρ(|y|/|x|)(G(x) + s·y·DG(x)). The
/// Taylor polynomial of G(x - y) has s = -1; s = +1 is kept to show that
/// the remainder bound then fails.
class KernelSplit {
 public:
  enum class TaylorSign { Minus, Plus };

  explicit KernelSplit(const greens::GreensMatrix& g, TaylorSign sign = TaylorSign::Minus);

  /// Normalized G(x).
  Mat23 green(const Vec2& x) const;
  /// Normalized ∂_{x_axis}G(x).
  Mat23 green_derivative(const Vec2& x, std::size_t axis) const;
  Mat23 taylor_part(const Vec2& x, const Vec2& y) const;
  Mat23 h(const Vec2& x, const Vec2& y) const;
  Mat23 k(const Vec2& x, const Vec2& y) const;
  const CutoffProfile& cutoff() const { return rho_; }

 private:
  double norm_ = 1.0;
  double sign_ = -1.0;
  std::vector<greens::CompiledRadial> g_;
  std::array<std::vector<greens::CompiledRadial>, 2> dg_;
  CutoffProfile rho_;
};

double frobenius(const Mat23& m);

struct CheckReport {
  std::string name;
  std::string field;
  std::map<std::string, double> params;
  /// Per-level (or per-scale) values of the checked quantity.
  std::vector<double> values;
  std::optional<ConvergenceTable> convergence;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string note;
  double elapsed_ms = 0.0;
};

/// Polar grid about the origin when the field's support reaches it,
/// otherwise about the support center.
PolarGrid grid_for(const TestField& u, const GridOptions& options);

/// ∫|u_c| / ∫|x||∂1 u_c| for component c. Throws std::domain_error when
/// both integrals are below 1e-14.
CheckReport check_ibp_lemma(const TestField& u, std::size_t component, const GridOptions& options,
                            double tolerance = 1e-3);

struct TheoremSides {
  double lhs = 0.0;
  double rhs = 0.0;
};
TheoremSides theorem_sides(const TestField& u, const InequalityParams& p, const PolarGrid& grid);

/// Ratio (∫|x|^b|u|^q)^{1/q} / ∫|x|^a|D_sym u| at two levels and for u(x/2).
/// Passes when finite, stable within `refinement_tol` under one refinement
/// and dilation-invariant within `dilation_tol`.
CheckReport check_main_inequality(const TestField& u, const InequalityParams& p, const GridOptions& options,
                                  double refinement_tol = 0.05, double dilation_tol = 0.01);

enum class KeyLemmaOrder { Zeroth, First };
std::string to_string(KeyLemmaOrder o);

struct KeyLemmaSides {
  double lhs = 0.0;
  double rhs = 0.0;
  /// ∫ of the kernel-weighted |A(D)u| without cancellation.
  double unsigned_lhs = 0.0;
};

/// First order: |∫(y·D)G(x) A(D)u(y) ρ(|y|/|x|) dy| against
/// |x|^{-1}∫_{|x|/4≤|y|≤|x|/2}|A(D)u|. Zeroth order: |∫A(D)u ρ dy| against
/// the annulus integral itself. Throws std::invalid_argument when the support
/// misses |y| ≤ |x|/4 and std::domain_error when the annulus integral is
/// below 1e-14.
KeyLemmaSides key_lemma_sides(const TestField& u, const Vec2& x, KeyLemmaOrder order, const KernelSplit& split,
                              const GridOptions& options);

/// Ratios at x = (r, 0) for r ∈ radii with u dilated by r / radii[0]; passes
/// when all are finite and (max - min)/max < tolerance. A left side below
/// 1e-12 of the unsigned integral counts as zero.
CheckReport check_key_lemma(const TestField& u, KeyLemmaOrder order, const std::vector<double>& radii,
                            const GridOptions& options, double tolerance = 0.10);

/// u supported in |y| ≤ |x|/4: lhs / unsigned_lhs must be below tolerance.
CheckReport check_key_lemma_cancellation(const TestField& u, const Vec2& x, KeyLemmaOrder order,
                                         const GridOptions& options, double tolerance = 1e-6);

/// sup |K(x,y)|·|x|³/|y|² over deterministic pairs with t_lo < |y|/|x| ≤ t_hi.
double remainder_sup(const KernelSplit& split, std::size_t samples, std::uint64_t seed, double t_lo = 0.0,
                     double t_hi = 0.5);

/// Sup at `samples` and 4·samples; passes when finite and within tolerance.
CheckReport check_remainder_bound(const KernelSplit& split, std::size_t samples, std::uint64_t seed,
                                  double tolerance = 0.10, double t_lo = 0.0, double t_hi = 0.5);

/// max over 25 probes of |u(x) - c₂∫G(x-y)A(D)u(y)dy| / max|u|, per level.
/// Passes when the first level is below `tolerance` and every refinement
/// reduces the error by at least `reduction`.
CheckReport check_reproduction(const TestField& u, const KernelSplit& split, const GridOptions& options,
                               int levels = 2, double tolerance = 1e-2, double reduction = 2.0);
double reproduction_error(const TestField& u, const KernelSplit& split, const GridOptions& options);

/// max_c |∫(A(D)u)_c| / ∫|A(D)u|.
double vanishing_moment(const TestField& u, const GridOptions& options);

/// max |H + K - G(x-y)| over `pairs` random pairs, relative to |G(x-y)|.
double kernel_split_consistency(const KernelSplit& split, std::size_t pairs, std::uint64_t seed);

/// Largest relative deviation between analytic and central-difference
/// Jacobians at `samples` points inside the support.
double derivative_check(const TestField& u, std::size_t samples, std::uint64_t seed);

/// Named test-field batteries used by the checks and the acceptance suite.
std::vector<TestField> ibp_battery();
std::vector<TestField> theorem_battery();
/// Fields whose support meets both |y| ≤ 1 and 1 ≤ |y| ≤ 2, i.e. the two
/// key-lemma regions at |x| = 4.
std::vector<TestField> key_lemma_battery();

struct SweepEntry {
  InequalityParams params;
  std::vector<CheckReport> reports;
  double sup_ratio = 0.0;
  bool passed = false;
};

/// a ∈ {1, 1.25, 1.5, 1.75, 1.9} × q ∈ {1, 1.2, 1.5} over the theorem battery.
std::vector<SweepEntry> theorem_sweep(const GridOptions& options, const std::vector<double>& as = {1.0, 1.25, 1.5, 1.75, 1.9},
                                      const std::vector<double>& qs = {1.0, 1.2, 1.5});

}  // namespace korncert::numverify
