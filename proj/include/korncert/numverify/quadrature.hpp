#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "korncert/numverify/fields.hpp"

namespace korncert::numverify {

/// Resolution of a polar grid. Each refinement level doubles the radial and
/// angular node counts: the geometric ratio becomes its square root and the
/// uniform spacing halves.
struct GridOptions {
  double inner_radius = 1e-6;  ///< nodes start here; [0, inner) is dropped
  double ratio = 1.05;         ///< geometric growth near the center
  double spacing = 0.05;       ///< uniform radial spacing further out
  std::size_t angles = 64;
  int level = 0;
};

/// Tensor grid in polar coordinates about `center`: two-point Gauss-Legendre
/// per radial cell, periodic trapezoid in angle. Weights include the
/// Jacobian r, so Σ w f ≈ ∫ f over the disk of radius `outer`.
class PolarGrid {
 public:
  PolarGrid(Vec2 center, double outer, const GridOptions& options, std::span<const double> breakpoints = {});

  std::size_t size() const { return weights_.size(); }
  const Vec2& center() const { return center_; }
  double outer() const { return outer_; }
  const GridOptions& options() const { return options_; }
  std::size_t radial_nodes() const { return radial_.size(); }
  std::size_t angular_nodes() const { return angles_; }

  std::span<const double> xs() const { return xs_; }
  std::span<const double> ys() const { return ys_; }
  /// Distance to the grid center.
  std::span<const double> radii() const { return radii_; }
  std::span<const double> weights() const { return weights_; }
  Vec2 point(std::size_t i) const { return {xs_[i], ys_[i]}; }

  PolarGrid refined() const;

 private:
  Vec2 center_;
  double outer_;
  GridOptions options_;
  std::vector<double> breakpoints_;
  std::vector<double> radial_;
  std::size_t angles_ = 0;
  std::vector<double> xs_, ys_, radii_, weights_;
};

/// ∫ |x|^w |f(x)|^q dx over the grid (|x| measured from the origin), raised
/// to 1/q when `root` is set. Throws std::invalid_argument for w ≤ -2 or
/// q ≤ 0.
double quad_weighted(const std::function<double(const Vec2&)>& f, double w, double q, const PolarGrid& grid,
                     bool root = false);

/// Same integral from precomputed |f| values at the grid nodes.
double quad_weighted(std::span<const double> abs_values, double w, double q, const PolarGrid& grid, bool root = false);

/// Per-level values with a Richardson estimate of the limit.
struct ConvergenceTable {
  std::vector<double> values;
  double extrapolated = 0.0;
  /// Observed order from the last three levels, when there are three.
  std::optional<double> observed_order;
  /// Differences between successive levels fell below 1e-12 and changed
  /// direction; reported rather than failed.
  bool noise_flag = false;
};

/// Needs at least two levels. With two levels the extrapolation assumes
/// order 2.
ConvergenceTable convergence_report(std::span<const double> values);

}  // namespace korncert::numverify
