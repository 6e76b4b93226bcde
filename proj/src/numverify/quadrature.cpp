#include "korncert/numverify/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <stdexcept>

#include "korncert/simd.hpp"

namespace korncert::numverify {

namespace {

std::vector<double> radial_edges(double outer, const GridOptions& o, std::span<const double> breakpoints) {
  const double scale = std::pow(2.0, -o.level);
  const double ratio = std::pow(o.ratio, scale);
  const double h = o.spacing * scale;
  std::vector<double> edges{0.0};
  double r = std::min(o.inner_radius, outer);
  while (r < outer) {
    edges.push_back(r);
    r += std::min(r * (ratio - 1.0), h);
  }
  edges.push_back(outer);
  for (double b : breakpoints)
    if (b > 0.0 && b < outer) edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [&](double a, double b) { return std::abs(a - b) <= 1e-12 * outer; }),
              edges.end());
  return edges;
}

}  // namespace

PolarGrid::PolarGrid(Vec2 center, double outer, const GridOptions& options, std::span<const double> breakpoints)
    : center_(center), outer_(outer), options_(options), breakpoints_(breakpoints.begin(), breakpoints.end()) {
  if (!(outer > 0.0)) throw std::invalid_argument("polar grid: outer radius must be positive");
  if (!(options.ratio > 1.0) || !(options.spacing > 0.0) || options.angles < 4 || options.level < 0)
    throw std::invalid_argument("polar grid: invalid options");
  const auto edges = radial_edges(outer, options, breakpoints);
  std::vector<double> radial_w;
  const double g = 0.5 / std::sqrt(3.0);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i], b = edges[i + 1];
    const double mid = 0.5 * (a + b), half = b - a;
    // The innermost cell [0, inner) is dropped; its share is O(inner^{w+2}).
    if (i == 0 && a == 0.0 && edges.size() > 2) continue;
    for (double s : {-g, g}) {
      radial_.push_back(mid + s * half);
      radial_w.push_back(0.5 * half);
    }
  }
  angles_ = options.angles << options.level;
  const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(angles_);
  const std::size_t total = radial_.size() * angles_;
  xs_.reserve(total);
  ys_.reserve(total);
  radii_.reserve(total);
  weights_.reserve(total);
  for (std::size_t k = 0; k < angles_; ++k) {
    const double theta = (static_cast<double>(k) + 0.5) * dtheta;
    const double c = std::cos(theta), s = std::sin(theta);
    for (std::size_t i = 0; i < radial_.size(); ++i) {
      xs_.push_back(center[0] + radial_[i] * c);
      ys_.push_back(center[1] + radial_[i] * s);
      radii_.push_back(radial_[i]);
      weights_.push_back(radial_w[i] * radial_[i] * dtheta);
    }
  }
}

PolarGrid PolarGrid::refined() const {
  GridOptions next = options_;
  ++next.level;
  return PolarGrid(center_, outer_, next, breakpoints_);
}

double quad_weighted(std::span<const double> abs_values, double w, double q, const PolarGrid& grid, bool root) {
  if (!(w > -2.0)) throw std::invalid_argument("weighted quadrature: weight power must exceed -2");
  if (!(q > 0.0)) throw std::invalid_argument("weighted quadrature: exponent must be positive");
  if (abs_values.size() != grid.size()) throw std::invalid_argument("weighted quadrature: size mismatch");
  std::vector<double> integrand(grid.size());
  const auto xs = grid.xs(), ys = grid.ys();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = abs_values[i];
    if (v == 0.0) continue;
    const double r = std::hypot(xs[i], ys[i]);
    const double weight = w == 0.0 ? 1.0 : std::pow(r, w);
    integrand[i] = weight * (q == 1.0 ? v : std::pow(v, q));
  }
  const double total = simd::dot(grid.weights(), integrand);
  return root ? std::pow(total, 1.0 / q) : total;
}

double quad_weighted(const std::function<double(const Vec2&)>& f, double w, double q, const PolarGrid& grid, bool root) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = std::abs(f(grid.point(i)));
  return quad_weighted(values, w, q, grid, root);
}

ConvergenceTable convergence_report(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("convergence report needs at least two levels");
  ConvergenceTable t;
  t.values.assign(values.begin(), values.end());
  const std::size_t n = values.size();
  const double d_last = values[n - 1] - values[n - 2];
  double order = 2.0;
  if (n >= 3) {
    const double d_prev = values[n - 2] - values[n - 3];
    if (d_last != 0.0 && d_prev != 0.0) {
      t.observed_order = std::log2(std::abs(d_prev / d_last));
      if (*t.observed_order > 0.0) order = *t.observed_order;
    } else {
      t.observed_order = std::numeric_limits<double>::infinity();
    }
    if (d_last * d_prev < 0.0 && std::abs(d_last) < 1e-12 && std::abs(d_prev) < 1e-12) t.noise_flag = true;
  }
  t.extrapolated = values[n - 1] + d_last / (std::pow(2.0, order) - 1.0);
  return t;
}

}  // namespace korncert::numverify
