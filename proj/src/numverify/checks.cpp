#include "korncert/numverify/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "korncert/simd.hpp"

namespace korncert::numverify {

namespace {

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Mat23 combine(const Mat23& a, double s, const Mat23& b) {
  Mat23 out;
  for (std::size_t i = 0; i < 6; ++i) out[i] = a[i] + s * b[i];
  return out;
}

std::array<double, 2> mat_vec(const Mat23& m, const std::array<double, 3>& v) {
  return {m[0] * v[0] + m[1] * v[1] + m[2] * v[2], m[3] * v[0] + m[4] * v[1] + m[5] * v[2]};
}

// |u| and |D_sym u| at every grid node.
struct FieldSamples {
  std::vector<double> abs_u;
  std::vector<double> dsym;
};

FieldSamples sample_field(const TestField& u, const PolarGrid& grid) {
  const std::size_t n = grid.size();
  std::vector<double> u1(n), u2(n), d11(n), off(n), d22(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = grid.point(i);
    const Vec2 v = u.value(p);
    const Jacobian j = u.jacobian(p);
    u1[i] = v[0];
    u2[i] = v[1];
    d11[i] = j[0];
    off[i] = (j[1] + j[2]) / std::numbers::sqrt2;  // two off-diagonal entries of (j1 + j2)/2
    d22[i] = j[3];
  }
  FieldSamples s{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  simd::add_squares(s.abs_u, u1);
  simd::add_squares(s.abs_u, u2);
  simd::sqrt_inplace(s.abs_u);
  simd::add_squares(s.dsym, d11);
  simd::add_squares(s.dsym, off);
  simd::add_squares(s.dsym, d22);
  simd::sqrt_inplace(s.dsym);
  return s;
}

TheoremSides sides_from(const FieldSamples& s, const InequalityParams& p, const PolarGrid& grid) {
  return {quad_weighted(s.abs_u, p.b, p.q, grid, true), quad_weighted(s.dsym, p.a, 1.0, grid)};
}

double ratio_of(const TheoremSides& s) {
  if (s.rhs < 1e-14) return s.lhs > 0.0 ? std::numeric_limits<double>::infinity() : std::numeric_limits<double>::quiet_NaN();
  return s.lhs / s.rhs;
}

// Everything the theorem check needs for one field, computed once.
struct TheoremContext {
  PolarGrid coarse, fine, dilated;
  FieldSamples coarse_s, fine_s, dilated_s;

  TheoremContext(const TestField& u, const GridOptions& options)
      : coarse(grid_for(u, options)),
        fine(coarse.refined()),
        dilated(grid_for(u.dilated(2.0), options)),
        coarse_s(sample_field(u, coarse)),
        fine_s(sample_field(u, fine)),
        dilated_s(sample_field(u.dilated(2.0), dilated)) {}
};

CheckReport theorem_report(const TestField& u, const TheoremContext& ctx, const InequalityParams& p,
                           double refinement_tol, double dilation_tol) {
  Stopwatch sw;
  CheckReport r;
  r.name = "main-inequality";
  r.field = u.label();
  r.params = {{"q", p.q}, {"a", p.a}, {"b", p.b}};
  const TheoremSides s0 = sides_from(ctx.coarse_s, p, ctx.coarse);
  const TheoremSides s1 = sides_from(ctx.fine_s, p, ctx.fine);
  const TheoremSides sd = sides_from(ctx.dilated_s, p, ctx.dilated);
  const double r0 = ratio_of(s0), r1 = ratio_of(s1), rd = ratio_of(sd);
  r.values = {r0, r1};
  r.convergence = convergence_report(r.values);
  r.value = r1;
  r.threshold = refinement_tol;
  const double refinement = std::abs(r1 / r0 - 1.0);
  const double dilation = std::abs(rd / r0 - 1.0);
  r.params["refinement_change"] = refinement;
  r.params["dilated_ratio"] = rd;
  r.params["dilation_change"] = dilation;
  r.params["dilation_threshold"] = dilation_tol;
  r.params["lhs"] = s1.lhs;
  r.params["rhs"] = s1.rhs;
  const bool finite = std::isfinite(r0) && std::isfinite(r1) && std::isfinite(rd);
  r.passed = finite && refinement < refinement_tol && dilation < dilation_tol;
  if (s0.rhs < 1e-14 && s0.lhs > 0.0) r.note = "potential counterexample: right-hand side vanishes";
  r.elapsed_ms = sw.ms();
  return r;
}

// Nodes of a grid about the origin reaching |x|/2, with |x|/4 as a cell edge.
PolarGrid key_lemma_grid(double radius, const GridOptions& options) {
  const double breaks[] = {radius / 4.0};
  return PolarGrid({0.0, 0.0}, radius / 2.0, options, breaks);
}

}  // namespace

InequalityParams InequalityParams::from(double q, double a) {
  if (!(q >= 1.0 && q < 2.0)) throw std::invalid_argument("inequality parameters: q must lie in [1, 2)");
  InequalityParams p{q, a, q * (1.0 + a) - 2.0};
  if (!(p.a > -2.0) || !(p.b > -2.0)) throw std::invalid_argument("inequality parameters: a and b must exceed -2");
  return p;
}

KernelSplit::KernelSplit(const greens::GreensMatrix& g, TaylorSign sign)
    : norm_(g.normalization()), sign_(sign == TaylorSign::Minus ? -1.0 : 1.0), g_(g.compile()) {
  if (g.rows() != 2 || g.cols() != 3 || g.dim() != 2) throw std::invalid_argument("kernel split: expects a 2×3 planar G");
  dg_[0] = g.diff(0).compile();
  dg_[1] = g.diff(1).compile();
}

Mat23 KernelSplit::green(const Vec2& x) const {
  Mat23 out;
  for (std::size_t i = 0; i < 6; ++i) out[i] = norm_ * g_[i](x);
  return out;
}

Mat23 KernelSplit::green_derivative(const Vec2& x, std::size_t axis) const {
  Mat23 out;
  for (std::size_t i = 0; i < 6; ++i) out[i] = norm_ * dg_.at(axis)[i](x);
  return out;
}

Mat23 KernelSplit::taylor_part(const Vec2& x, const Vec2& y) const {
  Mat23 out = green(x);
  out = combine(out, sign_ * y[0], green_derivative(x, 0));
  return combine(out, sign_ * y[1], green_derivative(x, 1));
}

Mat23 KernelSplit::h(const Vec2& x, const Vec2& y) const {
  const double t = std::hypot(y[0], y[1]) / std::hypot(x[0], x[1]);
  const double rho = rho_.value(t);
  Mat23 out{};
  if (rho == 0.0) return out;
  out = taylor_part(x, y);
  for (auto& v : out) v *= rho;
  return out;
}

Mat23 KernelSplit::k(const Vec2& x, const Vec2& y) const { return combine(green({x[0] - y[0], x[1] - y[1]}), -1.0, h(x, y)); }

double frobenius(const Mat23& m) {
  double s = 0.0;
  for (double v : m) s += v * v;
  return std::sqrt(s);
}

PolarGrid grid_for(const TestField& u, const GridOptions& options) {
  const Vec2 c = u.support_center();
  const double r = u.support_radius();
  const double dist = std::hypot(c[0], c[1]);
  if (dist <= r) return PolarGrid({0.0, 0.0}, dist + r, options);
  return PolarGrid(c, r, options);
}

CheckReport check_ibp_lemma(const TestField& u, std::size_t component, const GridOptions& options, double tolerance) {
  if (component > 1) throw std::invalid_argument("ibp check: component must be 0 or 1");
  if (u.is_zero()) throw std::domain_error("ibp check: degenerate field");
  Stopwatch sw;
  CheckReport r;
  r.name = "ibp-lemma";
  r.field = u.label() + " component " + std::to_string(component);
  r.threshold = 1.0 + tolerance;
  PolarGrid grid = grid_for(u, options);
  for (int level = 0; level < 2; ++level) {
    std::vector<double> abs_u(grid.size()), abs_d1(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Vec2 p = grid.point(i);
      abs_u[i] = std::abs(u.value(p)[component]);
      abs_d1[i] = std::abs(u.jacobian(p)[2 * component]);
    }
    const double lhs = quad_weighted(abs_u, 0.0, 1.0, grid);
    const double rhs = quad_weighted(abs_d1, 1.0, 1.0, grid);
    if (lhs < 1e-14 && rhs < 1e-14) throw std::domain_error("ibp check: degenerate field");
    r.values.push_back(lhs / rhs);
    if (level == 0) grid = grid.refined();
  }
  r.convergence = convergence_report(r.values);
  r.value = r.values.back();
  r.params["refinement_change"] = std::abs(r.values[1] / r.values[0] - 1.0);
  r.passed = std::isfinite(r.value) && r.value <= r.threshold;
  r.elapsed_ms = sw.ms();
  return r;
}

TheoremSides theorem_sides(const TestField& u, const InequalityParams& p, const PolarGrid& grid) {
  return sides_from(sample_field(u, grid), p, grid);
}

CheckReport check_main_inequality(const TestField& u, const InequalityParams& p, const GridOptions& options,
                                  double refinement_tol, double dilation_tol) {
  Stopwatch sw;
  const TheoremContext ctx(u, options);
  CheckReport r = theorem_report(u, ctx, p, refinement_tol, dilation_tol);
  r.elapsed_ms = sw.ms();
  return r;
}

std::string to_string(KeyLemmaOrder o) { return o == KeyLemmaOrder::Zeroth ? "zeroth" : "first"; }

KeyLemmaSides key_lemma_sides(const TestField& u, const Vec2& x, KeyLemmaOrder order, const KernelSplit& split,
                              const GridOptions& options) {
  const double radius = std::hypot(x[0], x[1]);
  if (radius == 0.0) throw std::invalid_argument("key lemma: x must be nonzero");
  const Vec2 c = u.support_center();
  if (std::hypot(c[0], c[1]) - u.support_radius() >= radius / 4.0)
    throw std::invalid_argument("key lemma: support must meet |y| <= |x|/4");
  const PolarGrid grid = key_lemma_grid(radius, options);
  const CutoffProfile& rho = split.cutoff();
  const Mat23 d1 = split.green_derivative(x, 0), d2 = split.green_derivative(x, 1);
  std::array<double, 3> signed_zeroth{};
  std::array<double, 2> signed_first{};
  double unsigned_sum = 0.0, annulus = 0.0;
  const auto w = grid.weights();
  const auto rs = grid.radii();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec2 y = grid.point(i);
    const auto au = u.korn(y);
    const double norm_au = std::sqrt(au[0] * au[0] + au[1] * au[1] + au[2] * au[2]);
    const double t = rs[i] / radius;
    if (t >= 0.25 && t <= 0.5) annulus += w[i] * norm_au;
    const double cut = rho.value(t);
    if (cut == 0.0) continue;
    if (order == KeyLemmaOrder::Zeroth) {
      for (int c = 0; c < 3; ++c) signed_zeroth[c] += w[i] * cut * au[c];
      unsigned_sum += w[i] * cut * norm_au;
    } else {
      const auto v = mat_vec(combine(Mat23{}, y[0], d1), au);
      const auto v2 = mat_vec(combine(Mat23{}, y[1], d2), au);
      const double e0 = v[0] + v2[0], e1 = v[1] + v2[1];
      signed_first[0] += w[i] * cut * e0;
      signed_first[1] += w[i] * cut * e1;
      unsigned_sum += w[i] * cut * std::hypot(e0, e1);
    }
  }
  if (annulus < 1e-14) throw std::domain_error("key lemma: A(D)u vanishes on the annulus");
  KeyLemmaSides s;
  s.unsigned_lhs = unsigned_sum;
  if (order == KeyLemmaOrder::Zeroth) {
    s.lhs = std::sqrt(signed_zeroth[0] * signed_zeroth[0] + signed_zeroth[1] * signed_zeroth[1] +
                      signed_zeroth[2] * signed_zeroth[2]);
    s.rhs = annulus;
  } else {
    s.lhs = std::hypot(signed_first[0], signed_first[1]);
    s.rhs = annulus / radius;
  }
  return s;
}

CheckReport check_key_lemma(const TestField& u, KeyLemmaOrder order, const std::vector<double>& radii,
                            const GridOptions& options, double tolerance) {
  if (radii.empty()) throw std::invalid_argument("key lemma: no radii");
  Stopwatch sw;
  const KernelSplit split(greens::greens_preset("dsym-r2").g);
  CheckReport r;
  r.name = "key-lemma-" + to_string(order);
  r.field = u.label();
  r.threshold = tolerance;
  // A left side at rounding level relative to the unsigned integral is an
  // exact cancellation (symmetric fields) and counts as ratio zero.
  std::vector<double> effective;
  std::size_t cancelled = 0;
  for (double radius : radii) {
    const TestField scaled = u.dilated(radius / radii.front());
    const auto s = key_lemma_sides(scaled, {radius, 0.0}, order, split, options);
    r.values.push_back(s.lhs / s.rhs);
    const bool zero = s.lhs <= 1e-12 * s.unsigned_lhs;
    cancelled += zero ? 1 : 0;
    effective.push_back(zero ? 0.0 : r.values.back());
    r.params["lhs@" + std::to_string(static_cast<int>(radius))] = s.lhs;
    r.params["rhs@" + std::to_string(static_cast<int>(radius))] = s.rhs;
  }
  const auto [lo, hi] = std::minmax_element(effective.begin(), effective.end());
  r.value = *hi;
  const double spread = *hi == 0.0 ? 0.0 : (*hi - *lo) / *hi;
  if (cancelled == radii.size()) r.note = "left side cancels to rounding at every scale";
  r.params["spread"] = spread;
  r.params["rho_sup_d1"] = split.cutoff().sup_d1();
  r.params["rho_sup_d2"] = split.cutoff().sup_d2();
  bool finite = true;
  for (double v : r.values) finite = finite && std::isfinite(v);
  r.passed = finite && spread < tolerance;
  r.elapsed_ms = sw.ms();
  return r;
}

CheckReport check_key_lemma_cancellation(const TestField& u, const Vec2& x, KeyLemmaOrder order,
                                         const GridOptions& options, double tolerance) {
  Stopwatch sw;
  const double radius = std::hypot(x[0], x[1]);
  const Vec2 c = u.support_center();
  if (std::hypot(c[0], c[1]) + u.support_radius() > radius / 4.0)
    throw std::invalid_argument("cancellation check: support must lie in |y| <= |x|/4");
  const KernelSplit split(greens::greens_preset("dsym-r2").g);
  // The annulus is empty here, so integrate the inner disk directly.
  const PolarGrid grid({0.0, 0.0}, radius / 4.0, options);
  const Mat23 d1 = split.green_derivative(x, 0), d2 = split.green_derivative(x, 1);
  std::array<double, 3> signed_sum{};
  double unsigned_sum = 0.0;
  const auto w = grid.weights();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec2 y = grid.point(i);
    const auto au = u.korn(y);
    if (order == KeyLemmaOrder::Zeroth) {
      for (int k = 0; k < 3; ++k) signed_sum[k] += w[i] * au[k];
      unsigned_sum += w[i] * std::sqrt(au[0] * au[0] + au[1] * au[1] + au[2] * au[2]);
    } else {
      const auto v = mat_vec(combine(combine(Mat23{}, y[0], d1), y[1], d2), au);
      signed_sum[0] += w[i] * v[0];
      signed_sum[1] += w[i] * v[1];
      unsigned_sum += w[i] * std::hypot(v[0], v[1]);
    }
  }
  CheckReport r;
  r.name = "key-lemma-" + to_string(order) + "-cancellation";
  r.field = u.label();
  r.threshold = tolerance;
  const double lhs =
      std::sqrt(signed_sum[0] * signed_sum[0] + signed_sum[1] * signed_sum[1] + signed_sum[2] * signed_sum[2]);
  r.value = lhs / unsigned_sum;
  r.values = {r.value};
  r.params["lhs"] = lhs;
  r.params["unsigned"] = unsigned_sum;
  r.params["x"] = radius;
  r.passed = std::isfinite(r.value) && r.value < tolerance;
  r.elapsed_ms = sw.ms();
  return r;
}

double remainder_sup(const KernelSplit& split, std::size_t samples, std::uint64_t seed, double t_lo, double t_hi) {
  if (!(t_lo >= 0.0 && t_hi > t_lo && t_hi <= 0.5)) throw std::invalid_argument("remainder: need 0 <= t_lo < t_hi <= 1/2");
  std::mt19937_64 rng(seed);
  double sup = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double rx = std::exp(std::log(0.1) + std::log(100.0) * uniform01(rng));
    const double ax = 2.0 * std::numbers::pi * uniform01(rng);
    // t ∈ (t_lo, t_hi], never zero.
    const double t = t_hi - (t_hi - t_lo) * uniform01(rng);
    const double ay = 2.0 * std::numbers::pi * uniform01(rng);
    const Vec2 x{rx * std::cos(ax), rx * std::sin(ax)};
    const double ry = t * rx;
    const Vec2 y{ry * std::cos(ay), ry * std::sin(ay)};
    sup = std::max(sup, frobenius(split.k(x, y)) * rx * rx * rx / (ry * ry));
  }
  return sup;
}

CheckReport check_remainder_bound(const KernelSplit& split, std::size_t samples, std::uint64_t seed, double tolerance,
                                  double t_lo, double t_hi) {
  Stopwatch sw;
  CheckReport r;
  r.name = "remainder-bound";
  r.params = {{"samples", static_cast<double>(samples)}, {"seed", static_cast<double>(seed)}, {"t_lo", t_lo},
              {"t_hi", t_hi}};
  const double base = remainder_sup(split, samples, seed, t_lo, t_hi);
  const double more = remainder_sup(split, 4 * samples, seed, t_lo, t_hi);
  r.values = {base, more};
  r.value = more;
  r.threshold = tolerance;
  const double change = std::abs(more / base - 1.0);
  r.params["change"] = change;
  r.passed = std::isfinite(base) && std::isfinite(more) && change < tolerance;
  r.elapsed_ms = sw.ms();
  return r;
}

double reproduction_error(const TestField& u, const KernelSplit& split, const GridOptions& options) {
  const Vec2 c = u.support_center();
  const double radius = u.support_radius();
  double max_u = std::hypot(u.value(c)[0], u.value(c)[1]);
  double max_err = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      // Probes on a slightly skewed lattice inside the support.
      const Vec2 x{c[0] + radius * (-0.6 + 0.3 * i + 0.013 * j), c[1] + radius * (-0.6 + 0.3 * j - 0.011 * i)};
      const Vec2 ux = u.value(x);
      max_u = std::max(max_u, std::hypot(ux[0], ux[1]));
      const double outer = std::hypot(x[0] - c[0], x[1] - c[1]) + radius;
      const PolarGrid grid(x, outer, options);
      double rep[2] = {0.0, 0.0};
      const auto w = grid.weights();
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const Vec2 y = grid.point(k);
        const auto au = u.korn(y);
        if (au[0] == 0.0 && au[1] == 0.0 && au[2] == 0.0) continue;
        const auto v = mat_vec(split.green({x[0] - y[0], x[1] - y[1]}), au);
        rep[0] += w[k] * v[0];
        rep[1] += w[k] * v[1];
      }
      max_err = std::max(max_err, std::hypot(ux[0] - rep[0], ux[1] - rep[1]));
    }
  return max_err / max_u;
}

CheckReport check_reproduction(const TestField& u, const KernelSplit& split, const GridOptions& options, int levels,
                               double tolerance, double reduction) {
  if (levels < 2) throw std::invalid_argument("reproduction check needs at least two levels");
  Stopwatch sw;
  CheckReport r;
  r.name = "reproduction";
  r.field = u.label();
  r.threshold = tolerance;
  GridOptions o = options;
  for (int level = 0; level < levels; ++level, ++o.level) r.values.push_back(reproduction_error(u, split, o));
  r.value = r.values.front();
  bool decreasing = true;
  for (std::size_t i = 1; i < r.values.size(); ++i) {
    const double factor = r.values[i - 1] / r.values[i];
    r.params["reduction" + std::to_string(i)] = factor;
    decreasing = decreasing && factor >= reduction;
  }
  r.params["reduction_threshold"] = reduction;
  r.passed = r.value < tolerance && decreasing;
  r.elapsed_ms = sw.ms();
  return r;
}

double vanishing_moment(const TestField& u, const GridOptions& options) {
  const PolarGrid grid = grid_for(u, options);
  std::array<double, 3> sum{};
  double total = 0.0;
  const auto w = grid.weights();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto au = u.korn(grid.point(i));
    for (int c = 0; c < 3; ++c) sum[c] += w[i] * au[c];
    total += w[i] * std::sqrt(au[0] * au[0] + au[1] * au[1] + au[2] * au[2]);
  }
  return std::max({std::abs(sum[0]), std::abs(sum[1]), std::abs(sum[2])}) / total;
}

double kernel_split_consistency(const KernelSplit& split, std::size_t pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (std::size_t s = 0; s < pairs; ++s) {
    const Vec2 x{8.0 * uniform01(rng) - 4.0, 8.0 * uniform01(rng) - 4.0};
    const Vec2 y{8.0 * uniform01(rng) - 4.0, 8.0 * uniform01(rng) - 4.0};
    if (std::hypot(x[0], x[1]) < 1e-3 || std::hypot(x[0] - y[0], x[1] - y[1]) < 1e-3) continue;
    const Mat23 g = split.green({x[0] - y[0], x[1] - y[1]});
    const Mat23 sum = combine(split.h(x, y), 1.0, split.k(x, y));
    worst = std::max(worst, frobenius(combine(sum, -1.0, g)) / frobenius(g));
  }
  return worst;
}

double derivative_check(const TestField& u, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Vec2 c = u.support_center();
  const double radius = u.support_radius();
  // Scale of the Jacobian over the support, for points where it is small.
  double scale = 0.0;
  for (int i = 0; i < 400; ++i) {
    const double rr = radius * std::sqrt((i % 20 + 0.5) / 20.0), th = 2.0 * std::numbers::pi * (i / 20) / 20.0;
    for (double v : u.jacobian({c[0] + rr * std::cos(th), c[1] + rr * std::sin(th)})) scale = std::max(scale, std::abs(v));
  }
  const double h = 1e-4 * radius;
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double rr = radius * std::sqrt(uniform01(rng)), th = 2.0 * std::numbers::pi * uniform01(rng);
    const Vec2 p{c[0] + rr * std::cos(th), c[1] + rr * std::sin(th)};
    const Jacobian j = u.jacobian(p);
    for (int axis = 0; axis < 2; ++axis) {
      // Fourth-order central stencil.
      auto at = [&](double k) {
        Vec2 q = p;
        q[axis] += k * h;
        return u.value(q);
      };
      const Vec2 p1 = at(1), m1 = at(-1), p2 = at(2), m2 = at(-2);
      for (int comp = 0; comp < 2; ++comp) {
        const double fd = (8.0 * (p1[comp] - m1[comp]) - (p2[comp] - m2[comp])) / (12.0 * h);
        const double exact = j[2 * comp + axis];
        worst = std::max(worst, std::abs(fd - exact) / std::max(std::abs(exact), 1e-3 * scale));
      }
    }
  }
  return worst;
}

std::vector<TestField> ibp_battery() {
  std::vector<TestField> out;
  FieldSpec s;
  out.push_back(make_test_field(s));
  s.radius = 2.0;
  s.direction = {0.6, 0.8};
  out.push_back(make_test_field(s));
  s = {};
  s.family = FieldFamily::OscillatoryBump;
  out.push_back(make_test_field(s));
  s.wave = {1.0, 3.0};
  s.radius = 1.5;
  out.push_back(make_test_field(s));
  s = {};
  s.family = FieldFamily::RigidPerturbation;
  out.push_back(make_test_field(s));
  s = {};
  s.family = FieldFamily::TranslatedBump;
  s.center = {10.0, 0.0};
  out.push_back(make_test_field(s));
  s.center = {0.5, 0.3};
  s.direction = {0.0, 1.0};
  out.push_back(make_test_field(s));
  s.center = {0.0, -3.0};
  s.radius = 2.0;
  out.push_back(make_test_field(s));
  s = {};
  s.family = FieldFamily::RandomMixture;
  for (std::uint64_t seed : {1, 2, 3, 4}) {
    s.seed = seed;
    out.push_back(make_test_field(s));
  }
  return out;
}

std::vector<TestField> theorem_battery() {
  std::vector<TestField> out;
  FieldSpec s;
  out.push_back(make_test_field(s));
  s.family = FieldFamily::OscillatoryBump;
  out.push_back(make_test_field(s));
  s = {};
  s.family = FieldFamily::RigidPerturbation;
  out.push_back(make_test_field(s));
  s = {};
  s.family = FieldFamily::TranslatedBump;
  s.center = {2.0, 1.0};
  out.push_back(make_test_field(s));
  s = {};
  s.family = FieldFamily::RandomMixture;
  s.seed = 7;
  out.push_back(make_test_field(s));
  return out;
}

std::vector<TestField> key_lemma_battery() {
  std::vector<TestField> out;
  FieldSpec s;
  s.radius = 3.0;
  out.push_back(make_test_field(s));
  s.family = FieldFamily::OscillatoryBump;
  s.wave = {1.0, 0.5};
  out.push_back(make_test_field(s));
  s = {};
  s.family = FieldFamily::RigidPerturbation;
  s.radius = 3.0;
  out.push_back(make_test_field(s));
  s = {};
  s.family = FieldFamily::TranslatedBump;
  s.center = {1.0, 0.5};
  s.radius = 2.0;
  out.push_back(make_test_field(s));
  s = {};
  s.family = FieldFamily::RandomMixture;
  s.seed = 7;
  out.push_back(make_test_field(s).dilated(3.0));
  return out;
}

std::vector<SweepEntry> theorem_sweep(const GridOptions& options, const std::vector<double>& as,
                                      const std::vector<double>& qs) {
  const auto battery = theorem_battery();
  std::vector<TheoremContext> contexts;
  contexts.reserve(battery.size());
  for (const auto& u : battery) contexts.emplace_back(u, options);
  std::vector<SweepEntry> out;
  for (double a : as)
    for (double q : qs) {
      SweepEntry e;
      e.params = InequalityParams::from(q, a);
      e.passed = true;
      for (std::size_t i = 0; i < battery.size(); ++i) {
        e.reports.push_back(theorem_report(battery[i], contexts[i], e.params, 0.05, 0.01));
        e.sup_ratio = std::max(e.sup_ratio, e.reports.back().value);
        e.passed = e.passed && e.reports.back().passed;
      }
      out.push_back(std::move(e));
    }
  return out;
}

}  // namespace korncert::numverify
