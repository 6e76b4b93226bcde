#include "korncert/numverify/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace korncert::numverify {

namespace {

struct BumpValue {
  double phi = 0.0;
  Vec2 grad{0.0, 0.0};
};

BumpValue bump(const BumpTerm& t, const Vec2& x) {
  const double dx = x[0] - t.center[0], dy = x[1] - t.center[1];
  const double r2 = t.radius * t.radius;
  const double s = (dx * dx + dy * dy) / r2;
  if (s >= 1.0) return {};
  const double inv = 1.0 / (s - 1.0);
  const double phi = std::exp(inv);
  const double g = -phi * inv * inv * 2.0 / r2;
  return {phi, {g * dx, g * dy}};
}

void add_term(const BumpTerm& t, const Vec2& x, Vec2* value, Jacobian* jac) {
  const BumpValue b = bump(t, x);
  if (b.phi == 0.0) return;
  Vec2 m{};
  std::array<double, 4> dm{};
  switch (t.multiplier) {
    case BumpTerm::Multiplier::Constant:
      m = t.vector;
      break;
    case BumpTerm::Multiplier::Oscillatory: {
      const double phase = t.vector[0] * x[0] + t.vector[1] * x[1];
      const double c = std::cos(phase), s = std::sin(phase);
      m = {c, s};
      dm = {-s * t.vector[0], -s * t.vector[1], c * t.vector[0], c * t.vector[1]};
      break;
    }
    case BumpTerm::Multiplier::Rotation:
      m = {-(x[1] - t.center[1]), x[0] - t.center[0]};
      dm = {0.0, -1.0, 1.0, 0.0};
      break;
  }
  if (value) {
    (*value)[0] += t.weight * b.phi * m[0];
    (*value)[1] += t.weight * b.phi * m[1];
  }
  if (jac)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) (*jac)[2 * i + j] += t.weight * (b.grad[j] * m[i] + b.phi * dm[2 * i + j]);
}

std::string format_vec(const Vec2& v) {
  std::ostringstream os;
  os << "(" << v[0] << "," << v[1] << ")";
  return os.str();
}

}  // namespace

std::string to_string(FieldFamily f) {
  switch (f) {
    case FieldFamily::RadialBump:
      return "radial-bump";
    case FieldFamily::OscillatoryBump:
      return "oscillatory-bump";
    case FieldFamily::RigidPerturbation:
      return "rigid-perturbation";
    case FieldFamily::TranslatedBump:
      return "translated-bump";
    case FieldFamily::RandomMixture:
      return "random-mixture";
  }
  return "?";
}

FieldFamily parse_field_family(const std::string& name) {
  for (auto f : {FieldFamily::RadialBump, FieldFamily::OscillatoryBump, FieldFamily::RigidPerturbation,
                 FieldFamily::TranslatedBump, FieldFamily::RandomMixture})
    if (to_string(f) == name) return f;
  throw std::invalid_argument("unknown field family: " + name);
}

TestField::TestField(std::string label, std::vector<BumpTerm> terms) : label_(std::move(label)), terms_(std::move(terms)) {}

Vec2 TestField::to_reference(const Vec2& x) const {
  // x' = Qᵀ x / s
  return {(cos_ * x[0] + sin_ * x[1]) / scale_, (-sin_ * x[0] + cos_ * x[1]) / scale_};
}

Vec2 TestField::value(const Vec2& x) const {
  const Vec2 xr = to_reference(x);
  Vec2 v{0.0, 0.0};
  for (const auto& t : terms_) add_term(t, xr, &v, nullptr);
  return {cos_ * v[0] - sin_ * v[1], sin_ * v[0] + cos_ * v[1]};
}

Jacobian TestField::jacobian(const Vec2& x) const {
  const Vec2 xr = to_reference(x);
  Jacobian j{};
  for (const auto& t : terms_) add_term(t, xr, nullptr, &j);
  if (sin_ == 0.0 && scale_ == 1.0) return j;
  // Q J Qᵀ / s
  const double q[4] = {cos_, -sin_, sin_, cos_};
  Jacobian qj{}, out{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) qj[2 * r + c] = q[2 * r] * j[c] + q[2 * r + 1] * j[2 + c];
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out[2 * r + c] = (qj[2 * r] * q[2 * c] + qj[2 * r + 1] * q[2 * c + 1]) / scale_;
  return out;
}

std::array<double, 3> TestField::korn(const Vec2& x) const {
  const Jacobian j = jacobian(x);
  return {j[0], j[1] + j[2], j[3]};
}

double TestField::dsym_norm(const Vec2& x) const {
  const Jacobian j = jacobian(x);
  const double off = 0.5 * (j[1] + j[2]);
  return std::sqrt(j[0] * j[0] + 2.0 * off * off + j[3] * j[3]);
}

Vec2 TestField::support_center() const {
  if (terms_.empty()) return {0.0, 0.0};
  Vec2 c{0.0, 0.0};
  for (const auto& t : terms_) {
    c[0] += t.center[0] / static_cast<double>(terms_.size());
    c[1] += t.center[1] / static_cast<double>(terms_.size());
  }
  return {scale_ * (cos_ * c[0] - sin_ * c[1]), scale_ * (sin_ * c[0] + cos_ * c[1])};
}

double TestField::support_radius() const {
  if (terms_.empty()) return 0.0;
  Vec2 c{0.0, 0.0};
  for (const auto& t : terms_) {
    c[0] += t.center[0] / static_cast<double>(terms_.size());
    c[1] += t.center[1] / static_cast<double>(terms_.size());
  }
  double r = 0.0;
  for (const auto& t : terms_) r = std::max(r, std::hypot(t.center[0] - c[0], t.center[1] - c[1]) + t.radius);
  return scale_ * r;
}

TestField TestField::dilated(double s) const {
  if (!(s > 0.0)) throw std::invalid_argument("dilation factor must be positive");
  TestField out = *this;
  out.scale_ *= s;
  out.label_ += " dilated " + std::to_string(s);
  return out;
}

TestField TestField::rotated(double theta) const {
  TestField out = *this;
  const double c = std::cos(theta), s = std::sin(theta);
  out.cos_ = c * cos_ - s * sin_;
  out.sin_ = s * cos_ + c * sin_;
  out.label_ += " rotated " + std::to_string(theta);
  return out;
}

TestField make_test_field(const FieldSpec& spec) {
  if (!(spec.radius > 0.0)) throw std::invalid_argument("test field: support radius must be positive");
  using M = BumpTerm::Multiplier;
  const std::string r = " R=" + std::to_string(spec.radius);
  switch (spec.family) {
    case FieldFamily::RadialBump:
      return TestField("radial-bump" + r + " d=" + format_vec(spec.direction),
                       {{{0.0, 0.0}, spec.radius, M::Constant, spec.direction, 1.0}});
    case FieldFamily::OscillatoryBump:
      return TestField("oscillatory-bump" + r + " k=" + format_vec(spec.wave),
                       {{{0.0, 0.0}, spec.radius, M::Oscillatory, spec.wave, 1.0}});
    case FieldFamily::RigidPerturbation:
      return TestField("rigid-perturbation" + r, {{{0.0, 0.0}, spec.radius, M::Rotation, {0.0, 0.0}, 1.0}});
    case FieldFamily::TranslatedBump:
      return TestField("translated-bump" + r + " c=" + format_vec(spec.center) + " d=" + format_vec(spec.direction),
                       {{spec.center, spec.radius, M::Constant, spec.direction, 1.0}});
    case FieldFamily::RandomMixture: {
      if (spec.components < 1) throw std::invalid_argument("random mixture needs at least one component");
      std::mt19937_64 rng(spec.seed);
      auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
      };
      std::vector<BumpTerm> terms;
      for (int i = 0; i < spec.components; ++i) {
        BumpTerm t;
        const double rho = spec.radius * std::sqrt(uniform(0.0, 1.0));
        const double phi = uniform(0.0, 2.0 * std::numbers::pi);
        t.center = {rho * std::cos(phi), rho * std::sin(phi)};
        t.radius = spec.radius * uniform(0.6, 1.2);
        t.multiplier = static_cast<M>(rng() % 3);
        const double ang = uniform(0.0, 2.0 * std::numbers::pi);
        const double mag = t.multiplier == M::Oscillatory ? uniform(1.0, 4.0) : 1.0;
        t.vector = {mag * std::cos(ang), mag * std::sin(ang)};
        t.weight = uniform(0.5, 1.5);
        terms.push_back(t);
      }
      return TestField("random-mixture seed=" + std::to_string(spec.seed) + r, std::move(terms));
    }
  }
  throw std::invalid_argument("test field: unknown family");
}

std::array<double, 3> smoothstep(double t) {
  if (t <= 0.0) return {0.0, 0.0, 0.0};
  if (t >= 1.0) return {1.0, 0.0, 0.0};
  // ψ = 1/(1 + e^h) with h = 1/t - 1/(1-t).
  const double u = 1.0 - t;
  const double h = 1.0 / t - 1.0 / u;
  const double h1 = -1.0 / (t * t) - 1.0 / (u * u);
  const double h2 = 2.0 / (t * t * t) - 2.0 / (u * u * u);
  const double e = std::exp(-std::abs(h));
  const double psi = h > 0 ? e / (1.0 + e) : 1.0 / (1.0 + e);
  const double spread = e / ((1.0 + e) * (1.0 + e));  // ψ(1 - ψ)
  const double d1 = -spread * h1;
  const double d2 = -d1 * (1.0 - 2.0 * psi) * h1 - spread * h2;
  return {psi, d1, d2};
}

CutoffProfile::CutoffProfile() {
  for (int i = 1; i < 20000; ++i) {
    const double t = kPlateauEnd + (kSupportEnd - kPlateauEnd) * i / 20000.0;
    sup_d1_ = std::max(sup_d1_, std::abs(d1(t)));
    sup_d2_ = std::max(sup_d2_, std::abs(d2(t)));
  }
}

double CutoffProfile::value(double t) const { return 1.0 - smoothstep((t - kPlateauEnd) / (kSupportEnd - kPlateauEnd))[0]; }

double CutoffProfile::d1(double t) const {
  const double k = 1.0 / (kSupportEnd - kPlateauEnd);
  return -k * smoothstep((t - kPlateauEnd) * k)[1];
}

double CutoffProfile::d2(double t) const {
  const double k = 1.0 / (kSupportEnd - kPlateauEnd);
  return -k * k * smoothstep((t - kPlateauEnd) * k)[2];
}

}  // namespace korncert::numverify
