#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "korncert/simd.hpp"

namespace korncert::simd {

namespace {

Isa detect() {
  if (const char* env = std::getenv("KORNCERT_SIMD"); env && std::string_view(env) == "scalar") return Isa::Scalar;
#ifdef KORNCERT_HAVE_AVX2_KERNELS
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::Avx2;
#endif
  return Isa::Scalar;
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("simd kernel: length mismatch");
}

}  // namespace

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

std::string to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

double dot(std::span<const double> a, std::span<const double> b) {
  check_sizes(a.size(), b.size());
#ifdef KORNCERT_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::Avx2) return avx2::dot(a, b);
#endif
  return scalar::dot(a, b);
}

void add_squares(std::span<double> acc, std::span<const double> v) {
  check_sizes(acc.size(), v.size());
#ifdef KORNCERT_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::Avx2) return avx2::add_squares(acc, v);
#endif
  scalar::add_squares(acc, v);
}

void sqrt_inplace(std::span<double> v) {
#ifdef KORNCERT_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::Avx2) return avx2::sqrt_inplace(v);
#endif
  scalar::sqrt_inplace(v);
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  check_sizes(x.size(), y.size());
#ifdef KORNCERT_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::Avx2) return avx2::axpy(a, x, y);
#endif
  scalar::axpy(a, x, y);
}

}  // namespace korncert::simd
