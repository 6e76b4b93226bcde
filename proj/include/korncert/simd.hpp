#pragma once

#include <span>
#include <string>

namespace korncert::simd {

enum class Isa { Scalar, Avx2 };

/// Selected once per process: AVX2+FMA when the CPU has them, unless
/// KORNCERT_SIMD=scalar is set.
Isa active_isa();
std::string to_string(Isa isa);

/// Σ a_i b_i. Summation order differs between ISAs, so results agree to
/// rounding only.
double dot(std::span<const double> a, std::span<const double> b);
/// acc_i += v_i²
void add_squares(std::span<double> acc, std::span<const double> v);
void sqrt_inplace(std::span<double> v);
/// y_i += a·x_i
void axpy(double a, std::span<const double> x, std::span<double> y);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
void add_squares(std::span<double> acc, std::span<const double> v);
void sqrt_inplace(std::span<double> v);
void axpy(double a, std::span<const double> x, std::span<double> y);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define KORNCERT_HAVE_AVX2_KERNELS 1
namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
void add_squares(std::span<double> acc, std::span<const double> v);
void sqrt_inplace(std::span<double> v);
void axpy(double a, std::span<const double> x, std::span<double> y);
}  // namespace avx2
#endif

}  // namespace korncert::simd
