#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "doctest.h"
#include "korncert/simd.hpp"

using namespace korncert;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

// Lengths straddling the 4-wide vector body and its scalar tail.
constexpr std::size_t kLengths[] = {0, 1, 3, 4, 5, 7, 8, 9, 16, 31, 64, 1001};

}  // namespace

TEST_CASE("active ISA honours the override") {
  const char* env = std::getenv("KORNCERT_SIMD");
  if (env && std::string_view(env) == "scalar") CHECK(simd::active_isa() == simd::Isa::Scalar);
  MESSAGE("active isa: " << simd::to_string(simd::active_isa()));
}

TEST_CASE("dispatched kernels agree with the scalar reference") {
  std::mt19937_64 rng(5);
  for (std::size_t n : kLengths) {
    const auto a = random_vector(rng, n), b = random_vector(rng, n);
    double bound = 0.0;
    for (std::size_t i = 0; i < n; ++i) bound += std::abs(a[i] * b[i]);
    CHECK(std::abs(simd::dot(a, b) - simd::scalar::dot(a, b)) <= 1e-14 * (bound + 1.0));

    auto acc1 = random_vector(rng, n);
    for (auto& x : acc1) x = std::abs(x);
    auto acc2 = acc1;
    simd::add_squares(acc1, a);
    simd::scalar::add_squares(acc2, a);
    for (std::size_t i = 0; i < n; ++i) CHECK(acc1[i] == doctest::Approx(acc2[i]).epsilon(1e-15));

    simd::sqrt_inplace(acc1);
    simd::scalar::sqrt_inplace(acc2);
    // sqrt is correctly rounded in both ISAs.
    for (std::size_t i = 0; i < n; ++i) CHECK(acc1[i] == doctest::Approx(acc2[i]).epsilon(1e-15));

    auto y1 = random_vector(rng, n);
    auto y2 = y1;
    simd::axpy(0.75, a, y1);
    simd::scalar::axpy(0.75, a, y2);
    for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-15));
  }
}

#ifdef KORNCERT_HAVE_AVX2_KERNELS
TEST_CASE("AVX2 kernels match scalar kernels when the CPU supports them") {
  __builtin_cpu_init();
  if (!(__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))) {
    MESSAGE("AVX2/FMA unavailable; skipped");
    return;
  }
  std::mt19937_64 rng(9);
  for (std::size_t n : kLengths) {
    const auto a = random_vector(rng, n), b = random_vector(rng, n);
    double bound = 0.0;
    for (std::size_t i = 0; i < n; ++i) bound += std::abs(a[i] * b[i]);
    CHECK(std::abs(simd::avx2::dot(a, b) - simd::scalar::dot(a, b)) <= 1e-14 * (bound + 1.0));

    std::vector<double> s1(n, 1.0), s2(n, 1.0);
    simd::avx2::add_squares(s1, a);
    simd::scalar::add_squares(s2, a);
    simd::avx2::sqrt_inplace(s1);
    simd::scalar::sqrt_inplace(s2);
    for (std::size_t i = 0; i < n; ++i) CHECK(s1[i] == doctest::Approx(s2[i]).epsilon(1e-15));

    auto y1 = b, y2 = b;
    simd::avx2::axpy(-1.5, a, y1);
    simd::scalar::axpy(-1.5, a, y2);
    for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-15));
  }
}
#endif

TEST_CASE("integer-valued inputs give identical dot products") {
  // Exact in double, so summation order cannot matter.
  std::vector<double> a(37), b(37);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = static_cast<double>(i % 7) - 3.0;
    b[i] = static_cast<double>(i % 5) + 1.0;
  }
  CHECK(simd::dot(a, b) == simd::scalar::dot(a, b));
}

TEST_CASE("length mismatches are rejected") {
  std::vector<double> a(4), b(5);
  CHECK_THROWS_AS(simd::dot(a, b), std::invalid_argument);
  CHECK_THROWS_AS(simd::add_squares(a, b), std::invalid_argument);
  CHECK_THROWS_AS(simd::axpy(1.0, b, a), std::invalid_argument);
}
