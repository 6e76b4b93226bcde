// Compiled with -mavx2 -mfma; only called after the runtime CPU check.
#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "korncert/simd.hpp"

namespace korncert::simd::avx2 {

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i + 4), _mm256_loadu_pd(b.data() + i + 4), s1);
  }
  for (; i + 4 <= n; i += 4) s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), s0);
  s0 = _mm256_add_pd(s0, s1);
  const __m128d lo = _mm256_castpd256_pd128(s0);
  const __m128d hi = _mm256_extractf128_pd(s0, 1);
  __m128d pair = _mm_add_pd(lo, hi);
  pair = _mm_add_sd(pair, _mm_unpackhi_pd(pair, pair));
  double s = _mm_cvtsd_f64(pair);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void add_squares(std::span<double> acc, std::span<const double> v) {
  const std::size_t n = acc.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(v.data() + i);
    _mm256_storeu_pd(acc.data() + i, _mm256_fmadd_pd(x, x, _mm256_loadu_pd(acc.data() + i)));
  }
  for (; i < n; ++i) acc[i] += v[i] * v[i];
}

void sqrt_inplace(std::span<double> v) {
  const std::size_t n = v.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(v.data() + i, _mm256_sqrt_pd(_mm256_loadu_pd(v.data() + i)));
  for (; i < n; ++i) v[i] = std::sqrt(v[i]);
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  const std::size_t n = y.size();
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y.data() + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(y.data() + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace korncert::simd::avx2
