#include <cmath>
#include <cstddef>

#include "korncert/simd.hpp"

namespace korncert::simd::scalar {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void add_squares(std::span<double> acc, std::span<const double> v) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i] * v[i];
}

void sqrt_inplace(std::span<double> v) {
  for (auto& x : v) x = std::sqrt(x);
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

}  // namespace korncert::simd::scalar
