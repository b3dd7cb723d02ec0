#include <algorithm>
#include <cmath>

#include "kernels_impl.hpp"

namespace sisz::simd::scalar {

void parallelepiped_cells(std::span<const double> inverse, std::size_t dim, std::span<const double> points,
                          std::size_t count, std::int64_t modulus, std::span<std::int64_t> cells) {
  const double q = static_cast<double>(modulus);
  for (std::size_t p = 0; p < count; ++p) {
    double cell = 0.0;
    for (std::size_t i = dim; i-- > 0;) {
      double kappa = 0.0;
      for (std::size_t j = 0; j < dim; ++j) kappa = kappa + inverse[i * dim + j] * points[j * count + p];
      const double f = kappa - std::floor(kappa);
      const double a = std::min(std::floor(q * f), q - 1.0);
      cell = cell * q + a;
    }
    cells[p] = static_cast<std::int64_t>(cell);
  }
}

void gaussian_weights(std::span<const double> squared, double scale, std::span<double> out) {
  for (std::size_t p = 0; p < squared.size(); ++p) out[p] = std::exp(-scale * squared[p]);
}

double gaussian_mass(std::span<const double> squared, double scale) {
  double sum = 0.0;
  for (double s : squared) sum += std::exp(-scale * s);
  return sum;
}

void squared_norms(std::span<const double> points, std::size_t dim, std::size_t count, std::span<double> out) {
  for (std::size_t p = 0; p < count; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double x = points[i * count + p];
      s = s + x * x;
    }
    out[p] = s;
  }
}

}  // namespace sisz::simd::scalar
