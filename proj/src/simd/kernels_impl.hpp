#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace sisz::simd {

namespace scalar {
void parallelepiped_cells(std::span<const double> inverse, std::size_t dim, std::span<const double> points,
                          std::size_t count, std::int64_t modulus, std::span<std::int64_t> cells);
void gaussian_weights(std::span<const double> squared, double scale, std::span<double> out);
double gaussian_mass(std::span<const double> squared, double scale);
void squared_norms(std::span<const double> points, std::size_t dim, std::size_t count, std::span<double> out);
}  // namespace scalar

namespace avx2 {
void parallelepiped_cells(std::span<const double> inverse, std::size_t dim, std::span<const double> points,
                          std::size_t count, std::int64_t modulus, std::span<std::int64_t> cells);
void gaussian_weights(std::span<const double> squared, double scale, std::span<double> out);
double gaussian_mass(std::span<const double> squared, double scale);
void squared_norms(std::span<const double> points, std::size_t dim, std::size_t count, std::span<double> out);
}  // namespace avx2

}  // namespace sisz::simd
