#pragma once

// Batched floating-point kernels behind the Monte Carlo paths: reducing
// Gaussian samples to grid cells of P(B), and Gaussian weight sums over
// enumerated lattice points.
//
// Every kernel has a scalar reference and an AVX2 variant. The variant is
// chosen at runtime from the CPU's capabilities; SISZ_SIMD=scalar in the
// environment forces the reference path. Cell kernels are bit-identical
// across variants; the exp-based kernels agree to within a few ulps.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace sisz::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);
bool supported(Isa isa);
Isa best_isa();

struct KernelTable {
  Isa isa;

  // Points are structure-of-arrays: coordinate i of point p is
  // points[i * count + p]. inverse is the row-major dim x dim matrix B^{-1}.
  // cells[p] = sum_i a_i * modulus^i, a_i = floor(modulus * frac((B^{-1} x_p)_i))
  // clamped to modulus - 1.
  void (*parallelepiped_cells)(std::span<const double> inverse, std::size_t dim, std::span<const double> points,
                               std::size_t count, std::int64_t modulus, std::span<std::int64_t> cells);

  // out[p] = exp(-scale * squared[p])
  void (*gaussian_weights)(std::span<const double> squared, double scale, std::span<double> out);

  // sum_p exp(-scale * squared[p])
  double (*gaussian_mass)(std::span<const double> squared, double scale);

  // out[p] = |x_p|^2, same point layout as parallelepiped_cells.
  void (*squared_norms)(std::span<const double> points, std::size_t dim, std::size_t count, std::span<double> out);
};

// Throws std::runtime_error when isa is not supported on this CPU.
const KernelTable& kernels(Isa isa);
const KernelTable& active_kernels();

}  // namespace sisz::simd
