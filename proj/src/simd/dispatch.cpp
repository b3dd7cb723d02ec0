#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"
#include "sisz/simd/kernels.hpp"

namespace sisz::simd {

namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::parallelepiped_cells, &scalar::gaussian_weights,
                              &scalar::gaussian_mass, &scalar::squared_norms};

constexpr KernelTable kAvx2{Isa::avx2, &avx2::parallelepiped_cells, &avx2::gaussian_weights, &avx2::gaussian_mass,
                            &avx2::squared_norms};

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() {
  if (const char* forced = std::getenv("SISZ_SIMD"); forced != nullptr && std::string(forced) == "scalar")
    return Isa::scalar;
  return supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

const KernelTable& kernels(Isa isa) {
  if (!supported(isa)) throw std::runtime_error("SIMD variant not supported on this CPU: " + std::string(to_string(isa)));
  return isa == Isa::avx2 ? kAvx2 : kScalar;
}

const KernelTable& active_kernels() {
  static const KernelTable& table = kernels(best_isa());
  return table;
}

}  // namespace sisz::simd
