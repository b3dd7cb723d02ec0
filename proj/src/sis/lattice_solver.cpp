#include <algorithm>
#include <vector>

#include "sisz/enumeration.hpp"
#include "sisz/errors.hpp"
#include "sisz/lattice.hpp"
#include "sisz/sis.hpp"

namespace sisz::sis {

SolveResult solve_sis_lattice(const SisInstance& inst, const LatticeSolverOptions& options) {
  const std::int64_t beta = inst.beta();
  if (beta < 1) throw DomainError("lattice solver: beta must be >= 1");
  const std::size_t m = inst.m();
  if (m > options.max_m) throw CapabilityError("lattice solver: m exceeds the enumeration limit");

  IntegerMatrix kernel(1, 1);
  try {
    kernel = lattice::integer_kernel_basis(inst.matrix());
  } catch (const DomainError&) {
    throw InternalError("lattice solver: trivial kernel with m > n");
  }
  const IntegerMatrix reduced = lattice::lll_reduce(kernel);
  const std::size_t k = reduced.cols();

  SolveResult result;
  auto accept = [&](IntVec z) {
    result.solution = SisSolution{sign_canonical(std::move(z)), Solver::kernel_lll_enum};
  };

  // Reduced basis vectors first, shortest (then lexicographically smallest) first.
  std::vector<IntVec> cols = reduced.columns();
  std::sort(cols.begin(), cols.end(), [](const IntVec& a, const IntVec& b) {
    const Integer na = squared_norm(a), nb = squared_norm(b);
    if (na != nb) return na < nb;
    return a < b;
  });
  for (const IntVec& c : cols) {
    if (max_abs(c) <= beta) {
      accept(c);
      return result;
    }
  }

  std::vector<std::int64_t> basis(m * k);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < k; ++c) basis[r * k + c] = to_int64(reduced(r, c));

  const lattice::Enumerator enumerator(reduced);
  const double radius2 = static_cast<double>(m) * static_cast<double>(beta) * static_cast<double>(beta);
  std::vector<std::int64_t> z(m);
  const auto stats = enumerator.run(
      radius2,
      [&](std::span<const std::int64_t> coeffs, double) {
        bool zero = true;
        for (std::size_t r = 0; r < m; ++r) {
          std::int64_t v = 0;
          for (std::size_t c = 0; c < k; ++c) v += basis[r * k + c] * coeffs[c];
          if (v > beta || v < -beta) return true;
          z[r] = v;
          zero = zero && v == 0;
        }
        if (zero) return true;
        IntVec out(m);
        for (std::size_t r = 0; r < m; ++r) out[r] = static_cast<long>(z[r]);
        accept(std::move(out));
        return false;
      },
      options.node_budget);
  result.work = stats.nodes;
  result.exhaustive = !result.solution && stats.complete();
  return result;
}

}  // namespace sisz::sis
