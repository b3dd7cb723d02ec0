#include <algorithm>
#include <cmath>
#include <vector>

#include "sisz/errors.hpp"
#include "sisz/sis.hpp"

namespace sisz::sis {

std::uint64_t scan_canonical_box(const IntegerMatrix& a_matrix, std::int64_t beta, const BoxVisitor& visit) {
  if (beta < 1) throw DomainError("box scan: beta must be >= 1");
  const std::size_t n = a_matrix.rows();
  const std::size_t m = a_matrix.cols();
  std::vector<std::int64_t> a(n * m);  // column-major for incremental updates
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t r = 0; r < n; ++r) a[c * n + r] = to_int64(a_matrix(r, c));

  std::vector<std::int64_t> z(m);
  std::vector<std::int64_t> az(n);
  auto add_column = [&](std::size_t c, std::int64_t k) {
    for (std::size_t r = 0; r < n; ++r) az[r] += k * a[c * n + r];
  };

  // Canonical vectors in lexicographic order: leading zeros, then the first
  // nonzero entry z_p in 1..beta, then a free tail. More leading zeros sort first.
  std::uint64_t visited = 0;
  for (std::size_t p = m; p-- > 0;) {
    std::fill(z.begin(), z.end(), 0);
    std::fill(az.begin(), az.end(), 0);
    for (std::size_t c = p + 1; c < m; ++c) {
      z[c] = -beta;
      add_column(c, -beta);
    }
    for (std::int64_t lead = 1; lead <= beta; ++lead) {
      z[p] = lead;
      add_column(p, 1);
      while (true) {
        ++visited;
        if (!visit(z, az)) return visited;
        // Odometer over the tail, last coordinate fastest. A full wrap leaves
        // the tail at -beta, ready for the next leading value.
        bool advanced = false;
        for (std::size_t c = m; c-- > p + 1;) {
          if (z[c] < beta) {
            ++z[c];
            add_column(c, 1);
            advanced = true;
            break;
          }
          z[c] = -beta;
          add_column(c, -2 * beta);
        }
        if (!advanced) break;
      }
    }
  }
  return visited;
}

SolveResult solve_sis_bruteforce(const SisInstance& inst, const BruteForceOptions& options) {
  const std::int64_t beta = inst.beta();
  if (beta < 1) throw DomainError("brute force: beta must be >= 1");
  const double space = std::pow(static_cast<double>(2 * beta + 1), static_cast<double>(inst.m()));
  if (space > static_cast<double>(options.budget))
    throw CapabilityError("brute force: (2 beta + 1)^m exceeds the budget");

  SolveResult result;
  result.exhaustive = true;
  result.work = scan_canonical_box(inst.matrix(), beta, [&](auto z, auto az) {
    for (std::int64_t v : az)
      if (v != 0) return true;
    IntVec out(z.size());
    for (std::size_t c = 0; c < z.size(); ++c) out[c] = static_cast<long>(z[c]);
    result.solution = SisSolution{std::move(out), Solver::brute_force};
    return false;
  });
  return result;
}

}  // namespace sisz::sis
