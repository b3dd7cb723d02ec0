#include <cmath>

#include "sisz/reduction.hpp"

namespace sisz::reduction {

EtaSchedule eta_schedule(const lattice::LatticeBasis& basis) {
  const std::size_t n = basis.dim();
  const IntegerMatrix reduced = lattice::lll_reduce(basis.matrix());
  EtaSchedule s;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer norm2 = squared_norm(reduced.column(i));
    if (norm2 > s.r_squared) s.r_squared = norm2;
  }
  s.r = std::sqrt(s.r_squared.get_d());
  const double log2n = std::log2(static_cast<double>(n));
  s.eta_hat = n == 1 ? 2 * s.r : 2 * s.r * log2n;
  s.alpha = std::ldexp(static_cast<double>(n * n), static_cast<int>(n));
  // ceil(log2(2^n n^2)) = n + ceil(log2(n^2)), exact on integers.
  std::size_t ceil_log = 0;
  while ((std::size_t{1} << ceil_log) < n * n) ++ceil_log;
  s.k = n + ceil_log + 2;
  for (std::size_t k = 0; k <= s.k; ++k) s.candidates.push_back(std::ldexp(s.eta_hat, -static_cast<int>(k)));
  return s;
}

gaussian::EtaTilde select_eta(const EtaSchedule& schedule, const gaussian::SmoothingEstimate& estimate) {
  gaussian::EtaTilde best;
  double best_gap = INFINITY;
  for (std::size_t k = 0; k < schedule.candidates.size(); ++k) {
    const double v = schedule.candidates[k];
    const auto cert = gaussian::certify_eta_tilde(v, estimate);
    if (cert == gaussian::EtaCertification::inside)
      return {v, "schedule:" + std::to_string(k), cert};
    const double gap = std::fabs(std::log(v / (3 * estimate.estimate())));
    if (gap < best_gap) {
      best_gap = gap;
      best = {v, "schedule:" + std::to_string(k), cert};
    }
  }
  return best;
}

}  // namespace sisz::reduction
