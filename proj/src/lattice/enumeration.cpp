#include "sisz/enumeration.hpp"

#include <cmath>

#include "sisz/errors.hpp"
#include "sisz/lattice.hpp"

namespace sisz::lattice {

namespace {

class Search {
 public:
  Search(const std::vector<double>& bstar2, const std::vector<std::vector<double>>& mu, double radius2,
         std::span<const double> target, const Enumerator::Visitor& visit, std::uint64_t budget)
      : bstar2_(bstar2),
        mu_(mu),
        radius2_(radius2 * (1.0 + 1e-9) + 1e-12),
        target_(target),
        visit_(visit),
        budget_(budget),
        coeffs_(bstar2.size(), 0) {}

  EnumerationStats run() {
    if (!bstar2_.empty()) descend(bstar2_.size() - 1, 0.0);
    return stats_;
  }

 private:
  bool descend(std::size_t level, double partial) {
    double center = target_[level];
    for (std::size_t j = level + 1; j < coeffs_.size(); ++j)
      center -= (static_cast<double>(coeffs_[j]) - target_[j]) * mu_[j][level];
    const double remaining = radius2_ - partial;
    if (remaining < 0) return true;
    const double width = std::sqrt(remaining / bstar2_[level]);
    const double lo = std::ceil(center - width);
    const double hi = std::floor(center + width);
    if (lo > hi) return true;

    // Zig-zag outward from the nearest integer.
    const double nearest = std::nearbyint(center);
    const double step = center >= nearest ? 1.0 : -1.0;
    bool up_open = true;
    bool down_open = true;
    for (std::int64_t k = 0; up_open || down_open; ++k) {
      double x;
      if (k == 0) {
        x = nearest;
      } else {
        const double offset = static_cast<double>((k + 1) / 2);
        const bool first_side = (k % 2) == 1;
        if (first_side && !up_open) continue;
        if (!first_side && !down_open) continue;
        x = first_side ? nearest + step * offset : nearest - step * offset;
      }
      if (x < lo || x > hi) {
        if (k == 0) return true;
        if ((k % 2) == 1) up_open = false;
        else down_open = false;
        continue;
      }
      const double diff = x - center;
      const double dist = partial + diff * diff * bstar2_[level];
      if (dist > radius2_) continue;
      if (++stats_.nodes > budget_) {
        stats_.budget_exhausted = true;
        return false;
      }
      coeffs_[level] = static_cast<std::int64_t>(x);
      if (level == 0) {
        ++stats_.leaves;
        if (!visit_(coeffs_, dist)) {
          stats_.stopped = true;
          return false;
        }
      } else if (!descend(level - 1, dist)) {
        return false;
      }
    }
    coeffs_[level] = 0;
    return true;
  }

  const std::vector<double>& bstar2_;
  const std::vector<std::vector<double>>& mu_;
  double radius2_;
  std::span<const double> target_;
  const Enumerator::Visitor& visit_;
  std::uint64_t budget_;
  std::vector<std::int64_t> coeffs_;
  EnumerationStats stats_;
};

}  // namespace

Enumerator::Enumerator(const IntegerMatrix& columns) {
  const GramSchmidt gso = gram_schmidt(columns);
  const std::size_t k = columns.cols();
  bstar2_.resize(k);
  mu_.assign(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    bstar2_[i] = gso.squared_norms[i].get_d();
    for (std::size_t j = 0; j < i; ++j) mu_[i][j] = gso.mu(i, j).get_d();
  }
}

EnumerationStats Enumerator::run(double radius2, std::span<const double> target, const Visitor& visit,
                                 std::uint64_t node_budget) const {
  if (target.size() != rank()) throw DomainError("Enumerator: target dimension mismatch");
  if (!(radius2 >= 0) || !std::isfinite(radius2)) throw DomainError("Enumerator: bad radius");
  Search search(bstar2_, mu_, radius2, target, visit, node_budget);
  return search.run();
}

EnumerationStats Enumerator::run(double radius2, const Visitor& visit, std::uint64_t node_budget) const {
  const std::vector<double> zero(rank(), 0.0);
  return run(radius2, zero, visit, node_budget);
}

}  // namespace sisz::lattice
