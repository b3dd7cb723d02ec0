#include <algorithm>
#include <string>

#include "sisz/enumeration.hpp"
#include "sisz/errors.hpp"
#include "sisz/lattice.hpp"

namespace sisz::lattice {

namespace {

struct Candidate {
  Integer norm2;
  IntVec coords;
};

IntVec combine_int64(const IntegerMatrix& basis, std::span<const std::int64_t> coeffs) {
  IntVec out(basis.rows(), 0);
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    if (coeffs[c] == 0) continue;
    const Integer f = static_cast<long>(coeffs[c]);
    for (std::size_t r = 0; r < basis.rows(); ++r) out[r] += f * basis(r, c);
  }
  return out;
}

SuccessiveMinima lll_bounds(const IntegerMatrix& reduced, std::size_t k) {
  SuccessiveMinima out;
  out.exact = false;
  Integer running = 0;
  for (std::size_t i = 0; i < k; ++i) {
    IntVec b = reduced.column(i);
    running = std::max(running, squared_norm(b));
    out.squared.push_back(running);
    out.witnesses.push_back(std::move(b));
  }
  return out;
}

}  // namespace

SuccessiveMinima successive_minima(const IntegerMatrix& columns, std::size_t k, const MinimaOptions& options) {
  const std::size_t n = columns.cols();
  if (k == 0 || k > n) throw DomainError("successive_minima: k must be in [1, rank]");
  const IntegerMatrix reduced = lll_reduce(columns);
  if (n > options.ceiling) {
    if (!options.allow_approximate)
      throw CapabilityError("successive_minima: dimension " + std::to_string(n) + " exceeds enumeration ceiling " +
                            std::to_string(options.ceiling));
    return lll_bounds(reduced, k);
  }

  Integer cap = 0;
  for (std::size_t i = 0; i < n; ++i) cap = std::max(cap, squared_norm(reduced.column(i)));
  Integer radius2 = squared_norm(reduced.column(0));

  const Enumerator enumerator(reduced);
  for (;;) {
    std::vector<Candidate> candidates;
    const auto stats = enumerator.run(
        radius2.get_d(),
        [&](std::span<const std::int64_t> coeffs, double) {
          IntVec v = combine_int64(reduced, coeffs);
          if (is_zero(v)) return true;
          Integer norm2 = squared_norm(v);
          if (norm2 <= radius2) candidates.push_back({std::move(norm2), std::move(v)});
          return true;
        },
        options.point_budget);
    if (stats.budget_exhausted) throw CapabilityError("successive_minima: enumeration budget exceeded");

    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      if (a.norm2 != b.norm2) return a.norm2 < b.norm2;
      return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(), b.coords.end());
    });

    SuccessiveMinima out;
    SpanTracker span(reduced.rows());
    for (auto& c : candidates) {
      if (!span.add(c.coords)) continue;
      out.squared.push_back(c.norm2);
      out.witnesses.push_back(std::move(c.coords));
      if (out.squared.size() == k) return out;
    }
    if (radius2 >= cap) throw InternalError("successive_minima: basis vectors not found within their own norm");
    radius2 = std::min<Integer>(2 * radius2, cap);
  }
}

SuccessiveMinima successive_minima(const LatticeBasis& basis, std::size_t k, const MinimaOptions& options) {
  return successive_minima(basis.matrix(), k, options);
}

}  // namespace sisz::lattice
