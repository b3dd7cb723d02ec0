#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sisz/matrix.hpp"

namespace sisz::lattice {

struct EnumerationStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  bool budget_exhausted = false;
  bool stopped = false;  // visitor asked to stop
  bool complete() const { return !budget_exhausted && !stopped; }
};

/// Schnorr-Euchner enumeration of the points B c (c integer) with
/// |B (c - t)|^2 <= radius2, for a fixed real target t in coefficient space.
///
/// Floating-point GSO is derived from the exact one. The search radius is
/// widened by a relative 1e-9 so no qualifying point is lost to rounding;
/// callers that need exactness re-check candidates in integer arithmetic.
class Enumerator {
 public:
  // Columns must be linearly independent; they need not be square.
  explicit Enumerator(const IntegerMatrix& columns);

  // Return false from the visitor to stop the search.
  using Visitor = std::function<bool(std::span<const std::int64_t> coeffs, double dist2)>;

  EnumerationStats run(double radius2, std::span<const double> target, const Visitor& visit,
                       std::uint64_t node_budget) const;
  EnumerationStats run(double radius2, const Visitor& visit, std::uint64_t node_budget) const;

  std::size_t rank() const { return bstar2_.size(); }
  const std::vector<double>& gso_squared_norms() const { return bstar2_; }

 private:
  std::vector<double> bstar2_;
  std::vector<std::vector<double>> mu_;  // mu_[j][i], i < j
};

}  // namespace sisz::lattice
