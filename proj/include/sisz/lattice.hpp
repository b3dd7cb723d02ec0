#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sisz/arith.hpp"
#include "sisz/matrix.hpp"
#include "sisz/rng.hpp"

namespace sisz::lattice {

/// Full-rank square lattice basis, basis vectors stored as columns.
///
/// Construction validates full rank and caches the exact determinant, the
/// exact inverse B^{-1} and the entry bound M = max |b_ij|. Immutable after
/// construction, so instances are safe to share between threads.
class LatticeBasis {
 public:
  // Throws RankDeficiencyError when columns is singular or not square.
  explicit LatticeBasis(IntegerMatrix columns);

  std::size_t dim() const { return matrix_.rows(); }
  const IntegerMatrix& matrix() const { return matrix_; }
  const Integer& entry_bound() const { return entry_bound_; }
  const Integer& determinant() const { return det_; }
  const RationalMatrix& inverse() const { return inverse_; }
  IntVec column(std::size_t i) const { return matrix_.column(i); }

  // B * coeffs
  IntVec combine(const IntVec& coeffs) const { return matrix_ * coeffs; }

 private:
  IntegerMatrix matrix_;
  Integer entry_bound_;
  Integer det_;
  RationalMatrix inverse_;
};

struct LatticeVector {
  IntVec coords;
  std::optional<IntVec> coeffs;  // when present, B * coeffs == coords
};

struct GramSchmidt {
  std::vector<RatVec> orthogonal;  // b*_i
  RationalMatrix mu;               // mu(i, j) = <b_i, b*_j> / |b*_j|^2, unit diagonal
  RatVec squared_norms;            // |b*_i|^2
};

// Exact Gram-Schmidt of the columns. Throws RankDeficiencyError when the
// columns are linearly dependent.
GramSchmidt gram_schmidt(const IntegerMatrix& columns);
inline GramSchmidt gram_schmidt(const LatticeBasis& basis) { return gram_schmidt(basis.matrix()); }

struct LllConditions {
  bool size_reduced = false;  // |mu_ij| <= 1/2 for j < i
  bool lovasz = false;        // |b*_i|^2 >= (3/4 - mu_{i,i-1}^2) |b*_{i-1}|^2
  bool holds() const { return size_reduced && lovasz; }
};

LllConditions check_lll(const GramSchmidt& gso);

// LLL with delta = 3/4 on linearly independent integer columns (any ambient
// dimension >= rank). Exact integral arithmetic throughout.
IntegerMatrix lll_reduce(const IntegerMatrix& columns);
LatticeBasis lll_reduce(const LatticeBasis& basis);

// Integer coefficients c with B c == v, or nullopt when v is not a member.
std::optional<IntVec> lattice_membership(const LatticeBasis& basis, const IntVec& v);
std::optional<IntVec> lattice_membership(const LatticeBasis& basis, const RatVec& v);

/// Result of reducing x modulo the fundamental parallelepiped P(B):
/// y = x - B * floor_coeffs, coefficients = B^{-1} y in [0,1)^n.
struct ParallelepipedPoint {
  RatVec y;
  RatVec coefficients;
  IntVec floor_coeffs;
};

ParallelepipedPoint reduce_mod_parallelepiped(const LatticeBasis& basis, const RatVec& x);
// Doubles are converted exactly, so the result is certified with no snapping
// tolerance.
ParallelepipedPoint reduce_mod_parallelepiped(const LatticeBasis& basis, const std::vector<double>& x);

// B^{-T}: columns pair with the basis columns to the identity.
RationalMatrix dual_basis(const LatticeBasis& basis);
// Inverse transpose of an arbitrary nonsingular rational basis matrix.
RationalMatrix dual_basis(const RationalMatrix& basis);
// Integer basis of det(B) * L*, i.e. adj(B)^T. Dual vectors are these divided by det(B).
IntegerMatrix scaled_dual_basis(const LatticeBasis& basis);

/// Integer kernel {x : A x = 0} via column Hermite elimination with unimodular
/// tracking. Columns of the result form a basis of the kernel lattice; for
/// the zero matrix the identity is returned.
IntegerMatrix integer_kernel_basis(const IntegerMatrix& a);

struct MinimaOptions {
  std::size_t ceiling = 8;                  // largest dimension enumerated exactly
  std::uint64_t point_budget = 10'000'000;  // enumeration nodes
  bool allow_approximate = false;           // above the ceiling, return LLL bounds instead of throwing
};

struct SuccessiveMinima {
  std::vector<Integer> squared;   // lambda_1^2 <= ... <= lambda_k^2
  std::vector<IntVec> witnesses;  // linearly independent, |w_i|^2 == squared[i]
  bool exact = true;              // false: squared[i] is the certified upper bound max_{j<=i} |b_j^LLL|^2
};

// Exact successive minima by enumeration on an LLL-reduced basis with a
// growing radius. Ties are broken by lexicographically smallest coordinates.
SuccessiveMinima successive_minima(const LatticeBasis& basis, std::size_t k, const MinimaOptions& options = {});
SuccessiveMinima successive_minima(const IntegerMatrix& columns, std::size_t k, const MinimaOptions& options = {});

// Uniform B in U_M^{n x n}, resampled until nonsingular.
LatticeBasis random_basis(std::size_t n, std::int64_t bound, Rng& rng);

}  // namespace sisz::lattice
