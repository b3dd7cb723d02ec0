#include <utility>

#include "sisz/errors.hpp"
#include "sisz/lattice.hpp"

namespace sisz::lattice {

LatticeBasis::LatticeBasis(IntegerMatrix columns)
    : matrix_(std::move(columns)), entry_bound_(sisz::entry_bound(matrix_)), det_(0), inverse_(1, 1) {
  if (matrix_.rows() != matrix_.cols()) throw RankDeficiencyError("lattice basis must be square");
  det_ = sisz::determinant(matrix_);
  if (det_ == 0) throw RankDeficiencyError("lattice basis is singular");
  inverse_ = sisz::inverse(matrix_);
}

GramSchmidt gram_schmidt(const IntegerMatrix& columns) {
  const std::size_t k = columns.cols();
  const std::size_t d = columns.rows();
  GramSchmidt g{{}, RationalMatrix(k, k), RatVec(k)};
  g.orthogonal.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    RatVec bi = to_rational(columns.column(i));
    RatVec star = bi;
    for (std::size_t j = 0; j < i; ++j) {
      Rational mu = dot(bi, g.orthogonal[j]) / g.squared_norms[j];
      g.mu(i, j) = mu;
      if (mu == 0) continue;
      for (std::size_t c = 0; c < d; ++c) star[c] -= mu * g.orthogonal[j][c];
    }
    g.mu(i, i) = 1;
    g.squared_norms[i] = squared_norm(star);
    if (g.squared_norms[i] == 0) throw RankDeficiencyError("gram_schmidt: columns are linearly dependent");
    g.orthogonal.push_back(std::move(star));
  }
  return g;
}

LllConditions check_lll(const GramSchmidt& gso) {
  LllConditions out{true, true};
  const std::size_t k = gso.squared_norms.size();
  const Rational half(1, 2);
  const Rational delta(3, 4);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (abs(gso.mu(i, j)) > half) out.size_reduced = false;
  for (std::size_t i = 1; i < k; ++i) {
    const Rational& m = gso.mu(i, i - 1);
    if (gso.squared_norms[i] < (delta - m * m) * gso.squared_norms[i - 1]) out.lovasz = false;
  }
  return out;
}

std::optional<IntVec> lattice_membership(const LatticeBasis& basis, const RatVec& v) {
  if (v.size() != basis.dim()) throw DomainError("lattice_membership: dimension mismatch");
  RatVec coeffs = basis.inverse() * v;
  IntVec out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    if (c.get_den() != 1) return std::nullopt;
    out.push_back(c.get_num());
  }
  return out;
}

std::optional<IntVec> lattice_membership(const LatticeBasis& basis, const IntVec& v) {
  return lattice_membership(basis, to_rational(v));
}

ParallelepipedPoint reduce_mod_parallelepiped(const LatticeBasis& basis, const RatVec& x) {
  if (x.size() != basis.dim()) throw DomainError("reduce_mod_parallelepiped: dimension mismatch");
  RatVec kappa = basis.inverse() * x;
  ParallelepipedPoint out;
  out.coefficients.reserve(kappa.size());
  out.floor_coeffs.reserve(kappa.size());
  for (const auto& k : kappa) {
    Integer f = floor(k);
    out.coefficients.push_back(k - Rational(f));
    out.floor_coeffs.push_back(std::move(f));
  }
  out.y = to_rational(basis.matrix()) * out.coefficients;
  return out;
}

ParallelepipedPoint reduce_mod_parallelepiped(const LatticeBasis& basis, const std::vector<double>& x) {
  return reduce_mod_parallelepiped(basis, to_rational(x));
}

RationalMatrix dual_basis(const RationalMatrix& basis) { return sisz::inverse(basis).transpose(); }

RationalMatrix dual_basis(const LatticeBasis& basis) { return basis.inverse().transpose(); }

IntegerMatrix scaled_dual_basis(const LatticeBasis& basis) {
  const RationalMatrix dual = dual_basis(basis);
  IntegerMatrix out(dual.rows(), dual.cols());
  for (std::size_t r = 0; r < dual.rows(); ++r)
    for (std::size_t c = 0; c < dual.cols(); ++c) {
      Rational v = dual(r, c) * basis.determinant();
      if (v.get_den() != 1) throw InternalError("scaled dual entry not integral");
      out(r, c) = v.get_num();
    }
  return out;
}

LatticeBasis random_basis(std::size_t n, std::int64_t bound, Rng& rng) {
  if (n == 0 || bound < 1) throw DomainError("random_basis: need n >= 1 and M >= 1");
  for (;;) {
    IntegerMatrix b(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) b(r, c) = static_cast<long>(rng.uniform_int(-bound, bound));
    if (determinant(b) != 0) return LatticeBasis(std::move(b));
  }
}

}  // namespace sisz::lattice
