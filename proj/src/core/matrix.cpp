#include "sisz/matrix.hpp"

namespace sisz {

Integer entry_bound(const IntegerMatrix& m) {
  Integer best = 0;
  for (const auto& x : m.data()) {
    Integer a = abs(x);
    if (a > best) best = a;
  }
  return best;
}

RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

Integer determinant(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  IntegerMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t rank(const RationalMatrix& m) {
  SpanTracker tracker(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) tracker.add(m.row(r));
  return tracker.rank();
}

std::size_t rank(const IntegerMatrix& m) { return rank(to_rational(m)); }

RationalMatrix inverse(const IntegerMatrix& m) { return inverse(to_rational(m)); }

RationalMatrix inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw RankDeficiencyError("matrix is singular");
    if (p != k)
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(k, c), a(p, c));
        std::swap(inv(k, c), inv(p, c));
      }
    Rational pivot = a(k, k);
    for (std::size_t c = 0; c < n; ++c) {
      a(k, c) /= pivot;
      inv(k, c) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rational f = a(i, k);
      for (std::size_t c = 0; c < n; ++c) {
        a(i, c) -= f * a(k, c);
        inv(i, c) -= f * inv(k, c);
      }
    }
  }
  return inv;
}

IntegerMatrix adjugate(const IntegerMatrix& m) {
  Integer det = determinant(m);
  if (det == 0) throw RankDeficiencyError("adjugate requested for singular matrix");
  RationalMatrix inv = inverse(m);
  IntegerMatrix adj(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Rational v = inv(r, c) * det;
      if (v.get_den() != 1) throw InternalError("adjugate entry not integral");
      adj(r, c) = v.get_num();
    }
  return adj;
}

RatVec SpanTracker::reduce(RatVec v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rational f = v[pivots_[k]];
    if (f == 0) continue;
    for (std::size_t c = 0; c < dim_; ++c)
      if (rows_[k][c] != 0) v[c] -= f * rows_[k][c];
  }
  return v;
}

bool SpanTracker::contains(const RatVec& v) const {
  if (v.size() != dim_) throw DomainError("SpanTracker: dimension mismatch");
  RatVec r = reduce(v);
  for (const auto& x : r)
    if (x != 0) return false;
  return true;
}

bool SpanTracker::add(const RatVec& v) {
  if (v.size() != dim_) throw DomainError("SpanTracker: dimension mismatch");
  RatVec r = reduce(v);
  std::size_t p = 0;
  while (p < dim_ && r[p] == 0) ++p;
  if (p == dim_) return false;
  Rational lead = r[p];
  for (auto& x : r) x /= lead;
  // Keep existing rows reduced against the new pivot.
  for (auto& row : rows_) {
    const Rational f = row[p];
    if (f == 0) continue;
    for (std::size_t c = 0; c < dim_; ++c)
      if (r[c] != 0) row[c] -= f * r[c];
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

}  // namespace sisz
