// Integral LLL, delta = 3/4. The Gram-Schmidt data is kept exactly as the
// integers d_i = prod_{j<=i} |b*_j|^2 and lambda_ij = d_j mu_ij, so no rational
// normalization is needed and every comparison is exact.

#include <utility>
#include <vector>

#include "sisz/errors.hpp"
#include "sisz/lattice.hpp"

namespace sisz::lattice {

namespace {

Integer exact_div(const Integer& num, const Integer& den) {
  Integer q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

// Nearest integer to num / den for den > 0, ties toward +infinity.
Integer round_div(const Integer& num, const Integer& den) {
  Integer q;
  Integer twice_num = 2 * num + den;
  Integer twice_den = 2 * den;
  mpz_fdiv_q(q.get_mpz_t(), twice_num.get_mpz_t(), twice_den.get_mpz_t());
  return q;
}

class IntegralLll {
 public:
  explicit IntegralLll(std::vector<IntVec> basis)
      : n_(basis.size()), b_(std::move(basis)), d_(n_ + 1), lambda_(n_ + 1, IntVec(n_ + 1)) {
    // 1-based storage mirrors the textbook recurrences.
    b_.insert(b_.begin(), IntVec{});
  }

  std::vector<IntVec> run() {
    d_[0] = 1;
    d_[1] = dot(b_[1], b_[1]);
    if (d_[1] == 0) throw RankDeficiencyError("lll_reduce: zero vector in basis");
    std::size_t k = 2;
    std::size_t kmax = 1;
    while (k <= n_) {
      if (k > kmax) {
        kmax = k;
        increment_gso(k);
      }
      reduce(k, k - 1);
      const Integer& lam = lambda_[k][k - 1];
      if (4 * d_[k] * d_[k - 2] < 3 * d_[k - 1] * d_[k - 1] - 4 * lam * lam) {
        swap(k, kmax);
        k = std::max<std::size_t>(2, k - 1);
      } else {
        for (std::size_t l = k - 1; l-- > 1;) reduce(k, l);
        ++k;
      }
    }
    return {b_.begin() + 1, b_.end()};
  }

 private:
  void increment_gso(std::size_t k) {
    for (std::size_t j = 1; j <= k; ++j) {
      Integer u = dot(b_[k], b_[j]);
      for (std::size_t i = 1; i < j; ++i) u = exact_div(d_[i] * u - lambda_[k][i] * lambda_[j][i], d_[i - 1]);
      if (j < k) {
        lambda_[k][j] = u;
      } else {
        if (u == 0) throw RankDeficiencyError("lll_reduce: columns are linearly dependent");
        d_[k] = u;
      }
    }
  }

  void reduce(std::size_t k, std::size_t l) {
    if (2 * abs(lambda_[k][l]) <= d_[l]) return;
    const Integer q = round_div(lambda_[k][l], d_[l]);
    for (std::size_t c = 0; c < b_[k].size(); ++c) b_[k][c] -= q * b_[l][c];
    lambda_[k][l] -= q * d_[l];
    for (std::size_t i = 1; i < l; ++i) lambda_[k][i] -= q * lambda_[l][i];
  }

  void swap(std::size_t k, std::size_t kmax) {
    std::swap(b_[k], b_[k - 1]);
    for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lambda_[k][j], lambda_[k - 1][j]);
    const Integer lam = lambda_[k][k - 1];
    const Integer big_b = exact_div(d_[k - 2] * d_[k] + lam * lam, d_[k - 1]);
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      const Integer t = lambda_[i][k];
      lambda_[i][k] = exact_div(d_[k] * lambda_[i][k - 1] - lam * t, d_[k - 1]);
      lambda_[i][k - 1] = exact_div(big_b * t + lam * lambda_[i][k], d_[k]);
    }
    d_[k - 1] = big_b;
  }

  std::size_t n_;
  std::vector<IntVec> b_;
  IntVec d_;
  std::vector<IntVec> lambda_;
};

}  // namespace

IntegerMatrix lll_reduce(const IntegerMatrix& columns) {
  if (columns.cols() > columns.rows()) throw RankDeficiencyError("lll_reduce: more vectors than ambient dimension");
  IntegralLll lll(columns.columns());
  return IntegerMatrix::from_columns(lll.run());
}

LatticeBasis lll_reduce(const LatticeBasis& basis) { return LatticeBasis(lll_reduce(basis.matrix())); }

}  // namespace sisz::lattice
