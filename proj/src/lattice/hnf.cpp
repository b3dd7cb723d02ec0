#include <utility>

#include "sisz/errors.hpp"
#include "sisz/lattice.hpp"

namespace sisz::lattice {

namespace {

void swap_columns(IntegerMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

// [col_p, col_j] <- [col_p, col_j] * [[s, -v], [t, u]] with s*u + t*v = 1.
void combine_columns(IntegerMatrix& m, std::size_t p, std::size_t j, const Integer& s, const Integer& t,
                     const Integer& u, const Integer& v) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer cp = m(r, p);
    Integer cj = m(r, j);
    m(r, p) = s * cp + t * cj;
    m(r, j) = u * cj - v * cp;
  }
}

}  // namespace

IntegerMatrix integer_kernel_basis(const IntegerMatrix& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  IntegerMatrix work = a;
  IntegerMatrix unimodular = IntegerMatrix::identity(cols);

  // Column-style Hermite elimination: after processing, work = a * unimodular
  // has its nonzero columns in positions [0, pivots) in echelon form and zero
  // columns after, so the trailing columns of unimodular span the kernel.
  std::size_t pivots = 0;
  for (std::size_t r = 0; r < rows && pivots < cols; ++r) {
    for (std::size_t j = pivots + 1; j < cols; ++j) {
      if (work(r, j) == 0) continue;
      if (work(r, pivots) == 0) {
        swap_columns(work, pivots, j);
        swap_columns(unimodular, pivots, j);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), work(r, pivots).get_mpz_t(), work(r, j).get_mpz_t());
      Integer u = work(r, pivots) / g;
      Integer v = work(r, j) / g;
      // s*u + t*v = 1, so the 2x2 transform is unimodular and zeroes work(r, j).
      combine_columns(work, pivots, j, s, t, u, v);
      combine_columns(unimodular, pivots, j, s, t, u, v);
    }
    if (work(r, pivots) != 0) ++pivots;
  }

  if (pivots == cols) throw DomainError("integer_kernel_basis: kernel is trivial");
  IntegerMatrix kernel(cols, cols - pivots);
  for (std::size_t c = pivots; c < cols; ++c) kernel.set_column(c - pivots, unimodular.column(c));

  for (std::size_t c = 0; c < kernel.cols(); ++c)
    if (!is_zero(a * kernel.column(c))) throw InternalError("integer_kernel_basis: kernel check failed");
  return kernel;
}

}  // namespace sisz::lattice
