// Compiled with -mavx2. Nothing in this file may run before dispatch has
// confirmed AVX2 support. FMA is deliberately not used: the cell kernel must
// round exactly like the scalar reference.

#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace sisz::simd::avx2 {

namespace {

// Cephes-style exp for x <= 0; lanes below -708 flush to zero.
__m256d exp_nonpositive(__m256d x) {
  const __m256d min_arg = _mm256_set1_pd(-708.0);
  const __m256d underflow = _mm256_cmp_pd(x, min_arg, _CMP_LT_OQ);
  x = _mm256_max_pd(x, min_arg);

  const __m256d fx = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634073599)),
                                     _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  x = _mm256_sub_pd(x, _mm256_mul_pd(fx, _mm256_set1_pd(6.93145751953125E-1)));
  x = _mm256_sub_pd(x, _mm256_mul_pd(fx, _mm256_set1_pd(1.42860682030941723212E-6)));

  const __m256d xx = _mm256_mul_pd(x, x);
  __m256d px = _mm256_set1_pd(1.26177193074810590878E-4);
  px = _mm256_add_pd(_mm256_mul_pd(px, xx), _mm256_set1_pd(3.02994407707441961300E-2));
  px = _mm256_add_pd(_mm256_mul_pd(px, xx), _mm256_set1_pd(9.99999999999999999910E-1));
  px = _mm256_mul_pd(px, x);
  __m256d qx = _mm256_set1_pd(3.00198505138664455042E-6);
  qx = _mm256_add_pd(_mm256_mul_pd(qx, xx), _mm256_set1_pd(2.52448340349684104192E-3));
  qx = _mm256_add_pd(_mm256_mul_pd(qx, xx), _mm256_set1_pd(2.27265548208155028766E-1));
  qx = _mm256_add_pd(_mm256_mul_pd(qx, xx), _mm256_set1_pd(2.00000000000000000009E0));
  __m256d r = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  r = _mm256_add_pd(_mm256_set1_pd(1.0), _mm256_add_pd(r, r));

  // 2^fx via the exponent field; fx >= -1022 after clamping.
  const __m128i n32 = _mm256_cvtpd_epi32(fx);
  __m256i n64 = _mm256_cvtepi32_epi64(n32);
  n64 = _mm256_add_epi64(n64, _mm256_set1_epi64x(1023));
  const __m256d pow2 = _mm256_castsi256_pd(_mm256_slli_epi64(n64, 52));
  r = _mm256_mul_pd(r, pow2);
  return _mm256_andnot_pd(underflow, r);
}

}  // namespace

void parallelepiped_cells(std::span<const double> inverse, std::size_t dim, std::span<const double> points,
                          std::size_t count, std::int64_t modulus, std::span<std::int64_t> cells) {
  const double qs = static_cast<double>(modulus);
  const __m256d q = _mm256_set1_pd(qs);
  const __m256d q_minus_one = _mm256_set1_pd(qs - 1.0);
  std::size_t p = 0;
  alignas(32) double lane_cells[4];
  for (; p + 4 <= count; p += 4) {
    __m256d cell = _mm256_setzero_pd();
    for (std::size_t i = dim; i-- > 0;) {
      __m256d kappa = _mm256_setzero_pd();
      for (std::size_t j = 0; j < dim; ++j) {
        const __m256d coord = _mm256_loadu_pd(points.data() + j * count + p);
        kappa = _mm256_add_pd(kappa, _mm256_mul_pd(_mm256_set1_pd(inverse[i * dim + j]), coord));
      }
      const __m256d f = _mm256_sub_pd(kappa, _mm256_floor_pd(kappa));
      const __m256d a = _mm256_min_pd(_mm256_floor_pd(_mm256_mul_pd(q, f)), q_minus_one);
      cell = _mm256_add_pd(_mm256_mul_pd(cell, q), a);
    }
    _mm256_store_pd(lane_cells, cell);
    for (int l = 0; l < 4; ++l) cells[p + l] = static_cast<std::int64_t>(lane_cells[l]);
  }
  for (; p < count; ++p) {
    double cell = 0.0;
    for (std::size_t i = dim; i-- > 0;) {
      double kappa = 0.0;
      for (std::size_t j = 0; j < dim; ++j) kappa = kappa + inverse[i * dim + j] * points[j * count + p];
      const double f = kappa - std::floor(kappa);
      double a = std::floor(qs * f);
      if (a > qs - 1.0) a = qs - 1.0;
      cell = cell * qs + a;
    }
    cells[p] = static_cast<std::int64_t>(cell);
  }
}

void gaussian_weights(std::span<const double> squared, double scale, std::span<double> out) {
  const __m256d neg_scale = _mm256_set1_pd(-scale);
  std::size_t p = 0;
  for (; p + 4 <= squared.size(); p += 4) {
    const __m256d s = _mm256_loadu_pd(squared.data() + p);
    _mm256_storeu_pd(out.data() + p, exp_nonpositive(_mm256_mul_pd(neg_scale, s)));
  }
  if (p < squared.size()) {
    alignas(32) double tail[4] = {0, 0, 0, 0};
    for (std::size_t l = 0; p + l < squared.size(); ++l) tail[l] = squared[p + l];
    alignas(32) double res[4];
    _mm256_store_pd(res, exp_nonpositive(_mm256_mul_pd(neg_scale, _mm256_load_pd(tail))));
    for (std::size_t l = 0; p + l < squared.size(); ++l) out[p + l] = res[l];
  }
}

double gaussian_mass(std::span<const double> squared, double scale) {
  const __m256d neg_scale = _mm256_set1_pd(-scale);
  __m256d acc = _mm256_setzero_pd();
  std::size_t p = 0;
  for (; p + 4 <= squared.size(); p += 4) {
    const __m256d s = _mm256_loadu_pd(squared.data() + p);
    acc = _mm256_add_pd(acc, exp_nonpositive(_mm256_mul_pd(neg_scale, s)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  if (p < squared.size()) {
    alignas(32) double tail[4];
    std::size_t used = 0;
    for (; p + used < squared.size(); ++used) tail[used] = squared[p + used];
    for (std::size_t l = used; l < 4; ++l) tail[l] = 0.0;
    alignas(32) double res[4];
    _mm256_store_pd(res, exp_nonpositive(_mm256_mul_pd(neg_scale, _mm256_load_pd(tail))));
    for (std::size_t l = 0; l < used; ++l) sum += res[l];
  }
  return sum;
}

void squared_norms(std::span<const double> points, std::size_t dim, std::size_t count, std::span<double> out) {
  std::size_t p = 0;
  for (; p + 4 <= count; p += 4) {
    __m256d s = _mm256_setzero_pd();
    for (std::size_t i = 0; i < dim; ++i) {
      const __m256d x = _mm256_loadu_pd(points.data() + i * count + p);
      s = _mm256_add_pd(s, _mm256_mul_pd(x, x));
    }
    _mm256_storeu_pd(out.data() + p, s);
  }
  for (; p < count; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double x = points[i * count + p];
      s = s + x * x;
    }
    out[p] = s;
  }
}

}  // namespace sisz::simd::avx2
