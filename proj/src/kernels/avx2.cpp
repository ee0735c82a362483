// Compiled with -mavx2 only. Callers must check the CPU before dispatching here.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace activesep::kernels::detail {

void affine_extents_avx2(const double* x, const double* z, std::size_t n, const double* rho,
                         const double* c, std::size_t m, double* lo, double* hi) {
  std::size_t i = 0;
  // Four points per lane group, lines broadcast.
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d zv = _mm256_loadu_pd(z + i);
    __m256d mn = _mm256_sub_pd(_mm256_sub_pd(zv, _mm256_mul_pd(_mm256_set1_pd(rho[0]), xv)),
                               _mm256_set1_pd(c[0]));
    __m256d mx = mn;
    for (std::size_t j = 1; j < m; ++j) {
      const __m256d f = _mm256_sub_pd(
          _mm256_sub_pd(zv, _mm256_mul_pd(_mm256_set1_pd(rho[j]), xv)), _mm256_set1_pd(c[j]));
      mn = _mm256_min_pd(f, mn);
      mx = _mm256_max_pd(f, mx);
    }
    _mm256_storeu_pd(lo + i, mn);
    _mm256_storeu_pd(hi + i, mx);
  }
  if (i < n) affine_extents_scalar(x + i, z + i, n - i, rho, c, m, lo + i, hi + i);
}

void min_signed_margin_avx2(const double* rho, const double* c, const double* scale, std::size_t m,
                            const double* x, const double* z, const double* y, std::size_t n,
                            double* out) {
  std::size_t j = 0;
  // Four lines per lane group, points broadcast.
  for (; j + 4 <= m; j += 4) {
    const __m256d rv = _mm256_loadu_pd(rho + j);
    const __m256d cv = _mm256_loadu_pd(c + j);
    const __m256d sv = _mm256_loadu_pd(scale + j);
    auto eval = [&](std::size_t i) {
      const __m256d f = _mm256_sub_pd(
          _mm256_sub_pd(_mm256_set1_pd(z[i]), _mm256_mul_pd(rv, _mm256_set1_pd(x[i]))), cv);
      return _mm256_mul_pd(_mm256_mul_pd(f, _mm256_set1_pd(y[i])), sv);
    };
    __m256d mn = eval(0);
    for (std::size_t i = 1; i < n; ++i) mn = _mm256_min_pd(eval(i), mn);
    _mm256_storeu_pd(out + j, mn);
  }
  if (j < m) min_signed_margin_scalar(rho + j, c + j, scale + j, m - j, x, z, y, n, out + j);
}

}  // namespace activesep::kernels::detail
