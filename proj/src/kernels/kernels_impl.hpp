#pragma once

#include <cstddef>

namespace activesep::kernels::detail {

void affine_extents_scalar(const double* x, const double* z, std::size_t n, const double* rho,
                           const double* c, std::size_t m, double* lo, double* hi);
void min_signed_margin_scalar(const double* rho, const double* c, const double* scale, std::size_t m,
                              const double* x, const double* z, const double* y, std::size_t n,
                              double* out);

#if defined(ACTIVESEP_WITH_AVX2)
void affine_extents_avx2(const double* x, const double* z, std::size_t n, const double* rho,
                         const double* c, std::size_t m, double* lo, double* hi);
void min_signed_margin_avx2(const double* rho, const double* c, const double* scale, std::size_t m,
                            const double* x, const double* z, const double* y, std::size_t n,
                            double* out);
#endif

}  // namespace activesep::kernels::detail
