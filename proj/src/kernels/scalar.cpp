#include "kernels_impl.hpp"

namespace activesep::kernels::detail {

void affine_extents_scalar(const double* x, const double* z, std::size_t n, const double* rho,
                           const double* c, std::size_t m, double* lo, double* hi) {
  for (std::size_t i = 0; i < n; ++i) {
    double mn = (z[i] - rho[0] * x[i]) - c[0];
    double mx = mn;
    for (std::size_t j = 1; j < m; ++j) {
      const double f = (z[i] - rho[j] * x[i]) - c[j];
      mn = f < mn ? f : mn;
      mx = f > mx ? f : mx;
    }
    lo[i] = mn;
    hi[i] = mx;
  }
}

void min_signed_margin_scalar(const double* rho, const double* c, const double* scale, std::size_t m,
                              const double* x, const double* z, const double* y, std::size_t n,
                              double* out) {
  for (std::size_t j = 0; j < m; ++j) {
    double mn = (((z[0] - rho[j] * x[0]) - c[j]) * y[0]) * scale[j];
    for (std::size_t i = 1; i < n; ++i) {
      const double d = (((z[i] - rho[j] * x[i]) - c[j]) * y[i]) * scale[j];
      mn = d < mn ? d : mn;
    }
    out[j] = mn;
  }
}

}  // namespace activesep::kernels::detail
