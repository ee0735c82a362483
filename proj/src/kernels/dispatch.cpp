#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "activesep/kernels.hpp"
#include "kernels_impl.hpp"

namespace activesep::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(ACTIVESEP_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& select_table() {
  if (const char* forced = std::getenv("ACTIVESEP_KERNELS"); forced && std::string_view(forced) == "scalar") {
    return scalar_table();
  }
  if (const KernelTable* t = avx2_table()) return *t;
  return scalar_table();
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", detail::affine_extents_scalar, detail::min_signed_margin_scalar};
  return table;
}

const KernelTable* avx2_table() {
#if defined(ACTIVESEP_WITH_AVX2)
  static const KernelTable table{"avx2", detail::affine_extents_avx2, detail::min_signed_margin_avx2};
  static const bool usable = cpu_has_avx2();
  return usable ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_table() {
  static const KernelTable& table = select_table();
  return table;
}

void affine_extents(std::span<const double> x, std::span<const double> z, std::span<const double> rho,
                    std::span<const double> c, std::span<double> lo, std::span<double> hi) {
  if (z.size() != x.size() || lo.size() != x.size() || hi.size() != x.size() || c.size() != rho.size()) {
    throw std::invalid_argument("affine_extents: mismatched span sizes");
  }
  if (x.empty()) return;
  if (rho.empty()) throw std::invalid_argument("affine_extents: no lines");
  active_table().affine_extents(x.data(), z.data(), x.size(), rho.data(), c.data(), rho.size(), lo.data(),
                                hi.data());
}

void min_signed_margin(std::span<const double> rho, std::span<const double> c,
                       std::span<const double> scale, std::span<const double> x,
                       std::span<const double> z, std::span<const double> y, std::span<double> out) {
  if (c.size() != rho.size() || scale.size() != rho.size() || out.size() != rho.size() ||
      z.size() != x.size() || y.size() != x.size()) {
    throw std::invalid_argument("min_signed_margin: mismatched span sizes");
  }
  if (rho.empty()) return;
  if (x.empty()) throw std::invalid_argument("min_signed_margin: no points");
  active_table().min_signed_margin(rho.data(), c.data(), scale.data(), rho.size(), x.data(), z.data(),
                                   y.data(), x.size(), out.data());
}

}  // namespace activesep::kernels
