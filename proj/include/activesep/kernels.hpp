#pragma once

// Data-parallel inner loops shared by the controllers and the estimators.
//
// Every kernel has a scalar reference implementation and, where the build and
// CPU allow it, an AVX2 variant. Variants evaluate the same expression tree in
// the same order (no FMA), so their outputs are bit-identical; the test suite
// checks this. The active table is picked once, at first use. Setting the
// environment variable ACTIVESEP_KERNELS=scalar forces the reference path.

#include <cstddef>
#include <span>

namespace activesep::kernels {

/// For each point i: lo[i] = min_j f_ij and hi[i] = max_j f_ij, with
/// f_ij = (z_i - rho_j * x_i) - c_j. Requires m >= 1.
using ExtentsFn = void (*)(const double* x, const double* z, std::size_t n, const double* rho,
                           const double* c, std::size_t m, double* lo, double* hi);

/// For each line j: out[j] = min_i ((z_i - rho_j * x_i) - c_j) * y_i * scale_j.
/// Requires n >= 1.
using MarginFn = void (*)(const double* rho, const double* c, const double* scale, std::size_t m,
                          const double* x, const double* z, const double* y, std::size_t n,
                          double* out);

struct KernelTable {
  const char* name;
  ExtentsFn affine_extents;
  MarginFn min_signed_margin;
};

const KernelTable& scalar_table();
/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_table();
/// The table used by the library.
const KernelTable& active_table();

// Span front-ends over the active table.

void affine_extents(std::span<const double> x, std::span<const double> z, std::span<const double> rho,
                    std::span<const double> c, std::span<double> lo, std::span<double> hi);

void min_signed_margin(std::span<const double> rho, std::span<const double> c,
                       std::span<const double> scale, std::span<const double> x,
                       std::span<const double> z, std::span<const double> y, std::span<double> out);

}  // namespace activesep::kernels
