#pragma once

#include <cstddef>

#include "llg/core/aligned.hpp"

// Pointwise and reduction kernels behind every inner loop of the solver.
//
// Each kernel has a scalar reference implementation and an AVX2 variant; the
// variant is chosen once at startup from the CPU feature bits and can be
// forced with the environment variable LLG_SIMD=scalar|avx2. Elementwise
// kernels of both variants perform the same IEEE operations in the same
// order and are bit-identical. Reductions use different association orders
// and agree to rounding.

namespace llg::simd {

enum class Level { scalar, avx2 };

struct KernelTable {
  // a[i] *= m[i]
  void (*mul_real)(cplx* a, const double* m, std::size_t n);
  // a[i] *= m[i]
  void (*mul_complex)(cplx* a, const cplx* m, std::size_t n);
  // a[i] *= s
  void (*scale)(cplx* a, double s, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(cplx* y, cplx alpha, const cplx* x, std::size_t n);
  // acc[i] += d[i] * d[i]   (complex square, not |d|^2)
  void (*accumulate_square)(cplx* acc, const cplx* d, std::size_t n);
  // out[i] = conj(u[i]) * s[i] / (1 + |u[i]|^2)
  void (*dgl_pointwise)(const cplx* u, const cplx* s, cplx* out, std::size_t n);
  // out = u x v on structure-of-arrays components
  void (*cross3)(const double* const* u, const double* const* v, double* const* out,
                 std::size_t n);
  // sum |a[i]|^2
  double (*sum_abs2)(const cplx* a, std::size_t n);
  // sum w[i] |a[i]|^2
  double (*weighted_sum_abs2)(const cplx* a, const double* w, std::size_t n);
};

/// Kernels for the active level.
const KernelTable& kernels();
const KernelTable& kernels(Level level);

Level active_level();
/// Highest level this CPU supports.
Level best_supported_level();
bool supported(Level level);
/// Override the active level (tests, benchmarks). Throws if unsupported.
void set_active_level(Level level);
const char* level_name(Level level);

namespace detail {
extern const KernelTable scalar_table;
#if defined(__x86_64__) || defined(__i386__)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace llg::simd
