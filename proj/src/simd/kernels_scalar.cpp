#include "llg/simd/kernels.hpp"

namespace llg::simd::detail {
namespace {

// Complex arithmetic is spelled out component-wise: std::complex operator*
// goes through a NaN-recovering libcall and we need the exact operation
// sequence the vector kernels use.

void mul_real(cplx* a, const double* m, std::size_t n) {
  double* p = reinterpret_cast<double*>(a);
  for (std::size_t i = 0; i < n; ++i) {
    p[2 * i] *= m[i];
    p[2 * i + 1] *= m[i];
  }
}

void mul_complex(cplx* a, const cplx* m, std::size_t n) {
  double* p = reinterpret_cast<double*>(a);
  const double* q = reinterpret_cast<const double*>(m);
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = p[2 * i], ai = p[2 * i + 1];
    const double mr = q[2 * i], mi = q[2 * i + 1];
    p[2 * i] = ar * mr - ai * mi;
    p[2 * i + 1] = ai * mr + ar * mi;
  }
}

void scale(cplx* a, double s, std::size_t n) {
  double* p = reinterpret_cast<double*>(a);
  for (std::size_t i = 0; i < 2 * n; ++i) p[i] *= s;
}

void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  double* p = reinterpret_cast<double*>(y);
  const double* q = reinterpret_cast<const double*>(x);
  const double br = alpha.real(), bi = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = q[2 * i], xi = q[2 * i + 1];
    p[2 * i] += xr * br - xi * bi;
    p[2 * i + 1] += xi * br + xr * bi;
  }
}

void accumulate_square(cplx* acc, const cplx* d, std::size_t n) {
  double* p = reinterpret_cast<double*>(acc);
  const double* q = reinterpret_cast<const double*>(d);
  for (std::size_t i = 0; i < n; ++i) {
    const double dr = q[2 * i], di = q[2 * i + 1];
    p[2 * i] += dr * dr - di * di;
    p[2 * i + 1] += di * dr + dr * di;
  }
}

void dgl_pointwise(const cplx* u, const cplx* s, cplx* out, std::size_t n) {
  const double* pu = reinterpret_cast<const double*>(u);
  const double* ps = reinterpret_cast<const double*>(s);
  double* po = reinterpret_cast<double*>(out);
  for (std::size_t i = 0; i < n; ++i) {
    const double ur = pu[2 * i], ui = pu[2 * i + 1];
    const double sr = ps[2 * i], si = ps[2 * i + 1];
    const double den = 1.0 + (ur * ur + ui * ui);
    // conj(u) * s
    const double cr = ur * sr + ui * si;
    const double ci = ur * si - ui * sr;
    po[2 * i] = cr / den;
    po[2 * i + 1] = ci / den;
  }
}

void cross3(const double* const* u, const double* const* v, double* const* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double u0 = u[0][i], u1 = u[1][i], u2 = u[2][i];
    const double v0 = v[0][i], v1 = v[1][i], v2 = v[2][i];
    out[0][i] = u1 * v2 - u2 * v1;
    out[1][i] = u2 * v0 - u0 * v2;
    out[2][i] = u0 * v1 - u1 * v0;
  }
}

double sum_abs2(const cplx* a, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(a);
  double s = 0.0;
  for (std::size_t i = 0; i < 2 * n; ++i) s += p[i] * p[i];
  return s;
}

double weighted_sum_abs2(const cplx* a, const double* w, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(a);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * (p[2 * i] * p[2 * i] + p[2 * i + 1] * p[2 * i + 1]);
  return s;
}

}  // namespace

const KernelTable scalar_table{mul_real,      mul_complex, scale,    axpy,
                               accumulate_square, dgl_pointwise, cross3, sum_abs2,
                               weighted_sum_abs2};

}  // namespace llg::simd::detail
