// AVX2 variants. This translation unit is compiled with -mavx2 -mno-fma and
// is only entered after a runtime CPU check. Each __m256d holds two complex
// values [re0, im0, re1, im1].

#include <immintrin.h>

#include "llg/simd/kernels.hpp"

namespace llg::simd::detail {
namespace {

inline __m256d complex_mul(__m256d x, __m256d y) {
  const __m256d yr = _mm256_movedup_pd(y);
  const __m256d yi = _mm256_permute_pd(y, 0b1111);
  const __m256d xs = _mm256_permute_pd(x, 0b0101);
  return _mm256_addsub_pd(_mm256_mul_pd(x, yr), _mm256_mul_pd(xs, yi));
}

void mul_real(cplx* a, const double* m, std::size_t n) {
  double* p = reinterpret_cast<double*>(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d mm =
        _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(m + i)), 0b01010000);
    _mm256_storeu_pd(p + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(p + 2 * i), mm));
  }
  for (; i < n; ++i) {
    p[2 * i] *= m[i];
    p[2 * i + 1] *= m[i];
  }
}

void mul_complex(cplx* a, const cplx* m, std::size_t n) {
  double* p = reinterpret_cast<double*>(a);
  const double* q = reinterpret_cast<const double*>(m);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d x = _mm256_loadu_pd(p + 2 * i);
    const __m256d y = _mm256_loadu_pd(q + 2 * i);
    _mm256_storeu_pd(p + 2 * i, complex_mul(x, y));
  }
  for (; i < n; ++i) {
    const double ar = p[2 * i], ai = p[2 * i + 1];
    const double mr = q[2 * i], mi = q[2 * i + 1];
    p[2 * i] = ar * mr - ai * mi;
    p[2 * i + 1] = ai * mr + ar * mi;
  }
}

void scale(cplx* a, double s, std::size_t n) {
  double* p = reinterpret_cast<double*>(a);
  const __m256d sv = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= 2 * n; i += 4) _mm256_storeu_pd(p + i, _mm256_mul_pd(_mm256_loadu_pd(p + i), sv));
  for (; i < 2 * n; ++i) p[i] *= s;
}

void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  double* p = reinterpret_cast<double*>(y);
  const double* q = reinterpret_cast<const double*>(x);
  const double br = alpha.real(), bi = alpha.imag();
  const __m256d vr = _mm256_set1_pd(br);
  const __m256d vi = _mm256_set1_pd(bi);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(q + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);
    const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(xv, vr), _mm256_mul_pd(xs, vi));
    _mm256_storeu_pd(p + 2 * i, _mm256_add_pd(_mm256_loadu_pd(p + 2 * i), prod));
  }
  for (; i < n; ++i) {
    const double xr = q[2 * i], xi = q[2 * i + 1];
    p[2 * i] += xr * br - xi * bi;
    p[2 * i + 1] += xi * br + xr * bi;
  }
}

void accumulate_square(cplx* acc, const cplx* d, std::size_t n) {
  double* p = reinterpret_cast<double*>(acc);
  const double* q = reinterpret_cast<const double*>(d);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d dv = _mm256_loadu_pd(q + 2 * i);
    _mm256_storeu_pd(p + 2 * i, _mm256_add_pd(_mm256_loadu_pd(p + 2 * i), complex_mul(dv, dv)));
  }
  for (; i < n; ++i) {
    const double dr = q[2 * i], di = q[2 * i + 1];
    p[2 * i] += dr * dr - di * di;
    p[2 * i + 1] += di * dr + dr * di;
  }
}

void dgl_pointwise(const cplx* u, const cplx* s, cplx* out, std::size_t n) {
  const double* pu = reinterpret_cast<const double*>(u);
  const double* ps = reinterpret_cast<const double*>(s);
  double* po = reinterpret_cast<double*>(out);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d uv = _mm256_loadu_pd(pu + 2 * i);
    const __m256d sv = _mm256_loadu_pd(ps + 2 * i);
    const __m256d sq = _mm256_mul_pd(uv, uv);
    const __m256d den = _mm256_add_pd(one, _mm256_hadd_pd(sq, sq));
    const __m256d re = _mm256_hadd_pd(_mm256_mul_pd(uv, sv), _mm256_setzero_pd());
    const __m256d sw = _mm256_permute_pd(sv, 0b0101);
    const __m256d im = _mm256_hsub_pd(_mm256_setzero_pd(), _mm256_mul_pd(uv, sw));
    // re = [cr0, 0, cr1, 0], im = [0, ci0, 0, ci1]
    const __m256d c = _mm256_blend_pd(re, im, 0b1010);
    _mm256_storeu_pd(po + 2 * i, _mm256_div_pd(c, den));
  }
  for (; i < n; ++i) {
    const double ur = pu[2 * i], ui = pu[2 * i + 1];
    const double sr = ps[2 * i], si = ps[2 * i + 1];
    const double dd = 1.0 + (ur * ur + ui * ui);
    const double cr = ur * sr + ui * si;
    const double ci = ur * si - ui * sr;
    po[2 * i] = cr / dd;
    po[2 * i + 1] = ci / dd;
  }
}

void cross3(const double* const* u, const double* const* v, double* const* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d u0 = _mm256_loadu_pd(u[0] + i), u1 = _mm256_loadu_pd(u[1] + i),
                  u2 = _mm256_loadu_pd(u[2] + i);
    const __m256d v0 = _mm256_loadu_pd(v[0] + i), v1 = _mm256_loadu_pd(v[1] + i),
                  v2 = _mm256_loadu_pd(v[2] + i);
    _mm256_storeu_pd(out[0] + i, _mm256_sub_pd(_mm256_mul_pd(u1, v2), _mm256_mul_pd(u2, v1)));
    _mm256_storeu_pd(out[1] + i, _mm256_sub_pd(_mm256_mul_pd(u2, v0), _mm256_mul_pd(u0, v2)));
    _mm256_storeu_pd(out[2] + i, _mm256_sub_pd(_mm256_mul_pd(u0, v1), _mm256_mul_pd(u1, v0)));
  }
  for (; i < n; ++i) {
    const double u0 = u[0][i], u1 = u[1][i], u2 = u[2][i];
    const double v0 = v[0][i], v1 = v[1][i], v2 = v[2][i];
    out[0][i] = u1 * v2 - u2 * v1;
    out[1][i] = u2 * v0 - u0 * v2;
    out[2][i] = u0 * v1 - u1 * v0;
  }
}

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double sum_abs2(const cplx* a, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= 2 * n; i += 4) {
    const __m256d x = _mm256_loadu_pd(p + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(x, x));
  }
  double s = horizontal_sum(acc);
  for (; i < 2 * n; ++i) s += p[i] * p[i];
  return s;
}

double weighted_sum_abs2(const cplx* a, const double* w, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(p + 2 * i);
    const __m256d x1 = _mm256_loadu_pd(p + 2 * i + 4);
    // [|a0|^2, |a2|^2, |a1|^2, |a3|^2]
    const __m256d m = _mm256_hadd_pd(_mm256_mul_pd(x0, x0), _mm256_mul_pd(x1, x1));
    const __m256d wv = _mm256_permute4x64_pd(_mm256_loadu_pd(w + i), 0b11011000);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(wv, m));
  }
  double s = horizontal_sum(acc);
  for (; i < n; ++i) s += w[i] * (p[2 * i] * p[2 * i] + p[2 * i + 1] * p[2 * i + 1]);
  return s;
}

}  // namespace

const KernelTable avx2_table{mul_real,      mul_complex, scale,    axpy,
                             accumulate_square, dgl_pointwise, cross3, sum_abs2,
                             weighted_sum_abs2};

}  // namespace llg::simd::detail
