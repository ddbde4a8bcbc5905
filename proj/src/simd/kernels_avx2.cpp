// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be reached through the dispatcher after a CPU feature check.

#include <immintrin.h>

#include <cmath>

#include "modelspace/simd/kernels.hpp"

namespace modelspace::simd {
namespace {

constexpr std::size_t kLanes = 4;

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double horizontal_max(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(s, _mm_unpackhi_pd(s, s)));
}

// (xr + i xi) *= (fr + i fi), in place
inline void cmul_store(__m256d fr, __m256d fi, double* x_re, double* x_im) {
  const __m256d xr = _mm256_loadu_pd(x_re);
  const __m256d xi = _mm256_loadu_pd(x_im);
  const __m256d r = _mm256_fmsub_pd(fr, xr, _mm256_mul_pd(fi, xi));
  const __m256d m = _mm256_fmadd_pd(fr, xi, _mm256_mul_pd(fi, xr));
  _mm256_storeu_pd(x_re, r);
  _mm256_storeu_pd(x_im, m);
}

void dot_conj_avx2(const double* a_re, const double* a_im, const double* b_re,
                   const double* b_im, std::size_t n, double* out_re,
                   double* out_im) {
  __m256d sr = _mm256_setzero_pd();
  __m256d si = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d ar = _mm256_loadu_pd(a_re + i);
    const __m256d ai = _mm256_loadu_pd(a_im + i);
    const __m256d br = _mm256_loadu_pd(b_re + i);
    const __m256d bi = _mm256_loadu_pd(b_im + i);
    sr = _mm256_fmadd_pd(ar, br, sr);
    sr = _mm256_fmadd_pd(ai, bi, sr);
    si = _mm256_fmadd_pd(ai, br, si);
    si = _mm256_fnmadd_pd(ar, bi, si);
  }
  double tr = horizontal_sum(sr);
  double ti = horizontal_sum(si);
  for (; i < n; ++i) {
    tr += a_re[i] * b_re[i] + a_im[i] * b_im[i];
    ti += a_im[i] * b_re[i] - a_re[i] * b_im[i];
  }
  *out_re = tr;
  *out_im = ti;
}

void mul_inplace_avx2(const double* a_re, const double* a_im, double* x_re,
                      double* x_im, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    cmul_store(_mm256_loadu_pd(a_re + i), _mm256_loadu_pd(a_im + i), x_re + i,
               x_im + i);
  }
  scalar_kernels().mul_inplace(a_re + i, a_im + i, x_re + i, x_im + i, n - i);
}

void mul_blaschke_factor_avx2(Complex alpha, Complex c, const double* z_re,
                              const double* z_im, double* x_re, double* x_im,
                              std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const __m256d cr = _mm256_set1_pd(c.real());
  const __m256d ci = _mm256_set1_pd(c.imag());
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d zr = _mm256_loadu_pd(z_re + i);
    const __m256d zi = _mm256_loadu_pd(z_im + i);
    const __m256d dr = _mm256_sub_pd(ar, zr);
    const __m256d di = _mm256_sub_pd(ai, zi);
    const __m256d nr = _mm256_fmsub_pd(cr, dr, _mm256_mul_pd(ci, di));
    const __m256d ni = _mm256_fmadd_pd(cr, di, _mm256_mul_pd(ci, dr));
    const __m256d qr = _mm256_sub_pd(one, _mm256_fmadd_pd(ar, zr, _mm256_mul_pd(ai, zi)));
    const __m256d qi = _mm256_fmsub_pd(ai, zr, _mm256_mul_pd(ar, zi));
    const __m256d inv =
        _mm256_div_pd(one, _mm256_fmadd_pd(qr, qr, _mm256_mul_pd(qi, qi)));
    const __m256d fr = _mm256_mul_pd(_mm256_fmadd_pd(nr, qr, _mm256_mul_pd(ni, qi)), inv);
    const __m256d fi = _mm256_mul_pd(_mm256_fmsub_pd(ni, qr, _mm256_mul_pd(nr, qi)), inv);
    cmul_store(fr, fi, x_re + i, x_im + i);
  }
  scalar_kernels().mul_blaschke_factor(alpha, c, z_re + i, z_im + i, x_re + i,
                                       x_im + i, n - i);
}

void mul_cauchy_kernel_avx2(Complex alpha, double scale, const double* z_re,
                            const double* z_im, double* x_re, double* x_im,
                            std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const __m256d sc = _mm256_set1_pd(scale);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d zr = _mm256_loadu_pd(z_re + i);
    const __m256d zi = _mm256_loadu_pd(z_im + i);
    const __m256d qr = _mm256_sub_pd(one, _mm256_fmadd_pd(ar, zr, _mm256_mul_pd(ai, zi)));
    const __m256d qi = _mm256_fmsub_pd(ai, zr, _mm256_mul_pd(ar, zi));
    const __m256d inv =
        _mm256_div_pd(sc, _mm256_fmadd_pd(qr, qr, _mm256_mul_pd(qi, qi)));
    const __m256d fr = _mm256_mul_pd(qr, inv);
    const __m256d fi = _mm256_mul_pd(_mm256_sub_pd(zero, qi), inv);
    cmul_store(fr, fi, x_re + i, x_im + i);
  }
  scalar_kernels().mul_cauchy_kernel(alpha, scale, z_re + i, z_im + i, x_re + i,
                                     x_im + i, n - i);
}

double max_abs_avx2(const double* x_re, const double* x_im, std::size_t n) {
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d r = _mm256_loadu_pd(x_re + i);
    const __m256d m = _mm256_loadu_pd(x_im + i);
    best = _mm256_max_pd(best, _mm256_fmadd_pd(r, r, _mm256_mul_pd(m, m)));
  }
  double b = horizontal_max(best);
  for (; i < n; ++i) {
    const double m2 = x_re[i] * x_re[i] + x_im[i] * x_im[i];
    if (m2 > b) b = m2;
  }
  return std::sqrt(b);
}

}  // namespace

const KernelTable& avx2_kernel_table() noexcept {
  static const KernelTable table{
      "avx2",           dot_conj_avx2,          mul_inplace_avx2,
      mul_blaschke_factor_avx2, mul_cauchy_kernel_avx2, max_abs_avx2,
  };
  return table;
}

}  // namespace modelspace::simd
