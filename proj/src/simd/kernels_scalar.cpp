#include <cmath>

#include "modelspace/simd/kernels.hpp"

namespace modelspace::simd {
namespace {

void dot_conj_scalar(const double* a_re, const double* a_im, const double* b_re,
                     const double* b_im, std::size_t n, double* out_re,
                     double* out_im) {
  double sr = 0.0;
  double si = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sr += a_re[i] * b_re[i] + a_im[i] * b_im[i];
    si += a_im[i] * b_re[i] - a_re[i] * b_im[i];
  }
  *out_re = sr;
  *out_im = si;
}

void mul_inplace_scalar(const double* a_re, const double* a_im, double* x_re,
                        double* x_im, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double r = a_re[i] * x_re[i] - a_im[i] * x_im[i];
    const double m = a_re[i] * x_im[i] + a_im[i] * x_re[i];
    x_re[i] = r;
    x_im[i] = m;
  }
}

void mul_blaschke_factor_scalar(Complex alpha, Complex c, const double* z_re,
                                const double* z_im, double* x_re, double* x_im,
                                std::size_t n) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  const double cr = c.real();
  const double ci = c.imag();
  for (std::size_t i = 0; i < n; ++i) {
    // numerator c * (alpha - z)
    const double dr = ar - z_re[i];
    const double di = ai - z_im[i];
    const double nr = cr * dr - ci * di;
    const double ni = cr * di + ci * dr;
    // denominator 1 - conj(alpha) z
    const double qr = 1.0 - (ar * z_re[i] + ai * z_im[i]);
    const double qi = -(ar * z_im[i] - ai * z_re[i]);
    const double inv = 1.0 / (qr * qr + qi * qi);
    const double fr = (nr * qr + ni * qi) * inv;
    const double fi = (ni * qr - nr * qi) * inv;
    const double r = fr * x_re[i] - fi * x_im[i];
    const double m = fr * x_im[i] + fi * x_re[i];
    x_re[i] = r;
    x_im[i] = m;
  }
}

void mul_cauchy_kernel_scalar(Complex alpha, double scale, const double* z_re,
                              const double* z_im, double* x_re, double* x_im,
                              std::size_t n) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double qr = 1.0 - (ar * z_re[i] + ai * z_im[i]);
    const double qi = -(ar * z_im[i] - ai * z_re[i]);
    const double inv = scale / (qr * qr + qi * qi);
    const double fr = qr * inv;
    const double fi = -qi * inv;
    const double r = fr * x_re[i] - fi * x_im[i];
    const double m = fr * x_im[i] + fi * x_re[i];
    x_re[i] = r;
    x_im[i] = m;
  }
}

double max_abs_scalar(const double* x_re, const double* x_im, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double m2 = x_re[i] * x_re[i] + x_im[i] * x_im[i];
    if (m2 > best) best = m2;
  }
  return std::sqrt(best);
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{
      "scalar",           dot_conj_scalar,          mul_inplace_scalar,
      mul_blaschke_factor_scalar, mul_cauchy_kernel_scalar, max_abs_scalar,
  };
  return table;
}

}  // namespace modelspace::simd
