#pragma once

// Data-parallel inner loops of the circle quadrature. Values on a sample grid
// are stored split (structure of arrays) so that the vector variants can load
// four real parts and four imaginary parts at a time.
//
// Every kernel has a scalar reference implementation; vector variants are
// compiled into separate translation units and chosen at runtime from the
// host CPU's feature bits. Setting MODELSPACE_SIMD=scalar forces the
// reference path.

#include <cstddef>
#include <string_view>
#include <vector>

#include "modelspace/types.hpp"

namespace modelspace::simd {

struct ComplexSamples {
  std::vector<double> re;
  std::vector<double> im;

  ComplexSamples() = default;
  explicit ComplexSamples(std::size_t n, Complex fill = {0.0, 0.0})
      : re(n, fill.real()), im(n, fill.imag()) {}

  std::size_t size() const noexcept { return re.size(); }
  void resize(std::size_t n) {
    re.resize(n);
    im.resize(n);
  }
  void fill(Complex value);
  Complex operator[](std::size_t i) const { return {re[i], im[i]}; }
  void set(std::size_t i, Complex value) {
    re[i] = value.real();
    im[i] = value.imag();
  }
};

/// Function table for one instruction set. All pointers are non-null.
struct KernelTable {
  std::string_view name;

  /// out = sum_i a_i * conj(b_i)
  void (*dot_conj)(const double* a_re, const double* a_im, const double* b_re,
                   const double* b_im, std::size_t n, double* out_re,
                   double* out_im);

  /// x_i *= a_i
  void (*mul_inplace)(const double* a_re, const double* a_im, double* x_re,
                      double* x_im, std::size_t n);

  /// x_i *= c * (alpha - z_i) / (1 - conj(alpha) z_i)
  void (*mul_blaschke_factor)(Complex alpha, Complex c, const double* z_re,
                              const double* z_im, double* x_re, double* x_im,
                              std::size_t n);

  /// x_i *= scale / (1 - conj(alpha) z_i)
  void (*mul_cauchy_kernel)(Complex alpha, double scale, const double* z_re,
                            const double* z_im, double* x_re, double* x_im,
                            std::size_t n);

  /// max_i |x_i|
  double (*max_abs)(const double* x_re, const double* x_im, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;

/// Null when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels() noexcept;

/// The table used by the wrappers below; selected once per process.
const KernelTable& active_kernels() noexcept;

Complex dot_conj(const ComplexSamples& a, const ComplexSamples& b);
void mul_inplace(const ComplexSamples& a, ComplexSamples& x);
void mul_blaschke_factor(Complex alpha, Complex c, const ComplexSamples& z,
                         ComplexSamples& x);
void mul_cauchy_kernel(Complex alpha, double scale, const ComplexSamples& z,
                       ComplexSamples& x);
double max_abs(const ComplexSamples& x);

}  // namespace modelspace::simd
