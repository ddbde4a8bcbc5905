#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "modelspace/simd/kernels.hpp"

namespace modelspace::simd {

#if defined(MODELSPACE_HAVE_AVX2)
const KernelTable& avx2_kernel_table() noexcept;
#endif

namespace {

bool host_has_avx2() noexcept {
#if defined(MODELSPACE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& select_kernels() noexcept {
  if (const char* forced = std::getenv("MODELSPACE_SIMD");
      forced != nullptr && std::strcmp(forced, "scalar") == 0) {
    return scalar_kernels();
  }
  if (const KernelTable* avx2 = avx2_kernels()) return *avx2;
  return scalar_kernels();
}

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("simd: sample buffers differ in length");
}

}  // namespace

void ComplexSamples::fill(Complex value) {
  std::fill(re.begin(), re.end(), value.real());
  std::fill(im.begin(), im.end(), value.imag());
}

const KernelTable* avx2_kernels() noexcept {
#if defined(MODELSPACE_HAVE_AVX2)
  static const bool available = host_has_avx2();
  return available ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() noexcept {
  static const KernelTable& table = select_kernels();
  return table;
}

Complex dot_conj(const ComplexSamples& a, const ComplexSamples& b) {
  require_same_size(a.size(), b.size());
  double r = 0.0;
  double i = 0.0;
  active_kernels().dot_conj(a.re.data(), a.im.data(), b.re.data(), b.im.data(),
                            a.size(), &r, &i);
  return {r, i};
}

void mul_inplace(const ComplexSamples& a, ComplexSamples& x) {
  require_same_size(a.size(), x.size());
  active_kernels().mul_inplace(a.re.data(), a.im.data(), x.re.data(),
                               x.im.data(), x.size());
}

void mul_blaschke_factor(Complex alpha, Complex c, const ComplexSamples& z,
                         ComplexSamples& x) {
  require_same_size(z.size(), x.size());
  active_kernels().mul_blaschke_factor(alpha, c, z.re.data(), z.im.data(),
                                       x.re.data(), x.im.data(), x.size());
}

void mul_cauchy_kernel(Complex alpha, double scale, const ComplexSamples& z,
                       ComplexSamples& x) {
  require_same_size(z.size(), x.size());
  active_kernels().mul_cauchy_kernel(alpha, scale, z.re.data(), z.im.data(),
                                     x.re.data(), x.im.data(), x.size());
}

double max_abs(const ComplexSamples& x) {
  return active_kernels().max_abs(x.re.data(), x.im.data(), x.size());
}

}  // namespace modelspace::simd
