#pragma once

// Quadrature on the unit circle for functions analytic on a neighbourhood of
// the closed disk: Fourier coefficients and H^2 inner products by averages
// over roots of unity, with the sample count doubled until two successive
// answers agree.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "modelspace/simd/kernels.hpp"
#include "modelspace/types.hpp"

namespace modelspace {

struct CircleSampler {
  std::size_t sample_count = 1024;  // power of two, >= 256
  int max_doublings = 6;
  double tail_tolerance = 1e-13;

  /// Throws invalid-argument on a malformed sampler.
  void validate() const;
};

/// The n-th roots of unity, split into real and imaginary parts.
class CircleGrid {
 public:
  explicit CircleGrid(std::size_t n);

  std::size_t size() const noexcept { return points_.size(); }
  const simd::ComplexSamples& points() const noexcept { return points_; }
  Complex point(std::size_t j) const { return points_[j]; }

 private:
  simd::ComplexSamples points_;
};

/// Fills `out` (already sized to the grid) with the function's values.
using GridFunction = std::function<void(const CircleGrid&, simd::ComplexSamples& out)>;

/// Adapts a pointwise function.
GridFunction pointwise(std::function<Complex(Complex)> f);

/// c_0 .. c_{count-1}. Throws accuracy (value = last tail estimate) when the
/// doubling budget runs out.
std::vector<Complex> fourier_coefficients(const GridFunction& f,
                                          const CircleSampler& sampler,
                                          std::size_t count);

/// (1/2pi) int f conj(g) dt
Complex h2_inner_product(const GridFunction& f, const GridFunction& g,
                         const CircleSampler& sampler);

/// G(j, k) = <f_k, g_j>, all entries refined together.
Matrix h2_cross_gram(std::span<const GridFunction> f, std::span<const GridFunction> g,
                     const CircleSampler& sampler);

}  // namespace modelspace
