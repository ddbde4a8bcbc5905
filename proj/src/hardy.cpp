#include "modelspace/hardy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "modelspace/error.hpp"

namespace modelspace {
namespace {

std::vector<simd::ComplexSamples> sample_all(std::span<const GridFunction> fs,
                                             const CircleGrid& grid) {
  std::vector<simd::ComplexSamples> out(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    out[i].resize(grid.size());
    fs[i](grid, out[i]);
  }
  return out;
}

double rms(const simd::ComplexSamples& v) {
  const double s = simd::dot_conj(v, v).real();
  return std::sqrt(std::max(s, 0.0) / static_cast<double>(v.size()));
}

Matrix cross_gram_at(std::span<const GridFunction> f, std::span<const GridFunction> g,
                     std::size_t n, double& scale) {
  const CircleGrid grid(n);
  const auto fv = sample_all(f, grid);
  const auto gv = sample_all(g, grid);
  double fmax = 0.0;
  double gmax = 0.0;
  for (const auto& v : fv) fmax = std::max(fmax, rms(v));
  for (const auto& v : gv) gmax = std::max(gmax, rms(v));
  scale = fmax * gmax;

  Matrix out(static_cast<Eigen::Index>(g.size()), static_cast<Eigen::Index>(f.size()));
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (std::size_t k = 0; k < f.size(); ++k) {
      out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
          simd::dot_conj(fv[k], gv[j]) * inv_n;
    }
  }
  return out;
}

}  // namespace

void CircleSampler::validate() const {
  if (sample_count < 256 || !std::has_single_bit(sample_count)) {
    throw Error(ErrorKind::invalid_argument,
                "sample count must be a power of two no smaller than 256",
                static_cast<double>(sample_count));
  }
  if (max_doublings < 1 || max_doublings > 20) {
    throw Error(ErrorKind::invalid_argument, "max_doublings must lie in [1, 20]",
                max_doublings);
  }
  if (!(tail_tolerance > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "tail tolerance must be positive",
                tail_tolerance);
  }
}

CircleGrid::CircleGrid(std::size_t n) : points_(n) {
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = step * static_cast<double>(j);
    points_.re[j] = std::cos(t);
    points_.im[j] = std::sin(t);
  }
}

GridFunction pointwise(std::function<Complex(Complex)> f) {
  return [f = std::move(f)](const CircleGrid& grid, simd::ComplexSamples& out) {
    for (std::size_t j = 0; j < grid.size(); ++j) out.set(j, f(grid.point(j)));
  };
}

std::vector<Complex> fourier_coefficients(const GridFunction& f,
                                          const CircleSampler& sampler,
                                          std::size_t count) {
  sampler.validate();
  std::size_t n = sampler.sample_count;
  while (n < 2 * count) n *= 2;

  auto at = [&](std::size_t samples, double& norm) {
    const CircleGrid grid(samples);
    simd::ComplexSamples values(samples);
    f(grid, values);
    norm = rms(values);
    std::vector<Complex> coeffs(count);
    simd::ComplexSamples power(samples);
    for (std::size_t k = 0; k < count; ++k) {
      for (std::size_t j = 0; j < samples; ++j) {
        const std::size_t idx = (j * k) % samples;
        power.re[j] = grid.points().re[idx];
        power.im[j] = grid.points().im[idx];
      }
      coeffs[k] = simd::dot_conj(values, power) / static_cast<double>(samples);
    }
    return coeffs;
  };

  double norm = 0.0;
  auto previous = at(n, norm);
  double tail = std::numeric_limits<double>::infinity();
  for (int d = 0; d < sampler.max_doublings; ++d) {
    n *= 2;
    auto current = at(n, norm);
    tail = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      tail = std::max(tail, std::abs(current[k] - previous[k]));
    }
    if (tail <= sampler.tail_tolerance * std::max(norm, 1e-300)) return current;
    previous = std::move(current);
  }
  throw Error(ErrorKind::accuracy, "Fourier coefficients did not stabilise", tail);
}

Complex h2_inner_product(const GridFunction& f, const GridFunction& g,
                         const CircleSampler& sampler) {
  const GridFunction fs[] = {f};
  const GridFunction gs[] = {g};
  return h2_cross_gram(fs, gs, sampler)(0, 0);
}

Matrix h2_cross_gram(std::span<const GridFunction> f, std::span<const GridFunction> g,
                     const CircleSampler& sampler) {
  sampler.validate();
  std::size_t n = sampler.sample_count;
  double scale = 0.0;
  Matrix previous = cross_gram_at(f, g, n, scale);
  double tail = std::numeric_limits<double>::infinity();
  for (int d = 0; d < sampler.max_doublings; ++d) {
    n *= 2;
    Matrix current = cross_gram_at(f, g, n, scale);
    tail = previous.size() == 0 ? 0.0 : (current - previous).cwiseAbs().maxCoeff();
    if (tail <= sampler.tail_tolerance * std::max(scale, 1e-300)) return current;
    previous = std::move(current);
  }
  throw Error(ErrorKind::accuracy, "H2 inner products did not stabilise", tail);
}

}  // namespace modelspace
