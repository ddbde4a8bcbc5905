#pragma once

// Finite model operators: the compressed shift S(b) on K_b = H^2 (-) b H^2 for
// a finite Blaschke product b, written in the Takenaka-Malmquist-Walsh basis
//
//   e_k(z) = sqrt(1 - |a_k|^2) / (1 - conj(a_k) z) * prod_{j<k} b_{a_j}(z).

#include <cstddef>
#include <span>
#include <vector>

#include "modelspace/hardy.hpp"
#include "modelspace/inner_algebra.hpp"
#include "modelspace/types.hpp"

namespace modelspace {

inline constexpr int kMaxModelDegree = 16;
inline constexpr double kMaxModelZeroModulus = 0.95;

class ModelSpaceBasis {
 public:
  ModelSpaceBasis() = default;
  /// Zeros with multiplicity expanded, in chain order.
  explicit ModelSpaceBasis(std::vector<Complex> zeros);

  std::size_t dimension() const noexcept { return zeros_.size(); }
  std::span<const Complex> zeros() const noexcept { return zeros_; }

  Complex evaluate(std::size_t k, Complex z) const;
  void sample(std::size_t k, const CircleGrid& grid, simd::ComplexSamples& out) const;
  GridFunction function(std::size_t k) const;

 private:
  std::vector<Complex> zeros_;
};

/// Residuals measured while building a model; all are checked against the
/// stated tolerances before a ModelOperator is returned.
struct ModelDiagnostics {
  double gram_deviation = 0.0;      // max |<e_k, e_j> - delta_jk|, <= 1e-10
  double symbol_leakage = 0.0;      // max |<e_k, b z^m>|, m < n, <= 1e-10
  double operator_norm = 0.0;       // <= 1 + 1e-10
  double upper_leakage = 0.0;       // max |M_jk|, j < k, <= 1e-10
  double diagonal_deviation = 0.0;  // max |M_kk - a_k|, <= 1e-8
  double spectral_radius = 0.0;     // < 1
};

struct ModelOperator {
  InnerFunction symbol;
  Matrix matrix;
  ModelSpaceBasis basis;
  ModelDiagnostics diagnostics;
};

/// M_jk = <z e_k, e_j> by circle quadrature.
///
/// The matrix is lower triangular with the zeros on its diagonal, which is
/// how the eigenvalue multiset is certified without an eigen-solver.
ModelOperator build_model_operator(const InnerFunction& b, const CircleSampler& sampler = {});

struct OracleCompression {
  Matrix matrix;
  std::size_t truncation = 0;
  /// Largest singular-value change against truncation - 1.
  double successive_deviation = 0.0;
};

/// Compression of the shift to K_b computed inside the polynomials of degree
/// <= trunc_degree from the Taylor series of b; shares no code with the
/// quadrature path. Throws accuracy when successive truncations disagree by
/// more than 1e-8.
OracleCompression oracle_compressed_shift(const InnerFunction& b, std::size_t trunc_degree);

/// A truncation degree that resolves K_b to roughly 1e-15.
std::size_t suggested_truncation(const InnerFunction& b);

/// Eigenvalue and singular-value deviation between two matrices that should
/// be unitarily equivalent.
struct SpectralComparison {
  double eigenvalue_deviation = 0.0;
  double singular_value_deviation = 0.0;
};
SpectralComparison compare_spectra(const Matrix& a, const Matrix& b);

}  // namespace modelspace
