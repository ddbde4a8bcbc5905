#pragma once

// u(T) for square matrices with spectrum strictly inside the disk and u a
// BoundedAnalyticFunction.

#include "modelspace/analytic_function.hpp"
#include "modelspace/types.hpp"

namespace modelspace {

/// Spectral radius must not exceed 1 - kSpectralMargin.
inline constexpr double kSpectralMargin = 1e-6;

enum class MatrixFunctionMethod {
  /// Diagonalise when the eigenvector matrix has condition number < 1e6,
  /// otherwise fall back to Schur-Parlett.
  eigen_decomposition,
  /// Always use the Schur-Parlett recurrence.
  schur_parlett_fallback,
};

struct CalculusConfig {
  double verify_tolerance = 1e-8;
  MatrixFunctionMethod matrix_function_method = MatrixFunctionMethod::eigen_decomposition;

  void validate() const;
};

/// Throws near-boundary-spectrum when rho(T) > 1 - 1e-6 and conditioning when
/// a linear solve is numerically singular.
Matrix apply(const BoundedAnalyticFunction& u, const Matrix& t, const CalculusConfig& cfg = {});

/// exp(a) by the configured matrix-function method.
Matrix matrix_exponential(const Matrix& a, const CalculusConfig& cfg = {});

struct ContractivityReport {
  double operator_norm = 0.0;
  double sampled_sup = 0.0;
  bool contractive = false;
};

/// ||u(T)||_2 against the sup of |u| sampled at 512, 1024 and 2048 points.
ContractivityReport check_contractivity(const BoundedAnalyticFunction& u, const Matrix& t,
                                        const CalculusConfig& cfg = {});

/// ||(uv)(T) - u(T) v(T)||_2
double check_multiplicativity(const BoundedAnalyticFunction& u,
                              const BoundedAnalyticFunction& v, const Matrix& t,
                              const CalculusConfig& cfg = {});

}  // namespace modelspace
