#pragma once

#include <span>
#include <vector>

#include "modelspace/types.hpp"

namespace modelspace::linalg {

/// Largest singular value; 0 for empty matrices.
double spectral_norm(const Matrix& a);
/// Descending.
Eigen::VectorXd singular_values(const Matrix& a);
std::vector<Complex> eigenvalues(const Matrix& a);
double spectral_radius(const Matrix& a);

/// Roots of sum_k c_k z^k (ascending coefficients, trailing zeros trimmed).
std::vector<Complex> polynomial_roots(std::span<const Complex> coefficients);

/// Largest distance between paired elements under a greedy nearest matching.
/// The inputs must have equal size.
double multiset_deviation(std::span<const Complex> a, std::span<const Complex> b);

/// ||(I - F F^H) T F||_2 for an orthonormal frame F.
double invariance_residual(const Matrix& t, const Matrix& frame);

/// Gap between the ranges of two orthonormal frames,
/// max(||(I - P_B) P_A||, ||(I - P_A) P_B||): the sine of the largest
/// principal angle, and 1 when the dimensions differ.
double subspace_gap(const Matrix& a, const Matrix& b);

Matrix identity(Eigen::Index n);

}  // namespace modelspace::linalg
