#include "modelspace/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace modelspace::linalg {

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

Eigen::VectorXd singular_values(const Matrix& a) {
  if (a.size() == 0) return Eigen::VectorXd();
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues();
}

std::vector<Complex> eigenvalues(const Matrix& a) {
  if (a.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Matrix> solver(a, false);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double spectral_radius(const Matrix& a) {
  double r = 0.0;
  for (Complex l : eigenvalues(a)) r = std::max(r, std::abs(l));
  return r;
}

std::vector<Complex> polynomial_roots(std::span<const Complex> coefficients) {
  std::size_t degree = coefficients.size();
  while (degree > 0 && coefficients[degree - 1] == Complex{0.0, 0.0}) --degree;
  if (degree <= 1) return {};
  const Eigen::Index n = static_cast<Eigen::Index>(degree - 1);
  const Complex lead = coefficients[degree - 1];
  Matrix companion = Matrix::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    companion(i, n - 1) = -coefficients[static_cast<std::size_t>(i)] / lead;
  }
  return eigenvalues(companion);
}

double multiset_deviation(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> a_used(a.size(), false);
  std::vector<bool> used(b.size(), false);
  // Pair the globally closest remaining elements first.
  double worst = 0.0;
  for (std::size_t round = 0; round < a.size(); ++round) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    std::size_t bj = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a_used[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (used[j]) continue;
        const double d = std::abs(a[i] - b[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    a_used[bi] = true;
    used[bj] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

double invariance_residual(const Matrix& t, const Matrix& frame) {
  if (frame.cols() == 0) return 0.0;
  const Matrix tf = t * frame;
  const Matrix leak = tf - frame * (frame.adjoint() * tf);
  return spectral_norm(leak);
}

double subspace_gap(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) return 1.0;
  if (a.cols() == 0) return 0.0;
  const Matrix ab = a - b * (b.adjoint() * a);
  const Matrix ba = b - a * (a.adjoint() * b);
  return std::min(1.0, std::max(spectral_norm(ab), spectral_norm(ba)));
}

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

}  // namespace modelspace::linalg
