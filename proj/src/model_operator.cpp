#include "modelspace/model_operator.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

#include "modelspace/error.hpp"
#include "modelspace/linalg.hpp"

namespace modelspace {
namespace {

constexpr double kBasisTolerance = 1e-10;
constexpr double kEigenvalueTolerance = 1e-8;
constexpr double kOracleTolerance = 1e-8;

// c with b_alpha(z) = c (alpha - z) / (1 - conj(alpha) z); b_0(z) = z needs c = -1.
Complex factor_constant(Complex alpha) {
  if (alpha == Complex{0.0, 0.0}) return {-1.0, 0.0};
  return blaschke_normalization(alpha);
}

void check_model_symbol(const InnerFunction& b) {
  if (!b.is_finite_blaschke()) {
    throw Error(ErrorKind::unsupported_model,
                "model operators need a finite Blaschke product (no singular part)");
  }
  const int n = b.degree();
  if (n == 0) {
    throw Error(ErrorKind::degenerate_model, "a constant symbol has a zero-dimensional model");
  }
  if (n > kMaxModelDegree) {
    throw Error(ErrorKind::conditioning, "model degree exceeds 16", n);
  }
  for (const auto& atom : b.blaschke().atoms()) {
    if (std::abs(atom.alpha) > kMaxModelZeroModulus) {
      throw Error(ErrorKind::conditioning, "zero too close to the unit circle",
                  std::abs(atom.alpha));
    }
  }
}

void require(bool ok, const char* what, double value) {
  if (!ok) throw Error(ErrorKind::accuracy, what, value);
}

}  // namespace

ModelSpaceBasis::ModelSpaceBasis(std::vector<Complex> zeros) : zeros_(std::move(zeros)) {
  for (Complex a : zeros_) {
    if (!(std::abs(a) < 1.0)) {
      throw Error(ErrorKind::invalid_zero, "basis zero outside the disk", std::abs(a));
    }
  }
}

Complex ModelSpaceBasis::evaluate(std::size_t k, Complex z) const {
  const Complex a = zeros_.at(k);
  Complex v = std::sqrt(1.0 - std::norm(a)) / (1.0 - std::conj(a) * z);
  for (std::size_t j = 0; j < k; ++j) v *= eval_blaschke_factor(zeros_[j], z);
  return v;
}

void ModelSpaceBasis::sample(std::size_t k, const CircleGrid& grid,
                             simd::ComplexSamples& out) const {
  const Complex a = zeros_.at(k);
  out.resize(grid.size());
  out.fill({1.0, 0.0});
  for (std::size_t j = 0; j < k; ++j) {
    simd::mul_blaschke_factor(zeros_[j], factor_constant(zeros_[j]), grid.points(), out);
  }
  simd::mul_cauchy_kernel(a, std::sqrt(1.0 - std::norm(a)), grid.points(), out);
}

GridFunction ModelSpaceBasis::function(std::size_t k) const {
  return [basis = *this, k](const CircleGrid& grid, simd::ComplexSamples& out) {
    basis.sample(k, grid, out);
  };
}

ModelOperator build_model_operator(const InnerFunction& b, const CircleSampler& sampler) {
  check_model_symbol(b);
  ModelSpaceBasis basis(b.blaschke().expanded_zeros());
  const std::size_t n = basis.dimension();

  std::vector<GridFunction> e;
  std::vector<GridFunction> ze;
  std::vector<GridFunction> symbol_multiples;
  for (std::size_t k = 0; k < n; ++k) {
    e.push_back(basis.function(k));
    ze.push_back([&basis, k](const CircleGrid& grid, simd::ComplexSamples& out) {
      basis.sample(k, grid, out);
      simd::mul_inplace(grid.points(), out);
    });
    symbol_multiples.push_back([&b, k](const CircleGrid& grid, simd::ComplexSamples& out) {
      out.fill(b.gamma());
      for (const auto& atom : b.blaschke().atoms()) {
        for (int r = 0; r < atom.multiplicity; ++r) {
          simd::mul_blaschke_factor(atom.alpha, factor_constant(atom.alpha), grid.points(), out);
        }
      }
      for (std::size_t m = 0; m < k; ++m) simd::mul_inplace(grid.points(), out);
    });
  }

  ModelOperator model{b, h2_cross_gram(ze, e, sampler), basis, {}};
  auto& diag = model.diagnostics;
  const auto nn = static_cast<Eigen::Index>(n);

  const Matrix gram = h2_cross_gram(e, e, sampler);
  diag.gram_deviation = (gram - Matrix::Identity(nn, nn)).cwiseAbs().maxCoeff();
  diag.symbol_leakage = h2_cross_gram(e, symbol_multiples, sampler).cwiseAbs().maxCoeff();
  diag.operator_norm = linalg::spectral_norm(model.matrix);
  for (Eigen::Index j = 0; j < nn; ++j) {
    for (Eigen::Index k = j + 1; k < nn; ++k) {
      diag.upper_leakage = std::max(diag.upper_leakage, std::abs(model.matrix(j, k)));
    }
    diag.diagonal_deviation =
        std::max(diag.diagonal_deviation,
                 std::abs(model.matrix(j, j) - basis.zeros()[static_cast<std::size_t>(j)]));
    diag.spectral_radius = std::max(diag.spectral_radius, std::abs(model.matrix(j, j)));
  }

  require(diag.gram_deviation <= kBasisTolerance, "basis is not orthonormal",
          diag.gram_deviation);
  require(diag.symbol_leakage <= kBasisTolerance, "basis leaks into b H2",
          diag.symbol_leakage);
  require(diag.operator_norm <= 1.0 + kBasisTolerance, "model is not a contraction",
          diag.operator_norm);
  require(diag.upper_leakage <= kBasisTolerance, "model matrix is not lower triangular",
          diag.upper_leakage);
  require(diag.diagonal_deviation <= kEigenvalueTolerance,
          "model spectrum differs from the zeros of b", diag.diagonal_deviation);
  require(diag.spectral_radius < 1.0, "model spectrum reaches the circle",
          diag.spectral_radius);
  return model;
}

// ---------------------------------------------------------------------------

namespace {

// Taylor coefficients 0..degree of b.
std::vector<Complex> symbol_series(const InnerFunction& b, std::size_t degree) {
  std::vector<Complex> s(degree + 1, Complex{0.0, 0.0});
  s[0] = b.gamma();
  for (Complex a : b.blaschke().expanded_zeros()) {
    const Complex c = factor_constant(a);
    // multiply by c (a - z)
    for (std::size_t k = degree; k > 0; --k) s[k] = c * (a * s[k] - s[k - 1]);
    s[0] = c * a * s[0];
    // divide by (1 - conj(a) z)
    const Complex ca = std::conj(a);
    for (std::size_t k = 1; k <= degree; ++k) s[k] += ca * s[k - 1];
  }
  return s;
}

Matrix compress_at(const InnerFunction& b, std::size_t trunc) {
  const auto n = static_cast<Eigen::Index>(b.degree());
  const auto rows = static_cast<Eigen::Index>(trunc + 1);
  const Eigen::Index cols = rows - n;
  const auto series = symbol_series(b, trunc);

  Matrix multiples = Matrix::Zero(rows, cols);
  for (Eigen::Index m = 0; m < cols; ++m) {
    for (Eigen::Index i = m; i < rows; ++i) {
      multiples(i, m) = series[static_cast<std::size_t>(i - m)];
    }
  }
  Eigen::HouseholderQR<Matrix> qr(multiples);
  Matrix tail = Matrix::Zero(rows, n);
  for (Eigen::Index k = 0; k < n; ++k) tail(cols + k, k) = 1.0;
  const Matrix complement = qr.householderQ() * tail;

  Matrix shifted = Matrix::Zero(rows, n);
  shifted.bottomRows(rows - 1) = complement.topRows(rows - 1);
  return complement.adjoint() * shifted;
}

}  // namespace

OracleCompression oracle_compressed_shift(const InnerFunction& b, std::size_t trunc_degree) {
  check_model_symbol(b);
  const auto n = static_cast<std::size_t>(b.degree());
  if (trunc_degree < 8 * n) {
    throw Error(ErrorKind::invalid_argument, "truncation degree must be at least 8 deg(b)",
                static_cast<double>(trunc_degree));
  }
  OracleCompression out;
  out.truncation = trunc_degree;
  out.matrix = compress_at(b, trunc_degree);
  const Matrix coarser = compress_at(b, trunc_degree - 1);
  out.successive_deviation =
      (linalg::singular_values(out.matrix) - linalg::singular_values(coarser))
          .cwiseAbs()
          .maxCoeff();
  if (out.successive_deviation > kOracleTolerance) {
    throw Error(ErrorKind::accuracy, "truncation too small to resolve K_b",
                out.successive_deviation);
  }
  return out;
}

std::size_t suggested_truncation(const InnerFunction& b) {
  const auto n = static_cast<std::size_t>(b.degree());
  double r = 0.0;
  for (const auto& atom : b.blaschke().atoms()) r = std::max(r, std::abs(atom.alpha));
  std::size_t decay = 0;
  if (r > 0.0) decay = static_cast<std::size_t>(std::ceil(std::log(1e-15) / std::log(r)));
  return std::max(8 * n, decay + 4 * n);
}

SpectralComparison compare_spectra(const Matrix& a, const Matrix& b) {
  SpectralComparison c;
  const auto ea = linalg::eigenvalues(a);
  const auto eb = linalg::eigenvalues(b);
  c.eigenvalue_deviation = linalg::multiset_deviation(ea, eb);
  if (a.rows() != b.rows()) {
    c.singular_value_deviation = std::numeric_limits<double>::infinity();
  } else if (a.rows() > 0) {
    c.singular_value_deviation =
        (linalg::singular_values(a) - linalg::singular_values(b)).cwiseAbs().maxCoeff();
  }
  return c;
}

}  // namespace modelspace
