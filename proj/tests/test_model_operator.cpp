#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "modelspace/c0_engine.hpp"
#include "modelspace/error.hpp"
#include "modelspace/linalg.hpp"
#include "modelspace/model_operator.hpp"
#include "modelspace/random.hpp"

using namespace modelspace;

namespace {

InnerFunction b(Complex a, int k = 1) { return InnerFunction::blaschke_factor(a, k); }

InnerFunction product(std::initializer_list<Complex> zeros) {
  InnerFunction out;
  for (Complex a : zeros) out = multiply(out, b(a));
  return out;
}

// e_k from its closed form, with plain std::complex arithmetic.
Complex basis_value(const std::vector<Complex>& zeros, std::size_t k, Complex w) {
  Complex v = std::sqrt(1.0 - std::norm(zeros[k])) / (1.0 - std::conj(zeros[k]) * w);
  for (std::size_t j = 0; j < k; ++j) {
    const Complex a = zeros[j];
    v *= std::abs(a) == 0.0 ? w : (std::abs(a) / a) * (a - w) / (1.0 - std::conj(a) * w);
  }
  return v;
}

// <z e_k, e_j> by a Riemann sum on 8192 points.
Matrix reference_model(const std::vector<Complex>& zeros) {
  const std::size_t n = zeros.size(), N = 8192;
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t p = 0; p < N; ++p) {
    const Complex w = std::polar(1.0, 2.0 * M_PI * p / N);
    std::vector<Complex> e(n);
    for (std::size_t k = 0; k < n; ++k) e[k] = basis_value(zeros, k, w);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) m(j, k) += w * e[k] * std::conj(e[j]);
    }
  }
  return m / static_cast<double>(N);
}

void expect_error(ErrorKind kind, const std::function<void()>& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(BuildModelOperator, ZSquaredIsTheJordanCell) {
  const ModelOperator m = build_model_operator(InnerFunction::z_power(2));
  ASSERT_EQ(m.matrix.rows(), 2);
  Matrix expected = Matrix::Zero(2, 2);
  expected(1, 0) = 1.0;
  EXPECT_LE((m.matrix - expected).cwiseAbs().maxCoeff(), 1e-13);
  // basis {1, z}
  EXPECT_NEAR(std::abs(m.basis.evaluate(0, {0.3, 0.2}) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m.basis.evaluate(1, {0.3, 0.2}) - Complex{0.3, 0.2}), 0.0, 1e-15);
}

TEST(BuildModelOperator, DegreeOne) {
  const Complex a{0.3, -0.55};
  const ModelOperator m = build_model_operator(b(a));
  ASSERT_EQ(m.matrix.rows(), 1);
  EXPECT_NEAR(std::abs(m.matrix(0, 0)), std::abs(a), 1e-13);
  EXPECT_NEAR(std::abs(m.matrix(0, 0) - a), 0.0, 1e-13);
  EXPECT_TRUE(equiv(minimal_function(m.matrix), b(a), MatchTolerance{.zero = 1e-6}));
}

TEST(BuildModelOperator, OppositeZeros) {
  const InnerFunction sym = product({0.5, -0.5});
  const ModelOperator m = build_model_operator(sym);
  const std::vector<Complex> expected{0.5, -0.5};
  EXPECT_LE(linalg::multiset_deviation(linalg::eigenvalues(m.matrix), expected), 1e-12);
  const auto oracle = oracle_compressed_shift(sym, 32);
  const auto cmp = compare_spectra(m.matrix, oracle.matrix);
  EXPECT_LE(cmp.eigenvalue_deviation, 1e-8);
  EXPECT_LE(cmp.singular_value_deviation, 1e-8);
}

TEST(BuildModelOperator, MatchesDirectQuadrature) {
  Rng rng(17);
  for (int i = 0; i < 5; ++i) {
    const InnerFunction sym = random_blaschke(rng, 2 + i, 0.8);
    const ModelOperator m = build_model_operator(sym);
    const auto zeros = std::vector<Complex>(m.basis.zeros().begin(), m.basis.zeros().end());
    EXPECT_LE((m.matrix - reference_model(zeros)).cwiseAbs().maxCoeff(), 1e-11);
  }
}

TEST(BuildModelOperator, StructuralInvariants) {
  const InnerFunction sym = multiply(product({{0.2, 0.7}, -0.4, {0.0, -0.3}}), b(0.6, 2));
  const ModelOperator m = build_model_operator(sym);
  const auto& d = m.diagnostics;
  EXPECT_LE(d.gram_deviation, 1e-10);
  EXPECT_LE(d.symbol_leakage, 1e-10);
  EXPECT_LE(d.operator_norm, 1.0 + 1e-10);
  EXPECT_LE(d.upper_leakage, 1e-10);
  EXPECT_LE(d.diagonal_deviation, 1e-8);
  EXPECT_LT(d.spectral_radius, 1.0);
  // S(b) is a contraction with exactly one non-unit singular value.
  const Eigen::VectorXd sv = linalg::singular_values(m.matrix);
  for (Eigen::Index i = 0; i + 1 < sv.size(); ++i) EXPECT_NEAR(sv(i), 1.0, 1e-10);
}

TEST(BuildModelOperator, RejectsUnsupportedSymbols) {
  expect_error(ErrorKind::unsupported_model,
               [] { build_model_operator(multiply(b(0.2), InnerFunction::singular_atom(0.0, 1.0))); });
  expect_error(ErrorKind::degenerate_model, [] { build_model_operator(InnerFunction()); });
  expect_error(ErrorKind::conditioning, [] { build_model_operator(b(0.96)); });
  expect_error(ErrorKind::conditioning, [] { build_model_operator(InnerFunction::z_power(17)); });
}

TEST(OracleCompressedShift, ZCubedIsNilpotentCell) {
  const auto o = oracle_compressed_shift(InnerFunction::z_power(3), 24);
  ASSERT_EQ(o.matrix.rows(), 3);
  const Eigen::VectorXd sv = linalg::singular_values(o.matrix);
  EXPECT_NEAR(sv(0), 1.0, 1e-12);
  EXPECT_NEAR(sv(1), 1.0, 1e-12);
  EXPECT_NEAR(sv(2), 0.0, 1e-12);
  EXPECT_LE(linalg::spectral_norm(o.matrix * o.matrix * o.matrix), 1e-12);
  EXPECT_NEAR(linalg::spectral_norm(o.matrix * o.matrix), 1.0, 1e-12);
}

TEST(OracleCompressedShift, SingleFactor) {
  const auto o = oracle_compressed_shift(b(0.5), 16);
  ASSERT_EQ(o.matrix.rows(), 1);
  EXPECT_NEAR(std::abs(o.matrix(0, 0)), 0.5, 1e-8);
}

TEST(OracleCompressedShift, AgreesWithQuadratureOnDegreeFour) {
  Rng rng(23);
  for (int i = 0; i < 5; ++i) {
    const InnerFunction sym = random_blaschke(rng, 4, 0.5);
    const auto o = oracle_compressed_shift(sym, 32);
    const auto cmp = compare_spectra(build_model_operator(sym).matrix, o.matrix);
    EXPECT_LE(cmp.eigenvalue_deviation, 1e-8);
    EXPECT_LE(cmp.singular_value_deviation, 1e-8);
  }
}

TEST(OracleCompressedShift, TruncationChecks) {
  expect_error(ErrorKind::invalid_argument, [] { oracle_compressed_shift(product({0.1, 0.2}), 15); });
  expect_error(ErrorKind::accuracy, [] { oracle_compressed_shift(product({0.9, -0.9}), 16); });
  const InnerFunction sym = product({0.9, -0.9});
  const std::size_t n = suggested_truncation(sym);
  EXPECT_GE(n, 16u);
  EXPECT_NO_THROW(oracle_compressed_shift(sym, n));
}
