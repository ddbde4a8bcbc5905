#include <gtest/gtest.h>

#include <cmath>

#include "modelspace/error.hpp"
#include "modelspace/functional_calculus.hpp"
#include "modelspace/linalg.hpp"
#include "modelspace/model_operator.hpp"
#include "modelspace/random.hpp"

using namespace modelspace;

namespace {

InnerFunction b(Complex a, int k = 1) { return InnerFunction::blaschke_factor(a, k); }

// A diagonalisable matrix with prescribed eigenvalues and a moderately
// conditioned eigenbasis.
Matrix with_spectrum(Rng& rng, const std::vector<Complex>& eig, Matrix& basis) {
  const auto n = static_cast<Eigen::Index>(eig.size());
  basis = Matrix::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) basis.col(i) += 0.3 * rng.gaussian_vector(n);
  Matrix d = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) d(i, i) = eig[static_cast<std::size_t>(i)];
  return basis * d * basis.inverse();
}

Matrix through_eigenbasis(const BoundedAnalyticFunction& u, const std::vector<Complex>& eig,
                          const Matrix& basis) {
  const auto n = static_cast<Eigen::Index>(eig.size());
  Matrix d = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) d(i, i) = u(eig[static_cast<std::size_t>(i)]);
  return basis * d * basis.inverse();
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

TEST(Apply, AxiomsHoldExactly) {
  Rng rng(1);
  const Matrix t = build_model_operator(random_blaschke(rng, 5)).matrix;
  EXPECT_EQ(modelspace::apply(BoundedAnalyticFunction(), t), Matrix(Matrix::Identity(5, 5)));
  EXPECT_EQ(modelspace::apply(BoundedAnalyticFunction::identity(), t), t);
}

TEST(Apply, SymbolAnnihilatesNilpotentModel) {
  const Matrix t = build_model_operator(InnerFunction::z_power(3)).matrix;
  EXPECT_LE(linalg::spectral_norm(modelspace::apply(InnerFunction::z_power(3), t)), 1e-12);
  EXPECT_GT(linalg::spectral_norm(modelspace::apply(InnerFunction::z_power(2), t)), 0.5);
}

TEST(Apply, FactorKillsItsEigenvalue) {
  Matrix t(1, 1);
  t(0, 0) = 0.5;
  EXPECT_LE(std::abs(modelspace::apply(b(0.5), t)(0, 0)), 1e-15);
}

TEST(Apply, AgreesWithEigendecomposition) {
  Rng rng(2);
  const std::vector<Complex> eig{{0.1, 0.2}, {-0.5, 0.3}, {0.7, -0.1}, {0.0, -0.6}};
  Matrix basis;
  const Matrix t = with_spectrum(rng, eig, basis);
  const BoundedAnalyticFunction cases[] = {
      BoundedAnalyticFunction::polynomial({0.5, {0.0, 1.0}, -0.25}),
      BoundedAnalyticFunction::rational({1.0, 0.3}, {1.0, {-0.4, 0.1}}),
      multiply(b({0.2, 0.3}, 2), InnerFunction::singular_atom(1.0, 0.7)),
      BoundedAnalyticFunction::polynomial({0.0, 2.0}) * InnerFunction::singular_atom(4.0, 0.3),
  };
  for (const auto& u : cases) {
    EXPECT_LE((modelspace::apply(u, t) - through_eigenbasis(u, eig, basis)).cwiseAbs().maxCoeff(),
              1e-10);
  }
}

TEST(Apply, SingularAtomOnJordanCell) {
  // s(J) = s(0) (I + (s'(0)/s(0)) J) with s = exp(-w (1 + z)/(1 - z)).
  const double w = 0.8;
  const Matrix j = jordan_cell(2);
  const Matrix expected = std::exp(-w) * (Matrix::Identity(2, 2) - 2.0 * w * j);
  for (auto method : {MatrixFunctionMethod::eigen_decomposition,
                      MatrixFunctionMethod::schur_parlett_fallback}) {
    CalculusConfig cfg;
    cfg.matrix_function_method = method;
    EXPECT_LE((modelspace::apply(InnerFunction::singular_atom(0.0, w), j, cfg) - expected)
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
  }
}

TEST(Apply, MatrixFunctionMethodsAgree) {
  Rng rng(4);
  for (int i = 0; i < 10; ++i) {
    const Matrix t = build_model_operator(random_blaschke(rng, 6)).matrix;
    const InnerFunction u = InnerFunction::singular_atom(rng.uniform(0.0, 6.0), rng.uniform(0.1, 2.0));
    CalculusConfig parlett;
    parlett.matrix_function_method = MatrixFunctionMethod::schur_parlett_fallback;
    EXPECT_LE((modelspace::apply(u, t) - modelspace::apply(u, t, parlett)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Apply, Errors) {
  Matrix t(1, 1);
  t(0, 0) = 1.0 - 1e-7;
  expect_error(ErrorKind::near_boundary_spectrum,
               [&] { modelspace::apply(BoundedAnalyticFunction::identity(), t); });
  expect_error(ErrorKind::invalid_argument,
               [] { modelspace::apply(BoundedAnalyticFunction(), Matrix::Zero(2, 3)); });
  expect_error(ErrorKind::invalid_argument,
               [] { BoundedAnalyticFunction::rational({1.0}, {1.0, -2.0}); });
  CalculusConfig bad;
  bad.verify_tolerance = 0.0;
  expect_error(ErrorKind::invalid_argument, [&] { bad.validate(); });
}

TEST(Contractivity, Examples) {
  Rng rng(5);
  const Matrix t = build_model_operator(random_blaschke(rng, 4)).matrix;
  const auto inner = check_contractivity(multiply(b(0.4), InnerFunction::singular_atom(2.0, 1.0)), t);
  EXPECT_TRUE(inner.contractive);
  EXPECT_LE(inner.operator_norm, 1.0 + 1e-8);

  const Matrix jordan = build_model_operator(InnerFunction::z_power(2)).matrix;
  const auto scaled = check_contractivity(BoundedAnalyticFunction::polynomial({0.0, 2.0}), jordan);
  EXPECT_NEAR(scaled.sampled_sup, 2.0, 1e-12);
  EXPECT_NEAR(scaled.operator_norm, 2.0, 1e-12);
  EXPECT_TRUE(scaled.contractive);

  const Complex c{0.3, -0.4};
  const auto constant = check_contractivity(BoundedAnalyticFunction::constant(c), t);
  EXPECT_DOUBLE_EQ(constant.operator_norm, std::abs(c));
}

TEST(Multiplicativity, Examples) {
  Rng rng(6);
  const Matrix t = build_model_operator(random_blaschke(rng, 3)).matrix;
  const auto z = BoundedAnalyticFunction::identity();
  EXPECT_EQ(check_multiplicativity(z, z, t), 0.0);

  const Matrix s = build_model_operator(multiply(b(0.5), b(0.3))).matrix;
  EXPECT_LE(check_multiplicativity(b(0.5), b(0.3), s), 1e-8);
  EXPECT_LE(linalg::spectral_norm(modelspace::apply(multiply(b(0.5), b(0.3)), s)), 1e-8);

  for (int i = 0; i < 20; ++i) {
    const Matrix r = build_model_operator(random_blaschke(rng, rng.integer(2, 8))).matrix;
    EXPECT_LE(check_multiplicativity(random_analytic(rng), random_analytic(rng), r), 1e-8);
  }
}
