#include "modelspace/functional_calculus.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <unsupported/Eigen/MatrixFunctions>

#include "modelspace/error.hpp"
#include "modelspace/linalg.hpp"

namespace modelspace {
namespace {

constexpr double kEigenvectorConditionLimit = 1e6;
constexpr double kSolveConditionFloor = 1e-14;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

Matrix horner(const Polynomial& p, const Matrix& t) {
  const Eigen::Index n = t.rows();
  const Matrix id = Matrix::Identity(n, n);
  if (p.coefficients.empty()) return Matrix::Zero(n, n);
  Matrix acc = p.coefficients.back() * id;
  for (auto it = p.coefficients.rbegin() + 1; it != p.coefficients.rend(); ++it) {
    acc = acc * t + (*it) * id;
  }
  return acc;
}

// Solves lhs * X = rhs for commuting lhs, rhs.
Matrix solve(const Matrix& lhs, const Matrix& rhs, const char* what) {
  Eigen::PartialPivLU<Matrix> lu(lhs);
  const double rc = lu.rcond();
  if (!(rc > kSolveConditionFloor)) throw Error(ErrorKind::conditioning, what, rc);
  return lu.solve(rhs);
}

Complex exp_stem(Complex x, int) { return std::exp(x); }

Matrix blaschke_factor_matrix(Complex alpha, const Matrix& t) {
  if (alpha == Complex{0.0, 0.0}) return t;
  const Eigen::Index n = t.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix numerator = alpha * id - t;
  const Matrix denominator = id - std::conj(alpha) * t;
  return blaschke_normalization(alpha) * solve(denominator, numerator,
                                               "I - conj(alpha) T is singular");
}

Matrix inner_matrix(const InnerFunction& theta, const Matrix& t, const CalculusConfig& cfg) {
  const Eigen::Index n = t.rows();
  const Matrix id = Matrix::Identity(n, n);
  Matrix out = theta.gamma() * id;
  for (const auto& atom : theta.blaschke().atoms()) {
    const Matrix f = blaschke_factor_matrix(atom.alpha, t);
    for (int k = 0; k < atom.multiplicity; ++k) out = out * f;
  }
  for (const auto& atom : theta.singular().atoms()) {
    const Complex xi = std::polar(1.0, atom.angle);
    const Matrix cayley = solve(xi * id - t, xi * id + t, "xi I - T is singular");
    out = out * matrix_exponential(-atom.weight * cayley, cfg);
  }
  return out;
}

}  // namespace

void CalculusConfig::validate() const {
  if (!(verify_tolerance > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "verify tolerance must be positive",
                verify_tolerance);
  }
}

Matrix matrix_exponential(const Matrix& a, const CalculusConfig& cfg) {
  if (a.rows() == 0) return a;
  if (cfg.matrix_function_method == MatrixFunctionMethod::eigen_decomposition) {
    Eigen::ComplexEigenSolver<Matrix> eig(a, true);
    if (eig.info() == Eigen::Success) {
      const Matrix& v = eig.eigenvectors();
      const Eigen::VectorXd s = linalg::singular_values(v);
      const double cond = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1)
                                                : std::numeric_limits<double>::infinity();
      if (cond < kEigenvectorConditionLimit) {
        const Vector d = eig.eigenvalues().array().exp();
        return v * d.asDiagonal() * v.inverse();
      }
    }
  }
  return a.matrixFunction(exp_stem);
}

Matrix apply(const BoundedAnalyticFunction& u, const Matrix& t, const CalculusConfig& cfg) {
  cfg.validate();
  if (t.rows() != t.cols()) {
    throw Error(ErrorKind::invalid_argument, "operator matrix must be square");
  }
  const Eigen::Index n = t.rows();
  if (n == 0) return t;
  const double rho = linalg::spectral_radius(t);
  if (rho > 1.0 - kSpectralMargin) {
    throw Error(ErrorKind::near_boundary_spectrum,
                "spectral radius too close to the unit circle", rho);
  }
  Matrix out = Matrix::Identity(n, n);
  bool first = true;
  for (const auto& factor : u.factors()) {
    Matrix f = std::visit(overloaded{
                              [&](const Polynomial& p) { return horner(p, t); },
                              [&](const Rational& r) {
                                return solve(horner(r.denominator, t), horner(r.numerator, t),
                                             "denominator q(T) is singular");
                              },
                              [&](const InnerFunction& theta) {
                                return inner_matrix(theta, t, cfg);
                              },
                          },
                          factor);
    if (first) {
      out = std::move(f);
      first = false;
    } else {
      out = out * f;
    }
  }
  return out;
}

ContractivityReport check_contractivity(const BoundedAnalyticFunction& u, const Matrix& t,
                                        const CalculusConfig& cfg) {
  ContractivityReport report;
  report.operator_norm = linalg::spectral_norm(modelspace::apply(u, t, cfg));
  for (std::size_t samples : {512u, 1024u, 2048u}) {
    report.sampled_sup = std::max(report.sampled_sup, u.sampled_boundary_sup(samples));
  }
  report.contractive = report.operator_norm <= report.sampled_sup + cfg.verify_tolerance;
  return report;
}

double check_multiplicativity(const BoundedAnalyticFunction& u,
                              const BoundedAnalyticFunction& v, const Matrix& t,
                              const CalculusConfig& cfg) {
  const Matrix joint = modelspace::apply(u * v, t, cfg);
  const Matrix split = modelspace::apply(u, t, cfg) * modelspace::apply(v, t, cfg);
  return linalg::spectral_norm(joint - split);
}

}  // namespace modelspace
