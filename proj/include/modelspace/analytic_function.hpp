#pragma once

#include <span>
#include <variant>
#include <vector>

#include "modelspace/inner_algebra.hpp"
#include "modelspace/types.hpp"

namespace modelspace {

/// sum_k coefficients[k] z^k
struct Polynomial {
  std::vector<Complex> coefficients;

  Complex operator()(Complex z) const;
};

/// numerator / denominator with every root of the denominator strictly
/// outside the closed disk. Build through BoundedAnalyticFunction::rational.
struct Rational {
  Polynomial numerator;
  Polynomial denominator;

  Complex operator()(Complex z) const { return numerator(z) / denominator(z); }
};

using AnalyticFactor = std::variant<Polynomial, Rational, InnerFunction>;

/// An element of H-infinity the calculus can evaluate: a finite product of
/// polynomials, admissible rationals and inner functions.
class BoundedAnalyticFunction {
 public:
  enum class Kind { polynomial, rational, inner, product };

  /// The constant 1.
  BoundedAnalyticFunction();
  BoundedAnalyticFunction(InnerFunction theta);  // NOLINT: implicit on purpose

  static BoundedAnalyticFunction polynomial(std::vector<Complex> coefficients);
  static BoundedAnalyticFunction constant(Complex c);
  /// z
  static BoundedAnalyticFunction identity();
  /// Throws invalid-argument when a denominator root lies within 1 + 1e-9.
  static BoundedAnalyticFunction rational(std::vector<Complex> numerator,
                                          std::vector<Complex> denominator);
  static BoundedAnalyticFunction product(std::span<const BoundedAnalyticFunction> parts);

  Kind kind() const noexcept;
  std::span<const AnalyticFactor> factors() const noexcept { return factors_; }

  Complex operator()(Complex z) const;

  /// True when some factor is numerically the zero function (all polynomial
  /// or numerator coefficients below `tol` in modulus).
  bool is_trivially_zero(double tol = 1e-14) const noexcept;

  /// Sampled sup of |u| on the unit circle. Inner factors contribute their
  /// a.e. boundary modulus 1.
  double sampled_boundary_sup(std::size_t samples) const;

  friend BoundedAnalyticFunction operator*(const BoundedAnalyticFunction& a,
                                           const BoundedAnalyticFunction& b);

 private:
  explicit BoundedAnalyticFunction(std::vector<AnalyticFactor> factors);

  std::vector<AnalyticFactor> factors_;
};

/// Denominator roots must clear the closed disk by this margin.
inline constexpr double kRationalPoleMargin = 1e-9;

}  // namespace modelspace
