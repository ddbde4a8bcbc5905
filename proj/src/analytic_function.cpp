#include "modelspace/analytic_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "modelspace/error.hpp"
#include "modelspace/linalg.hpp"
#include "modelspace/simd/kernels.hpp"

namespace modelspace {
namespace {

std::vector<Complex> trimmed(std::vector<Complex> c) {
  while (c.size() > 1 && c.back() == Complex{0.0, 0.0}) c.pop_back();
  if (c.empty()) c.push_back({0.0, 0.0});
  return c;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

Complex Polynomial::operator()(Complex z) const {
  Complex acc{0.0, 0.0};
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * z + *it;
  return acc;
}

BoundedAnalyticFunction::BoundedAnalyticFunction()
    : factors_{Polynomial{{Complex{1.0, 0.0}}}} {}

BoundedAnalyticFunction::BoundedAnalyticFunction(InnerFunction theta)
    : factors_{std::move(theta)} {}

BoundedAnalyticFunction::BoundedAnalyticFunction(std::vector<AnalyticFactor> factors)
    : factors_(std::move(factors)) {}

BoundedAnalyticFunction BoundedAnalyticFunction::polynomial(std::vector<Complex> coefficients) {
  return BoundedAnalyticFunction(
      std::vector<AnalyticFactor>{Polynomial{trimmed(std::move(coefficients))}});
}

BoundedAnalyticFunction BoundedAnalyticFunction::constant(Complex c) { return polynomial({c}); }

BoundedAnalyticFunction BoundedAnalyticFunction::identity() {
  return polynomial({Complex{0.0, 0.0}, Complex{1.0, 0.0}});
}

BoundedAnalyticFunction BoundedAnalyticFunction::rational(std::vector<Complex> numerator,
                                                          std::vector<Complex> denominator) {
  auto den = trimmed(std::move(denominator));
  if (den.size() == 1 && den[0] == Complex{0.0, 0.0}) {
    throw Error(ErrorKind::invalid_argument, "rational denominator is identically zero");
  }
  double nearest = std::numeric_limits<double>::infinity();
  for (Complex r : linalg::polynomial_roots(den)) nearest = std::min(nearest, std::abs(r));
  if (!(nearest > 1.0 + kRationalPoleMargin)) {
    throw Error(ErrorKind::invalid_argument,
                "rational denominator has a root in the closed disk", nearest);
  }
  return BoundedAnalyticFunction(std::vector<AnalyticFactor>{
      Rational{Polynomial{trimmed(std::move(numerator))}, Polynomial{std::move(den)}}});
}

BoundedAnalyticFunction BoundedAnalyticFunction::product(
    std::span<const BoundedAnalyticFunction> parts) {
  std::vector<AnalyticFactor> all;
  for (const auto& p : parts) all.insert(all.end(), p.factors_.begin(), p.factors_.end());
  if (all.empty()) return {};
  return BoundedAnalyticFunction(std::move(all));
}

BoundedAnalyticFunction operator*(const BoundedAnalyticFunction& a,
                                  const BoundedAnalyticFunction& b) {
  std::vector<AnalyticFactor> all = a.factors_;
  all.insert(all.end(), b.factors_.begin(), b.factors_.end());
  return BoundedAnalyticFunction(std::move(all));
}

BoundedAnalyticFunction::Kind BoundedAnalyticFunction::kind() const noexcept {
  if (factors_.size() != 1) return Kind::product;
  switch (factors_.front().index()) {
    case 0: return Kind::polynomial;
    case 1: return Kind::rational;
    default: return Kind::inner;
  }
}

Complex BoundedAnalyticFunction::operator()(Complex z) const {
  Complex value{1.0, 0.0};
  for (const auto& f : factors_) {
    value *= std::visit([z](const auto& g) { return g(z); }, f);
  }
  return value;
}

bool BoundedAnalyticFunction::is_trivially_zero(double tol) const noexcept {
  auto small = [tol](const Polynomial& p) {
    return std::all_of(p.coefficients.begin(), p.coefficients.end(),
                       [tol](Complex c) { return std::abs(c) < tol; });
  };
  for (const auto& f : factors_) {
    const bool zero = std::visit(overloaded{
                                     [&](const Polynomial& p) { return small(p); },
                                     [&](const Rational& r) { return small(r.numerator); },
                                     [](const InnerFunction&) { return false; },
                                 },
                                 f);
    if (zero) return true;
  }
  return false;
}

double BoundedAnalyticFunction::sampled_boundary_sup(std::size_t samples) const {
  simd::ComplexSamples values(samples, Complex{1.0, 0.0});
  for (std::size_t j = 0; j < samples; ++j) {
    const Complex zeta = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                             static_cast<double>(samples));
    Complex v{1.0, 0.0};
    for (const auto& f : factors_) {
      v *= std::visit(overloaded{
                          [&](const Polynomial& p) { return p(zeta); },
                          [&](const Rational& r) { return r(zeta); },
                          [](const InnerFunction& theta) { return theta.gamma(); },
                      },
                      f);
    }
    values.set(j, v);
  }
  return simd::max_abs(values);
}

}  // namespace modelspace
