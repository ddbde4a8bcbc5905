#pragma once

// Inner functions theta = gamma * b_mu * s_nu with a finite Blaschke part and a
// finite atomic singular part, and the divisibility lattice they form.

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

#include "modelspace/types.hpp"

namespace modelspace {

/// Two zeros closer than this are the same zero.
inline constexpr double kZeroMergeTolerance = 1e-10;
/// Two boundary atoms whose angles differ by less than this are the same atom.
inline constexpr double kAngleMergeTolerance = 1e-10;
/// Absolute tolerance when comparing singular weights.
inline constexpr double kWeightTolerance = 1e-12;
inline constexpr double kGammaTolerance = 1e-12;

/// Tolerances used when matching atoms of two inner functions.
struct MatchTolerance {
  double zero = kZeroMergeTolerance;
  double angle = kAngleMergeTolerance;
  double weight = kWeightTolerance;
};

struct BlaschkeAtom {
  Complex alpha;
  int multiplicity = 1;
};

struct SingularAtom {
  double angle = 0.0;  // in [0, 2 pi)
  double weight = 0.0;
};

/// Finitely supported multiplicity map mu on the open disk.
///
/// Atoms are merged under kZeroMergeTolerance and kept sorted by (re, im);
/// zero multiplicities are never stored.
class BlaschkeFunction {
 public:
  BlaschkeFunction() = default;
  BlaschkeFunction(std::initializer_list<BlaschkeAtom> atoms);
  explicit BlaschkeFunction(std::span<const BlaschkeAtom> atoms);

  std::span<const BlaschkeAtom> atoms() const noexcept { return atoms_; }
  bool empty() const noexcept { return atoms_.empty(); }
  /// Number of zeros counted with multiplicity.
  int degree() const noexcept;
  /// mu(alpha), matching zeros within `tol`.
  int multiplicity(Complex alpha, double tol = kZeroMergeTolerance) const noexcept;
  /// sum mu(alpha) (1 - |alpha|)
  double blaschke_sum() const noexcept;
  /// Zeros repeated according to multiplicity, in canonical order.
  std::vector<Complex> expanded_zeros() const;

 private:
  std::vector<BlaschkeAtom> atoms_;
};

/// Positive measure on the unit circle with finitely many atoms.
class AtomicSingularMeasure {
 public:
  AtomicSingularMeasure() = default;
  AtomicSingularMeasure(std::initializer_list<SingularAtom> atoms);
  explicit AtomicSingularMeasure(std::span<const SingularAtom> atoms);

  std::span<const SingularAtom> atoms() const noexcept { return atoms_; }
  bool empty() const noexcept { return atoms_.empty(); }
  double total_mass() const noexcept;
  /// nu({e^{i angle}}), matching angles within `tol` on the circle.
  double weight(double angle, double tol = kAngleMergeTolerance) const noexcept;

 private:
  std::vector<SingularAtom> atoms_;
};

class InnerFunction {
 public:
  /// The constant 1.
  InnerFunction() = default;
  InnerFunction(Complex gamma, BlaschkeFunction blaschke,
                AtomicSingularMeasure singular = {});

  static InnerFunction constant(Complex gamma);
  /// b_alpha^k
  static InnerFunction blaschke_factor(Complex alpha, int k = 1);
  /// z^k
  static InnerFunction z_power(int k);
  /// s_nu for nu = weight * delta_{e^{i angle}}
  static InnerFunction singular_atom(double angle, double weight);

  Complex gamma() const noexcept { return gamma_; }
  const BlaschkeFunction& blaschke() const noexcept { return blaschke_; }
  const AtomicSingularMeasure& singular() const noexcept { return singular_; }

  bool is_finite_blaschke() const noexcept { return singular_.empty(); }
  /// Equivalent to the constant 1 (no zeros, no singular mass).
  bool is_unit() const noexcept { return blaschke_.empty() && singular_.empty(); }
  int degree() const noexcept { return blaschke_.degree(); }

  /// theta(z); see eval_inner.
  Complex operator()(Complex z) const;

 private:
  Complex gamma_{1.0, 0.0};
  BlaschkeFunction blaschke_;
  AtomicSingularMeasure singular_;
};

/// b_alpha(z) = (|alpha|/alpha) (alpha - z)/(1 - conj(alpha) z), b_0(z) = z.
Complex eval_blaschke_factor(Complex alpha, Complex z);

/// Unimodular constant |alpha|/alpha in front of b_alpha (1 for alpha = 0).
Complex blaschke_normalization(Complex alpha) noexcept;

/// Evaluates theta at z. |z| < 1 is required when theta has a singular part;
/// finite Blaschke products may also be evaluated on the circle.
Complex eval_inner(const InnerFunction& theta, Complex z);

bool divides(const InnerFunction& theta, const InnerFunction& theta_prime,
             const MatchTolerance& tol = {});
InnerFunction gcd(const InnerFunction& a, const InnerFunction& b);
InnerFunction lcm(const InnerFunction& a, const InnerFunction& b);
InnerFunction multiply(const InnerFunction& a, const InnerFunction& b);
/// phi with theta * phi == theta_prime. Throws not-a-divisor otherwise.
InnerFunction exact_divide(const InnerFunction& theta_prime,
                           const InnerFunction& theta);
/// Equal up to a unimodular constant.
bool equiv(const InnerFunction& a, const InnerFunction& b,
           const MatchTolerance& tol = {});

/// All Blaschke divisors with gamma = 1, count prod (mu(alpha) + 1). The first
/// atom in canonical order varies fastest. Throws unsupported when theta has
/// a singular part.
std::vector<InnerFunction> enumerate_blaschke_divisors(const InnerFunction& theta);

/// Like enumerate_blaschke_divisors, but each singular atom of weight w is
/// additionally sampled at weights f * w for f in `fractions` (plus 0).
std::vector<InnerFunction> enumerate_divisors_sampled(
    const InnerFunction& theta, std::span<const double> fractions);

enum class ConvergenceVerdict { converged, diverging, inconclusive };

struct ConvergenceOptions {
  /// Partial sums above this bound are reported as diverging.
  double bound = std::numeric_limits<double>::infinity();
  /// Estimated remainder below which the series counts as converged.
  double tail_tolerance = 1e-12;
  /// Ratio of the last two dyadic block sums at or above which the series
  /// counts as diverging.
  double divergence_ratio = 0.9;
};

struct ConvergenceReport {
  std::vector<double> partial_sums;  // S_1 .. S_N
  double limit_estimate = 0.0;
  double tail_estimate = 0.0;
  ConvergenceVerdict verdict = ConvergenceVerdict::inconclusive;
};

/// Partial sums of sum_j (1 - |alpha_j|) for a finite zero list.
ConvergenceReport blaschke_convergence_check(std::span<const Complex> zeros);

/// Same for the sequence j -> zero_at(j), j = 1 .. cutoff.
ConvergenceReport blaschke_convergence_check(
    const std::function<Complex(std::size_t)>& zero_at, std::size_t cutoff,
    const ConvergenceOptions& options = {});

}  // namespace modelspace
