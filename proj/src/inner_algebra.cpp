#include "modelspace/inner_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "modelspace/error.hpp"

namespace modelspace {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double normalize_angle(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

double circular_distance(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, kTwoPi - d);
}

std::vector<BlaschkeAtom> canonical_blaschke(std::span<const BlaschkeAtom> in) {
  std::vector<BlaschkeAtom> out;
  for (const auto& atom : in) {
    if (!std::isfinite(atom.alpha.real()) || !std::isfinite(atom.alpha.imag()) ||
        std::abs(atom.alpha) >= 1.0) {
      throw Error(ErrorKind::invalid_zero, "Blaschke zero must lie in the open disk",
                  std::abs(atom.alpha));
    }
    if (atom.multiplicity < 0) {
      throw Error(ErrorKind::invalid_argument, "negative multiplicity",
                  atom.multiplicity);
    }
    if (atom.multiplicity == 0) continue;
    auto same = std::find_if(out.begin(), out.end(), [&](const BlaschkeAtom& a) {
      return std::abs(a.alpha - atom.alpha) <= kZeroMergeTolerance;
    });
    if (same != out.end()) {
      same->multiplicity += atom.multiplicity;
    } else {
      out.push_back(atom);
    }
  }
  std::sort(out.begin(), out.end(), [](const BlaschkeAtom& a, const BlaschkeAtom& b) {
    if (a.alpha.real() != b.alpha.real()) return a.alpha.real() < b.alpha.real();
    return a.alpha.imag() < b.alpha.imag();
  });
  return out;
}

std::vector<SingularAtom> canonical_singular(std::span<const SingularAtom> in) {
  std::vector<SingularAtom> out;
  for (const auto& atom : in) {
    if (!std::isfinite(atom.angle) || !std::isfinite(atom.weight)) {
      throw Error(ErrorKind::invalid_argument, "singular atom must be finite");
    }
    if (atom.weight < 0.0) {
      throw Error(ErrorKind::invalid_argument, "singular weight must be positive",
                  atom.weight);
    }
    if (atom.weight == 0.0) continue;
    const double angle = normalize_angle(atom.angle);
    auto same = std::find_if(out.begin(), out.end(), [&](const SingularAtom& a) {
      return circular_distance(a.angle, angle) <= kAngleMergeTolerance;
    });
    if (same != out.end()) {
      same->weight += atom.weight;
    } else {
      out.push_back({angle, atom.weight});
    }
  }
  std::sort(out.begin(), out.end(), [](const SingularAtom& a, const SingularAtom& b) {
    return a.angle < b.angle;
  });
  return out;
}

void require_disk_point(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
      std::abs(z) > 1.0 + 1e-12) {
    throw Error(ErrorKind::domain, "evaluation point outside the closed disk",
                std::abs(z));
  }
}

}  // namespace

// ---------------------------------------------------------------------------

BlaschkeFunction::BlaschkeFunction(std::initializer_list<BlaschkeAtom> atoms)
    : atoms_(canonical_blaschke(std::span<const BlaschkeAtom>(atoms.begin(), atoms.size()))) {}

BlaschkeFunction::BlaschkeFunction(std::span<const BlaschkeAtom> atoms)
    : atoms_(canonical_blaschke(atoms)) {}

int BlaschkeFunction::degree() const noexcept {
  int d = 0;
  for (const auto& a : atoms_) d += a.multiplicity;
  return d;
}

int BlaschkeFunction::multiplicity(Complex alpha, double tol) const noexcept {
  for (const auto& a : atoms_) {
    if (std::abs(a.alpha - alpha) <= tol) return a.multiplicity;
  }
  return 0;
}

double BlaschkeFunction::blaschke_sum() const noexcept {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.multiplicity * (1.0 - std::abs(a.alpha));
  return s;
}

std::vector<Complex> BlaschkeFunction::expanded_zeros() const {
  std::vector<Complex> zeros;
  for (const auto& a : atoms_) zeros.insert(zeros.end(), a.multiplicity, a.alpha);
  return zeros;
}

AtomicSingularMeasure::AtomicSingularMeasure(std::initializer_list<SingularAtom> atoms)
    : atoms_(canonical_singular(std::span<const SingularAtom>(atoms.begin(), atoms.size()))) {}

AtomicSingularMeasure::AtomicSingularMeasure(std::span<const SingularAtom> atoms)
    : atoms_(canonical_singular(atoms)) {}

double AtomicSingularMeasure::total_mass() const noexcept {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.weight;
  return m;
}

double AtomicSingularMeasure::weight(double angle, double tol) const noexcept {
  const double t = normalize_angle(angle);
  for (const auto& a : atoms_) {
    if (circular_distance(a.angle, t) <= tol) return a.weight;
  }
  return 0.0;
}

InnerFunction::InnerFunction(Complex gamma, BlaschkeFunction blaschke,
                             AtomicSingularMeasure singular)
    : gamma_(gamma), blaschke_(std::move(blaschke)), singular_(std::move(singular)) {
  if (!(std::abs(std::abs(gamma_) - 1.0) <= kGammaTolerance)) {
    throw Error(ErrorKind::invalid_argument, "gamma must have modulus one",
                std::abs(gamma_));
  }
}

InnerFunction InnerFunction::constant(Complex gamma) { return {gamma, {}, {}}; }

InnerFunction InnerFunction::blaschke_factor(Complex alpha, int k) {
  return {Complex{1.0, 0.0}, BlaschkeFunction{{alpha, k}}, {}};
}

InnerFunction InnerFunction::z_power(int k) { return blaschke_factor({0.0, 0.0}, k); }

InnerFunction InnerFunction::singular_atom(double angle, double weight) {
  return {Complex{1.0, 0.0}, {}, AtomicSingularMeasure{{angle, weight}}};
}

Complex InnerFunction::operator()(Complex z) const { return eval_inner(*this, z); }

// ---------------------------------------------------------------------------

Complex blaschke_normalization(Complex alpha) noexcept {
  if (alpha == Complex{0.0, 0.0}) return {1.0, 0.0};
  return std::abs(alpha) / alpha;
}

Complex eval_blaschke_factor(Complex alpha, Complex z) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) ||
      std::abs(alpha) >= 1.0) {
    throw Error(ErrorKind::invalid_zero, "Blaschke zero must lie in the open disk",
                std::abs(alpha));
  }
  require_disk_point(z);
  if (alpha == Complex{0.0, 0.0}) return z;
  return blaschke_normalization(alpha) * (alpha - z) / (1.0 - std::conj(alpha) * z);
}

Complex eval_inner(const InnerFunction& theta, Complex z) {
  require_disk_point(z);
  if (!theta.singular().empty() && std::abs(z) >= 1.0) {
    throw Error(ErrorKind::domain,
                "singular inner functions are evaluated inside the open disk only",
                std::abs(z));
  }
  Complex value = theta.gamma();
  for (const auto& atom : theta.blaschke().atoms()) {
    const Complex f = eval_blaschke_factor(atom.alpha, z);
    for (int k = 0; k < atom.multiplicity; ++k) value *= f;
  }
  if (!theta.singular().empty()) {
    Complex exponent{0.0, 0.0};
    for (const auto& atom : theta.singular().atoms()) {
      const Complex xi = std::polar(1.0, atom.angle);
      exponent -= atom.weight * (xi + z) / (xi - z);
    }
    value *= std::exp(exponent);
  }
  return value;
}

bool divides(const InnerFunction& theta, const InnerFunction& theta_prime,
             const MatchTolerance& tol) {
  for (const auto& atom : theta.blaschke().atoms()) {
    if (theta_prime.blaschke().multiplicity(atom.alpha, tol.zero) < atom.multiplicity) {
      return false;
    }
  }
  for (const auto& atom : theta.singular().atoms()) {
    if (atom.weight > theta_prime.singular().weight(atom.angle, tol.angle) + tol.weight) {
      return false;
    }
  }
  return true;
}

InnerFunction gcd(const InnerFunction& a, const InnerFunction& b) {
  std::vector<BlaschkeAtom> zeros;
  for (const auto& atom : a.blaschke().atoms()) {
    const int k = std::min(atom.multiplicity, b.blaschke().multiplicity(atom.alpha));
    if (k > 0) zeros.push_back({atom.alpha, k});
  }
  std::vector<SingularAtom> masses;
  for (const auto& atom : a.singular().atoms()) {
    const double w = std::min(atom.weight, b.singular().weight(atom.angle));
    if (w > 0.0) masses.push_back({atom.angle, w});
  }
  return {Complex{1.0, 0.0}, BlaschkeFunction(zeros), AtomicSingularMeasure(masses)};
}

InnerFunction lcm(const InnerFunction& a, const InnerFunction& b) {
  std::vector<BlaschkeAtom> zeros;
  for (const auto& atom : a.blaschke().atoms()) {
    zeros.push_back(
        {atom.alpha, std::max(atom.multiplicity, b.blaschke().multiplicity(atom.alpha))});
  }
  for (const auto& atom : b.blaschke().atoms()) {
    if (a.blaschke().multiplicity(atom.alpha) == 0) zeros.push_back(atom);
  }
  std::vector<SingularAtom> masses;
  for (const auto& atom : a.singular().atoms()) {
    masses.push_back({atom.angle, std::max(atom.weight, b.singular().weight(atom.angle))});
  }
  for (const auto& atom : b.singular().atoms()) {
    if (a.singular().weight(atom.angle) == 0.0) masses.push_back(atom);
  }
  return {Complex{1.0, 0.0}, BlaschkeFunction(zeros), AtomicSingularMeasure(masses)};
}

InnerFunction multiply(const InnerFunction& a, const InnerFunction& b) {
  std::vector<BlaschkeAtom> zeros(a.blaschke().atoms().begin(), a.blaschke().atoms().end());
  zeros.insert(zeros.end(), b.blaschke().atoms().begin(), b.blaschke().atoms().end());
  std::vector<SingularAtom> masses(a.singular().atoms().begin(), a.singular().atoms().end());
  masses.insert(masses.end(), b.singular().atoms().begin(), b.singular().atoms().end());
  Complex gamma = a.gamma() * b.gamma();
  gamma /= std::abs(gamma);
  return {gamma, BlaschkeFunction(zeros), AtomicSingularMeasure(masses)};
}

InnerFunction exact_divide(const InnerFunction& theta_prime, const InnerFunction& theta) {
  if (!divides(theta, theta_prime)) {
    throw Error(ErrorKind::not_a_divisor, "divisor does not divide the dividend");
  }
  std::vector<BlaschkeAtom> zeros;
  for (const auto& atom : theta_prime.blaschke().atoms()) {
    const int k = atom.multiplicity - theta.blaschke().multiplicity(atom.alpha);
    if (k > 0) zeros.push_back({atom.alpha, k});
  }
  std::vector<SingularAtom> masses;
  for (const auto& atom : theta_prime.singular().atoms()) {
    const double w = atom.weight - theta.singular().weight(atom.angle);
    if (w > kWeightTolerance) masses.push_back({atom.angle, w});
  }
  Complex gamma = theta_prime.gamma() / theta.gamma();
  gamma /= std::abs(gamma);
  return {gamma, BlaschkeFunction(zeros), AtomicSingularMeasure(masses)};
}

bool equiv(const InnerFunction& a, const InnerFunction& b, const MatchTolerance& tol) {
  return divides(a, b, tol) && divides(b, a, tol);
}

std::vector<InnerFunction> enumerate_blaschke_divisors(const InnerFunction& theta) {
  if (!theta.singular().empty()) {
    throw Error(ErrorKind::unsupported,
                "a nonzero singular part has a continuum of divisors; use "
                "enumerate_divisors_sampled");
  }
  return enumerate_divisors_sampled(theta, {});
}

std::vector<InnerFunction> enumerate_divisors_sampled(const InnerFunction& theta,
                                                      std::span<const double> fractions) {
  for (double f : fractions) {
    if (!(f > 0.0 && f <= 1.0)) {
      throw Error(ErrorKind::invalid_argument, "sampling fractions must lie in (0, 1]", f);
    }
  }
  const auto zeros = theta.blaschke().atoms();
  const auto masses = theta.singular().atoms();
  const std::size_t slots = zeros.size() + masses.size();

  // Mixed-radix counter, first slot fastest.
  std::vector<std::size_t> radix(slots);
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    radix[i] = static_cast<std::size_t>(zeros[i].multiplicity) + 1;
  }
  for (std::size_t i = 0; i < masses.size(); ++i) radix[zeros.size() + i] = fractions.size() + 1;

  std::vector<InnerFunction> out;
  std::vector<std::size_t> digit(slots, 0);
  while (true) {
    std::vector<BlaschkeAtom> z;
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      if (digit[i] > 0) z.push_back({zeros[i].alpha, static_cast<int>(digit[i])});
    }
    std::vector<SingularAtom> s;
    for (std::size_t i = 0; i < masses.size(); ++i) {
      const std::size_t d = digit[zeros.size() + i];
      if (d > 0) s.push_back({masses[i].angle, masses[i].weight * fractions[d - 1]});
    }
    out.emplace_back(Complex{1.0, 0.0}, BlaschkeFunction(z), AtomicSingularMeasure(s));

    std::size_t i = 0;
    while (i < slots) {
      if (++digit[i] < radix[i]) break;
      digit[i] = 0;
      ++i;
    }
    if (i == slots) break;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

double checked_term(Complex alpha) {
  const double r = std::abs(alpha);
  if (!std::isfinite(r) || r >= 1.0) {
    throw Error(ErrorKind::invalid_zero, "Blaschke zero must lie in the open disk", r);
  }
  return 1.0 - r;
}

}  // namespace

ConvergenceReport blaschke_convergence_check(std::span<const Complex> zeros) {
  ConvergenceReport report;
  double s = 0.0;
  for (Complex a : zeros) {
    s += checked_term(a);
    report.partial_sums.push_back(s);
  }
  report.limit_estimate = s;
  report.tail_estimate = 0.0;
  report.verdict = ConvergenceVerdict::converged;
  return report;
}

ConvergenceReport blaschke_convergence_check(
    const std::function<Complex(std::size_t)>& zero_at, std::size_t cutoff,
    const ConvergenceOptions& options) {
  if (cutoff == 0) {
    throw Error(ErrorKind::invalid_argument, "cutoff must be positive");
  }
  ConvergenceReport report;
  report.partial_sums.reserve(cutoff);
  std::vector<double> terms;
  terms.reserve(cutoff);
  double s = 0.0;
  for (std::size_t j = 1; j <= cutoff; ++j) {
    const double t = checked_term(zero_at(j));
    terms.push_back(t);
    s += t;
    report.partial_sums.push_back(s);
  }
  const std::size_t n = cutoff;
  report.limit_estimate = s;

  // Dyadic block sums (n/4, n/2] and (n/2, n]; equal blocks mean harmonic-type growth.
  double block_ratio = 0.0;
  if (n >= 4) {
    const double s_quarter = report.partial_sums[n / 4 - 1];
    const double s_half = report.partial_sums[n / 2 - 1];
    const double earlier = s_half - s_quarter;
    const double later = s - s_half;
    block_ratio = earlier > 0.0 ? later / earlier : (later > 0.0 ? 1.0 : 0.0);
  }

  // Remainder estimate from the ratio of the final terms.
  const std::size_t window = std::min<std::size_t>(8, n - 1);
  double worst_ratio = 0.0;
  bool ratio_defined = window > 0;
  for (std::size_t k = n - window; k < n && ratio_defined; ++k) {
    const double prev = terms[k - 1];
    const double cur = terms[k];
    if (prev == 0.0) {
      if (cur != 0.0) ratio_defined = false;
      continue;
    }
    worst_ratio = std::max(worst_ratio, cur / prev);
  }
  if (ratio_defined && worst_ratio < 1.0) {
    report.tail_estimate = terms.back() * worst_ratio / (1.0 - worst_ratio);
  } else {
    report.tail_estimate = std::numeric_limits<double>::infinity();
  }

  if (s > options.bound || (n >= 4 && block_ratio >= options.divergence_ratio)) {
    report.verdict = ConvergenceVerdict::diverging;
  } else if (report.tail_estimate <= options.tail_tolerance) {
    report.verdict = ConvergenceVerdict::converged;
    report.limit_estimate = s + report.tail_estimate;
  } else {
    report.verdict = ConvergenceVerdict::inconclusive;
  }
  return report;
}

}  // namespace modelspace
