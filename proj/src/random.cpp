#include "modelspace/random.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace modelspace {

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

int Rng::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

double Rng::normal() { return std::normal_distribution<double>()(engine_); }

bool Rng::coin(double p) { return uniform() < p; }

Complex Rng::disk_point(double radius) {
  const double r = radius * std::sqrt(uniform());
  return std::polar(r, uniform(0.0, 2.0 * std::numbers::pi));
}

Complex Rng::unit_complex() { return std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi)); }

Vector Rng::gaussian_vector(Eigen::Index n) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal();
    v(i) = Complex{re, normal()};
  }
  return v;
}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t label) {
  // splitmix64 finaliser
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (label + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

InnerFunction random_blaschke(Rng& rng, int degree, double radius) {
  std::vector<BlaschkeAtom> atoms;
  for (int k = 0; k < degree; ++k) atoms.push_back({rng.disk_point(radius), 1});
  return {Complex{1.0, 0.0}, BlaschkeFunction(atoms), {}};
}

InnerFunction random_lattice_element(Rng& rng, int max_zeros, int max_singular) {
  static constexpr std::array<Complex, 6> kZeroPool = {
      Complex{0.0, 0.0},  Complex{0.5, 0.0},   Complex{-0.3, 0.4},
      Complex{0.1, -0.7}, Complex{-0.6, -0.2}, Complex{0.25, 0.25}};
  static constexpr std::array<double, 4> kAnglePool = {0.0, 1.0, std::numbers::pi, 4.5};
  static constexpr std::array<double, 4> kWeightPool = {0.5, 1.0, 1.5, 2.25};

  std::vector<BlaschkeAtom> zeros;
  const int nz = rng.integer(0, max_zeros);
  for (int k = 0; k < nz; ++k) {
    zeros.push_back({kZeroPool[static_cast<std::size_t>(rng.integer(0, kZeroPool.size() - 1))],
                     rng.integer(1, 3)});
  }
  std::vector<SingularAtom> masses;
  const int ns = rng.integer(0, max_singular);
  for (int k = 0; k < ns; ++k) {
    masses.push_back(
        {kAnglePool[static_cast<std::size_t>(rng.integer(0, kAnglePool.size() - 1))],
         kWeightPool[static_cast<std::size_t>(rng.integer(0, kWeightPool.size() - 1))]});
  }
  // Atoms drawn twice merge, so the result may have fewer atoms than drawn.
  return {rng.unit_complex(), BlaschkeFunction(zeros), AtomicSingularMeasure(masses)};
}

namespace {

BoundedAnalyticFunction random_factor(Rng& rng) {
  switch (rng.integer(0, 2)) {
    case 0: {
      std::vector<Complex> c(static_cast<std::size_t>(rng.integer(1, 4)));
      for (auto& x : c) x = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      return BoundedAnalyticFunction::polynomial(std::move(c));
    }
    case 1: {
      // numerator of degree <= 2, denominator prod (1 - z / p) with |p| >= 1.2
      std::vector<Complex> num(static_cast<std::size_t>(rng.integer(1, 3)));
      for (auto& x : num) x = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      std::vector<Complex> den{Complex{1.0, 0.0}};
      const int poles = rng.integer(1, 2);
      for (int k = 0; k < poles; ++k) {
        const double modulus = rng.uniform(1.2, 3.0);
        const Complex p = std::polar(modulus, rng.uniform(0.0, 2.0 * std::numbers::pi));
        std::vector<Complex> next(den.size() + 1, Complex{0.0, 0.0});
        for (std::size_t i = 0; i < den.size(); ++i) {
          next[i] += den[i];
          next[i + 1] -= den[i] / p;
        }
        den = std::move(next);
      }
      return BoundedAnalyticFunction::rational(std::move(num), std::move(den));
    }
    default: {
      std::vector<BlaschkeAtom> zeros;
      const int nz = rng.integer(0, 3);
      for (int k = 0; k < nz; ++k) zeros.push_back({rng.disk_point(0.9), 1});
      std::vector<SingularAtom> masses;
      const int ns = rng.integer(0, 2);
      for (int k = 0; k < ns; ++k) {
        masses.push_back({rng.uniform(0.0, 2.0 * std::numbers::pi), rng.uniform(0.1, 1.0)});
      }
      return InnerFunction(rng.unit_complex(), BlaschkeFunction(zeros),
                           AtomicSingularMeasure(masses));
    }
  }
}

}  // namespace

BoundedAnalyticFunction random_analytic(Rng& rng) {
  if (rng.coin(0.75)) return random_factor(rng);
  const int parts = rng.integer(2, 3);
  std::vector<BoundedAnalyticFunction> fs;
  for (int k = 0; k < parts; ++k) fs.push_back(random_factor(rng));
  return BoundedAnalyticFunction::product(fs);
}

Matrix jordan_cell(Eigen::Index n) {
  Matrix j = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) j(k + 1, k) = 1.0;
  return j;
}

}  // namespace modelspace
