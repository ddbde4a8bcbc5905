#pragma once

// Seeded generators for the verification suites and property tests. Every
// generator draws only from the Rng it is given, so a fixed seed reproduces
// the same instances.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "modelspace/analytic_function.hpp"
#include "modelspace/inner_algebra.hpp"
#include "modelspace/types.hpp"

namespace modelspace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  int integer(int lo, int hi);  // inclusive
  double normal();
  bool coin(double p = 0.5);
  /// Uniform in the disk of the given radius (area measure).
  Complex disk_point(double radius);
  Complex unit_complex();
  Vector gaussian_vector(Eigen::Index n);

  /// Independent stream derived from this seed and a label.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t label);

 private:
  std::mt19937_64 engine_;
};

/// Radius for random model zeros.
inline constexpr double kRandomZeroRadius = 0.9;

/// Finite Blaschke product of the given degree, zeros uniform in the disk of
/// radius kRandomZeroRadius.
InnerFunction random_blaschke(Rng& rng, int degree, double radius = kRandomZeroRadius);

/// Inner function with <= max_zeros Blaschke atoms and <= max_singular
/// singular atoms drawn from small shared pools, so independent draws overlap.
InnerFunction random_lattice_element(Rng& rng, int max_zeros = 4, int max_singular = 2);

/// Polynomial, admissible rational, inner function or a product of those.
BoundedAnalyticFunction random_analytic(Rng& rng);

/// n x n nilpotent Jordan cell (ones on the subdiagonal: e_k -> e_{k+1}).
Matrix jordan_cell(Eigen::Index n);

}  // namespace modelspace
