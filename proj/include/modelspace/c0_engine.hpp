#pragma once

// Minimal functions, cyclic subspaces and constructive extraction of a
// non-trivial invariant subspace from a non-zero algebraic element.

#include <cstdint>
#include <optional>
#include <string_view>

#include "modelspace/analytic_function.hpp"
#include "modelspace/functional_calculus.hpp"
#include "modelspace/inner_algebra.hpp"
#include "modelspace/types.hpp"

namespace modelspace {

/// Shared cutoff for every numerical rank decision (Krylov growth and kernel
/// extraction), relative to max(1, largest singular value).
inline constexpr double kRankTolerance = 1e-10;
/// Singular values in (kRankTolerance, kRankAmbiguityCeiling) make a kernel
/// dimension ambiguous.
inline constexpr double kRankAmbiguityCeiling = 1e-6;
/// Residual bound for invariance and annihilation certificates.
inline constexpr double kVerifyTolerance = 1e-8;
inline constexpr Eigen::Index kMaxMinimalFunctionSize = 12;

class Subspace {
 public:
  Subspace() = default;
  /// `frame` must have orthonormal columns (checked to 1e-10).
  Subspace(Matrix frame, double rank_tolerance = kRankTolerance);
  static Subspace zero(Eigen::Index ambient_dim);

  const Matrix& frame() const noexcept { return frame_; }
  Eigen::Index dimension() const noexcept { return frame_.cols(); }
  Eigen::Index ambient_dim() const noexcept { return frame_.rows(); }
  double rank_tolerance() const noexcept { return rank_tolerance_; }
  /// frame * frame^H
  Matrix projector() const;

 private:
  Matrix frame_;
  double rank_tolerance_ = kRankTolerance;
};

/// span{h, Th, T^2 h, ...} with an orthonormal Arnoldi frame.
Subspace cyclic_subspace(const Matrix& t, const Vector& h, double rank_tolerance = kRankTolerance);

/// frame^H T frame. Throws not-invariant when ||(I-P)TP|| > 1e-8.
Matrix restrict_to(const Matrix& t, const Subspace& m);

/// Inner generator of {u : u(T) = 0}: the Blaschke product over the minimal
/// polynomial's zeros.
InnerFunction minimal_function(const Matrix& t);

/// ||theta(T) h||. Throws trivial-annihilator when theta is numerically 0.
double verify_algebraic(const Matrix& t, const Vector& h, const BoundedAnalyticFunction& theta,
                        const CalculusConfig& cfg = {});
/// residual <= 1e-8 ||h||
bool is_certified_algebraic(double residual, const Vector& h);

/// Minimal function of T restricted to the cyclic subspace of h.
InnerFunction minimal_function_of_vector(const Matrix& t, const Vector& h);

/// Numerical kernel of phi(T) for an inner divisor phi of m_T.
Subspace divisor_kernel_subspace(const Matrix& t, const InnerFunction& phi);

/// Whether a random search (`attempts` Gaussian vectors) finds a cyclic vector.
bool is_multiplicity_free(const Matrix& t, int attempts = 50, std::uint64_t seed = 0x5eed);

enum class ExtractionBranch { divisor_kernel, eigenvector_line };
std::string_view to_string(ExtractionBranch branch) noexcept;

struct ExtractionCertificate {
  ExtractionBranch branch = ExtractionBranch::divisor_kernel;
  std::optional<InnerFunction> divisor_used;
  Subspace subspace;
  double invariance_residual = 0.0;
  InnerFunction restriction_minimal_function;
};

/// Follows the constructive argument: M = span{T^n h}, m_1 = m_{T|M}. When m_1
/// has degree >= 2, returns ker phi(T|M) for the Blaschke factor phi at the
/// zero of smallest modulus (then smallest argument); otherwise h is an
/// eigenvector and span{h} is returned.
ExtractionCertificate extract_invariant_subspace(const Matrix& t, const Vector& h);

/// The single-factor divisor the extraction uses for a given m_1.
InnerFunction smallest_factor(const InnerFunction& m);

}  // namespace modelspace
