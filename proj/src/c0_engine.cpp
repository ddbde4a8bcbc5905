#include "modelspace/c0_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/SVD>

#include "modelspace/error.hpp"
#include "modelspace/linalg.hpp"

namespace modelspace {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSimpleClusterRadius = 1e-8;
constexpr double kAmbiguityFactor = 10.0;
constexpr double kAnnihilationTolerance = 1e-7;
constexpr double kSnapToOrigin = 1e-12;

struct Cluster {
  Complex centre;
  int size = 0;
};

// Radius within which k computed eigenvalues may belong to one eigenvalue of
// algebraic multiplicity k: a backward error d perturbs a k x k Jordan block
// by about d^(1/k).
double cluster_radius(int k, double backward_error) {
  return std::max(kSimpleClusterRadius, 10.0 * std::pow(backward_error, 1.0 / k));
}

Complex centroid(std::span<const Complex> values, std::span<const std::size_t> members) {
  Complex c{0.0, 0.0};
  for (std::size_t i : members) c += values[i];
  return c / static_cast<double>(members.size());
}

// Connected components of the graph linking eigenvalues closer than `radius`.
std::vector<std::vector<std::size_t>> linkage(std::span<const Complex> values,
                                              std::span<const std::size_t> members,
                                              double radius) {
  std::vector<int> label(members.size(), -1);
  std::vector<std::vector<std::size_t>> components;
  for (std::size_t s = 0; s < members.size(); ++s) {
    if (label[s] >= 0) continue;
    const int id = static_cast<int>(components.size());
    components.emplace_back();
    std::vector<std::size_t> stack{s};
    label[s] = id;
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      components.back().push_back(members[cur]);
      for (std::size_t o = 0; o < members.size(); ++o) {
        if (label[o] < 0 && std::abs(values[members[cur]] - values[members[o]]) <= radius) {
          label[o] = id;
          stack.push_back(o);
        }
      }
    }
  }
  return components;
}

void split_clusters(std::span<const Complex> values, std::span<const std::size_t> members,
                    int level, double backward_error, std::vector<Cluster>& out) {
  for (const auto& comp : linkage(values, members, cluster_radius(level, backward_error))) {
    const int size = static_cast<int>(comp.size());
    const Complex c = centroid(values, comp);
    const double radius = cluster_radius(size, backward_error);
    const bool tight = std::all_of(comp.begin(), comp.end(), [&](std::size_t i) {
      return std::abs(values[i] - c) <= radius;
    });
    if (size == 1 || tight || level <= 1) {
      out.push_back({c, size});
    } else {
      split_clusters(values, comp, size - 1, backward_error, out);
    }
  }
}

InnerFunction blaschke_from_clusters(const std::vector<Cluster>& clusters,
                                     const std::vector<int>& exponents) {
  std::vector<BlaschkeAtom> atoms;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (exponents[i] > 0) atoms.push_back({clusters[i].centre, exponents[i]});
  }
  return {Complex{1.0, 0.0}, BlaschkeFunction(atoms), {}};
}

double annihilation_residual(const std::vector<Cluster>& clusters,
                             const std::vector<int>& exponents, const Matrix& t) {
  return linalg::spectral_norm(modelspace::apply(blaschke_from_clusters(clusters, exponents), t));
}

int numerical_rank(const Eigen::VectorXd& s, double tol) {
  if (s.size() == 0) return 0;
  const double cutoff = tol * std::max(1.0, s(0));
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > cutoff ? 1 : 0;
  return r;
}

double argument_in_zero_two_pi(Complex z) {
  double a = std::arg(z);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

void require_square(const Matrix& t) {
  if (t.rows() != t.cols()) {
    throw Error(ErrorKind::invalid_argument, "operator matrix must be square");
  }
}

void require_inside_disk(const Matrix& t) {
  const double rho = linalg::spectral_radius(t);
  if (rho > 1.0 - kSpectralMargin) {
    throw Error(ErrorKind::near_boundary_spectrum,
                "spectral radius too close to the unit circle", rho);
  }
}

}  // namespace

// ---------------------------------------------------------------------------

Subspace::Subspace(Matrix frame, double rank_tolerance)
    : frame_(std::move(frame)), rank_tolerance_(rank_tolerance) {
  if (frame_.cols() > frame_.rows()) {
    throw Error(ErrorKind::invalid_argument, "frame has more columns than rows");
  }
  if (frame_.cols() > 0) {
    const Matrix gram = frame_.adjoint() * frame_;
    const double dev =
        (gram - Matrix::Identity(frame_.cols(), frame_.cols())).cwiseAbs().maxCoeff();
    if (dev > 1e-10) throw Error(ErrorKind::invalid_argument, "frame is not orthonormal", dev);
  }
}

Subspace Subspace::zero(Eigen::Index ambient_dim) { return Subspace(Matrix(ambient_dim, 0)); }

Matrix Subspace::projector() const { return frame_ * frame_.adjoint(); }

Subspace cyclic_subspace(const Matrix& t, const Vector& h, double rank_tolerance) {
  require_square(t);
  const Eigen::Index n = t.rows();
  if (h.size() != n) {
    throw Error(ErrorKind::invalid_argument, "vector dimension does not match the operator");
  }
  const double scale = std::max(1.0, linalg::spectral_norm(t));
  const double hn = h.norm();
  if (!(hn > rank_tolerance * scale)) {
    throw Error(ErrorKind::trivial_element, "h is numerically zero", hn);
  }
  Matrix q(n, n);
  q.col(0) = h / hn;
  Eigen::Index k = 1;
  while (k < n) {
    Vector w = t * q.col(k - 1);
    for (int pass = 0; pass < 2; ++pass) w -= q.leftCols(k) * (q.leftCols(k).adjoint() * w);
    const double wn = w.norm();
    if (wn <= rank_tolerance * scale) break;
    q.col(k) = w / wn;
    ++k;
  }
  return Subspace(q.leftCols(k), rank_tolerance);
}

Matrix restrict_to(const Matrix& t, const Subspace& m) {
  require_square(t);
  if (m.ambient_dim() != t.rows()) {
    throw Error(ErrorKind::invalid_argument, "subspace lives in a different space");
  }
  const double residual = linalg::invariance_residual(t, m.frame());
  if (residual > kVerifyTolerance) {
    throw Error(ErrorKind::not_invariant, "subspace is not invariant", residual);
  }
  return m.frame().adjoint() * t * m.frame();
}

InnerFunction minimal_function(const Matrix& t) {
  require_square(t);
  const Eigen::Index n = t.rows();
  if (n == 0) return {};
  if (n > kMaxMinimalFunctionSize) {
    throw Error(ErrorKind::unsupported, "minimal functions are computed up to size 12",
                static_cast<double>(n));
  }
  require_inside_disk(t);

  const auto values = linalg::eigenvalues(t);
  const double backward_error =
      static_cast<double>(n) * kEps * std::max(1.0, linalg::spectral_norm(t));
  std::vector<std::size_t> all(values.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<Cluster> clusters;
  split_clusters(values, all, static_cast<int>(n), backward_error, clusters);

  for (std::size_t i = 0; i < clusters.size(); ++i) {
    for (std::size_t j = i + 1; j < clusters.size(); ++j) {
      const double d = std::abs(clusters[i].centre - clusters[j].centre);
      const double r = cluster_radius(clusters[i].size + clusters[j].size, backward_error);
      if (d <= kAmbiguityFactor * r) {
        std::ostringstream msg;
        msg << "eigenvalue clusters at " << clusters[i].centre << " and " << clusters[j].centre
            << " cannot be separated";
        throw Error(ErrorKind::ill_conditioned_spectrum, msg.str(), d);
      }
    }
  }
  for (auto& c : clusters) {
    if (std::abs(c.centre) <= kSnapToOrigin) c.centre = {0.0, 0.0};
    if (!(std::abs(c.centre) < 1.0)) {
      throw Error(ErrorKind::near_boundary_spectrum, "eigenvalue cluster outside the disk",
                  std::abs(c.centre));
    }
  }

  // Jordan index per cluster: first k with rank (T - mu)^k <= n - a.
  const Matrix id = Matrix::Identity(n, n);
  std::vector<int> exponents(clusters.size());
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const Matrix shifted = t - clusters[i].centre * id;
    Matrix power = id;
    int index = clusters[i].size;
    for (int k = 1; k <= clusters[i].size; ++k) {
      power = power * shifted;
      if (numerical_rank(linalg::singular_values(power), kRankTolerance) <= n - clusters[i].size) {
        index = k;
        break;
      }
    }
    exponents[i] = index;
  }

  // Certify annihilation, then minimality factor by factor.
  if (annihilation_residual(clusters, exponents, t) > kAnnihilationTolerance) {
    for (std::size_t i = 0; i < clusters.size(); ++i) exponents[i] = clusters[i].size;
  }
  const double residual = annihilation_residual(clusters, exponents, t);
  if (residual > kAnnihilationTolerance) {
    throw Error(ErrorKind::ill_conditioned_spectrum,
                "no product over the eigenvalue clusters annihilates T", residual);
  }
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    while (exponents[i] > 1) {
      --exponents[i];
      if (annihilation_residual(clusters, exponents, t) > kAnnihilationTolerance) {
        ++exponents[i];
        break;
      }
    }
  }
  return blaschke_from_clusters(clusters, exponents);
}

double verify_algebraic(const Matrix& t, const Vector& h, const BoundedAnalyticFunction& theta,
                        const CalculusConfig& cfg) {
  if (theta.is_trivially_zero()) {
    throw Error(ErrorKind::trivial_annihilator, "annihilator is the zero function");
  }
  if (h.size() != t.rows()) {
    throw Error(ErrorKind::invalid_argument, "vector dimension does not match the operator");
  }
  return (modelspace::apply(theta, t, cfg) * h).norm();
}

bool is_certified_algebraic(double residual, const Vector& h) {
  return residual <= kVerifyTolerance * h.norm();
}

InnerFunction minimal_function_of_vector(const Matrix& t, const Vector& h) {
  return minimal_function(restrict_to(t, cyclic_subspace(t, h)));
}

Subspace divisor_kernel_subspace(const Matrix& t, const InnerFunction& phi) {
  require_square(t);
  if (!phi.is_finite_blaschke()) {
    throw Error(ErrorKind::unsupported, "kernel extraction needs a finite Blaschke divisor");
  }
  const InnerFunction m = minimal_function(t);
  // m is computed from eigenvalues, so zeros are matched at the numerical
  // zero tolerance rather than the exact merge tolerance.
  if (!divides(phi, m, MatchTolerance{.zero = 1e-6})) {
    throw Error(ErrorKind::not_a_divisor, "phi does not divide the minimal function");
  }
  const Eigen::Index n = t.rows();
  if (n == 0) return Subspace::zero(0);
  const Matrix a = modelspace::apply(phi, t);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double scale = std::max(1.0, s(0));
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (s(i) > kRankTolerance * scale && s(i) < kRankAmbiguityCeiling * scale) {
      throw Error(ErrorKind::rank_ambiguity, "kernel dimension is ambiguous", s(i));
    }
    if (s(i) > kRankTolerance * scale) ++rank;
  }
  Matrix kernel = svd.matrixV().rightCols(n - rank);
  return Subspace(std::move(kernel));
}

bool is_multiplicity_free(const Matrix& t, int attempts, std::uint64_t seed) {
  require_square(t);
  const Eigen::Index n = t.rows();
  if (n == 0) return true;
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  for (int a = 0; a < attempts; ++a) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex{normal(gen), normal(gen)};
    if (cyclic_subspace(t, v).dimension() == n) return true;
  }
  return false;
}

std::string_view to_string(ExtractionBranch branch) noexcept {
  return branch == ExtractionBranch::divisor_kernel ? "divisor_kernel" : "eigenvector_line";
}

InnerFunction smallest_factor(const InnerFunction& m) {
  const auto atoms = m.blaschke().atoms();
  if (atoms.empty()) {
    throw Error(ErrorKind::invalid_argument, "a constant has no Blaschke factor");
  }
  const BlaschkeAtom* best = &atoms.front();
  for (const auto& atom : atoms) {
    const double r = std::abs(atom.alpha);
    const double rb = std::abs(best->alpha);
    if (r < rb - 1e-12 ||
        (std::abs(r - rb) <= 1e-12 &&
         argument_in_zero_two_pi(atom.alpha) < argument_in_zero_two_pi(best->alpha))) {
      best = &atom;
    }
  }
  return InnerFunction::blaschke_factor(best->alpha);
}

ExtractionCertificate extract_invariant_subspace(const Matrix& t, const Vector& h) {
  require_square(t);
  const Eigen::Index n = t.rows();
  if (n < 2) {
    throw Error(ErrorKind::invalid_argument, "ambient dimension must be at least 2",
                static_cast<double>(n));
  }
  require_inside_disk(t);

  const Subspace m = cyclic_subspace(t, h);
  const Matrix t1 = restrict_to(t, m);
  ExtractionCertificate cert;
  cert.restriction_minimal_function = minimal_function(t1);
  const InnerFunction& m1 = cert.restriction_minimal_function;

  auto fault = [&](const std::string& what, double value) {
    std::ostringstream msg;
    msg << what << " (ambient " << n << ", cyclic dim " << m.dimension() << ", deg m1 "
        << m1.degree() << ")";
    return Error(ErrorKind::impossible_by_theory, msg.str(), value);
  };

  if (m1.degree() == 0) throw fault("non-zero h with unit minimal function", 0.0);

  if (m1.degree() >= 2) {
    const InnerFunction phi = smallest_factor(m1);
    const Subspace k1 = divisor_kernel_subspace(t1, phi);
    cert.branch = ExtractionBranch::divisor_kernel;
    cert.divisor_used = phi;
    Matrix frame = m.frame() * k1.frame();
    // Restore orthonormality lost to rounding in the product of frames.
    if (frame.cols() > 0) {
      Eigen::HouseholderQR<Matrix> qr(frame);
      frame = qr.householderQ() * Matrix::Identity(n, frame.cols());
    }
    cert.subspace = Subspace(std::move(frame));
  } else {
    const Complex a = m1.blaschke().atoms().front().alpha;
    const double eig_residual = (t * h - a * h).norm() / h.norm();
    if (eig_residual > kVerifyTolerance) {
      throw fault("degree-one minimal function but h is not an eigenvector", eig_residual);
    }
    cert.branch = ExtractionBranch::eigenvector_line;
    Matrix frame = h / h.norm();
    cert.subspace = Subspace(std::move(frame));
  }

  cert.invariance_residual = linalg::invariance_residual(t, cert.subspace.frame());
  const Eigen::Index dim = cert.subspace.dimension();
  if (dim < 1 || dim > n - 1) throw fault("extracted subspace is trivial", static_cast<double>(dim));
  if (cert.invariance_residual > kVerifyTolerance) {
    throw fault("extracted subspace fails the invariance check", cert.invariance_residual);
  }
  return cert;
}

}  // namespace modelspace
