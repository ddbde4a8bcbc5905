#include "modelspace/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <utility>

#include "modelspace/error.hpp"
#include "modelspace/linalg.hpp"
#include "modelspace/model_operator.hpp"
#include "modelspace/random.hpp"

namespace modelspace::verify {

namespace {

// Stream labels; each suite draws from its own stream.
enum : std::uint64_t {
  kLatticeStream = 1,
  kDivisibilityStream,
  kCalculusStream,
  kModelStream,
  kClassificationStream,
  kExtractionStream,
  kCorollaryStream,
};

constexpr double kNumericZeroMatch = 1e-6;
constexpr double kModulusSlack = 1e-10;
constexpr double kDistinctAngle = 1e-6;
constexpr int kInteriorPoints = 100;
constexpr double kInteriorRadius = 0.95;
constexpr int kCalculusPairs = 3;

const MatchTolerance kNumericMatch{.zero = kNumericZeroMatch};

class Recorder {
 public:
  Recorder(SuiteReport& report, std::string name, double tolerance) : report_(report) {
    index_ = report_.properties.size();
    report_.properties.push_back(PropertyResult{std::move(name), 0, 0, 0.0, tolerance});
  }

  /// Runs `residual` and counts a failure when it exceeds the tolerance or
  /// throws.
  template <class F>
  void check(F&& residual) {
    PropertyResult& p = report_.properties[index_];
    ++p.cases;
    try {
      const double r = residual();
      if (!(r <= p.tolerance)) ++p.failures;
      if (std::isnan(r) || r > p.worst) p.worst = std::isnan(r) ? p.worst : r;
    } catch (const Error& e) {
      ++p.failures;
      ++report_.statistics["errors"];
      ++report_.statistics["error." + std::string(to_string(e.kind()))];
    }
  }

  /// Boolean check recorded with tolerance 0 and residual 0 or 1.
  template <class F>
  void expect(F&& predicate) {
    check([&] { return predicate() ? 0.0 : 1.0; });
  }

 private:
  SuiteReport& report_;
  std::size_t index_ = 0;
};

std::size_t count_or(const SuiteOptions& o, std::size_t fallback) {
  return o.cases.value_or(fallback);
}

Rng stream(const SuiteOptions& o, std::uint64_t label) { return Rng(Rng::derive(o.seed, label)); }

// Componentwise order mu <= mu', nu <= nu', computed straight from the atom
// lists without going through the lattice code.
bool componentwise_leq(const InnerFunction& a, const InnerFunction& b) {
  for (const auto& x : a.blaschke().atoms()) {
    int mult = 0;
    for (const auto& y : b.blaschke().atoms()) {
      if (std::abs(x.alpha - y.alpha) <= kZeroMergeTolerance) mult += y.multiplicity;
    }
    if (x.multiplicity > mult) return false;
  }
  for (const auto& x : a.singular().atoms()) {
    double w = 0.0;
    for (const auto& y : b.singular().atoms()) {
      double d = std::abs(x.angle - y.angle);
      d = std::min(d, 2.0 * M_PI - d);
      if (d <= kAngleMergeTolerance) w += y.weight;
    }
    if (x.weight > w + kWeightTolerance) return false;
  }
  return true;
}

double max_abs_difference(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return 1.0;
  return a.rows() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

InnerFunction calculus_symbol(Rng& rng) {
  const int n = rng.integer(2, 8);
  if (n >= 3 && rng.coin(0.2)) {
    // One repeated zero so that Jordan structure shows up.
    const Complex a = rng.disk_point(kRandomZeroRadius);
    const InnerFunction rest = random_blaschke(rng, n - 2);
    return multiply(InnerFunction::blaschke_factor(a, 2), rest);
  }
  return random_blaschke(rng, n);
}

}  // namespace

bool SuiteReport::passed() const noexcept {
  return !properties.empty() &&
         std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.passed(); });
}

const PropertyResult* SuiteReport::find(std::string_view property) const noexcept {
  for (const auto& p : properties) {
    if (p.name == property) return &p;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------

SuiteReport run_lattice_suite(const SuiteOptions& options) {
  SuiteReport report{"lattice", {}, {}};
  Recorder commutativity(report, "commutativity", 0.0);
  Recorder associativity(report, "associativity", 0.0);
  Recorder idempotency(report, "idempotency", 0.0);
  Recorder absorption(report, "absorption", 0.0);
  Recorder gcd_divides(report, "gcd_divides", 0.0);
  Recorder divides_lcm(report, "divides_lcm", 0.0);
  Recorder division(report, "exact_divide_inverts_multiply", 0.0);

  Rng rng = stream(options, kLatticeStream);
  const std::size_t triples = count_or(options, kLatticeTriples);
  for (std::size_t i = 0; i < triples; ++i) {
    const InnerFunction a = random_lattice_element(rng);
    const InnerFunction b = random_lattice_element(rng);
    const InnerFunction c = random_lattice_element(rng);
    commutativity.expect([&] {
      return equiv(gcd(a, b), gcd(b, a)) && equiv(lcm(a, b), lcm(b, a));
    });
    associativity.expect([&] {
      return equiv(gcd(gcd(a, b), c), gcd(a, gcd(b, c))) &&
             equiv(lcm(lcm(a, b), c), lcm(a, lcm(b, c)));
    });
    idempotency.expect([&] { return equiv(gcd(a, a), a) && equiv(lcm(a, a), a); });
    absorption.expect([&] {
      return equiv(gcd(a, lcm(a, b)), a) && equiv(lcm(a, gcd(a, b)), a);
    });
    gcd_divides.expect([&] {
      const InnerFunction g = gcd(a, b);
      return divides(g, a) && divides(g, b);
    });
    divides_lcm.expect([&] {
      const InnerFunction l = lcm(a, b);
      return divides(a, l) && divides(b, l);
    });
    division.expect([&] { return equiv(exact_divide(multiply(a, b), b), a); });
  }

  Recorder order(report, "divides_matches_order", 0.0);
  Recorder modulus(report, "divisor_modulus_bound", kModulusSlack);
  Rng prng = stream(options, kDivisibilityStream);
  const std::size_t pairs = count_or(options, kDivisibilityPairs);
  for (std::size_t i = 0; i < pairs; ++i) {
    const InnerFunction theta = random_lattice_element(prng);
    // Half the pairs are built to be comparable.
    const InnerFunction other = random_lattice_element(prng);
    const InnerFunction theta_prime = prng.coin() ? multiply(theta, other) : other;
    std::vector<Complex> points(kInteriorPoints);
    for (auto& z : points) z = prng.disk_point(kInteriorRadius);

    bool holds = false;
    order.expect([&] {
      holds = divides(theta, theta_prime);
      return holds == componentwise_leq(theta, theta_prime);
    });
    if (holds) {
      ++report.statistics["divisible_pairs"];
      modulus.check([&] {
        double worst = 0.0;
        for (Complex z : points) {
          worst = std::max(worst, std::abs(theta_prime(z)) - std::abs(theta(z)));
        }
        return worst;
      });
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

SuiteReport run_calculus_suite(const SuiteOptions& options) {
  SuiteReport report{"calculus", {}, {}};
  Recorder unit(report, "unit_axiom", 0.0);
  Recorder coordinate(report, "coordinate_axiom", 0.0);
  Recorder multiplicativity(report, "multiplicativity", options.tolerance);
  Recorder contractivity(report, "contractivity", options.tolerance);

  CalculusConfig cfg;
  cfg.verify_tolerance = options.tolerance;
  Rng rng = stream(options, kCalculusStream);
  const std::size_t models = count_or(options, kCalculusModels);
  for (std::size_t i = 0; i < models; ++i) {
    const InnerFunction b = calculus_symbol(rng);
    Matrix t;
    try {
      t = build_model_operator(b).matrix;
    } catch (const Error& e) {
      ++report.statistics["errors"];
      ++report.statistics["error." + std::string(to_string(e.kind()))];
      unit.expect([] { return false; });
      continue;
    }
    const Eigen::Index n = t.rows();
    unit.check([&] {
      return max_abs_difference(modelspace::apply(BoundedAnalyticFunction(), t, cfg), Matrix::Identity(n, n));
    });
    coordinate.check(
        [&] { return max_abs_difference(modelspace::apply(BoundedAnalyticFunction::identity(), t, cfg), t); });
    for (int k = 0; k < kCalculusPairs; ++k) {
      const BoundedAnalyticFunction u = random_analytic(rng);
      const BoundedAnalyticFunction v = random_analytic(rng);
      multiplicativity.check([&] { return check_multiplicativity(u, v, t, cfg); });
      contractivity.check([&] {
        const auto r = check_contractivity(u, t, cfg);
        return std::max(0.0, r.operator_norm - r.sampled_sup);
      });
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

std::vector<InnerFunction> model_suite_symbols(std::uint64_t seed, std::size_t count) {
  Rng rng(Rng::derive(seed, kModelStream));
  std::vector<InnerFunction> out;
  out.reserve(count);
  // Degree >= 2 so that every instance has a proper invariant subspace.
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_blaschke(rng, rng.integer(2, 6)));
  return out;
}

SuiteReport run_model_suite(const SuiteOptions& options) {
  SuiteReport report{"model", {}, {}};
  Recorder eigen(report, "eigenvalues_match_zeros", options.tolerance);
  Recorder annihilation(report, "symbol_annihilates_model", options.tolerance);
  Recorder minimal(report, "minimal_function_matches_symbol", 0.0);
  Recorder oracle(report, "oracle_singular_values", options.tolerance);

  for (const InnerFunction& b : model_suite_symbols(options.seed, count_or(options, kModelInstances))) {
    const auto zeros = b.blaschke().expanded_zeros();
    std::optional<ModelOperator> model;
    std::optional<OracleCompression> reference;
    try {
      model = build_model_operator(b);
      reference = oracle_compressed_shift(b, suggested_truncation(b));
    } catch (const Error& e) {
      ++report.statistics["errors"];
      ++report.statistics["error." + std::string(to_string(e.kind()))];
    }
    if (!model || !reference) {
      for (Recorder* r : {&eigen, &annihilation, &minimal, &oracle}) {
        r->expect([] { return false; });
      }
      continue;
    }
    const Matrix& t = model->matrix;
    eigen.check([&] {
      return std::max(linalg::multiset_deviation(linalg::eigenvalues(t), zeros),
                      linalg::multiset_deviation(linalg::eigenvalues(reference->matrix), zeros));
    });
    annihilation.check([&] { return linalg::spectral_norm(modelspace::apply(b, t)); });
    minimal.expect([&] { return equiv(minimal_function(t), b, kNumericMatch); });
    oracle.check([&] { return compare_spectra(t, reference->matrix).singular_value_deviation; });
  }
  return report;
}

// ---------------------------------------------------------------------------

SuiteReport run_classification_suite(const SuiteOptions& options) {
  SuiteReport report{"classification", {}, {}};
  Recorder free(report, "multiplicity_free", 0.0);
  Recorder dimension(report, "kernel_dimension", 0.0);
  Recorder invariance(report, "kernel_invariance", options.tolerance);
  Recorder restriction(report, "restriction_minimal_function", 0.0);
  Recorder distinct(report, "distinct_divisors_distinct_kernels", 0.0);

  Rng rng = stream(options, kClassificationStream);
  const std::size_t models = count_or(options, kClassificationModels);
  for (std::size_t i = 0; i < models; ++i) {
    const InnerFunction b = random_blaschke(rng, rng.integer(1, 5));
    Matrix t;
    try {
      t = build_model_operator(b).matrix;
    } catch (const Error& e) {
      ++report.statistics["errors"];
      ++report.statistics["error." + std::string(to_string(e.kind()))];
      free.expect([] { return false; });
      continue;
    }
    free.expect([&] { return is_multiplicity_free(t); });

    const auto divisors = enumerate_blaschke_divisors(b);
    std::vector<std::optional<Subspace>> kernels(divisors.size());
    for (std::size_t d = 0; d < divisors.size(); ++d) {
      ++report.statistics["divisors"];
      const InnerFunction& phi = divisors[d];
      dimension.expect([&] {
        kernels[d] = divisor_kernel_subspace(t, phi);
        return kernels[d]->dimension() == phi.degree();
      });
      if (!kernels[d]) continue;
      const Subspace& k = *kernels[d];
      invariance.check([&] { return linalg::invariance_residual(t, k.frame()); });
      restriction.expect([&] { return equiv(minimal_function(restrict_to(t, k)), phi, kNumericMatch); });
    }
    for (std::size_t p = 0; p < divisors.size(); ++p) {
      for (std::size_t q = p + 1; q < divisors.size(); ++q) {
        if (!kernels[p] || !kernels[q]) continue;
        distinct.expect([&] {
          const double gap =
              linalg::subspace_gap(kernels[p]->frame(), kernels[q]->frame());
          return std::asin(std::min(1.0, gap)) > kDistinctAngle;
        });
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

struct ExtractionChecks {
  Recorder& dimension;
  Recorder& invariance;
  Recorder& soundness;
  SuiteReport& report;
};

// One extraction with its certificate checked against T directly. `symbol`
// is an annihilator of T used to check the restriction's minimal function.
void check_extraction(ExtractionChecks& c, const Matrix& t, const Vector& h,
                      const InnerFunction& symbol) {
  std::optional<ExtractionCertificate> cert;
  c.dimension.check([&] {
    try {
      cert = extract_invariant_subspace(t, h);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::impossible_by_theory) ++c.report.statistics["impossible_by_theory"];
      throw;
    }
    ++c.report.statistics["branch." + std::string(to_string(cert->branch))];
    const Eigen::Index dim = cert->subspace.dimension();
    return dim >= 1 && dim <= t.rows() - 1 ? 0.0 : 1.0;
  });
  if (!cert) {
    c.invariance.expect([] { return false; });
    c.soundness.expect([] { return false; });
    return;
  }
  c.invariance.check([&] { return linalg::invariance_residual(t, cert->subspace.frame()); });
  c.soundness.expect([&] {
    const bool divisor_branch = cert->branch == ExtractionBranch::divisor_kernel;
    return divisor_branch == (cert->restriction_minimal_function.degree() >= 2) &&
           divides(cert->restriction_minimal_function, symbol, kNumericMatch);
  });
}

}  // namespace

SuiteReport run_extraction_suite(const SuiteOptions& options) {
  SuiteReport report{"extraction", {}, {}};
  report.statistics["impossible_by_theory"] = 0;
  report.statistics["branch.divisor_kernel"] = 0;
  report.statistics["branch.eigenvector_line"] = 0;
  Recorder dimension(report, "certificate_dimension", 0.0);
  Recorder invariance(report, "certificate_invariance", options.tolerance);
  Recorder soundness(report, "certificate_consistency", 0.0);
  ExtractionChecks checks{dimension, invariance, soundness, report};

  Rng rng = stream(options, kExtractionStream);
  const std::size_t pairs = count_or(options, kExtractionPairs);
  for (std::size_t i = 0; i < pairs; ++i) {
    const InnerFunction b = calculus_symbol(rng);
    const Eigen::Index n = b.degree();
    Matrix t;
    try {
      t = build_model_operator(b).matrix;
    } catch (const Error& e) {
      ++report.statistics["errors"];
      ++report.statistics["error." + std::string(to_string(e.kind()))];
      dimension.expect([] { return false; });
      continue;
    }
    Vector h = rng.gaussian_vector(n);
    if (rng.coin()) {
      // Vector from the kernel of a proper divisor: exercises short Krylov
      // chains and the eigenvector branch.
      const auto divisors = enumerate_blaschke_divisors(b);
      const auto& phi = divisors[static_cast<std::size_t>(
          rng.integer(1, static_cast<int>(divisors.size()) - 2))];
      try {
        const Subspace k = divisor_kernel_subspace(t, phi);
        h = k.frame() * rng.gaussian_vector(k.dimension());
      } catch (const Error&) {
        ++report.statistics["kernel_sampling_fallbacks"];
      }
    }
    check_extraction(checks, t, h, b);
  }

  Recorder nilpotent(report, "nilpotent_corollary", 0.0);
  Recorder c0(report, "c0_corollary", 0.0);
  Rng crng = stream(options, kCorollaryStream);
  auto corollary = [&](Recorder& rec, const Matrix& t, const InnerFunction& symbol) {
    for (int k = 0; k < kCorollaryVectors; ++k) {
      const Vector h = crng.gaussian_vector(t.rows());
      rec.expect([&] {
        const auto cert = extract_invariant_subspace(t, h);
        const Eigen::Index dim = cert.subspace.dimension();
        return dim >= 1 && dim <= t.rows() - 1 &&
               linalg::invariance_residual(t, cert.subspace.frame()) <= options.tolerance &&
               divides(cert.restriction_minimal_function, symbol, kNumericMatch);
      });
    }
  };
  for (Eigen::Index n = 2; n <= 8; ++n) {
    corollary(nilpotent, jordan_cell(n), InnerFunction::z_power(static_cast<int>(n)));
  }
  for (const InnerFunction& b : model_suite_symbols(options.seed, kModelInstances)) {
    Matrix t;
    try {
      t = build_model_operator(b).matrix;
    } catch (const Error&) {
      c0.expect([] { return false; });
      continue;
    }
    corollary(c0, t, b);
  }
  return report;
}

// ---------------------------------------------------------------------------

std::vector<SuiteReport> run_suites(std::string_view name, const SuiteOptions& options) {
  if (name == "all") {
    std::vector<SuiteReport> out;
    for (auto suite : kSuiteNames) out.push_back(run_suites(suite, options).front());
    return out;
  }
  if (name == "lattice") return {run_lattice_suite(options)};
  if (name == "calculus") return {run_calculus_suite(options)};
  if (name == "model") return {run_model_suite(options)};
  if (name == "classification") return {run_classification_suite(options)};
  if (name == "extraction") return {run_extraction_suite(options)};
  throw Error(ErrorKind::invalid_argument, "unknown suite '" + std::string(name) + "'");
}

nlohmann::json to_json(const SuiteReport& report) {
  nlohmann::json props = nlohmann::json::array();
  for (const auto& p : report.properties) {
    props.push_back({{"name", p.name},
                     {"cases", p.cases},
                     {"failures", p.failures},
                     {"worst", p.worst},
                     {"tolerance", p.tolerance},
                     {"passed", p.passed()}});
  }
  return {{"suite", report.suite},
          {"passed", report.passed()},
          {"properties", std::move(props)},
          {"statistics", report.statistics}};
}

nlohmann::json to_json(const std::vector<SuiteReport>& reports, const SuiteOptions& options) {
  nlohmann::json suites = nlohmann::json::array();
  bool passed = !reports.empty();
  for (const auto& r : reports) {
    suites.push_back(to_json(r));
    passed = passed && r.passed();
  }
  nlohmann::json out = {{"seed", options.seed},
                        {"tolerance", options.tolerance},
                        {"passed", passed},
                        {"suites", std::move(suites)}};
  if (options.cases) out["cases"] = *options.cases;
  return out;
}

std::string to_csv(const std::vector<SuiteReport>& reports) {
  auto num = [](double x) { return nlohmann::json(x).dump(); };
  std::ostringstream out;
  out << "kind,suite,name,cases,failures,worst,tolerance,passed\n";
  for (const auto& r : reports) {
    for (const auto& p : r.properties) {
      out << "property," << r.suite << ',' << p.name << ',' << p.cases << ',' << p.failures << ','
          << num(p.worst) << ',' << num(p.tolerance) << ',' << (p.passed() ? "true" : "false")
          << '\n';
    }
    for (const auto& [key, value] : r.statistics) {
      out << "statistic," << r.suite << ',' << key << ',' << value << ",,,,\n";
    }
  }
  return out.str();
}

}  // namespace modelspace::verify
