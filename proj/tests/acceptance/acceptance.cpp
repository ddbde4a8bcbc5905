// Runs the nine acceptance criteria and prints one PASS/FAIL line for each.

#include <chrono>
#include <cstdio>
#include <initializer_list>
#include <string>

#include "modelspace/json_io.hpp"
#include "modelspace/verification.hpp"

using namespace modelspace;
using verify::SuiteReport;

namespace {

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
  std::printf("criterion %d %-28s %s  %s\n", id, title, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// All named properties present, with the expected case count (0 = any),
// and failure-free.
bool properties_pass(const SuiteReport& r, std::initializer_list<const char*> names,
                     std::size_t expected_cases, std::string& detail) {
  bool ok = true;
  for (const char* name : names) {
    const auto* p = r.find(name);
    if (p == nullptr) {
      detail += std::string(" missing:") + name;
      ok = false;
      continue;
    }
    detail += " " + p->name + "=" + std::to_string(p->failures) + "/" + std::to_string(p->cases);
    if (!p->passed() || (expected_cases != 0 && p->cases != expected_cases)) ok = false;
  }
  return ok;
}

template <class F>
std::pair<SuiteReport, double> timed(F&& run) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport r = run();
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return {std::move(r), elapsed.count()};
}

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, " time=%.2fs", s);
  return buf;
}

std::int64_t stat(const SuiteReport& r, const std::string& key) {
  const auto it = r.statistics.find(key);
  return it == r.statistics.end() ? 0 : it->second;
}

}  // namespace

int main() {
  const verify::SuiteOptions options;  // seed 42, default case counts

  {
    const auto [r, t] = timed([&] { return verify::run_lattice_suite(options); });
    std::string d1;
    const bool laws = properties_pass(r,
                                      {"commutativity", "associativity", "idempotency",
                                       "absorption", "gcd_divides", "divides_lcm"},
                                      verify::kLatticeTriples, d1);
    report(1, "lattice laws", laws && t < 5.0, d1 + seconds(t));
    std::string d2;
    const bool order = properties_pass(r, {"divides_matches_order"}, verify::kDivisibilityPairs, d2);
    const bool modulus = properties_pass(r, {"divisor_modulus_bound"}, 0, d2);
    report(2, "divisibility coherence", order && modulus, d2);
  }
  {
    const auto [r, t] = timed([&] { return verify::run_calculus_suite(options); });
    std::string d;
    bool ok = properties_pass(r, {"unit_axiom", "coordinate_axiom"}, verify::kCalculusModels, d);
    ok = properties_pass(r, {"multiplicativity", "contractivity"}, 0, d) && ok;
    report(3, "calculus axioms", ok && t < 30.0, d + seconds(t));
  }
  {
    const SuiteReport r = verify::run_model_suite(options);
    std::string d4;
    report(4, "model fidelity",
           properties_pass(r,
                           {"eigenvalues_match_zeros", "symbol_annihilates_model",
                            "minimal_function_matches_symbol"},
                           verify::kModelInstances, d4),
           d4);
    std::string d8;
    const bool oracle = properties_pass(r, {"oracle_singular_values"}, verify::kModelInstances, d8);
    // Printed in order below.
    const SuiteReport c = verify::run_classification_suite(options);
    std::string d5;
    bool ok5 = properties_pass(c, {"multiplicity_free"}, verify::kClassificationModels, d5);
    ok5 = properties_pass(c,
                          {"kernel_dimension", "kernel_invariance",
                           "restriction_minimal_function", "distinct_divisors_distinct_kernels"},
                          0, d5) &&
          ok5;
    report(5, "divisor classification", ok5, d5);

    const SuiteReport e = verify::run_extraction_suite(options);
    std::string d6;
    bool ok6 = properties_pass(e, {"certificate_dimension", "certificate_invariance"},
                               verify::kExtractionPairs, d6);
    const auto impossible = stat(e, "impossible_by_theory");
    ok6 = ok6 && impossible == 0;
    d6 += " divisor_kernel=" + std::to_string(stat(e, "branch.divisor_kernel")) +
          " eigenvector_line=" + std::to_string(stat(e, "branch.eigenvector_line")) +
          " impossible_by_theory=" + std::to_string(impossible);
    report(6, "theorem extraction", ok6, d6);

    std::string d7;
    bool ok7 = properties_pass(e, {"nilpotent_corollary"}, 7 * verify::kCorollaryVectors, d7);
    ok7 = properties_pass(e, {"c0_corollary"}, verify::kModelInstances * verify::kCorollaryVectors, d7) &&
          ok7;
    report(7, "corollary cases", ok7, d7);
    report(8, "oracle independence", oracle, d8);
  }
  {
    const auto first = json::dump(verify::to_json(verify::run_suites("all", options), options));
    const auto second = json::dump(verify::to_json(verify::run_suites("all", options), options));
    report(9, "determinism", first == second,
           "bytes=" + std::to_string(first.size()) + (first == second ? " identical" : " differ"));
  }

  std::printf("%s: %d of 9 criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures == 0 ? 0 : 1;
}
