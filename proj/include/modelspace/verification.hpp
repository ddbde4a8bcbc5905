#pragma once

// Seeded property suites shared by `modelspace verify` and the acceptance
// binary. Reports contain no timings, so equal seeds give equal reports.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "modelspace/c0_engine.hpp"

namespace modelspace::verify {

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double worst = 0.0;  // largest residual seen (0 for purely boolean checks)
  double tolerance = 0.0;

  bool passed() const noexcept { return cases > 0 && failures == 0; }
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyResult> properties;
  std::map<std::string, std::int64_t> statistics;

  bool passed() const noexcept;
  const PropertyResult* find(std::string_view property) const noexcept;
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  /// Overrides the suite's default case count.
  std::optional<std::size_t> cases;
  double tolerance = kVerifyTolerance;
};

inline constexpr std::size_t kLatticeTriples = 500;
inline constexpr std::size_t kDivisibilityPairs = 200;
inline constexpr std::size_t kCalculusModels = 100;
inline constexpr std::size_t kModelInstances = 50;
inline constexpr std::size_t kClassificationModels = 20;
inline constexpr std::size_t kExtractionPairs = 200;
inline constexpr int kCorollaryVectors = 5;

SuiteReport run_lattice_suite(const SuiteOptions& options);
SuiteReport run_calculus_suite(const SuiteOptions& options);
SuiteReport run_model_suite(const SuiteOptions& options);
SuiteReport run_classification_suite(const SuiteOptions& options);
SuiteReport run_extraction_suite(const SuiteOptions& options);

/// The symbols the model suite draws for a given seed (degree 1..6, zeros of
/// modulus <= 0.9); the extraction suite reuses them for its C0 corollary.
std::vector<InnerFunction> model_suite_symbols(std::uint64_t seed, std::size_t count);

inline constexpr std::string_view kSuiteNames[] = {"lattice", "calculus", "model",
                                                   "classification", "extraction"};

/// Runs one suite by name, or all of them for "all". Throws
/// Error(invalid_argument) on an unknown name.
std::vector<SuiteReport> run_suites(std::string_view name, const SuiteOptions& options);

nlohmann::json to_json(const SuiteReport& report);
nlohmann::json to_json(const std::vector<SuiteReport>& reports, const SuiteOptions& options);
std::string to_csv(const std::vector<SuiteReport>& reports);

}  // namespace modelspace::verify
