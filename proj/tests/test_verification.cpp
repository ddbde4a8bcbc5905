#include <gtest/gtest.h>

#include "modelspace/error.hpp"
#include "modelspace/json_io.hpp"
#include "modelspace/verification.hpp"

using namespace modelspace;

namespace {

verify::SuiteOptions small(std::size_t cases, std::uint64_t seed = 42) {
  verify::SuiteOptions o;
  o.seed = seed;
  o.cases = cases;
  return o;
}

}  // namespace

TEST(Verification, EverySuitePassesOnSmallRuns) {
  for (auto name : verify::kSuiteNames) {
    const auto reports = verify::run_suites(name, small(5));
    ASSERT_EQ(reports.size(), 1u);
    EXPECT_TRUE(reports[0].passed()) << json::dump(verify::to_json(reports[0]));
    for (const auto& p : reports[0].properties) EXPECT_GT(p.cases, 0u) << name << "/" << p.name;
  }
}

TEST(Verification, AllRunsEverySuiteInOrder) {
  const auto reports = verify::run_suites("all", small(2));
  ASSERT_EQ(reports.size(), std::size(verify::kSuiteNames));
  for (std::size_t i = 0; i < reports.size(); ++i) EXPECT_EQ(reports[i].suite, verify::kSuiteNames[i]);
}

TEST(Verification, ReportsDependOnlyOnSeed) {
  const auto a = json::dump(verify::to_json(verify::run_suites("all", small(3, 9)), small(3, 9)));
  const auto b = json::dump(verify::to_json(verify::run_suites("all", small(3, 9)), small(3, 9)));
  const auto c = json::dump(verify::to_json(verify::run_suites("all", small(3, 10)), small(3, 10)));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(Verification, ModelSymbolsRespectTheStatedRanges) {
  const auto symbols = verify::model_suite_symbols(42, 50);
  ASSERT_EQ(symbols.size(), 50u);
  for (const auto& b : symbols) {
    EXPECT_GE(b.degree(), 2);
    EXPECT_LE(b.degree(), 6);
    EXPECT_TRUE(b.is_finite_blaschke());
    for (const auto& atom : b.blaschke().atoms()) EXPECT_LE(std::abs(atom.alpha), 0.9);
  }
}

TEST(Verification, ToleranceIsApplied) {
  auto o = small(3);
  o.tolerance = 1e-300;
  const auto r = verify::run_model_suite(o);
  EXPECT_FALSE(r.passed());
  ASSERT_NE(r.find("symbol_annihilates_model"), nullptr);
  EXPECT_EQ(r.find("symbol_annihilates_model")->tolerance, 1e-300);
  EXPECT_EQ(r.find("no_such_property"), nullptr);
}

TEST(Verification, UnknownSuite) {
  EXPECT_THROW(verify::run_suites("bogus", {}), Error);
}

TEST(Verification, CsvHasOneRowPerPropertyAndStatistic) {
  const auto reports = verify::run_suites("lattice", small(4));
  const std::string csv = verify::to_csv(reports);
  const auto rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
  EXPECT_EQ(rows, 1 + reports[0].properties.size() + reports[0].statistics.size());
}
