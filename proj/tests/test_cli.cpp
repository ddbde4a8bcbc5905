#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "modelspace/cli.hpp"
#include "modelspace/json_io.hpp"

using namespace modelspace;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("modelspace_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

const char* kZ2 = R"({"gamma":[1,0],"blaschke":[{"alpha":[0,0],"mult":2}],"singular":[]})";
const char* kZ3 = R"({"gamma":[1,0],"blaschke":[{"alpha":[0,0],"mult":3}],"singular":[]})";
const char* kAtom = R"({"gamma":[1,0],"blaschke":[],"singular":[{"angle":0,"weight":1}]})";

}  // namespace

TEST_F(CliTest, InnerDivides) {
  const Outcome r = run({"inner", "divides", write("a.json", kZ2), write("b.json", kZ3)});
  EXPECT_EQ(r.code, cli::kExitSuccess);
  EXPECT_EQ(r.out, "{\"divides\":true}\n");
}

TEST_F(CliTest, InnerGcdIsCanonical) {
  const Outcome r = run({"inner", "gcd", write("a.json", kZ2), write("b.json", kZ3)});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, R"({"blaschke":[{"alpha":[0.0,0.0],"mult":2}],"gamma":[1.0,0.0],"singular":[]})"
                   "\n");
}

TEST_F(CliTest, InnerEvalSingularAtom) {
  const Outcome r = run({"inner", "eval", "--z", "0.0", "0.0", write("s.json", kAtom)});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "[0.36787944117144233,0.0]\n");
}

TEST_F(CliTest, InnerReadsStdin) {
  const Outcome r = run({"inner", "divisors"}, kZ2);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).size(), 3u);
}

TEST_F(CliTest, InnerDivNotADivisorIsDomainError) {
  const Outcome r = run({"inner", "div", write("a.json", kZ2), write("b.json", kZ3)});
  EXPECT_EQ(r.code, cli::kExitDomain);
  EXPECT_NE(r.err.find("not-a-divisor"), std::string::npos);
}

TEST_F(CliTest, ParseErrors) {
  EXPECT_EQ(run({"inner", "divisors"}, "{oops").code, cli::kExitParse);
  EXPECT_EQ(run({"bogus"}).code, cli::kExitParse);
  EXPECT_EQ(run({"inner", "gcd", write("a.json", kZ2)}).code, cli::kExitParse);
  EXPECT_EQ(run({"verify", "nonsense"}).code, cli::kExitParse);
  EXPECT_EQ(run({"inner", "divisors", (dir_ / "missing.json").string()}).code, cli::kExitParse);
}

TEST_F(CliTest, ModelZSquared) {
  const Outcome r = run({"model", write("b.json", kZ2)});
  ASSERT_EQ(r.code, 0);
  const Matrix m = json::decode_operator(json::parse(r.out));
  ASSERT_EQ(m.rows(), 2);
  EXPECT_NEAR(std::abs(m(1, 0) - 1.0), 0.0, 1e-13);
  EXPECT_LE(std::abs(m(0, 0)) + std::abs(m(0, 1)) + std::abs(m(1, 1)), 1e-13);
}

TEST_F(CliTest, ModelWithOracle) {
  const Outcome r = run({"model", "--oracle", "--trunc", "32",
                     write("b.json", R"({"blaschke":[{"alpha":[0.5,0],"mult":1},{"alpha":[-0.3,0.2],"mult":1},)"
                                         R"({"alpha":[0.1,0.4],"mult":1},{"alpha":[-0.2,-0.45],"mult":1}]})")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto oracle = json::parse(r.out).at("oracle");
  EXPECT_EQ(oracle.at("truncation").get<int>(), 32);
  EXPECT_LE(oracle.at("eigenvalue_deviation").get<double>(), 1e-8);
}

TEST_F(CliTest, ModelRejectsSingularPart) {
  const Outcome r = run({"model", write("s.json", kAtom)});
  EXPECT_EQ(r.code, cli::kExitDomain);
  EXPECT_NE(r.err.find("unsupported-model"), std::string::npos);
}

TEST_F(CliTest, Extract) {
  const std::string model = write("m.json", run({"model"}, kZ3).out);
  const Outcome r = run({"extract", model, "--h", write("h.json", "[[1,0],[0,0],[0,0]]")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto cert = json::parse(r.out);
  EXPECT_EQ(cert.at("branch"), "divisor_kernel");
  EXPECT_EQ(json::decode_matrix(cert.at("frame")).cols(), 1);

  EXPECT_EQ(run({"extract", model, "--h", write("zero.json", "[[0,0],[0,0],[0,0]]")}).code,
            cli::kExitDomain);
  EXPECT_EQ(run({"extract", model, "--h", write("short.json", "[[1,0]]")}).code, cli::kExitDomain);
  EXPECT_EQ(run({"extract", model}).code, cli::kExitParse);
}

TEST_F(CliTest, ExtractRandomIsDeterministic) {
  const std::string model = write("m.json", run({"model"}, kZ3).out);
  const Outcome a = run({"extract", model, "--random", "--seed", "42"});
  const Outcome b = run({"extract", model, "--random", "--seed", "42"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run({"extract", model, "--random", "--seed", "43"}).out);
}

TEST_F(CliTest, ExtractToleranceFromEnvironment) {
  const std::string model = write("m.json", run({"model"}, kZ3).out);
  ::setenv("MODELSPACE_TOL", "1e-30", 1);
  EXPECT_DOUBLE_EQ(cli::default_tolerance(), 1e-30);
  const int code = run({"extract", model, "--random"}).code;
  ::unsetenv("MODELSPACE_TOL");
  EXPECT_EQ(code, cli::kExitVerification);
  EXPECT_DOUBLE_EQ(cli::default_tolerance(), 1e-8);
}

TEST_F(CliTest, VerifyLatticeSuite) {
  const Outcome r = run({"verify", "lattice", "--cases", "500", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto report = json::parse(r.out);
  EXPECT_TRUE(report.at("passed").get<bool>());
  EXPECT_EQ(report.at("seed").get<int>(), 7);
}

TEST_F(CliTest, VerifyExtractionSuite) {
  const Outcome r = run({"verify", "extraction", "--cases", "200"});
  ASSERT_EQ(r.code, 0);
  const auto suite = json::parse(r.out).at("suites").at(0);
  EXPECT_EQ(suite.at("properties").at(0).at("cases").get<int>(), 200);
  const auto& stats = suite.at("statistics");
  EXPECT_EQ(stats.at("branch.divisor_kernel").get<int>() + stats.at("branch.eigenvector_line").get<int>(),
            200);
}

TEST_F(CliTest, VerifyWritesCsv) {
  const std::string path = (dir_ / "report.csv").string();
  const Outcome r = run({"verify", "classification", "--cases", "3", "--format", "csv", "--output", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream file(path);
  std::string header;
  std::getline(file, header);
  EXPECT_EQ(header, "kind,suite,name,cases,failures,worst,tolerance,passed");
}

TEST_F(CliTest, VerifyFailureExitCode) {
  // A tolerance below rounding makes the residual properties fail.
  EXPECT_EQ(run({"verify", "model", "--cases", "2", "--tol", "1e-300"}).code, cli::kExitVerification);
}
