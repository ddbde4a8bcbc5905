#include "modelspace/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "modelspace/c0_engine.hpp"
#include "modelspace/json_io.hpp"
#include "modelspace/linalg.hpp"
#include "modelspace/model_operator.hpp"
#include "modelspace/random.hpp"
#include "modelspace/verification.hpp"

namespace modelspace::cli {
namespace {

using json::Json;

std::string slurp(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::ifstream file(path);
  if (!file) throw Error(ErrorKind::parse, "cannot read '" + path + "'");
  std::ostringstream text;
  text << file.rdbuf();
  return text.str();
}

Json read_json(const std::string& path, std::istream& in) { return json::parse(slurp(path, in)); }

InnerFunction read_inner(const std::string& path, std::istream& in) {
  return json::decode_inner(read_json(path, in));
}

void emit(std::ostream& out, const Json& j) { out << json::dump(j) << '\n'; }

struct InnerArgs {
  std::vector<std::string> files;
  std::pair<double, double> z{0.0, 0.0};
  std::vector<double> fractions;
};

struct ModelArgs {
  std::string file;
  bool oracle = false;
  std::optional<std::size_t> trunc;
  CircleSampler sampler;
};

struct ExtractArgs {
  std::string file;
  std::string h_file;
  bool random = false;
  std::uint64_t seed = 42;
  double tolerance = 0.0;
};

struct VerifyArgs {
  std::string suite;
  std::uint64_t seed = 42;
  std::optional<std::size_t> cases;
  std::string output;
  std::string format = "json";
  double tolerance = 0.0;
};

int run_inner(const std::string& op, const InnerArgs& a, std::istream& in, std::ostream& out) {
  auto operand = [&](std::size_t i) {
    return read_inner(i < a.files.size() ? a.files[i] : std::string(), in);
  };
  auto binary = [&] {
    if (a.files.size() != 2) {
      throw Error(ErrorKind::parse, "'" + op + "' needs two inner-function files");
    }
    return std::pair{operand(0), operand(1)};
  };

  if (op == "eval") {
    emit(out, json::encode(operand(0)(Complex{a.z.first, a.z.second})));
  } else if (op == "divides") {
    const auto [x, y] = binary();
    emit(out, Json{{"divides", divides(x, y)}});
  } else if (op == "gcd") {
    const auto [x, y] = binary();
    emit(out, json::encode(gcd(x, y)));
  } else if (op == "lcm") {
    const auto [x, y] = binary();
    emit(out, json::encode(lcm(x, y)));
  } else if (op == "mul") {
    const auto [x, y] = binary();
    emit(out, json::encode(multiply(x, y)));
  } else if (op == "div") {
    const auto [x, y] = binary();
    emit(out, json::encode(exact_divide(x, y)));
  } else {
    const InnerFunction theta = operand(0);
    const auto divisors = a.fractions.empty()
                              ? enumerate_blaschke_divisors(theta)
                              : enumerate_divisors_sampled(theta, a.fractions);
    Json list = Json::array();
    for (const auto& d : divisors) list.push_back(json::encode(d));
    emit(out, list);
  }
  return kExitSuccess;
}

int run_model(const ModelArgs& a, std::istream& in, std::ostream& out) {
  a.sampler.validate();
  const InnerFunction b = read_inner(a.file, in);
  const ModelOperator model = build_model_operator(b, a.sampler);
  Json bundle = json::encode(model);
  if (a.oracle) {
    const std::size_t trunc = a.trunc.value_or(suggested_truncation(b));
    const OracleCompression oracle = oracle_compressed_shift(b, trunc);
    const SpectralComparison cmp = compare_spectra(model.matrix, oracle.matrix);
    bundle["oracle"] = {{"truncation", oracle.truncation},
                        {"successive_deviation", oracle.successive_deviation},
                        {"eigenvalue_deviation", cmp.eigenvalue_deviation},
                        {"singular_value_deviation", cmp.singular_value_deviation}};
  }
  emit(out, bundle);
  return kExitSuccess;
}

int run_extract(const ExtractArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
  if (a.random == !a.h_file.empty()) {
    throw Error(ErrorKind::parse, "pass exactly one of --h FILE or --random");
  }
  if (a.file.empty() && a.h_file == "-") {
    throw Error(ErrorKind::parse, "model and h cannot both come from stdin");
  }
  const Matrix t = json::decode_operator(read_json(a.file, in));
  Vector h;
  if (a.random) {
    Rng rng(a.seed);
    h = rng.gaussian_vector(t.rows());
  } else {
    h = json::decode_vector(read_json(a.h_file, in));
  }
  if (h.size() != t.rows()) {
    throw Error(ErrorKind::invalid_argument, "h dimension does not match the operator",
                static_cast<double>(h.size()));
  }
  const ExtractionCertificate cert = extract_invariant_subspace(t, h);
  emit(out, json::encode(cert));
  err << "multiplicity-free: " << (is_multiplicity_free(t) ? "true" : "false") << '\n';
  const Eigen::Index dim = cert.subspace.dimension();
  const bool sound = dim >= 1 && dim <= t.rows() - 1 && cert.invariance_residual <= a.tolerance;
  if (!sound) err << "certificate fails the invariance tolerance " << a.tolerance << '\n';
  return sound ? kExitSuccess : kExitVerification;
}

int run_verify(const VerifyArgs& a, std::ostream& out) {
  verify::SuiteOptions options;
  options.seed = a.seed;
  options.cases = a.cases;
  options.tolerance = a.tolerance;
  const auto reports = verify::run_suites(a.suite, options);
  const std::string text = a.format == "csv"
                               ? verify::to_csv(reports)
                               : json::dump(verify::to_json(reports, options)) + "\n";
  if (a.output.empty()) {
    out << text;
  } else {
    std::ofstream file(a.output, std::ios::binary);
    if (!file) throw Error(ErrorKind::invalid_argument, "cannot write '" + a.output + "'");
    file << text;
  }
  bool passed = true;
  for (const auto& r : reports) passed = passed && r.passed();
  return passed ? kExitSuccess : kExitVerification;
}

}  // namespace

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parse:
      return kExitParse;
    case ErrorKind::accuracy:
    case ErrorKind::impossible_by_theory:
      return kExitVerification;
    default:
      return kExitDomain;
  }
}

double default_tolerance() {
  if (const char* env = std::getenv("MODELSPACE_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
  }
  return kVerifyTolerance;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Model spaces, functional calculus and invariant subspaces of C0 contractions",
               "modelspace"};
  app.require_subcommand(1);

  auto* inner = app.add_subcommand("inner", "Inner-function lattice operations");
  inner->require_subcommand(1);
  InnerArgs inner_args;
  std::string inner_op;
  for (const char* name : {"eval", "divides", "gcd", "lcm", "mul", "div", "divisors"}) {
    auto* sub = inner->add_subcommand(name);
    sub->add_option("files", inner_args.files, "Inner-function JSON files (stdin when omitted)");
    if (std::string(name) == "eval") {
      sub->add_option("--z", inner_args.z, "Evaluation point RE IM")->required();
    }
    if (std::string(name) == "divisors") {
      sub->add_option("--singular-fractions", inner_args.fractions,
                      "Sample singular atoms at these fractions of their weight");
    }
    sub->callback([&inner_op, name] { inner_op = name; });
  }

  auto* model = app.add_subcommand("model", "Compressed shift S(b) for a finite Blaschke b");
  ModelArgs model_args;
  model->add_option("file", model_args.file, "Inner-function JSON (stdin when omitted)");
  model->add_flag("--oracle", model_args.oracle, "Compare against the truncated-shift oracle");
  model->add_option("--trunc", model_args.trunc, "Oracle truncation degree");
  model->add_option("--samples", model_args.sampler.sample_count, "Initial quadrature size");
  model->add_option("--doublings", model_args.sampler.max_doublings, "Quadrature doublings");
  model->add_option("--tail-tol", model_args.sampler.tail_tolerance, "Quadrature tail tolerance");

  auto* extract = app.add_subcommand("extract", "Certified non-trivial invariant subspace");
  ExtractArgs extract_args;
  extract_args.tolerance = default_tolerance();
  extract->set_help_flag("--help", "Print this help message and exit");
  extract->add_option("file", extract_args.file, "Model bundle or matrix JSON (stdin when omitted)");
  extract->add_option("--h", extract_args.h_file, "Vector JSON");
  extract->add_flag("--random", extract_args.random, "Use a seeded Gaussian vector");
  extract->add_option("--seed", extract_args.seed, "Seed for --random");
  extract->add_option("--tol", extract_args.tolerance, "Invariance tolerance")
      ->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Seeded property suites");
  VerifyArgs verify_args;
  verify_args.tolerance = default_tolerance();
  verify->add_option("suite", verify_args.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"lattice", "calculus", "model", "classification", "extraction", "all"}));
  verify->add_option("--seed", verify_args.seed, "Seed");
  verify->add_option("--cases", verify_args.cases, "Case count override")
      ->check(CLI::PositiveNumber);
  verify->add_option("--output", verify_args.output, "Report path (stdout when omitted)");
  verify->add_option("--format", verify_args.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--tol", verify_args.tolerance, "Residual tolerance")
      ->check(CLI::PositiveNumber);

  std::vector<const char*> argv{"modelspace"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitSuccess : kExitParse;
  }

  try {
    if (inner->parsed()) return run_inner(inner_op, inner_args, in, out);
    if (model->parsed()) return run_model(model_args, in, out);
    if (extract->parsed()) return run_extract(extract_args, in, out, err);
    return run_verify(verify_args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  }
}

}  // namespace modelspace::cli
