#include "modelspace/json_io.hpp"

#include "modelspace/error.hpp"

namespace modelspace::json {
namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) malformed(std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

Json encode(Complex z) { return Json::array({z.real(), z.imag()}); }

Json encode(const InnerFunction& theta) {
  Json blaschke = Json::array();
  for (const auto& atom : theta.blaschke().atoms()) {
    blaschke.push_back({{"alpha", encode(atom.alpha)}, {"mult", atom.multiplicity}});
  }
  Json singular = Json::array();
  for (const auto& atom : theta.singular().atoms()) {
    singular.push_back({{"angle", atom.angle}, {"weight", atom.weight}});
  }
  return {{"gamma", encode(theta.gamma())}, {"blaschke", blaschke}, {"singular", singular}};
}

Json encode_matrix(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(encode(m(i, k)));
    rows.push_back(std::move(row));
  }
  return {{"n", m.rows()}, {"entries", rows}};
}

Json encode_vector(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(encode(v(i)));
  return out;
}

Json encode(const ModelOperator& model) {
  Json zeros = Json::array();
  for (Complex a : model.basis.zeros()) zeros.push_back(encode(a));
  return {{"b", encode(model.symbol)},
          {"matrix", encode_matrix(model.matrix)},
          {"basis", {{"kind", "takenaka-malmquist-walsh"}, {"zeros", zeros}}}};
}

Json encode(const ExtractionCertificate& cert) {
  return {{"branch", std::string(to_string(cert.branch))},
          {"divisor", cert.divisor_used ? encode(*cert.divisor_used) : Json(nullptr)},
          {"frame", encode_matrix(cert.subspace.frame())},
          {"invariance_residual", cert.invariance_residual},
          {"restriction_minimal_function", encode(cert.restriction_minimal_function)}};
}

Complex decode_complex(const Json& j) {
  if (!j.is_array() || j.size() != 2) malformed("complex numbers are [re, im] pairs");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

InnerFunction decode_inner(const Json& j) {
  if (!j.is_object()) malformed("inner function must be an object");
  const Complex gamma = j.contains("gamma") ? decode_complex(j.at("gamma")) : Complex{1.0, 0.0};
  std::vector<BlaschkeAtom> zeros;
  if (j.contains("blaschke")) {
    const Json& list = j.at("blaschke");
    if (!list.is_array()) malformed("\"blaschke\" must be an array");
    for (const Json& atom : list) {
      const Json& mult = field(atom, "mult");
      if (!mult.is_number_integer()) malformed("\"mult\" must be an integer");
      zeros.push_back({decode_complex(field(atom, "alpha")), mult.get<int>()});
    }
  }
  std::vector<SingularAtom> masses;
  if (j.contains("singular")) {
    const Json& list = j.at("singular");
    if (!list.is_array()) malformed("\"singular\" must be an array");
    for (const Json& atom : list) {
      masses.push_back({number(field(atom, "angle"), "angle"),
                        number(field(atom, "weight"), "weight")});
    }
  }
  return {gamma, BlaschkeFunction(zeros), AtomicSingularMeasure(masses)};
}

Matrix decode_matrix(const Json& j) {
  const Json& entries = field(j, "entries");
  if (!entries.is_array()) malformed("\"entries\" must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(entries.size());
  if (j.contains("n")) {
    const Json& n = j.at("n");
    if (!n.is_number_integer() || n.get<long long>() != rows) {
      malformed("\"n\" does not match the number of rows");
    }
  }
  const Eigen::Index cols = rows == 0 ? 0 : static_cast<Eigen::Index>(entries[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = entries[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      malformed("matrix rows must have equal length");
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = decode_complex(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

Vector decode_vector(const Json& j) {
  if (!j.is_array()) malformed("vector must be an array of [re, im] pairs");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = decode_complex(j[i]);
  return v;
}

Matrix decode_operator(const Json& j) {
  const Matrix m = j.is_object() && j.contains("matrix") ? decode_matrix(j.at("matrix"))
                                                          : decode_matrix(j);
  if (m.rows() != m.cols()) malformed("operator matrix must be square");
  return m;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::parse, e.what());
  }
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace modelspace::json
