#pragma once

// JSON encodings. Complex numbers are [re, im]; matrices are
// {"n": rows, "entries": [[[re, im], ...], ...]} in row-major order. Object
// keys come out sorted, so dumps are canonical.

#include <string>

#include "json.hpp"

#include "modelspace/c0_engine.hpp"
#include "modelspace/inner_algebra.hpp"
#include "modelspace/model_operator.hpp"
#include "modelspace/types.hpp"

namespace modelspace::json {

using Json = nlohmann::json;

Json encode(Complex z);
Json encode(const InnerFunction& theta);
Json encode_matrix(const Matrix& m);
Json encode_vector(const Vector& v);
Json encode(const ModelOperator& model);
Json encode(const ExtractionCertificate& cert);

// Decoders throw Error(parse) on malformed input and let domain errors from
// the value constructors (e.g. invalid-zero) propagate.
Complex decode_complex(const Json& j);
InnerFunction decode_inner(const Json& j);
Matrix decode_matrix(const Json& j);
Vector decode_vector(const Json& j);
/// Accepts a model bundle (uses its "matrix") or a bare matrix.
Matrix decode_operator(const Json& j);

/// Parses text, throwing Error(parse) on syntax errors.
Json parse(const std::string& text);
/// Canonical single-line dump.
std::string dump(const Json& j);

}  // namespace modelspace::json
