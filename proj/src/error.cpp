#include "modelspace/error.hpp"

namespace modelspace {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parse: return "parse";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::invalid_zero: return "invalid-zero";
    case ErrorKind::domain: return "domain";
    case ErrorKind::not_a_divisor: return "not-a-divisor";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::accuracy: return "accuracy";
    case ErrorKind::degenerate_model: return "degenerate-model";
    case ErrorKind::unsupported_model: return "unsupported-model";
    case ErrorKind::conditioning: return "conditioning";
    case ErrorKind::near_boundary_spectrum: return "near-boundary-spectrum";
    case ErrorKind::trivial_element: return "trivial-element";
    case ErrorKind::not_invariant: return "not-invariant";
    case ErrorKind::ill_conditioned_spectrum: return "ill-conditioned-spectrum";
    case ErrorKind::rank_ambiguity: return "rank-ambiguity";
    case ErrorKind::trivial_annihilator: return "trivial-annihilator";
    case ErrorKind::impossible_by_theory: return "impossible-by-theory";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& detail, double value)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      value_(value) {}

}  // namespace modelspace
