#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace modelspace {

enum class ErrorKind {
  parse,
  invalid_argument,
  invalid_zero,
  domain,
  not_a_divisor,
  unsupported,
  accuracy,
  degenerate_model,
  unsupported_model,
  conditioning,
  near_boundary_spectrum,
  trivial_element,
  not_invariant,
  ill_conditioned_spectrum,
  rank_ambiguity,
  trivial_annihilator,
  impossible_by_theory,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `value()` carries the offending
/// numeric quantity (a residual, tail estimate, modulus) when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail,
        double value = std::numeric_limits<double>::quiet_NaN());

  ErrorKind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }

 private:
  ErrorKind kind_;
  double value_;
};

}  // namespace modelspace
