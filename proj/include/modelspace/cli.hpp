#pragma once

// The `modelspace` command line, callable in-process.

#include <iosfwd>
#include <string>
#include <vector>

#include "modelspace/error.hpp"

namespace modelspace::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitParse = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitVerification = 3;

int exit_code(ErrorKind kind) noexcept;

/// Verification tolerance: MODELSPACE_TOL when set to a positive number,
/// otherwise 1e-8.
double default_tolerance();

/// Runs one command line (`args` excludes the program name). Results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace modelspace::cli
