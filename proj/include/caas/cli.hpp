#pragma once

#include <iosfwd>

namespace caas {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;       // invalid or infeasible input, usage errors
inline constexpr int kExitNotConverged = 2;

/// Entry point of the `caas` tool, usable in-process.
///   caas validate <scenario>
///   caas solve <scenario> [--out DIR] [--kkt-tol T] [--full-precision]
///   caas sweep <name> [--scenario FILE] [--out DIR] [--kkt-tol T] [--full-precision]
///              [--emit-svg | --no-emit-svg]
///   caas reproduce [--out DIR] [--kkt-tol T] [--full-precision] [--emit-svg | --no-emit-svg]
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace caas
