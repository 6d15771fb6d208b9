#pragma once

#include "caas/solver.hpp"

namespace caas {

inline constexpr std::size_t kOracleMaxVariables = 6;

/// Brute-force reference solution: nested grid search over the feasible box
/// with constraint filtering, refined around the incumbent down to 1e-5
/// relative resolution. Throws TooLarge above kOracleMaxVariables.
AllocationResult oracle_solve(const AllocationProblem& problem);

}  // namespace caas
