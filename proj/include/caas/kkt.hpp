#pragma once

#include <string>

#include "caas/solver.hpp"

namespace caas {

/// First-order optimality certificate for an allocation. Stationarity and
/// complementary slackness are divided by max(1, max lambda); primal
/// violations are divided by r_crrm.
struct KktReport {
  double stationarity = 0.0;
  double primal = 0.0;
  double complementarity = 0.0;
  bool dual_feasible = true;
  int active_constraints = 0;
  int free_variables = 0;

  double max_residual() const;
  bool certifies(double tolerance) const;
  std::string summary() const;
};

/// Rebuilds the multipliers of the active constraints from the objective
/// gradient by sign-constrained least squares and reports the residuals.
KktReport kkt_residuals(const AllocationProblem& problem, const AllocationResult& result);

}  // namespace caas
