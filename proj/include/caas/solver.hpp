#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "caas/model.hpp"

namespace caas {

/// One decision variable: the aggregate rate of a (VNO, service) pair that has
/// at least one user. The objective sees user weights only through it.
struct ProblemEntry {
  std::size_t vno = 0;      // index into AllocationProblem::vnos
  std::size_t service = 0;  // index into the VNO's service list
  std::string vno_name;
  std::string service_name;
  double lambda = 0.0;      // tuning weight gamma * delta
  int n_users = 0;
  double r_srv_min = 0.0;
  double r_srv_max = 0.0;
  double x_min = 0.0;       // n_users * r_srv_min
  double x_max = 0.0;       // n_users * r_srv_max
};

struct VnoWindow {
  std::string name;
  SlaClass sla = SlaClass::BE;
  double lo = 0.0;  // effective floor, never above the VNO's total demand
  double hi = 0.0;
};

struct AllocationProblem {
  double r_crrm = 0.0;
  std::vector<ProblemEntry> entries;
  std::vector<VnoWindow> vnos;

  std::size_t size() const { return entries.size(); }
};

struct SolverConfig {
  double kkt_tolerance = 1e-8;
  int max_iterations = 10'000;
};

enum class SolveStatus { Converged, NotConverged };

struct AllocationResult {
  std::vector<double> aggregates;    // Mbps, one per entry
  std::vector<double> user_weights;  // w = per-user rate / r_srv_max
  std::vector<double> user_rates;    // Mbps per user
  std::vector<double> vno_totals;    // Mbps, one per VNO window
  double objective = 0.0;
  double capacity_price = 0.0;       // dual of the pool cap
  int iterations = 0;
  bool converged = false;
  SolveStatus status = SolveStatus::NotConverged;
  std::string diagnostic;

  double total() const;
};

AllocationProblem assemble_problem(const ValidScenario& scenario);

/// Sum of lambda_s * ln(x_s / r_crrm). Throws NonPositiveAggregate.
double objective(const AllocationProblem& problem, std::span<const double> x);
std::vector<double> objective_gradient(const AllocationProblem& problem,
                                       std::span<const double> x);

/// Fills per-user weights, rates, VNO totals and the objective from aggregates.
/// Leaves solver diagnostics at their defaults.
AllocationResult package_result(const AllocationProblem& problem, std::vector<double> aggregates);

/// Deterministic feasible start: lower bounds, then VNO floors, then an equal
/// share of the remaining pool, all respecting upper limits.
std::vector<double> initial_point(const AllocationProblem& problem);

/// Exact maximizer of the log-utility program. The per-VNO prices are found
/// by piecewise-reciprocal root finding nested inside a search for the pool
/// price; the result is certified with kkt_residuals before being marked
/// converged. Throws Infeasible for an infeasible hand-built problem and
/// NumericalBreakdown on non-finite data.
AllocationResult solve(const AllocationProblem& problem, const SolverConfig& config = {});

}  // namespace caas
