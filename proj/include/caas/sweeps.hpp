#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "caas/model.hpp"
#include "caas/solver.hpp"

namespace caas {

enum class SweepAxis { VnoWeight, CrrmScale, UserScale };

std::string_view to_string(SweepAxis axis);

struct SweepPoint {
  double axis_value = 0.0;
  std::string label;
  Scenario scenario;                    // as derived, before validation
  std::optional<ValidScenario> valid;   // empty when infeasible or invalid
  std::string rejection;                // reason when `valid` is empty
};

struct SweepSpec {
  Scenario base;
  SweepAxis axis = SweepAxis::CrrmScale;
  std::string vno;                 // VnoWeight only
  std::vector<double> values;
  int n_max_total = 0;             // UserScale only: total supportable users
  std::vector<SweepPoint> points;  // axis order
};

struct SweepOutcome {
  double axis_value = 0.0;
  std::string label;
  std::optional<AllocationProblem> problem;
  std::optional<AllocationResult> result;
  std::string note;                // infeasibility or non-convergence reason
  std::vector<double> vno_share_pct;

  bool feasible() const { return result.has_value(); }
  bool converged() const { return result && result->converged; }
  /// Per-user weight / rate of a service, if it has users at this point.
  std::optional<double> user_weight(std::string_view vno, std::string_view service) const;
  std::optional<double> user_rate(std::string_view vno, std::string_view service) const;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::CrrmScale;
  std::string vno;
  int n_max_total = 0;
  std::vector<std::string> vno_names;
  std::vector<std::vector<std::string>> service_names;  // per VNO, base order
  std::vector<SweepOutcome> points;

  bool all_converged() const;
};

/// Three VNOs (GB, BG, BE) sharing a 630 Mbps pool, 100 users each split
/// 20/50/30 over voice, IoT and eMBB.
Scenario baseline_scenario();

SweepSpec weight_sweep(const Scenario& base, std::string_view vno, std::span<const double> values);
SweepSpec capacity_sweep(const Scenario& base, std::span<const double> factors);
SweepSpec user_sweep(const Scenario& base, std::span<const double> fractions);

/// Largest equal per-VNO population (base mix preserved) that is still
/// feasible. Throws InvalidScenario if no population limit exists.
int max_users_per_vno(const Scenario& base);

/// Same base scenario with every VNO holding `users` users in its base mix.
Scenario with_population(const Scenario& base, int users);

SweepResult run_sweep(const SweepSpec& spec, const SolverConfig& config = {});

// Built-in experiments addressable by name.
enum class BuiltinSweep { Table4, Fig15, Tables5to7, Tables8to10 };

std::optional<BuiltinSweep> parse_builtin(std::string_view name);
std::string_view to_string(BuiltinSweep sweep);
/// table4 is a single point (capacity factor 1).
SweepSpec builtin_sweep(BuiltinSweep sweep, const Scenario& base);

}  // namespace caas
