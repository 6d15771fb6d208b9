#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace caas {

/// Service-level agreement class a VNO holds with the infrastructure provider.
///  - GB: guaranteed window [min, max] inside the pool.
///  - BG: guaranteed floor, ceiling is the whole pool.
///  - BE: no floor, ceiling is the whole pool.
enum class SlaClass { GB, BG, BE };

std::string_view to_string(SlaClass sla);
std::optional<SlaClass> parse_sla(std::string_view text);

/// A rate bound in Mbps, either fixed or expressed as a multiple of the CRRM
/// pool. Pool-relative bounds are re-derived whenever the pool changes.
class RateLimit {
 public:
  constexpr RateLimit() = default;

  static constexpr RateLimit mbps(double value) { return RateLimit(value, false); }
  static constexpr RateLimit crrm(double fraction = 1.0) { return RateLimit(fraction, true); }

  constexpr bool tracks_crrm() const { return tracks_crrm_; }
  /// Mbps for fixed limits, the pool fraction otherwise.
  constexpr double value() const { return value_; }

  constexpr double resolve(double r_crrm) const {
    return tracks_crrm_ ? value_ * r_crrm : value_;
  }

  friend constexpr bool operator==(const RateLimit&, const RateLimit&) = default;

 private:
  constexpr RateLimit(double value, bool tracks) : value_(value), tracks_crrm_(tracks) {}

  double value_ = 0.0;
  bool tracks_crrm_ = false;
};

struct ServiceSpec {
  std::string name;
  double delta = 1.0;     // service weight
  double r_srv_min = 0.0; // Mbps, per user
  RateLimit r_srv_max = RateLimit::crrm();
  // Exactly one of these is set.
  std::optional<int> user_count;
  std::optional<double> user_share;

  friend bool operator==(const ServiceSpec&, const ServiceSpec&) = default;
};

struct VnoSpec {
  std::string name;
  SlaClass sla = SlaClass::BE;
  double gamma = 1.0;  // VNO weight
  RateLimit r_vno_min = RateLimit::mbps(0.0);
  RateLimit r_vno_max = RateLimit::crrm();
  // Population the user shares are applied to. Required iff shares are used.
  std::optional<int> users;
  std::vector<ServiceSpec> services;

  friend bool operator==(const VnoSpec&, const VnoSpec&) = default;
};

struct Scenario {
  double r_crrm = 0.0;  // Mbps
  std::vector<VnoSpec> vnos;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ResolvedService {
  std::string name;
  double delta = 0.0;
  double r_srv_min = 0.0;
  double r_srv_max = 0.0;
  int user_count = 0;

  double min_mass() const { return user_count * r_srv_min; }
  double max_mass() const { return user_count * r_srv_max; }

  friend bool operator==(const ResolvedService&, const ResolvedService&) = default;
};

struct ResolvedVno {
  std::string name;
  SlaClass sla = SlaClass::BE;
  double gamma = 0.0;
  double r_vno_min = 0.0;
  double r_vno_max = 0.0;
  std::vector<ResolvedService> services;

  friend bool operator==(const ResolvedVno&, const ResolvedVno&) = default;
};

/// A scenario that passed every structural and feasibility check. All bounds
/// are resolved against the pool, user shares are integer counts.
class ValidScenario {
 public:
  /// Normalized source: shares replaced by counts, pool-relative limits kept.
  const Scenario& spec() const { return spec_; }
  double r_crrm() const { return spec_.r_crrm; }
  std::span<const ResolvedVno> vnos() const { return vnos_; }
  const ResolvedVno& vno(std::size_t i) const { return vnos_.at(i); }

  friend bool operator==(const ValidScenario&, const ValidScenario&) = default;

 private:
  friend ValidScenario validate_scenario(const Scenario& raw);

  Scenario spec_;
  std::vector<ResolvedVno> vnos_;
};

ValidScenario validate_scenario(const Scenario& raw);
ValidScenario validate_scenario(const ValidScenario& scenario);

struct VnoFeasibility {
  std::string name;
  double min_rate_mass = 0.0;  // sum of user_count * r_srv_min
  double lower_mass = 0.0;     // max(min_rate_mass, r_vno_min)
  double max_demand = 0.0;     // sum of user_count * r_srv_max, capped at r_vno_max
  double r_vno_max = 0.0;
  bool window_ok = true;       // min_rate_mass fits under r_vno_max
};

struct FeasibilityReport {
  double r_crrm = 0.0;
  std::vector<VnoFeasibility> vnos;
  double global_lower_mass = 0.0;
  double global_max_demand = 0.0;
  bool feasible = true;
  std::string binding;  // empty when feasible
};

/// Structural checks run first and throw; the infeasibility verdict is data.
FeasibilityReport feasibility_report(const Scenario& scenario);
FeasibilityReport feasibility_report(const ValidScenario& scenario);

inline double tuning_weight(double gamma, double delta) { return gamma * delta; }

/// Integer apportionment of `total` by `shares` (summing to 1) using largest
/// remainders. Seats that would have to be split among exactly tied
/// remainders are withheld, so the outcome never depends on service order.
std::vector<int> apportion(int total, std::span<const double> shares);

}  // namespace caas
