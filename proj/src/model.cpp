#include "caas/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "caas/error.hpp"

namespace caas {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidWeight: return "InvalidWeight";
    case ErrorKind::InvalidBounds: return "InvalidBounds";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::InvalidScenario: return "InvalidScenario";
    case ErrorKind::UnknownVno: return "UnknownVno";
    case ErrorKind::NonPositiveAggregate: return "NonPositiveAggregate";
    case ErrorKind::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::LayoutMismatch: return "LayoutMismatch";
    case ErrorKind::EmptySweep: return "EmptySweep";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

std::string_view to_string(SlaClass sla) {
  switch (sla) {
    case SlaClass::GB: return "GB";
    case SlaClass::BG: return "BG";
    case SlaClass::BE: return "BE";
  }
  return "?";
}

std::optional<SlaClass> parse_sla(std::string_view text) {
  if (text == "GB") return SlaClass::GB;
  if (text == "BG") return SlaClass::BG;
  if (text == "BE") return SlaClass::BE;
  return std::nullopt;
}

std::vector<int> apportion(int total, std::span<const double> shares) {
  constexpr double kEps = 1e-9;
  std::vector<int> seats(shares.size(), 0);
  std::vector<double> remainder(shares.size(), 0.0);
  int assigned = 0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    const double quota = shares[i] * total;
    seats[i] = static_cast<int>(std::floor(quota + kEps));
    remainder[i] = std::max(0.0, quota - seats[i]);
    assigned += seats[i];
  }
  int left = total - assigned;
  if (left <= 0) return seats;

  std::vector<std::size_t> order(shares.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });

  std::size_t i = 0;
  while (left > 0 && i < order.size() && remainder[order[i]] > kEps) {
    // Group of remainders tied with order[i].
    std::size_t j = i;
    while (j < order.size() && std::abs(remainder[order[j]] - remainder[order[i]]) <= kEps) ++j;
    const auto group = static_cast<int>(j - i);
    if (group > left) break;
    for (std::size_t k = i; k < j; ++k) ++seats[order[k]];
    left -= group;
    i = j;
  }
  return seats;
}

namespace {

constexpr double kRelTol = 1e-12;

bool approx_equal(double a, double b) {
  return std::abs(a - b) <= kRelTol * std::max({1.0, std::abs(a), std::abs(b)});
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

// Structural checks and bound resolution. Throws on anything but infeasibility.
struct Resolved {
  Scenario normalized;
  std::vector<ResolvedVno> vnos;
};

Resolved resolve(const Scenario& raw) {
  if (!positive_finite(raw.r_crrm))
    throw Error(ErrorKind::InvalidBounds, fmt::format("r_crrm must be > 0, got {}", raw.r_crrm));
  if (raw.vnos.empty()) throw Error(ErrorKind::InvalidScenario, "scenario has no VNOs");

  Resolved out;
  out.normalized = raw;
  const double crrm = raw.r_crrm;
  std::set<std::string> names;

  for (std::size_t v = 0; v < raw.vnos.size(); ++v) {
    const VnoSpec& vno = raw.vnos[v];
    VnoSpec& norm = out.normalized.vnos[v];
    if (!names.insert(vno.name).second)
      throw Error(ErrorKind::InvalidScenario, fmt::format("duplicate VNO name '{}'", vno.name));
    if (!positive_finite(vno.gamma))
      throw Error(ErrorKind::InvalidWeight,
                  fmt::format("VNO '{}': gamma must be > 0, got {}", vno.name, vno.gamma));
    if (vno.services.empty())
      throw Error(ErrorKind::InvalidScenario, fmt::format("VNO '{}' has no services", vno.name));

    ResolvedVno rv;
    rv.name = vno.name;
    rv.sla = vno.sla;
    rv.gamma = vno.gamma;
    rv.r_vno_min = vno.r_vno_min.resolve(crrm);
    rv.r_vno_max = vno.r_vno_max.resolve(crrm);

    if (!std::isfinite(rv.r_vno_min) || !std::isfinite(rv.r_vno_max) || rv.r_vno_min < 0.0 ||
        rv.r_vno_min > rv.r_vno_max)
      throw Error(ErrorKind::InvalidBounds,
                  fmt::format("VNO '{}': window [{}, {}] is not 0 <= min <= max", vno.name,
                              rv.r_vno_min, rv.r_vno_max));
    switch (vno.sla) {
      case SlaClass::GB:
        if (!(rv.r_vno_min > 0.0) || rv.r_vno_max > crrm * (1.0 + kRelTol))
          throw Error(ErrorKind::InvalidBounds,
                      fmt::format("VNO '{}': GB needs 0 < min <= max <= r_crrm", vno.name));
        break;
      case SlaClass::BG:
        if (!(rv.r_vno_min > 0.0) || !approx_equal(rv.r_vno_max, crrm))
          throw Error(ErrorKind::InvalidBounds,
                      fmt::format("VNO '{}': BG needs min > 0 and max = r_crrm", vno.name));
        break;
      case SlaClass::BE:
        if (rv.r_vno_min != 0.0 || !approx_equal(rv.r_vno_max, crrm))
          throw Error(ErrorKind::InvalidBounds,
                      fmt::format("VNO '{}': BE needs min = 0 and max = r_crrm", vno.name));
        break;
    }

    bool any_count = false;
    bool any_share = false;
    std::vector<double> shares;
    for (const ServiceSpec& s : vno.services) {
      if (s.user_count.has_value() == s.user_share.has_value())
        throw Error(ErrorKind::InvalidScenario,
                    fmt::format("service '{}/{}': exactly one of user_count, user_share", vno.name,
                                s.name));
      any_count |= s.user_count.has_value();
      any_share |= s.user_share.has_value();
      if (s.user_count && *s.user_count < 0)
        throw Error(ErrorKind::InvalidScenario,
                    fmt::format("service '{}/{}': negative user_count", vno.name, s.name));
      if (s.user_share) {
        if (!std::isfinite(*s.user_share) || *s.user_share < 0.0 || *s.user_share > 1.0)
          throw Error(ErrorKind::InvalidScenario,
                      fmt::format("service '{}/{}': user_share outside [0, 1]", vno.name, s.name));
        shares.push_back(*s.user_share);
      }
      if (!positive_finite(s.delta))
        throw Error(ErrorKind::InvalidWeight,
                    fmt::format("service '{}/{}': delta must be > 0, got {}", vno.name, s.name,
                                s.delta));
      const double lo = s.r_srv_min;
      const double hi = s.r_srv_max.resolve(crrm);
      if (!std::isfinite(lo) || lo < 0.0 || !positive_finite(hi) || lo > hi)
        throw Error(ErrorKind::InvalidBounds,
                    fmt::format("service '{}/{}': rate window [{}, {}] is not 0 <= min <= max, "
                                "max > 0",
                                vno.name, s.name, lo, hi));
      rv.services.push_back({s.name, s.delta, lo, hi, s.user_count.value_or(0)});
    }

    if (any_count && any_share)
      throw Error(ErrorKind::InvalidScenario,
                  fmt::format("VNO '{}' mixes user_count and user_share", vno.name));
    if (any_share) {
      if (!vno.users || *vno.users < 0)
        throw Error(ErrorKind::InvalidScenario,
                    fmt::format("VNO '{}': user shares need a non-negative 'users' total",
                                vno.name));
      const double sum = std::accumulate(shares.begin(), shares.end(), 0.0);
      if (std::abs(sum - 1.0) > 1e-9)
        throw Error(ErrorKind::InvalidScenario,
                    fmt::format("VNO '{}': user shares sum to {}, not 1", vno.name, sum));
      const std::vector<int> counts = apportion(*vno.users, shares);
      for (std::size_t i = 0; i < counts.size(); ++i) {
        rv.services[i].user_count = counts[i];
        norm.services[i].user_count = counts[i];
        norm.services[i].user_share.reset();
      }
    }
    norm.users.reset();
    out.vnos.push_back(std::move(rv));
  }
  return out;
}

FeasibilityReport report_for(double r_crrm, std::span<const ResolvedVno> vnos) {
  FeasibilityReport rep;
  rep.r_crrm = r_crrm;
  for (const ResolvedVno& v : vnos) {
    VnoFeasibility f;
    f.name = v.name;
    double demand = 0.0;
    for (const ResolvedService& s : v.services) {
      f.min_rate_mass += s.min_mass();
      demand += s.max_mass();
    }
    f.lower_mass = std::max(f.min_rate_mass, v.r_vno_min);
    f.max_demand = std::min(demand, v.r_vno_max);
    f.r_vno_max = v.r_vno_max;
    f.window_ok = f.min_rate_mass <= v.r_vno_max * (1.0 + kRelTol);
    rep.global_lower_mass += f.lower_mass;
    rep.global_max_demand += f.max_demand;
    if (!f.window_ok && rep.feasible) {
      rep.feasible = false;
      rep.binding = fmt::format("VNO '{}' minimum-rate mass {:.6g} Mbps exceeds r_vno_max {:.6g}",
                                v.name, f.min_rate_mass, v.r_vno_max);
    }
    rep.vnos.push_back(std::move(f));
  }
  if (rep.feasible && rep.global_lower_mass > r_crrm * (1.0 + kRelTol)) {
    rep.feasible = false;
    rep.binding = fmt::format("global lower mass {:.6g} Mbps exceeds r_crrm {:.6g}",
                              rep.global_lower_mass, r_crrm);
  }
  return rep;
}

}  // namespace

ValidScenario validate_scenario(const Scenario& raw) {
  Resolved r = resolve(raw);
  const FeasibilityReport rep = report_for(raw.r_crrm, r.vnos);
  if (!rep.feasible) throw Error(ErrorKind::Infeasible, rep.binding);
  ValidScenario out;
  out.spec_ = std::move(r.normalized);
  out.vnos_ = std::move(r.vnos);
  return out;
}

ValidScenario validate_scenario(const ValidScenario& scenario) {
  return validate_scenario(scenario.spec());
}

FeasibilityReport feasibility_report(const Scenario& scenario) {
  const Resolved r = resolve(scenario);
  return report_for(scenario.r_crrm, r.vnos);
}

FeasibilityReport feasibility_report(const ValidScenario& scenario) {
  return report_for(scenario.r_crrm(), scenario.vnos());
}

}  // namespace caas
