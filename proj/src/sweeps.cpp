#include "caas/sweeps.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "caas/error.hpp"

namespace caas {

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::VnoWeight: return "vno_weight";
    case SweepAxis::CrrmScale: return "crrm_scale";
    case SweepAxis::UserScale: return "user_scale";
  }
  return "?";
}

std::optional<double> SweepOutcome::user_weight(std::string_view vno,
                                                std::string_view service) const {
  if (!problem || !result) return std::nullopt;
  for (std::size_t s = 0; s < problem->size(); ++s)
    if (problem->entries[s].vno_name == vno && problem->entries[s].service_name == service)
      return result->user_weights[s];
  return std::nullopt;
}

std::optional<double> SweepOutcome::user_rate(std::string_view vno,
                                              std::string_view service) const {
  if (!problem || !result) return std::nullopt;
  for (std::size_t s = 0; s < problem->size(); ++s)
    if (problem->entries[s].vno_name == vno && problem->entries[s].service_name == service)
      return result->user_rates[s];
  return std::nullopt;
}

bool SweepResult::all_converged() const {
  return std::all_of(points.begin(), points.end(), [](const SweepOutcome& p) {
    return !p.feasible() || p.converged();
  });
}

Scenario baseline_scenario() {
  auto services = [](bool guaranteed) {
    const double scale = guaranteed ? 1.0 : 0.0;
    return std::vector<ServiceSpec>{
        {"voice", 5.0, 0.032 * scale, RateLimit::mbps(0.064), std::nullopt, 0.2},
        {"IoT", 4.0, 0.5 * scale, RateLimit::mbps(1.0), std::nullopt, 0.5},
        {"eMBB", 3.0, 4.0 * scale, RateLimit::crrm(), std::nullopt, 0.3},
    };
  };
  Scenario sc;
  sc.r_crrm = 630.0;
  sc.vnos = {
      {"GB", SlaClass::GB, 10.0, RateLimit::crrm(0.4), RateLimit::crrm(0.7), 100, services(true)},
      {"BG", SlaClass::BG, 5.0, RateLimit::crrm(0.4), RateLimit::crrm(), 100, services(true)},
      {"BE", SlaClass::BE, 1.0, RateLimit::mbps(0.0), RateLimit::crrm(), 100, services(false)},
  };
  return sc;
}

namespace {

SweepPoint make_point(double value, std::string label, Scenario scenario) {
  SweepPoint pt;
  pt.axis_value = value;
  pt.label = std::move(label);
  pt.scenario = std::move(scenario);
  try {
    pt.valid = validate_scenario(pt.scenario);
  } catch (const Error& e) {
    pt.rejection = e.what();
  }
  return pt;
}

std::string trim_number(double v) { return fmt::format("{:g}", v); }

// Mix of each VNO as shares, taken from explicit shares or from counts.
std::vector<std::vector<double>> base_mix(const Scenario& base) {
  std::vector<std::vector<double>> mix;
  for (const VnoSpec& v : base.vnos) {
    std::vector<double> shares;
    const bool have_shares =
        !v.services.empty() && std::all_of(v.services.begin(), v.services.end(),
                                           [](const ServiceSpec& s) { return s.user_share.has_value(); });
    if (have_shares) {
      for (const ServiceSpec& s : v.services) shares.push_back(*s.user_share);
    } else {
      double total = 0.0;
      for (const ServiceSpec& s : v.services) total += s.user_count.value_or(0);
      if (total <= 0.0)
        throw Error(ErrorKind::InvalidScenario,
                    fmt::format("VNO '{}' has no users to derive a mix from", v.name));
      for (const ServiceSpec& s : v.services) shares.push_back(s.user_count.value_or(0) / total);
    }
    mix.push_back(std::move(shares));
  }
  return mix;
}

}  // namespace

Scenario with_population(const Scenario& base, int users) {
  const auto mix = base_mix(base);
  Scenario sc = base;
  for (std::size_t v = 0; v < sc.vnos.size(); ++v) {
    sc.vnos[v].users = users;
    for (std::size_t s = 0; s < sc.vnos[v].services.size(); ++s) {
      sc.vnos[v].services[s].user_count.reset();
      sc.vnos[v].services[s].user_share = mix[v][s];
    }
  }
  return sc;
}

int max_users_per_vno(const Scenario& base) {
  constexpr int kLimit = 1'000'000;
  // Only minimum rates grow with the population.
  const auto mix = base_mix(base);
  bool grows = false;
  for (std::size_t v = 0; v < base.vnos.size(); ++v)
    for (std::size_t s = 0; s < base.vnos[v].services.size(); ++s)
      grows = grows || (mix[v][s] > 0.0 && base.vnos[v].services[s].r_srv_min > 0.0);
  if (!grows)
    throw Error(ErrorKind::InvalidScenario, "no minimum rates, so no population limit");
  for (int n = 0; n <= kLimit; ++n) {
    if (!feasibility_report(with_population(base, n)).feasible) {
      if (n == 0)
        throw Error(ErrorKind::Infeasible, "scenario is infeasible even without users");
      return n - 1;
    }
  }
  throw Error(ErrorKind::InvalidScenario,
              fmt::format("no population limit below {} users per VNO", kLimit));
}

SweepSpec weight_sweep(const Scenario& base, std::string_view vno, std::span<const double> values) {
  const auto it = std::find_if(base.vnos.begin(), base.vnos.end(),
                               [&](const VnoSpec& v) { return v.name == vno; });
  if (it == base.vnos.end())
    throw Error(ErrorKind::UnknownVno, fmt::format("no VNO named '{}'", vno));
  const auto index = static_cast<std::size_t>(it - base.vnos.begin());

  SweepSpec spec;
  spec.base = base;
  spec.axis = SweepAxis::VnoWeight;
  spec.vno = std::string(vno);
  spec.values.assign(values.begin(), values.end());
  for (double g : values) {
    Scenario sc = base;
    sc.vnos[index].gamma = g;
    spec.points.push_back(make_point(g, "gamma=" + trim_number(g), std::move(sc)));
  }
  return spec;
}

SweepSpec capacity_sweep(const Scenario& base, std::span<const double> factors) {
  SweepSpec spec;
  spec.base = base;
  spec.axis = SweepAxis::CrrmScale;
  spec.values.assign(factors.begin(), factors.end());
  for (double f : factors) {
    if (!(f > 0.0) || !std::isfinite(f))
      throw Error(ErrorKind::InvalidBounds, fmt::format("capacity factor must be > 0, got {}", f));
    // Pool-relative limits re-derive from the scaled pool at validation.
    Scenario sc = base;
    sc.r_crrm = base.r_crrm * f;
    spec.points.push_back(make_point(f, "x" + trim_number(f), std::move(sc)));
  }
  return spec;
}

SweepSpec user_sweep(const Scenario& base, std::span<const double> fractions) {
  for (double f : fractions)
    if (!(f > 0.0 && f <= 1.0))
      throw Error(ErrorKind::InvalidBounds, fmt::format("load fraction must be in (0, 1], got {}", f));
  const int per_vno_max = max_users_per_vno(base);
  SweepSpec spec;
  spec.base = base;
  spec.axis = SweepAxis::UserScale;
  spec.values.assign(fractions.begin(), fractions.end());
  spec.n_max_total = per_vno_max * static_cast<int>(base.vnos.size());
  for (double f : fractions) {
    const int per_vno = static_cast<int>(std::lround(f * per_vno_max));
    spec.points.push_back(make_point(f, fmt::format("{:g}%", f * 100.0),
                                     with_population(base, per_vno)));
  }
  return spec;
}

SweepResult run_sweep(const SweepSpec& spec, const SolverConfig& config) {
  SweepResult out;
  out.axis = spec.axis;
  out.vno = spec.vno;
  out.n_max_total = spec.n_max_total;
  for (const VnoSpec& v : spec.base.vnos) {
    out.vno_names.push_back(v.name);
    std::vector<std::string> names;
    for (const ServiceSpec& s : v.services) names.push_back(s.name);
    out.service_names.push_back(std::move(names));
  }

  for (const SweepPoint& pt : spec.points) {
    SweepOutcome o;
    o.axis_value = pt.axis_value;
    o.label = pt.label;
    if (!pt.valid) {
      o.note = pt.rejection;
      out.points.push_back(std::move(o));
      continue;
    }
    o.problem = assemble_problem(*pt.valid);
    try {
      o.result = solve(*o.problem, config);
      if (!o.result->converged) o.note = "NotConverged: " + o.result->diagnostic;
      for (double t : o.result->vno_totals) o.vno_share_pct.push_back(t / o.problem->r_crrm * 100.0);
    } catch (const Error& e) {
      o.note = e.what();
    }
    out.points.push_back(std::move(o));
  }
  return out;
}

std::optional<BuiltinSweep> parse_builtin(std::string_view name) {
  if (name == "table4") return BuiltinSweep::Table4;
  if (name == "fig15") return BuiltinSweep::Fig15;
  if (name == "tables5-7") return BuiltinSweep::Tables5to7;
  if (name == "tables8-10") return BuiltinSweep::Tables8to10;
  return std::nullopt;
}

std::string_view to_string(BuiltinSweep sweep) {
  switch (sweep) {
    case BuiltinSweep::Table4: return "table4";
    case BuiltinSweep::Fig15: return "fig15";
    case BuiltinSweep::Tables5to7: return "tables5-7";
    case BuiltinSweep::Tables8to10: return "tables8-10";
  }
  return "?";
}

SweepSpec builtin_sweep(BuiltinSweep sweep, const Scenario& base) {
  switch (sweep) {
    case BuiltinSweep::Table4: {
      const double unit[] = {1.0};
      return capacity_sweep(base, unit);
    }
    case BuiltinSweep::Fig15: {
      const double gammas[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
      return weight_sweep(base, "BG", gammas);
    }
    case BuiltinSweep::Tables5to7: {
      const double factors[] = {0.5, 0.75, 1.0, 1.25, 1.5};
      return capacity_sweep(base, factors);
    }
    case BuiltinSweep::Tables8to10: {
      const double loads[] = {0.2, 0.4, 0.6, 0.8, 1.0};
      return user_sweep(base, loads);
    }
  }
  throw Error(ErrorKind::InvalidScenario, "unknown built-in sweep");
}

}  // namespace caas
