#pragma once

// Shared helpers for the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "caas/error.hpp"
#include "caas/model.hpp"
#include "caas/solver.hpp"

namespace caas::testing {

/// Random feasible scenario with at most `max_vars` services holding users.
inline std::optional<ValidScenario> random_scenario(std::mt19937_64& rng, int max_vars) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  Scenario sc;
  sc.r_crrm = 20.0 + 180.0 * u(rng);
  const int n_vno = pick(1, std::min(3, max_vars));
  int budget = max_vars;
  for (int v = 0; v < n_vno; ++v) {
    VnoSpec vno;
    vno.name = "V" + std::to_string(v);
    vno.sla = static_cast<SlaClass>(pick(0, 2));
    vno.gamma = 0.5 + 9.5 * u(rng);
    const double floor_frac = 0.02 + 0.3 * u(rng);
    switch (vno.sla) {
      case SlaClass::GB:
        vno.r_vno_min = RateLimit::crrm(floor_frac);
        vno.r_vno_max = RateLimit::crrm(std::min(1.0, floor_frac + 0.05 + 0.5 * u(rng)));
        break;
      case SlaClass::BG:
        vno.r_vno_min = RateLimit::crrm(floor_frac);
        break;
      case SlaClass::BE:
        break;
    }
    const int remaining_vnos = n_vno - v - 1;
    const int n_srv = pick(1, std::max(1, std::min(3, budget - remaining_vnos)));
    budget -= n_srv;
    for (int s = 0; s < n_srv; ++s) {
      ServiceSpec svc;
      svc.name = "s" + std::to_string(s);
      svc.delta = 0.5 + 4.5 * u(rng);
      svc.r_srv_min = vno.sla == SlaClass::BE && u(rng) < 0.5 ? 0.0 : 2.0 * u(rng);
      svc.r_srv_max = u(rng) < 0.25 ? RateLimit::crrm()
                                    : RateLimit::mbps(svc.r_srv_min + 0.1 + 30.0 * u(rng));
      svc.user_count = pick(1, 6);
      vno.services.push_back(svc);
    }
    sc.vnos.push_back(vno);
  }
  try {
    return validate_scenario(sc);
  } catch (const Error&) {
    return std::nullopt;
  }
}

/// Kind of the caas::Error thrown by `f`, or nullopt if it returns normally.
template <class F>
std::optional<ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b,
                           double floor = 0.0) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]) / std::max({std::abs(b[i]), floor, 1e-300}));
  return a.size() == b.size() ? worst : INFINITY;
}

}  // namespace caas::testing
