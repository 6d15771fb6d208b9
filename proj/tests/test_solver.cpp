#include <doctest.h>

#include <numeric>

#include "caas/kkt.hpp"
#include "caas/solver.hpp"
#include "caas/sweeps.hpp"
#include "support.hpp"

using namespace caas;
using caas::testing::error_kind;

namespace {

ProblemEntry entry(std::size_t vno, double lambda, int n, double lo, double hi) {
  ProblemEntry e;
  e.vno = vno;
  e.vno_name = "V" + std::to_string(vno);
  e.service_name = "s";
  e.lambda = lambda;
  e.n_users = n;
  e.r_srv_min = lo;
  e.r_srv_max = hi;
  e.x_min = n * lo;
  e.x_max = n * hi;
  return e;
}

AllocationProblem single_vno(std::vector<ProblemEntry> entries, double crrm, double lo = 0.0) {
  AllocationProblem p;
  p.r_crrm = crrm;
  p.entries = std::move(entries);
  p.vnos.push_back({"V0", SlaClass::BE, lo, crrm});
  return p;
}

const AllocationResult& baseline_result() {
  static const AllocationProblem p = assemble_problem(validate_scenario(baseline_scenario()));
  static const AllocationResult r = solve(p);
  return r;
}

}  // namespace

TEST_CASE("assemble: lambdas, masses and zero-user services") {
  Scenario sc = baseline_scenario();
  sc.vnos[2].services[0].user_share = 0.0;
  sc.vnos[2].services[1].user_share = 0.7;
  const AllocationProblem p = assemble_problem(validate_scenario(sc));
  CHECK(p.size() == 8);
  CHECK(p.entries[0].lambda == 50.0);
  CHECK(p.entries[2].lambda == 30.0);
  CHECK(p.entries[2].x_min == doctest::Approx(120.0));
  CHECK(p.entries[2].x_max == doctest::Approx(30 * 630.0));
  CHECK(p.entries.back().lambda == 3.0);
  CHECK(p.vnos[0].lo == doctest::Approx(252.0));
  CHECK(p.vnos[0].hi == doctest::Approx(441.0));
}

TEST_CASE("single VNO with slack boxes splits the pool by lambda") {
  // Closed form: x_s = lambda_s / sum(lambda) * C.
  AllocationProblem p =
      single_vno({entry(0, 1.0, 1, 0.0, 100.0), entry(0, 3.0, 1, 0.0, 100.0)}, 40.0);
  // Lift the VNO ceiling so the pool cap alone carries the price.
  p.vnos[0].hi = 100.0;
  const AllocationResult r = solve(p);
  REQUIRE(r.converged);
  CHECK(r.aggregates[0] == doctest::Approx(10.0));
  CHECK(r.aggregates[1] == doctest::Approx(30.0));
  CHECK(r.capacity_price == doctest::Approx(0.1));
}

TEST_CASE("upper boxes clamp and release the rest") {
  // Service 0 would take 20 of 40 but is capped at 5; service 1 takes 35.
  const AllocationProblem p =
      single_vno({entry(0, 1.0, 1, 0.0, 5.0), entry(0, 1.0, 1, 0.0, 100.0)}, 40.0);
  const AllocationResult r = solve(p);
  REQUIRE(r.converged);
  CHECK(r.aggregates[0] == doctest::Approx(5.0));
  CHECK(r.aggregates[1] == doctest::Approx(35.0));
}

TEST_CASE("lower boxes bind for low-weight services") {
  // Free split would give service 1 only 0.4 of 40; its floor is 10.
  const AllocationProblem p =
      single_vno({entry(0, 99.0, 1, 0.0, 100.0), entry(0, 1.0, 2, 5.0, 100.0)}, 40.0);
  const AllocationResult r = solve(p);
  REQUIRE(r.converged);
  CHECK(r.aggregates[1] == doctest::Approx(10.0));
  CHECK(r.aggregates[0] == doctest::Approx(30.0));
}

TEST_CASE("unsaturated pool leaves capacity unused") {
  const AllocationProblem p =
      single_vno({entry(0, 1.0, 2, 0.0, 3.0), entry(0, 2.0, 1, 0.0, 4.0)}, 100.0);
  const AllocationResult r = solve(p);
  REQUIRE(r.converged);
  CHECK(r.aggregates[0] == doctest::Approx(6.0));
  CHECK(r.aggregates[1] == doctest::Approx(4.0));
  CHECK(r.capacity_price == 0.0);
  CHECK(r.total() == doctest::Approx(10.0));
}

TEST_CASE("VNO floor lifts a low-weight tenant") {
  AllocationProblem p;
  p.r_crrm = 100.0;
  p.entries = {entry(0, 10.0, 1, 0.0, 100.0), entry(1, 1.0, 1, 0.0, 100.0)};
  p.entries[1].vno_name = "V1";
  p.vnos = {{"V0", SlaClass::BE, 0.0, 100.0}, {"V1", SlaClass::BG, 30.0, 100.0}};
  const AllocationResult r = solve(p);
  REQUIRE(r.converged);
  CHECK(r.aggregates[1] == doctest::Approx(30.0));
  CHECK(r.aggregates[0] == doctest::Approx(70.0));
}

TEST_CASE("VNO ceiling caps a high-weight tenant") {
  AllocationProblem p;
  p.r_crrm = 100.0;
  p.entries = {entry(0, 10.0, 1, 0.0, 100.0), entry(0, 10.0, 1, 0.0, 100.0),
               entry(1, 1.0, 1, 0.0, 100.0)};
  p.vnos = {{"V0", SlaClass::GB, 10.0, 60.0}, {"V1", SlaClass::BE, 0.0, 100.0}};
  p.entries[2].vno_name = "V1";
  const AllocationResult r = solve(p);
  REQUIRE(r.converged);
  CHECK(r.aggregates[0] == doctest::Approx(30.0));
  CHECK(r.aggregates[1] == doctest::Approx(30.0));
  CHECK(r.aggregates[2] == doctest::Approx(40.0));
  CHECK(r.vno_totals[0] == doctest::Approx(60.0));
}

TEST_CASE("baseline: equal marginal utility across services priced by the pool") {
  const AllocationResult& r = baseline_result();
  REQUIRE(r.converged);
  REQUIRE(r.aggregates.size() == 9);
  // GB eMBB (30), BE IoT (4) and BE eMBB (3) sit strictly inside their boxes
  // and only the pool cap couples them, so lambda / x agrees.
  const double price = 30.0 / r.aggregates[2];
  CHECK(4.0 / r.aggregates[7] == doctest::Approx(price).epsilon(1e-10));
  CHECK(3.0 / r.aggregates[8] == doctest::Approx(price).epsilon(1e-10));
  CHECK(r.capacity_price == doctest::Approx(price).epsilon(1e-10));
  CHECK(r.vno_totals[1] == doctest::Approx(252.0));
  CHECK(r.total() == doctest::Approx(630.0).epsilon(1e-12));
  for (std::size_t s : {0u, 1u, 3u, 4u, 6u}) CHECK(r.user_weights[s] == doctest::Approx(1.0));
}

TEST_CASE("result invariants: weights, rates and aggregates agree") {
  const AllocationProblem p = assemble_problem(validate_scenario(baseline_scenario()));
  const AllocationResult& r = baseline_result();
  for (std::size_t s = 0; s < p.size(); ++s) {
    CHECK(r.user_weights[s] * p.entries[s].r_srv_max == doctest::Approx(r.user_rates[s]));
    CHECK(r.user_rates[s] * p.entries[s].n_users == doctest::Approx(r.aggregates[s]));
    CHECK(r.user_weights[s] <= 1.0 + 1e-12);
    CHECK(r.user_weights[s] >= p.entries[s].r_srv_min / p.entries[s].r_srv_max - 1e-12);
  }
  CHECK(r.objective == doctest::Approx(objective(p, r.aggregates)));
}

TEST_CASE("objective rejects non-positive aggregates") {
  const AllocationProblem p = single_vno({entry(0, 1.0, 1, 0.0, 10.0)}, 10.0);
  const std::vector<double> zero{0.0};
  CHECK(error_kind([&] { objective(p, zero); }) == ErrorKind::NonPositiveAggregate);
  CHECK(error_kind([&] { objective_gradient(p, zero); }) == ErrorKind::NonPositiveAggregate);
  const std::vector<double> two{1.0, 1.0};
  CHECK(error_kind([&] { objective(p, two); }) == ErrorKind::InvalidScenario);
}

TEST_CASE("objective is relative to the pool") {
  const AllocationProblem p = single_vno({entry(0, 2.0, 1, 0.0, 10.0)}, 10.0);
  const std::vector<double> full{10.0};
  CHECK(objective(p, full) == doctest::Approx(0.0));
  const std::vector<double> half{5.0};
  CHECK(objective(p, half) == doctest::Approx(2.0 * std::log(0.5)));
}

TEST_CASE("initial point is feasible") {
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 200) {
    const auto sc = caas::testing::random_scenario(rng, 8);
    if (!sc) continue;
    const AllocationProblem p = assemble_problem(*sc);
    const std::vector<double> x = initial_point(p);
    std::vector<double> totals(p.vnos.size(), 0.0);
    for (std::size_t s = 0; s < p.size(); ++s) {
      CHECK(x[s] >= p.entries[s].x_min);
      CHECK(x[s] <= std::max(p.entries[s].x_max, 1e-12 * p.r_crrm));
      totals[p.entries[s].vno] += x[s];
    }
    for (std::size_t v = 0; v < p.vnos.size(); ++v) {
      CHECK(totals[v] >= p.vnos[v].lo - 1e-9 * p.r_crrm);
      CHECK(totals[v] <= p.vnos[v].hi + 1e-9 * p.r_crrm);
    }
    CHECK(std::accumulate(x.begin(), x.end(), 0.0) <= p.r_crrm * (1 + 1e-12));
    ++checked;
  }
}

TEST_CASE("iteration cap reports non-convergence") {
  const AllocationProblem p = assemble_problem(validate_scenario(baseline_scenario()));
  SolverConfig cfg;
  cfg.max_iterations = 1;
  const AllocationResult r = solve(p, cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.status == SolveStatus::NotConverged);
  CHECK_FALSE(r.diagnostic.empty());
}

TEST_CASE("tiny tolerance is still met by the exact solve") {
  const AllocationProblem p = assemble_problem(validate_scenario(baseline_scenario()));
  SolverConfig cfg;
  cfg.kkt_tolerance = 1e-13;
  CHECK(solve(p, cfg).converged);
}

TEST_CASE("hand-built infeasible and broken problems") {
  AllocationProblem p = single_vno({entry(0, 1.0, 10, 2.0, 3.0)}, 10.0);
  CHECK(error_kind([&] { solve(p); }) == ErrorKind::Infeasible);
  p = single_vno({entry(0, std::nan(""), 1, 0.0, 3.0)}, 10.0);
  CHECK(error_kind([&] { solve(p); }) == ErrorKind::NumericalBreakdown);
  SolverConfig bad;
  bad.kkt_tolerance = 0.0;
  p = single_vno({entry(0, 1.0, 1, 0.0, 3.0)}, 10.0);
  CHECK(error_kind([&] { solve(p, bad); }) == ErrorKind::InvalidBounds);
}

TEST_CASE("problem without users solves trivially") {
  Scenario sc = baseline_scenario();
  for (VnoSpec& v : sc.vnos) v.users = 0;
  const AllocationProblem p = assemble_problem(validate_scenario(sc));
  CHECK(p.size() == 0);
  const AllocationResult r = solve(p);
  CHECK(r.aggregates.empty());
  CHECK(r.total() == 0.0);
}
