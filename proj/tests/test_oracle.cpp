#include <doctest.h>

#include "caas/oracle.hpp"
#include "caas/solver.hpp"
#include "support.hpp"

using namespace caas;
using caas::testing::error_kind;

namespace {

ProblemEntry entry(std::size_t vno, double lambda, double lo, double hi) {
  ProblemEntry e;
  e.vno = vno;
  e.vno_name = "V" + std::to_string(vno);
  e.service_name = "s";
  e.lambda = lambda;
  e.n_users = 1;
  e.r_srv_min = lo;
  e.r_srv_max = hi;
  e.x_min = lo;
  e.x_max = hi;
  return e;
}

}  // namespace

TEST_CASE("oracle finds the closed-form split") {
  AllocationProblem p;
  p.r_crrm = 40.0;
  p.entries = {entry(0, 1.0, 0.0, 100.0), entry(0, 3.0, 0.0, 100.0)};
  p.vnos = {{"V0", SlaClass::BE, 0.0, 40.0}};
  const AllocationResult r = oracle_solve(p);
  CHECK(r.aggregates[0] == doctest::Approx(10.0).epsilon(1e-4));
  CHECK(r.aggregates[1] == doctest::Approx(30.0).epsilon(1e-4));
}

TEST_CASE("oracle honours a binding VNO floor") {
  AllocationProblem p;
  p.r_crrm = 100.0;
  p.entries = {entry(0, 10.0, 0.0, 100.0), entry(1, 1.0, 0.0, 100.0)};
  p.vnos = {{"V0", SlaClass::BE, 0.0, 100.0}, {"V1", SlaClass::BG, 30.0, 100.0}};
  const AllocationResult r = oracle_solve(p);
  CHECK(r.aggregates[1] == doctest::Approx(30.0).epsilon(1e-4));
  CHECK(r.aggregates[0] == doctest::Approx(70.0).epsilon(1e-4));
}

TEST_CASE("oracle refuses large problems") {
  AllocationProblem p;
  p.r_crrm = 100.0;
  for (int i = 0; i < 7; ++i) p.entries.push_back(entry(0, 1.0, 0.0, 10.0));
  p.vnos = {{"V0", SlaClass::BE, 0.0, 100.0}};
  CHECK(error_kind([&] { oracle_solve(p); }) == ErrorKind::TooLarge);
}

TEST_CASE("solver matches the oracle on random small scenarios") {
  std::mt19937_64 rng(2024);
  int compared = 0;
  double worst = 0.0;
  while (compared < 60) {
    const auto sc = caas::testing::random_scenario(rng, 4);
    if (!sc) continue;
    const AllocationProblem p = assemble_problem(*sc);
    if (p.size() == 0) continue;
    const AllocationResult fast = solve(p);
    const AllocationResult slow = oracle_solve(p);
    CHECK(fast.converged);
    const double diff = caas::testing::max_rel_diff(fast.aggregates, slow.aggregates);
    worst = std::max(worst, diff);
    CHECK(diff <= 1e-3);
    // The exact solution can only be better.
    CHECK(fast.objective >= slow.objective - 1e-9 * std::max(1.0, std::abs(slow.objective)));
    ++compared;
  }
  MESSAGE("worst relative aggregate difference " << worst);
}
