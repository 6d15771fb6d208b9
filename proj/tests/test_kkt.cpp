#include <doctest.h>

#include "caas/kkt.hpp"
#include "caas/solver.hpp"
#include "caas/sweeps.hpp"

using namespace caas;

namespace {

AllocationProblem two_service(double crrm = 40.0) {
  AllocationProblem p;
  p.r_crrm = crrm;
  for (double lambda : {1.0, 3.0}) {
    ProblemEntry e;
    e.vno_name = "V";
    e.service_name = "s";
    e.lambda = lambda;
    e.n_users = 1;
    e.r_srv_max = 100.0;
    e.x_max = 100.0;
    p.entries.push_back(e);
  }
  p.vnos.push_back({"V", SlaClass::BE, 0.0, crrm});
  return p;
}

}  // namespace

TEST_CASE("certificate of a hand-solved optimum") {
  const AllocationProblem p = two_service();
  const KktReport k = kkt_residuals(p, package_result(p, {10.0, 30.0}));
  CHECK(k.dual_feasible);
  CHECK(k.max_residual() < 1e-14);
  CHECK(k.certifies(1e-12));
  // Pool cap and VNO ceiling coincide here; both count as active.
  CHECK(k.active_constraints == 2);
  CHECK(k.free_variables == 2);
}

TEST_CASE("a feasible but suboptimal point is not stationary") {
  const AllocationProblem p = two_service();
  const KktReport k = kkt_residuals(p, package_result(p, {20.0, 20.0}));
  // Gradient (1/20, 3/20) cannot be matched by one multiplier on (1, 1).
  CHECK(k.stationarity == doctest::Approx(0.05 / 3.0).epsilon(1e-9));
  CHECK_FALSE(k.certifies(1e-8));
}

TEST_CASE("interior point with slack pool is not stationary") {
  const AllocationProblem p = two_service();
  const KktReport k = kkt_residuals(p, package_result(p, {5.0, 5.0}));
  CHECK(k.active_constraints == 0);
  CHECK(k.stationarity == doctest::Approx(0.6 / 3.0));
}

TEST_CASE("a lower bound pushed the wrong way fails the certificate") {
  AllocationProblem p = two_service();
  p.entries[0].x_min = 5.0;
  // Service 0 at its floor while it would like more than its share: the
  // floor multiplier would have to be negative.
  const KktReport k = kkt_residuals(p, package_result(p, {5.0, 1.0}));
  CHECK_FALSE(k.certifies(1e-8));
}

TEST_CASE("primal violations are measured relative to the pool") {
  const AllocationProblem p = two_service();
  const KktReport k = kkt_residuals(p, package_result(p, {12.0, 32.0}));
  CHECK(k.primal == doctest::Approx(4.0 / 40.0));
  CHECK_FALSE(k.certifies(1e-8));
}

TEST_CASE("solver output certifies on the built-in sweeps") {
  const Scenario base = baseline_scenario();
  for (BuiltinSweep b : {BuiltinSweep::Fig15, BuiltinSweep::Tables5to7, BuiltinSweep::Tables8to10}) {
    const SweepResult r = run_sweep(builtin_sweep(b, base));
    for (const SweepOutcome& pt : r.points) {
      REQUIRE(pt.result);
      const KktReport k = kkt_residuals(*pt.problem, *pt.result);
      CHECK(k.dual_feasible);
      CHECK(k.max_residual() <= 1e-8);
    }
  }
}

TEST_CASE("summary lists every residual") {
  const AllocationProblem p = two_service();
  const std::string s = kkt_residuals(p, package_result(p, {10.0, 30.0})).summary();
  for (const char* key : {"stationarity=", "primal=", "complementarity=", "dual_feasible=yes"})
    CHECK(s.find(key) != std::string::npos);
}
