#include "caas/kkt.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace caas {

double KktReport::max_residual() const {
  return std::max({stationarity, primal, complementarity});
}

bool KktReport::certifies(double tolerance) const {
  return dual_feasible && max_residual() <= tolerance;
}

std::string KktReport::summary() const {
  return fmt::format(
      "stationarity={:.3e} primal={:.3e} complementarity={:.3e} dual_feasible={} active={} "
      "free={}",
      stationarity, primal, complementarity, dual_feasible ? "yes" : "no", active_constraints,
      free_variables);
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd least_squares(const MatrixXd& a, const VectorXd& b) {
  if (a.cols() == 0) return VectorXd();
  return a.completeOrthogonalDecomposition().solve(b);
}

// Lawson-Hanson: min ||A m - b|| subject to m >= 0.
VectorXd nonnegative_least_squares(const MatrixXd& a, const VectorXd& b) {
  const Eigen::Index n = a.cols();
  VectorXd m = VectorXd::Zero(n);
  if (n == 0) return m;
  std::vector<bool> passive(n, false);
  const double tol = 1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff());

  auto solve_passive = [&]() {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j)
      if (passive[j]) idx.push_back(j);
    MatrixXd sub(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) sub.col(k) = a.col(idx[k]);
    const VectorXd zs = least_squares(sub, b);
    VectorXd z = VectorXd::Zero(n);
    for (std::size_t k = 0; k < idx.size(); ++k) z[idx[k]] = zs[k];
    return z;
  };

  for (int outer = 0; outer < 3 * n + 10; ++outer) {
    const VectorXd w = a.transpose() * (b - a * m);
    Eigen::Index best = -1;
    for (Eigen::Index j = 0; j < n; ++j)
      if (!passive[j] && w[j] > tol && (best < 0 || w[j] > w[best])) best = j;
    if (best < 0) break;
    passive[best] = true;

    for (int inner = 0; inner < 3 * n + 10; ++inner) {
      const VectorXd z = solve_passive();
      bool all_positive = true;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[j] && z[j] <= 0.0) all_positive = false;
      if (all_positive) {
        m = z;
        break;
      }
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[j] && z[j] <= 0.0) alpha = std::min(alpha, m[j] / (m[j] - z[j]));
      m += alpha * (z - m);
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[j] && m[j] <= tol) {
          passive[j] = false;
          m[j] = 0.0;
        }
    }
  }
  return m;
}

struct Constraint {
  std::vector<std::size_t> vars;
  double sign = 1.0;  // +1 for "sum <= bound", -1 for "sum >= bound"
  double slack = 0.0;
};

}  // namespace

KktReport kkt_residuals(const AllocationProblem& problem, const AllocationResult& result) {
  KktReport rep;
  const std::size_t n = problem.size();
  const std::vector<double>& x = result.aggregates;
  if (n == 0 || x.size() != n) return rep;

  const double crrm = problem.r_crrm;
  const double active_tol = 1e-9 * std::max(1.0, crrm);
  double lambda_max = 1.0;
  for (const ProblemEntry& e : problem.entries) lambda_max = std::max(lambda_max, e.lambda);

  std::vector<Constraint> all;
  std::vector<bool> box_active(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    const ProblemEntry& e = problem.entries[s];
    all.push_back({{s}, -1.0, x[s] - e.x_min});
    all.push_back({{s}, +1.0, e.x_max - x[s]});
  }
  std::vector<std::vector<std::size_t>> members(problem.vnos.size());
  for (std::size_t s = 0; s < n; ++s) members[problem.entries[s].vno].push_back(s);
  for (std::size_t v = 0; v < problem.vnos.size(); ++v) {
    if (members[v].empty()) continue;
    double total = 0.0;
    for (std::size_t s : members[v]) total += x[s];
    all.push_back({members[v], -1.0, total - problem.vnos[v].lo});
    all.push_back({members[v], +1.0, problem.vnos[v].hi - total});
  }
  std::vector<std::size_t> everything(n);
  for (std::size_t s = 0; s < n; ++s) everything[s] = s;
  double grand = 0.0;
  for (double xi : x) grand += xi;
  all.push_back({everything, +1.0, crrm - grand});

  std::vector<const Constraint*> active;
  for (std::size_t c = 0; c < all.size(); ++c) {
    rep.primal = std::max(rep.primal, std::max(0.0, -all[c].slack) / crrm);
    if (all[c].slack <= active_tol) {
      active.push_back(&all[c]);
      if (c < 2 * n) box_active[c / 2] = true;
    }
  }
  rep.active_constraints = static_cast<int>(active.size());
  rep.free_variables = static_cast<int>(std::count(box_active.begin(), box_active.end(), false));

  bool positive = true;
  for (double xi : x) positive = positive && xi > 0.0;
  if (!positive) {
    // Gradient undefined; report the point as non-stationary.
    rep.stationarity = 1.0;
    rep.dual_feasible = false;
    return rep;
  }

  VectorXd g(static_cast<Eigen::Index>(n));
  for (std::size_t s = 0; s < n; ++s) g[s] = problem.entries[s].lambda / x[s];

  MatrixXd a = MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(active.size()));
  for (std::size_t j = 0; j < active.size(); ++j)
    for (std::size_t s : active[j]->vars) a(s, j) = active[j]->sign;

  const VectorXd m = nonnegative_least_squares(a, g);
  const VectorXd unsigned_m = least_squares(a, g);
  const double nn_res =
      active.empty() ? g.cwiseAbs().maxCoeff() : (g - a * m).cwiseAbs().maxCoeff();
  const double ls_res =
      active.empty() ? nn_res : (g - a * unsigned_m).cwiseAbs().maxCoeff();

  // Clamped rows count too: a wrong-signed bound multiplier shows up here.
  rep.stationarity = nn_res / lambda_max;
  rep.dual_feasible = nn_res <= ls_res + 1e-9 * lambda_max;
  for (std::size_t j = 0; j < active.size(); ++j)
    rep.complementarity =
        std::max(rep.complementarity, m[j] * std::abs(active[j]->slack) / lambda_max);
  return rep;
}

}  // namespace caas
