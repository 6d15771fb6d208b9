#include "caas/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "caas/error.hpp"

namespace caas {

namespace {

// A plain grid cannot resolve an optimum that sits on a diagonal face such as
// the pool cap: the best feasible grid point drifts along the face. So every
// combination of coupling constraints held at equality is searched
// separately, with one variable per equality eliminated and solved for.

constexpr int kGridBudget = 4096;   // points per refinement level
constexpr int kMaxLevels = 400;
constexpr double kResolution = 1e-5;

struct Coupling {
  std::vector<std::size_t> members;
  double lo = 0.0;
  double hi = 0.0;
};

class GridSearch {
 public:
  explicit GridSearch(const AllocationProblem& p) : p_(p) {
    const std::size_t n = p.size();
    eps_ = 1e-12 * p.r_crrm;
    lo_.resize(n);
    hi_.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
      const ProblemEntry& e = p.entries[s];
      lo_[s] = std::max(e.x_min, eps_);
      hi_[s] = std::max(lo_[s], std::min({e.x_max, p.vnos[e.vno].hi, p.r_crrm}));
      if (lo_[s] < hi_[s]) free_.push_back(s);
    }
    std::vector<std::vector<std::size_t>> by_vno(p.vnos.size());
    for (std::size_t s = 0; s < n; ++s) by_vno[p.entries[s].vno].push_back(s);
    for (std::size_t v = 0; v < by_vno.size(); ++v)
      if (!by_vno[v].empty()) couplings_.push_back({by_vno[v], p.vnos[v].lo, p.vnos[v].hi});
    std::vector<std::size_t> all(n);
    for (std::size_t s = 0; s < n; ++s) all[s] = s;
    couplings_.push_back({all, -std::numeric_limits<double>::infinity(), p.r_crrm});
  }

  // Runs every equality pattern; returns false when nothing feasible was found.
  bool run() {
    // Per coupling: 0 = inequality, 1 = held at lo, 2 = held at hi.
    std::vector<int> state(couplings_.size(), 0);
    for (;;) {
      search_pattern(state);
      std::size_t i = 0;
      while (i < state.size()) {
        state[i] = next_state(i, state[i]);
        if (state[i] != 0) break;
        ++i;
      }
      if (i == state.size()) break;
    }
    return found_;
  }

  const std::vector<double>& best() const { return best_x_; }
  int levels() const { return levels_; }

 private:
  int next_state(std::size_t i, int s) const {
    const Coupling& c = couplings_[i];
    for (int t = s + 1; t <= 2; ++t) {
      if (t == 1 && std::isfinite(c.lo) && c.lo > 0.0) return t;
      if (t == 2 && std::isfinite(c.hi) && c.hi != c.lo) return t;
    }
    return 0;
  }

  void search_pattern(const std::vector<int>& state) {
    std::vector<std::size_t> rows;
    std::vector<double> targets;
    for (std::size_t i = 0; i < state.size(); ++i) {
      if (state[i] == 0) continue;
      rows.push_back(i);
      targets.push_back(state[i] == 1 ? couplings_[i].lo : couplings_[i].hi);
    }
    const std::size_t k = rows.size();
    if (k > free_.size()) return;

    // Every k-subset of free variables as the eliminated set.
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    for (;;) {
      search_elimination(rows, targets, pick);
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == free_.size() - k + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  bool member(std::size_t row, std::size_t s) const {
    const auto& m = couplings_[row].members;
    return std::find(m.begin(), m.end(), s) != m.end();
  }

  void search_elimination(const std::vector<std::size_t>& rows, const std::vector<double>& targets,
                          const std::vector<std::size_t>& pick) {
    const std::size_t k = rows.size();
    std::vector<std::size_t> eliminated, grid;
    for (std::size_t i = 0; i < free_.size(); ++i) {
      if (std::find(pick.begin(), pick.end(), i) != pick.end()) eliminated.push_back(free_[i]);
      else grid.push_back(free_[i]);
    }
    Eigen::MatrixXd m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) m(r, c) = member(rows[r], eliminated[c]) ? 1.0 : 0.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (k > 0 && !lu.isInvertible()) return;

    const std::size_t dims = grid.size();
    const int points =
        dims == 0 ? 1
                  : std::max(3, static_cast<int>(std::floor(std::pow(kGridBudget, 1.0 / dims))));
    std::vector<double> a(dims), b(dims);
    for (std::size_t d = 0; d < dims; ++d) {
      a[d] = lo_[grid[d]];
      b[d] = hi_[grid[d]];
    }

    std::vector<double> x(p_.size());
    auto evaluate = [&](const std::vector<double>& g, double& value) {
      for (std::size_t s = 0; s < p_.size(); ++s) x[s] = lo_[s];
      for (std::size_t d = 0; d < dims; ++d) x[grid[d]] = g[d];
      if (k > 0) {
        Eigen::VectorXd rhs(static_cast<Eigen::Index>(k));
        for (std::size_t r = 0; r < k; ++r) {
          double known = 0.0;
          for (std::size_t s : couplings_[rows[r]].members)
            if (std::find(eliminated.begin(), eliminated.end(), s) == eliminated.end()) known += x[s];
          rhs[static_cast<Eigen::Index>(r)] = targets[r] - known;
        }
        const Eigen::VectorXd xe = lu.solve(rhs);
        for (std::size_t c = 0; c < k; ++c) x[eliminated[c]] = xe[static_cast<Eigen::Index>(c)];
      }
      if (!feasible(x)) return false;
      value = 0.0;
      for (std::size_t s = 0; s < x.size(); ++s) value += p_.entries[s].lambda * std::log(x[s]);
      return true;
    };

    std::vector<double> g(dims);
    std::vector<int> idx(dims);
    int stalls = 0;
    bool have_best = false;
    double best_value = -std::numeric_limits<double>::infinity();
    std::vector<double> best_g(dims);
    std::vector<double> best_full;

    for (int level = 0; level < kMaxLevels; ++level) {
      ++levels_;
      std::fill(idx.begin(), idx.end(), 0);
      for (;;) {
        for (std::size_t d = 0; d < dims; ++d)
          g[d] = points == 1 || b[d] == a[d]
                     ? a[d]
                     : a[d] + (b[d] - a[d]) * idx[d] / static_cast<double>(points - 1);
        double value = 0.0;
        if (evaluate(g, value) && value > best_value) {
          best_value = value;
          best_g = g;
          best_full = x;
          have_best = true;
        }
        std::size_t d = 0;
        while (d < dims && ++idx[d] == points) idx[d++] = 0;
        if (d == dims) break;
      }
      if (!have_best || dims == 0) break;

      // Shrink around the incumbent unless it sits on an edge that is not a
      // variable bound; then move the box instead, a bounded number of times.
      bool on_edge = false;
      for (std::size_t d = 0; d < dims; ++d) {
        const double slop = 1e-9 * (b[d] - a[d]);
        if (best_g[d] <= a[d] + slop && a[d] > lo_[grid[d]]) on_edge = true;
        if (best_g[d] >= b[d] - slop && b[d] < hi_[grid[d]]) on_edge = true;
      }
      const bool shrink = !on_edge || ++stalls > 3;
      if (shrink) stalls = 0;
      bool resolved = true;
      for (std::size_t d = 0; d < dims; ++d) {
        const double spacing = (b[d] - a[d]) / (points - 1);
        const double half = shrink ? std::max(2.0 * spacing, 0.25 * (b[d] - a[d]))
                                   : 0.5 * (b[d] - a[d]);
        a[d] = std::max(lo_[grid[d]], best_g[d] - half);
        b[d] = std::min(hi_[grid[d]], best_g[d] + half);
        if ((b[d] - a[d]) / (points - 1) > kResolution * std::max(best_g[d], eps_)) resolved = false;
      }
      if (resolved) break;
    }
    if (have_best && (!found_ || best_value > best_value_)) {
      found_ = true;
      best_value_ = best_value;
      best_x_ = best_full;
    }
  }

  bool feasible(const std::vector<double>& x) const {
    const double tol = 1e-12 * std::max(1.0, p_.r_crrm);
    for (std::size_t s = 0; s < x.size(); ++s)
      if (!(x[s] >= lo_[s] - tol) || !(x[s] <= hi_[s] + tol) || !(x[s] > 0.0)) return false;
    for (const Coupling& c : couplings_) {
      double t = 0.0;
      for (std::size_t s : c.members) t += x[s];
      if (t < c.lo - tol || t > c.hi + tol) return false;
    }
    return true;
  }

  const AllocationProblem& p_;
  double eps_ = 0.0;
  std::vector<double> lo_, hi_;
  std::vector<std::size_t> free_;
  std::vector<Coupling> couplings_;
  bool found_ = false;
  double best_value_ = -std::numeric_limits<double>::infinity();
  std::vector<double> best_x_;
  int levels_ = 0;
};

}  // namespace

AllocationResult oracle_solve(const AllocationProblem& problem) {
  if (problem.size() > kOracleMaxVariables)
    throw Error(ErrorKind::TooLarge, fmt::format("oracle handles at most {} variables, got {}",
                                                 kOracleMaxVariables, problem.size()));
  if (problem.size() == 0) {
    AllocationResult r = package_result(problem, {});
    r.converged = true;
    r.status = SolveStatus::Converged;
    return r;
  }
  GridSearch search(problem);
  if (!search.run()) throw Error(ErrorKind::Infeasible, "grid search found no feasible point");
  std::vector<double> x = search.best();
  // Clip tolerance-level excursions back into the boxes.
  for (std::size_t s = 0; s < x.size(); ++s)
    x[s] = std::clamp(x[s], std::max(problem.entries[s].x_min, 1e-12 * problem.r_crrm),
                      std::max(problem.entries[s].x_max, 1e-12 * problem.r_crrm));
  AllocationResult r = package_result(problem, std::move(x));
  r.iterations = search.levels();
  r.converged = true;
  r.status = SolveStatus::Converged;
  return r;
}

}  // namespace caas
