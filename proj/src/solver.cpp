#include "caas/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "caas/error.hpp"
#include "caas/kkt.hpp"

namespace caas {

double AllocationResult::total() const {
  return std::accumulate(aggregates.begin(), aggregates.end(), 0.0);
}

AllocationProblem assemble_problem(const ValidScenario& scenario) {
  AllocationProblem p;
  p.r_crrm = scenario.r_crrm();
  const auto vnos = scenario.vnos();
  for (std::size_t v = 0; v < vnos.size(); ++v) {
    const ResolvedVno& vno = vnos[v];
    double demand = 0.0;
    for (std::size_t s = 0; s < vno.services.size(); ++s) {
      const ResolvedService& srv = vno.services[s];
      if (srv.user_count == 0) continue;
      ProblemEntry e;
      e.vno = v;
      e.service = s;
      e.vno_name = vno.name;
      e.service_name = srv.name;
      e.lambda = tuning_weight(vno.gamma, srv.delta);
      e.n_users = srv.user_count;
      e.r_srv_min = srv.r_srv_min;
      e.r_srv_max = srv.r_srv_max;
      e.x_min = srv.min_mass();
      e.x_max = srv.max_mass();
      demand += e.x_max;
      p.entries.push_back(std::move(e));
    }
    p.vnos.push_back({vno.name, vno.sla, std::min(vno.r_vno_min, demand), vno.r_vno_max});
  }
  return p;
}

namespace {

void check_size(const AllocationProblem& problem, std::span<const double> x) {
  if (x.size() != problem.size())
    throw Error(ErrorKind::InvalidScenario,
                fmt::format("aggregate vector has {} entries, problem has {}", x.size(),
                            problem.size()));
  for (std::size_t s = 0; s < x.size(); ++s)
    if (!(x[s] > 0.0))
      throw Error(ErrorKind::NonPositiveAggregate,
                  fmt::format("aggregate {} ({}/{}) is {}", s, problem.entries[s].vno_name,
                              problem.entries[s].service_name, x[s]));
}

}  // namespace

double objective(const AllocationProblem& problem, std::span<const double> x) {
  check_size(problem, x);
  double value = 0.0;
  for (std::size_t s = 0; s < x.size(); ++s)
    value += problem.entries[s].lambda * std::log(x[s] / problem.r_crrm);
  return value;
}

std::vector<double> objective_gradient(const AllocationProblem& problem,
                                       std::span<const double> x) {
  check_size(problem, x);
  std::vector<double> g(x.size());
  for (std::size_t s = 0; s < x.size(); ++s) g[s] = problem.entries[s].lambda / x[s];
  return g;
}

AllocationResult package_result(const AllocationProblem& problem, std::vector<double> aggregates) {
  AllocationResult r;
  r.vno_totals.assign(problem.vnos.size(), 0.0);
  r.user_rates.resize(aggregates.size());
  r.user_weights.resize(aggregates.size());
  for (std::size_t s = 0; s < aggregates.size(); ++s) {
    const ProblemEntry& e = problem.entries[s];
    r.user_rates[s] = aggregates[s] / e.n_users;
    r.user_weights[s] = r.user_rates[s] / e.r_srv_max;
    r.vno_totals[e.vno] += aggregates[s];
  }
  r.aggregates = std::move(aggregates);
  r.objective = objective(problem, r.aggregates);
  return r;
}

namespace {

// Strictly positive floor for best-effort aggregates whose minimum is zero.
double positivity_floor(const AllocationProblem& p) { return 1e-12 * p.r_crrm; }

struct Bounds {
  std::vector<double> lo;
  std::vector<double> hi;
};

Bounds effective_bounds(const AllocationProblem& p) {
  Bounds b;
  const double eps = positivity_floor(p);
  for (const ProblemEntry& e : p.entries) {
    b.lo.push_back(std::max(e.x_min, eps));
    b.hi.push_back(std::max(e.x_max, std::max(e.x_min, eps)));
  }
  return b;
}

}  // namespace

std::vector<double> initial_point(const AllocationProblem& problem) {
  const Bounds b = effective_bounds(problem);
  std::vector<double> x = b.lo;
  const std::size_t n = x.size();

  // Raise `members` by equal increments until `amount` is spent or every member
  // is capped. `room` limits the total increase.
  auto spread = [&](const std::vector<std::size_t>& members, double amount) {
    for (int pass = 0; pass < 64 && amount > 0.0; ++pass) {
      std::vector<std::size_t> open;
      for (std::size_t s : members)
        if (x[s] < b.hi[s]) open.push_back(s);
      if (open.empty()) break;
      const double share = amount / static_cast<double>(open.size());
      for (std::size_t s : open) {
        const double step = std::min(share, b.hi[s] - x[s]);
        x[s] = std::min(x[s] + step, b.hi[s]);
        amount -= step;
      }
    }
    return amount;
  };

  std::vector<std::vector<std::size_t>> by_vno(problem.vnos.size());
  for (std::size_t s = 0; s < n; ++s) by_vno[problem.entries[s].vno].push_back(s);

  auto vno_total = [&](std::size_t v) {
    double t = 0.0;
    for (std::size_t s : by_vno[v]) t += x[s];
    return t;
  };

  for (std::size_t v = 0; v < by_vno.size(); ++v) {
    const double gap = problem.vnos[v].lo - vno_total(v);
    if (gap > 0.0) spread(by_vno[v], gap);
  }

  double residual = problem.r_crrm - std::accumulate(x.begin(), x.end(), 0.0);
  for (int pass = 0; pass < 64 && residual > 0.0; ++pass) {
    std::vector<std::size_t> open_vnos;
    for (std::size_t v = 0; v < by_vno.size(); ++v) {
      const bool can_grow = std::any_of(by_vno[v].begin(), by_vno[v].end(),
                                        [&](std::size_t s) { return x[s] < b.hi[s]; });
      if (can_grow && vno_total(v) < problem.vnos[v].hi) open_vnos.push_back(v);
    }
    if (open_vnos.empty()) break;
    const double share = residual / static_cast<double>(open_vnos.size());
    for (std::size_t v : open_vnos) {
      const double room = std::min(share, problem.vnos[v].hi - vno_total(v));
      residual -= room - spread(by_vno[v], room);
    }
  }
  return x;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Local form a / p + b of a continuous, non-increasing piecewise function.
struct Piece {
  double a = 0.0;
  double b = 0.0;
};

// Aggregate response of one VNO's services to a price p:
// x_s(p) = clamp(lambda_s / p, lo_s, hi_s), with p = 0 meaning "at hi".
class VnoResponse {
 public:
  VnoResponse(std::vector<double> lambda, std::vector<double> lo, std::vector<double> hi)
      : lambda_(std::move(lambda)), lo_(std::move(lo)), hi_(std::move(hi)) {}

  double rate(std::size_t i, double p) const {
    if (p <= 0.0) return hi_[i];
    if (p == kInf) return lo_[i];
    return std::clamp(lambda_[i] / p, lo_[i], hi_[i]);
  }

  double total(double p) const {
    double t = 0.0;
    for (std::size_t i = 0; i < lambda_.size(); ++i) t += rate(i, p);
    return t;
  }

  Piece piece(double p) const {
    Piece pc;
    for (std::size_t i = 0; i < lambda_.size(); ++i) {
      const double free = lambda_[i] / p;
      if (free >= hi_[i]) pc.b += hi_[i];
      else if (free <= lo_[i]) pc.b += lo_[i];
      else pc.a += lambda_[i];
    }
    return pc;
  }

  void breakpoints(double from, double to, std::vector<double>& out) const {
    for (std::size_t i = 0; i < lambda_.size(); ++i) {
      for (double bp : {lambda_[i] / hi_[i], lambda_[i] / lo_[i]})
        if (bp > from && bp < to && std::isfinite(bp)) out.push_back(bp);
    }
  }

  double sum_lo() const { return std::accumulate(lo_.begin(), lo_.end(), 0.0); }
  double sum_hi() const { return std::accumulate(hi_.begin(), hi_.end(), 0.0); }
  bool empty() const { return lambda_.empty(); }

 private:
  std::vector<double> lambda_;
  std::vector<double> lo_;
  std::vector<double> hi_;
};

// Solves G(p) = target for a continuous non-increasing G that is of the form
// a / p + b between consecutive points of `bps`. Assumes
// G(0+) >= target >= G(inf). Returns the root and counts evaluations.
template <typename Eval, typename PieceAt>
double find_level(std::vector<double> bps, double target, Eval&& eval, PieceAt&& piece_at,
                  int& evaluations) {
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  if (bps.empty()) {
    // No kinks: G is a / p + b everywhere (or constant).
    ++evaluations;
    const Piece pc = piece_at(1.0);
    if (pc.a <= 0.0 || target <= pc.b) return kInf;
    return pc.a / (target - pc.b);
  }
  // First breakpoint where G has dropped to the target or below.
  std::size_t lo = 0;
  std::size_t hi = bps.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    ++evaluations;
    if (eval(bps[mid]) <= target) hi = mid;
    else lo = mid + 1;
  }
  const double left = lo == 0 ? 0.0 : bps[lo - 1];
  const double right = lo == bps.size() ? kInf : bps[lo];
  double probe;
  if (left == 0.0) probe = right / 2.0;
  else if (right == kInf) probe = left * 2.0;
  else probe = 0.5 * (left + right);
  ++evaluations;
  const Piece pc = piece_at(probe);
  if (pc.a <= 0.0 || target <= pc.b) return right;
  const double p = pc.a / (target - pc.b);
  return std::clamp(p, left, right);
}

}  // namespace

AllocationResult solve(const AllocationProblem& problem, const SolverConfig& config) {
  if (!(config.kkt_tolerance > 0.0))
    throw Error(ErrorKind::InvalidBounds, "kkt_tolerance must be > 0");
  if (!(problem.r_crrm > 0.0) || !std::isfinite(problem.r_crrm))
    throw Error(ErrorKind::NumericalBreakdown, "r_crrm must be finite and positive");
  for (const ProblemEntry& e : problem.entries)
    if (!std::isfinite(e.lambda) || !(e.lambda > 0.0) || !std::isfinite(e.x_min) ||
        !std::isfinite(e.x_max) || e.x_min > e.x_max || e.vno >= problem.vnos.size())
      throw Error(ErrorKind::NumericalBreakdown,
                  fmt::format("entry {}/{} has invalid data", e.vno_name, e.service_name));

  const Bounds bounds = effective_bounds(problem);
  const std::size_t n_vno = problem.vnos.size();
  std::vector<std::vector<std::size_t>> members(n_vno);
  for (std::size_t s = 0; s < problem.size(); ++s) members[problem.entries[s].vno].push_back(s);

  std::vector<VnoResponse> response;
  for (std::size_t v = 0; v < n_vno; ++v) {
    std::vector<double> lam, lo, hi;
    for (std::size_t s : members[v]) {
      lam.push_back(problem.entries[s].lambda);
      lo.push_back(bounds.lo[s]);
      hi.push_back(bounds.hi[s]);
    }
    response.emplace_back(std::move(lam), std::move(lo), std::move(hi));
  }

  int evaluations = 0;

  // Price band per VNO: total(p) <= hi for p >= ceil_price, total(p) >= lo for
  // p <= floor_price.
  std::vector<double> ceil_price(n_vno, 0.0);
  std::vector<double> floor_price(n_vno, kInf);
  double lower_mass = 0.0;
  for (std::size_t v = 0; v < n_vno; ++v) {
    const VnoResponse& r = response[v];
    const VnoWindow& w = problem.vnos[v];
    if (r.sum_lo() > w.hi * (1.0 + 1e-12) || (r.empty() && w.lo > 0.0))
      throw Error(ErrorKind::Infeasible,
                  fmt::format("VNO '{}' minimum mass {:.6g} exceeds window max {:.6g}", w.name,
                              r.sum_lo(), w.hi));
    if (r.empty()) continue;
    std::vector<double> bps;
    r.breakpoints(0.0, kInf, bps);
    auto eval = [&](double p) { return r.total(p); };
    auto piece_at = [&](double p) { return r.piece(p); };
    if (r.sum_hi() > w.hi) ceil_price[v] = find_level(bps, w.hi, eval, piece_at, evaluations);
    if (r.sum_lo() < w.lo) floor_price[v] = find_level(bps, w.lo, eval, piece_at, evaluations);
    lower_mass += std::max(r.sum_lo(), w.lo);
  }
  if (lower_mass > problem.r_crrm * (1.0 + 1e-12))
    throw Error(ErrorKind::Infeasible,
                fmt::format("lower mass {:.6g} exceeds r_crrm {:.6g}", lower_mass, problem.r_crrm));

  auto vno_price = [&](std::size_t v, double nu) {
    return std::clamp(nu, ceil_price[v], floor_price[v]);
  };
  auto pool_total = [&](double nu) {
    double t = 0.0;
    for (std::size_t v = 0; v < n_vno; ++v) t += response[v].total(vno_price(v, nu));
    return t;
  };
  auto pool_piece = [&](double nu) {
    Piece pc;
    for (std::size_t v = 0; v < n_vno; ++v) {
      const double pv = vno_price(v, nu);
      if (pv == nu && nu > ceil_price[v] && nu < floor_price[v]) {
        const Piece local = response[v].piece(nu);
        pc.a += local.a;
        pc.b += local.b;
      } else {
        pc.b += response[v].total(pv);
      }
    }
    return pc;
  };

  double nu = 0.0;
  ++evaluations;
  if (pool_total(0.0) > problem.r_crrm) {
    std::vector<double> bps;
    for (std::size_t v = 0; v < n_vno; ++v) {
      if (ceil_price[v] > 0.0) bps.push_back(ceil_price[v]);
      if (std::isfinite(floor_price[v])) bps.push_back(floor_price[v]);
      response[v].breakpoints(ceil_price[v], floor_price[v], bps);
    }
    nu = find_level(bps, problem.r_crrm, pool_total, pool_piece, evaluations);
    if (!std::isfinite(nu))
      throw Error(ErrorKind::NumericalBreakdown, "pool price search did not bracket a root");
  }

  AllocationResult result;
  if (evaluations > config.max_iterations) {
    result = package_result(problem, initial_point(problem));
    result.iterations = evaluations;
    result.converged = false;
    result.status = SolveStatus::NotConverged;
    result.diagnostic = fmt::format("iteration cap {} reached", config.max_iterations);
    return result;
  }

  std::vector<double> x(problem.size());
  for (std::size_t v = 0; v < n_vno; ++v) {
    const double pv = vno_price(v, nu);
    for (std::size_t i = 0; i < members[v].size(); ++i) x[members[v][i]] = response[v].rate(i, pv);
  }
  for (double xi : x)
    if (!std::isfinite(xi) || !(xi > 0.0))
      throw Error(ErrorKind::NumericalBreakdown, "non-finite or non-positive aggregate");

  result = package_result(problem, std::move(x));
  result.capacity_price = nu;
  result.iterations = evaluations;
  const KktReport kkt = kkt_residuals(problem, result);
  result.converged = kkt.certifies(config.kkt_tolerance);
  result.status = result.converged ? SolveStatus::Converged : SolveStatus::NotConverged;
  if (!result.converged)
    result.diagnostic = fmt::format("KKT residuals above tolerance {}: {}", config.kkt_tolerance,
                                    kkt.summary());
  return result;
}

}  // namespace caas
