#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "caas/golden.hpp"
#include "caas/report.hpp"

namespace caas {

// Acceptance tolerances.
namespace {

constexpr double kTable4SmallWeightAbs = 0.0005;  // weights < 0.1
constexpr double kTable4LargeWeightAbs = 0.01;
constexpr double kTable4TotalRel = 0.01;
constexpr double kGrandTotalRel = 1e-6;
constexpr double kCapacityRel = 0.02;
constexpr double kCapacitySmallAbs = 0.0005;      // weights < 0.01
constexpr double kUserRel = 0.10;
constexpr int kMaxUsersLo = 640;
constexpr int kMaxUsersHi = 650;
constexpr double kFullLoadIotAbs = 0.02;
constexpr double kFullLoadRateRel = 0.02;
constexpr double kFullLoadRate = 4.0;
constexpr double kFullLoadBeEmbbMax = 1e-4;
constexpr double kShareFloorPct = 40.0;
constexpr double kShareFloorAbs = 0.5;
constexpr double kCoincideAbs = 1.0;
constexpr double kShareSumAbs = 0.1;
constexpr double kKktTolerance = 1e-8;
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

const SweepOutcome* at_axis(const SweepResult& sweep, double axis) {
  for (const SweepOutcome& p : sweep.points)
    if (std::abs(p.axis_value - axis) <= 1e-9 * std::max(1.0, std::abs(axis))) return &p;
  return nullptr;
}

std::optional<double> vno_total(const SweepOutcome& p, std::string_view vno) {
  if (!p.problem || !p.result) return std::nullopt;
  for (std::size_t v = 0; v < p.problem->vnos.size(); ++v)
    if (p.problem->vnos[v].name == vno) return p.result->vno_totals[v];
  return std::nullopt;
}

std::optional<double> srv_max(const SweepOutcome& p, std::string_view vno, std::string_view svc) {
  if (!p.problem) return std::nullopt;
  for (const ProblemEntry& e : p.problem->entries)
    if (e.vno_name == vno && e.service_name == svc) return e.r_srv_max;
  return std::nullopt;
}

std::string_view quantity_name(GoldenQuantity q) {
  switch (q) {
    case GoldenQuantity::Weight: return "w";
    case GoldenQuantity::Rate: return "rate";
    case GoldenQuantity::VnoTotal: return "total";
  }
  return "?";
}

std::string sweep_label(const SweepResult& s, double axis) {
  const SweepOutcome* p = at_axis(s, axis);
  return p ? p->label : fmt::format("{:g}", axis);
}

class Builder {
 public:
  explicit Builder(ReproductionReport& r) : r_(r) {}

  // A missing value arrives as NaN and fails every comparison.
  void abs(std::string section, std::string item, double c, double ref, double tol,
           bool flagged = false) {
    add(std::move(section), std::move(item), c, ref, fmt::format("abs {:g}", tol),
        std::abs(c - ref) <= tol, flagged);
  }
  void rel(std::string section, std::string item, double c, double ref, double tol,
           bool flagged = false) {
    add(std::move(section), std::move(item), c, ref, fmt::format("rel {:g}", tol),
        std::abs(c - ref) <= tol * std::abs(ref), flagged);
  }
  void check(std::string section, std::string item, double computed, std::optional<double> ref,
             std::string tolerance, bool pass) {
    add(std::move(section), std::move(item), computed, ref, std::move(tolerance), pass, false);
  }

 private:
  void add(std::string section, std::string item, double computed, std::optional<double> ref,
           std::string tolerance, bool pass, bool flagged) {
    r_.comparisons.push_back(
        {std::move(section), std::move(item), computed, ref, std::move(tolerance), flagged, pass});
  }

  ReproductionReport& r_;
};

void compare_table4(Builder& b, const SweepResult& sweep) {
  const SweepOutcome* p = sweep.points.empty() ? nullptr : &sweep.points.front();
  for (const GoldenCell& g : golden_cells()) {
    if (g.table != 4) continue;
    const std::string item =
        fmt::format("{} {} {}", g.vno, g.service.empty() ? "VNO" : g.service, quantity_name(g.quantity));
    if (!p) {
      b.check("table 4", item, nan, g.value, "", false);
      continue;
    }
    switch (g.quantity) {
      case GoldenQuantity::Weight:
        b.abs("table 4", item, p->user_weight(g.vno, g.service).value_or(nan), g.value,
              g.value < 0.1 ? kTable4SmallWeightAbs : kTable4LargeWeightAbs);
        break;
      case GoldenQuantity::Rate: {
        // Printed rates are rounded weights times the service ceiling, so
        // they inherit the weight tolerance scaled by that ceiling.
        const auto cap = srv_max(*p, g.vno, g.service);
        const double ref_w = cap ? g.value / *cap : nan;
        const double tol = (ref_w < 0.1 ? kTable4SmallWeightAbs : kTable4LargeWeightAbs) *
                           cap.value_or(0.0);
        b.abs("table 4", item, p->user_rate(g.vno, g.service).value_or(nan), g.value, tol);
        break;
      }
      case GoldenQuantity::VnoTotal:
        b.rel("table 4", item, vno_total(*p, g.vno).value_or(nan), g.value, kTable4TotalRel);
        break;
    }
  }
  if (p && p->result) {
    const double total = p->result->total();
    const double crrm = p->problem->r_crrm;
    b.check("table 4", "grand total", total, crrm, fmt::format("abs {:g}*r_crrm", kGrandTotalRel),
            std::abs(total - crrm) <= kGrandTotalRel * crrm);
  } else {
    b.check("table 4", "grand total", nan, std::nullopt, "", false);
  }
}

void compare_capacity(Builder& b, const SweepResult& sweep) {
  for (const GoldenCell& g : golden_cells()) {
    if (g.table < 5 || g.table > 7) continue;
    const std::string section = fmt::format("table {}", g.table);
    const std::string item = fmt::format("{} {} {}", g.vno, g.service, sweep_label(sweep, g.axis));
    const SweepOutcome* p = at_axis(sweep, g.axis);
    const double w = p ? p->user_weight(g.vno, g.service).value_or(nan) : nan;
    if (g.value < 0.01) b.abs(section, item, w, g.value, kCapacitySmallAbs);
    else b.rel(section, item, w, g.value, kCapacityRel);
  }
}

void compare_users(Builder& b, const SweepResult& sweep) {
  b.check("tables 8-10", "N_max total users", sweep.n_max_total,
          static_cast<double>(kGoldenMaxUsers), fmt::format("in [{}, {}]", kMaxUsersLo, kMaxUsersHi),
          sweep.n_max_total >= kMaxUsersLo && sweep.n_max_total <= kMaxUsersHi);
  for (const GoldenCell& g : golden_cells()) {
    if (g.table < 8 || g.table > 10) continue;
    const std::string section = fmt::format("table {}", g.table);
    const std::string item = fmt::format("{} {} {}", g.vno, g.service, sweep_label(sweep, g.axis));
    const SweepOutcome* p = at_axis(sweep, g.axis);
    const double w = p ? p->user_weight(g.vno, g.service).value_or(nan) : nan;
    const bool full = std::abs(g.axis - 1.0) < 1e-9;
    const bool guaranteed = g.vno == "GB" || g.vno == "BG";
    if (full && guaranteed && g.service == "IoT") {
      b.abs(section, item, w, g.value, kFullLoadIotAbs);
    } else if (full && guaranteed && g.service == "eMBB") {
      b.rel(section, item + " rate", p ? p->user_rate(g.vno, g.service).value_or(nan) : nan,
            kFullLoadRate, kFullLoadRateRel);
    } else if (full && g.vno == "BE" && g.service == "eMBB") {
      b.check(section, item, w, g.value, fmt::format("<= {:g}", kFullLoadBeEmbbMax),
              w <= kFullLoadBeEmbbMax);
    } else {
      b.rel(section, item, w, g.value, kUserRel, g.excluded);
    }
  }
}

void compare_weights(Builder& b, const SweepResult& sweep) {
  const auto index = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t v = 0; v < sweep.vno_names.size(); ++v)
      if (sweep.vno_names[v] == name) return v;
    return std::nullopt;
  };
  const auto gb = index("GB"), bg = index("BG");
  double previous = -std::numeric_limits<double>::infinity();
  bool monotone = true;
  for (const SweepOutcome& p : sweep.points) {
    if (!p.feasible() || !gb || !bg) {
      b.check("fig 15", p.label, nan, std::nullopt, "feasible", false);
      continue;
    }
    const double share_bg = p.vno_share_pct[*bg];
    const double share_gb = p.vno_share_pct[*gb];
    if (p.axis_value <= 6.0 + 1e-9)
      b.abs("fig 15", p.label + " BG share %", share_bg, kShareFloorPct, kShareFloorAbs);
    if (std::abs(p.axis_value - 10.0) < 1e-9)
      b.check("fig 15", p.label + " |GB-BG| share %", std::abs(share_gb - share_bg), 0.0,
              fmt::format("<= {:g}", kCoincideAbs), std::abs(share_gb - share_bg) <= kCoincideAbs);
    double sum = 0.0;
    for (double s : p.vno_share_pct) sum += s;
    b.abs("fig 15", p.label + " share sum %", sum, 100.0, kShareSumAbs);
    if (share_bg < previous) monotone = false;
    previous = share_bg;
  }
  b.check("fig 15", "BG share non-decreasing", monotone ? 1.0 : 0.0, std::nullopt, "", monotone);
}

std::string number_or_dash(std::optional<double> v) {
  if (!v) return "-";
  if (std::isnan(*v)) return "missing";
  return fmt::format("{:.6g}", *v);
}

}  // namespace

ReproductionRun run_reproduction(const Scenario& base, const SolverConfig& config) {
  ReproductionRun run;
  run.table4 = run_sweep(builtin_sweep(BuiltinSweep::Table4, base), config);
  run.fig15 = run_sweep(builtin_sweep(BuiltinSweep::Fig15, base), config);
  run.capacity = run_sweep(builtin_sweep(BuiltinSweep::Tables5to7, base), config);
  run.users = run_sweep(builtin_sweep(BuiltinSweep::Tables8to10, base), config);
  return run;
}

bool ReproductionReport::pass() const {
  if (!all_converged || !(max_kkt_residual <= kKktTolerance)) return false;
  return std::all_of(comparisons.begin(), comparisons.end(),
                     [](const Comparison& c) { return c.flagged || c.pass; });
}

ReproductionReport reproduction_report(const ReproductionRun& run) {
  ReproductionReport r;
  Builder b(r);
  compare_table4(b, run.table4);
  compare_weights(b, run.fig15);
  compare_capacity(b, run.capacity);
  compare_users(b, run.users);
  r.n_max_total = run.users.n_max_total;

  for (const SweepResult* s : {&run.table4, &run.fig15, &run.capacity, &run.users}) {
    r.all_converged = r.all_converged && s->all_converged();
    for (const SweepOutcome& p : s->points)
      if (p.result)
        r.max_kkt_residual =
            std::max(r.max_kkt_residual, kkt_residuals(*p.problem, *p.result).max_residual());
  }

  for (const GoldenCell& g : golden_cells())
    if (g.flagged)
      r.flagged_cells.push_back(fmt::format("table {} {} {} {} at {:g}: printed {:g} ({}){}", g.table,
                                            g.vno, g.service.empty() ? "VNO" : g.service,
                                            quantity_name(g.quantity), g.axis, g.value, g.note,
                                            g.excluded ? ", excluded" : ", still checked"));
  return r;
}

std::string ReproductionReport::to_text() const {
  std::string out = "Reproduction report\n===================\n\n";
  std::string section;
  int passed = 0, counted = 0;
  for (const Comparison& c : comparisons) {
    if (c.section != section) {
      section = c.section;
      out += fmt::format("[{}]\n", section);
    }
    std::string error = "-";
    if (c.reference && *c.reference != 0.0 && !std::isnan(c.computed))
      error = fmt::format("{:+.2e}", (c.computed - *c.reference) / std::abs(*c.reference));
    const std::string verdict = c.flagged ? (c.pass ? "flagged" : "FLAGGED") : (c.pass ? "ok" : "FAIL");
    out += fmt::format("  {:<28} computed={:<12} reference={:<10} rel_err={:<10} tol={:<16} {}\n",
                       c.item, number_or_dash(c.computed), number_or_dash(c.reference), error,
                       c.tolerance, verdict);
    if (!c.flagged) {
      ++counted;
      if (c.pass) ++passed;
    }
  }
  out += fmt::format("\n[solver]\n  all converged: {}\n  max KKT residual: {:.3e} (tol {:g})\n",
                     all_converged ? "yes" : "no", max_kkt_residual, kKktTolerance);
  out += fmt::format("  N_max total users: {}\n", n_max_total);
  out += "\n[flagged reference cells]\n";
  for (const std::string& f : flagged_cells) out += "  " + f + "\n";
  out += fmt::format("\n{} of {} checked comparisons within tolerance\nRESULT: {}\n", passed,
                     counted, pass() ? "PASS" : "FAIL");
  return out;
}

}  // namespace caas
