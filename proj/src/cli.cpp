#include "caas/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "caas/error.hpp"
#include "caas/kkt.hpp"
#include "caas/model.hpp"
#include "caas/report.hpp"
#include "caas/scenario_io.hpp"
#include "caas/solver.hpp"
#include "caas/sweeps.hpp"

namespace caas {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string scenario;
  std::string sweep;
  std::string out_dir = "out";
  double kkt_tol = SolverConfig{}.kkt_tolerance;
  bool full_precision = false;
  bool emit_svg = true;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::Io, fmt::format("cannot write {}", path.string()));
  f << text;
  if (!f) throw Error(ErrorKind::Io, fmt::format("write failed for {}", path.string()));
}

fs::path prepare_out(const Options& o) {
  const fs::path dir(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, fmt::format("cannot create {}: {}", dir.string(), ec.message()));
  return dir;
}

SolverConfig config_of(const Options& o) {
  SolverConfig c;
  c.kkt_tolerance = o.kkt_tol;
  return c;
}

std::string feasibility_text(const FeasibilityReport& r) {
  std::string out = fmt::format("r_crrm {:g} Mbps\n", r.r_crrm);
  for (const VnoFeasibility& v : r.vnos)
    out += fmt::format("  {:<8} min-rate mass {:>10.4f}  lower mass {:>10.4f}  max demand {:>10.4f}  "
                       "ceiling {:>10.4f}{}\n",
                       v.name, v.min_rate_mass, v.lower_mass, v.max_demand, v.r_vno_max,
                       v.window_ok ? "" : "  (minimum rates exceed ceiling)");
  out += fmt::format("global lower mass {:.4f}  max demand {:.4f}\n", r.global_lower_mass,
                     r.global_max_demand);
  out += r.feasible ? "feasible\n" : fmt::format("infeasible: {}\n", r.binding);
  return out;
}

std::string totals_csv(const AllocationProblem& p, const AllocationResult& r, bool full) {
  std::string out = "vno,sla,r_vno_provided,share_pct\n";
  for (std::size_t v = 0; v < p.vnos.size(); ++v)
    out += fmt::format("{},{},{},{}\n", p.vnos[v].name, to_string(p.vnos[v].sla),
                       format_number(r.vno_totals[v], full),
                       format_number(r.vno_totals[v] / p.r_crrm * 100.0, full));
  out += fmt::format("total,all,{},{}\n", format_number(r.total(), full),
                     format_number(r.total() / p.r_crrm * 100.0, full));
  return out;
}

std::string kkt_text(const AllocationResult& r, const KktReport& k, double tol) {
  return fmt::format(
      "converged: {}\niterations: {}\nobjective: {:.17g}\ncapacity_price: {:.17g}\n"
      "total_mbps: {:.17g}\nkkt_tolerance: {:g}\n{}\n{}",
      r.converged ? "yes" : "no", r.iterations, r.objective, r.capacity_price, r.total(), tol,
      k.summary(), r.diagnostic.empty() ? "" : "diagnostic: " + r.diagnostic + "\n");
}

// Writes the tables and charts of one built-in sweep; returns file names.
std::vector<std::string> write_sweep(const fs::path& dir, BuiltinSweep which,
                                     const SweepResult& result, const Options& o) {
  std::vector<std::string> files;
  const CsvOptions csv{o.full_precision};
  for (const TableDoc& t : sweep_tables(result, table_layout_for(which))) {
    write_file(dir / (t.name + ".csv"), t.to_csv(csv));
    files.push_back(t.name + ".csv");
  }
  if (o.emit_svg && !result.points.empty())
    for (const std::string& kind : charts_for(which)) {
      write_file(dir / (kind + ".svg"), emit_chart(result, kind));
      files.push_back(kind + ".svg");
    }
  return files;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const Scenario sc = load_scenario(o.scenario);
  const FeasibilityReport rep = feasibility_report(sc);
  out << feasibility_text(rep);
  if (!rep.feasible) throw Error(ErrorKind::Infeasible, rep.binding);
  validate_scenario(sc);
  return kExitOk;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const ValidScenario sc = validate_scenario(load_scenario(o.scenario));
  const AllocationProblem problem = assemble_problem(sc);
  const AllocationResult result = solve(problem, config_of(o));
  const KktReport kkt = kkt_residuals(problem, result);
  const fs::path dir = prepare_out(o);
  write_file(dir / "allocation.csv",
             emit_table(problem, result, "table4", CsvOptions{o.full_precision}));
  write_file(dir / "vno_totals.csv", totals_csv(problem, result, o.full_precision));
  write_file(dir / "kkt.txt", kkt_text(result, kkt, o.kkt_tol));
  out << fmt::format("total {:.6f} Mbps of {:g}; {}\n", result.total(), problem.r_crrm,
                     kkt.summary());
  if (!result.converged) {
    err << "error: NotConverged: " << result.diagnostic << "\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const auto which = parse_builtin(o.sweep);
  if (!which) throw Error(ErrorKind::InvalidScenario, fmt::format("unknown sweep '{}'", o.sweep));
  const Scenario base = o.scenario.empty() ? baseline_scenario() : load_scenario(o.scenario);
  const SweepResult result = run_sweep(builtin_sweep(*which, base), config_of(o));
  const fs::path dir = prepare_out(o);
  for (const std::string& f : write_sweep(dir, *which, result, o)) out << (dir / f).string() << "\n";
  bool ok = true;
  for (const SweepOutcome& p : result.points) {
    if (!p.note.empty()) err << p.label << ": " << p.note << "\n";
    if (p.feasible() && !p.converged()) ok = false;
  }
  return ok ? kExitOk : kExitNotConverged;
}

int cmd_reproduce(const Options& o, std::ostream& out) {
  const ReproductionRun run = run_reproduction(baseline_scenario(), config_of(o));
  const fs::path dir = prepare_out(o);
  write_sweep(dir, BuiltinSweep::Table4, run.table4, o);
  write_sweep(dir, BuiltinSweep::Fig15, run.fig15, o);
  write_sweep(dir, BuiltinSweep::Tables5to7, run.capacity, o);
  write_sweep(dir, BuiltinSweep::Tables8to10, run.users, o);
  const ReproductionReport report = reproduction_report(run);
  write_file(dir / "reproduction.txt", report.to_text());
  out << fmt::format("reproduction {} -> {}\n", report.pass() ? "PASS" : "FAIL",
                     (dir / "reproduction.txt").string());
  return report.all_converged ? kExitOk : kExitNotConverged;
}

int exit_code(ErrorKind kind) {
  return kind == ErrorKind::NumericalBreakdown ? kExitNotConverged : kExitInvalid;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Capacity sharing among virtual network operators", "caas"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--kkt-tol", o.kkt_tol, "KKT residual tolerance")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_flag("--full-precision", o.full_precision, "Round-trip precision in CSV output");
  };
  auto svg = [&](CLI::App* sub) {
    sub->add_flag("--emit-svg,!--no-emit-svg", o.emit_svg, "Write SVG charts (default on)");
  };

  CLI::App* validate = app.add_subcommand("validate", "Check a scenario and print its feasibility");
  validate->add_option("scenario", o.scenario, "Scenario file")->required();

  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one scenario");
  solve_cmd->add_option("scenario", o.scenario, "Scenario file")->required();
  common(solve_cmd);

  CLI::App* sweep = app.add_subcommand("sweep", "Run a built-in sweep");
  sweep->add_option("name", o.sweep, "table4 | fig15 | tables5-7 | tables8-10")->required();
  sweep->add_option("--scenario", o.scenario, "Base scenario (default: built-in baseline)");
  common(sweep);
  svg(sweep);

  CLI::App* reproduce = app.add_subcommand("reproduce", "Run every built-in sweep and compare");
  common(reproduce);
  svg(reproduce);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*solve_cmd) return cmd_solve(o, out, err);
    if (*sweep) return cmd_sweep(o, out, err);
    if (*reproduce) return cmd_reproduce(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace caas
