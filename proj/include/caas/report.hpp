#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "caas/kkt.hpp"
#include "caas/solver.hpp"
#include "caas/sweeps.hpp"

namespace caas {

// ---- tables ---------------------------------------------------------------

struct CsvOptions {
  bool full_precision = false;  // %.17g instead of 4 significant digits
};

/// 4 significant digits, or round-trip precision.
std::string format_number(double value, bool full_precision);

struct TableCell {
  std::string text;             // labels; also the marker for missing values
  std::optional<double> value;  // numeric cells

  static TableCell label(std::string text) { return {std::move(text), std::nullopt}; }
  static TableCell number(double v) { return {{}, v}; }
  static TableCell missing() { return {"NA", std::nullopt}; }
};

struct TableDoc {
  std::string name;  // file stem, e.g. "table5"
  std::string title;
  std::vector<std::string> headers;
  std::vector<std::vector<TableCell>> rows;

  std::string to_csv(const CsvOptions& options = {}) const;
};

/// Built-in layouts: table4, fig15, tables5-7, tables8-10.
bool is_table_layout(std::string_view layout);

/// table4 layout for a single allocation: one row per service with users.
TableDoc allocation_table(const AllocationProblem& problem, const AllocationResult& result);

/// All tables of a layout for a sweep (three for the multi-table layouts).
/// Throws LayoutMismatch when the sweep does not fit the layout.
std::vector<TableDoc> sweep_tables(const SweepResult& sweep, std::string_view layout);

std::string emit_table(const AllocationProblem& problem, const AllocationResult& result,
                       std::string_view layout, const CsvOptions& options = {});

// ---- charts ---------------------------------------------------------------

enum class ChartKind { Line, GroupedBar };

struct ChartSeries {
  std::string name;
  std::vector<std::optional<double>> values;  // one per axis point; empty = infeasible
};

struct ChartDoc {
  std::string name;
  std::string title;
  std::string x_label;
  std::string y_label;
  ChartKind kind = ChartKind::Line;
  bool log_y = false;
  std::vector<double> x;
  std::vector<std::string> x_ticks;
  std::vector<ChartSeries> series;
  int width = 640;
  int height = 400;
};

/// fig15: capacity share per VNO vs weight. fig16..fig18: per-user rate per
/// service of VNO 1..3 vs capacity factor. fig19..fig21: same vs load.
bool is_chart_kind(std::string_view kind);
ChartDoc build_chart(const SweepResult& sweep, std::string_view kind);
std::string render_svg(const ChartDoc& chart);
/// Throws EmptySweep on a sweep without points, LayoutMismatch on a wrong axis.
std::string emit_chart(const SweepResult& sweep, std::string_view kind);

/// Table layout and chart kinds that belong to a built-in sweep.
std::string_view table_layout_for(BuiltinSweep sweep);
std::vector<std::string> charts_for(BuiltinSweep sweep);

// ---- reproduction ---------------------------------------------------------

struct ReproductionRun {
  SweepResult table4;
  SweepResult fig15;
  SweepResult capacity;
  SweepResult users;
};

ReproductionRun run_reproduction(const Scenario& base, const SolverConfig& config = {});

struct Comparison {
  std::string section;    // "table 5", "fig 15", ...
  std::string item;       // "GB IoT x0.5"
  double computed = 0.0;
  std::optional<double> reference;
  std::string tolerance;  // human-readable
  bool flagged = false;   // excluded from the verdict
  bool pass = false;
};

struct ReproductionReport {
  std::vector<Comparison> comparisons;
  std::vector<std::string> flagged_cells;
  int n_max_total = 0;
  double max_kkt_residual = 0.0;
  bool all_converged = true;

  bool pass() const;
  std::string to_text() const;
};

ReproductionReport reproduction_report(const ReproductionRun& run);

}  // namespace caas
