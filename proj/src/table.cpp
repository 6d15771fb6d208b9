#include <fmt/format.h>

#include "caas/error.hpp"
#include "caas/report.hpp"

namespace caas {

std::string format_number(double value, bool full_precision) {
  return full_precision ? fmt::format("{:.17g}", value) : fmt::format("{:.4g}", value);
}

std::string TableDoc::to_csv(const CsvOptions& options) const {
  std::string out;
  for (std::size_t c = 0; c < headers.size(); ++c) {
    if (c) out += ',';
    out += headers[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != headers.size())
      throw Error(ErrorKind::LayoutMismatch,
                  fmt::format("table {} row has {} cells for {} columns", name, row.size(),
                              headers.size()));
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += row[c].value ? format_number(*row[c].value, options.full_precision) : row[c].text;
    }
    out += '\n';
  }
  return out;
}

bool is_table_layout(std::string_view layout) {
  return layout == "table4" || layout == "fig15" || layout == "tables5-7" ||
         layout == "tables8-10";
}

namespace {

const std::vector<std::string> kAllocationHeaders = {"vno",  "sla",           "service",
                                                     "w_usr", "r_srv_provided", "r_vno_provided"};

void require_axis(const SweepResult& sweep, SweepAxis axis, std::string_view layout) {
  if (sweep.axis != axis)
    throw Error(ErrorKind::LayoutMismatch,
                fmt::format("layout {} needs a {} sweep, got {}", layout, to_string(axis),
                            to_string(sweep.axis)));
}

// One table per VNO, services as rows, sweep points as columns.
std::vector<TableDoc> per_vno_tables(const SweepResult& sweep, std::string_view layout,
                                     int first_number, std::string_view axis_name) {
  if (sweep.vno_names.size() != 3)
    throw Error(ErrorKind::LayoutMismatch,
                fmt::format("layout {} needs 3 VNOs, got {}", layout, sweep.vno_names.size()));
  std::vector<TableDoc> out;
  for (std::size_t v = 0; v < sweep.vno_names.size(); ++v) {
    TableDoc t;
    t.name = fmt::format("table{}", first_number + static_cast<int>(v));
    t.title = fmt::format("VNO{} ({}) user weight vs {}", v + 1, sweep.vno_names[v], axis_name);
    t.headers.push_back("service");
    for (const SweepOutcome& p : sweep.points) t.headers.push_back(p.label);
    if (!sweep.points.empty()) {
      for (const std::string& svc : sweep.service_names[v]) {
        std::vector<TableCell> row{TableCell::label(svc)};
        for (const SweepOutcome& p : sweep.points) {
          const auto w = p.user_weight(sweep.vno_names[v], svc);
          row.push_back(w ? TableCell::number(*w) : TableCell::missing());
        }
        t.rows.push_back(std::move(row));
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

TableDoc allocation_table(const AllocationProblem& problem, const AllocationResult& result) {
  if (result.aggregates.size() != problem.size() ||
      result.vno_totals.size() != problem.vnos.size())
    throw Error(ErrorKind::LayoutMismatch, "result does not belong to this problem");
  TableDoc t;
  t.name = "table4";
  t.title = "Per-user weight and provided rates";
  t.headers = kAllocationHeaders;
  for (std::size_t s = 0; s < problem.size(); ++s) {
    const ProblemEntry& e = problem.entries[s];
    t.rows.push_back({TableCell::label(e.vno_name),
                      TableCell::label(std::string(to_string(problem.vnos[e.vno].sla))),
                      TableCell::label(e.service_name), TableCell::number(result.user_weights[s]),
                      TableCell::number(result.user_rates[s]),
                      TableCell::number(result.vno_totals[e.vno])});
  }
  return t;
}

std::vector<TableDoc> sweep_tables(const SweepResult& sweep, std::string_view layout) {
  if (layout == "table4") {
    if (sweep.points.size() > 1)
      throw Error(ErrorKind::LayoutMismatch,
                  fmt::format("layout table4 holds one point, sweep has {}", sweep.points.size()));
    if (sweep.points.empty() || !sweep.points[0].feasible()) {
      TableDoc t;
      t.name = "table4";
      t.title = "Per-user weight and provided rates";
      t.headers = kAllocationHeaders;
      return {t};
    }
    return {allocation_table(*sweep.points[0].problem, *sweep.points[0].result)};
  }
  if (layout == "fig15") {
    require_axis(sweep, SweepAxis::VnoWeight, layout);
    TableDoc t;
    t.name = "fig15";
    t.title = fmt::format("Capacity share per VNO vs weight of {}", sweep.vno);
    t.headers.push_back("gamma_" + sweep.vno);
    for (const std::string& v : sweep.vno_names) t.headers.push_back("share_pct_" + v);
    for (const SweepOutcome& p : sweep.points) {
      std::vector<TableCell> row{TableCell::number(p.axis_value)};
      for (std::size_t v = 0; v < sweep.vno_names.size(); ++v)
        row.push_back(p.feasible() ? TableCell::number(p.vno_share_pct[v]) : TableCell::missing());
      t.rows.push_back(std::move(row));
    }
    return {t};
  }
  if (layout == "tables5-7") {
    require_axis(sweep, SweepAxis::CrrmScale, layout);
    return per_vno_tables(sweep, layout, 5, "pool capacity factor");
  }
  if (layout == "tables8-10") {
    require_axis(sweep, SweepAxis::UserScale, layout);
    return per_vno_tables(sweep, layout, 8, "load");
  }
  throw Error(ErrorKind::LayoutMismatch, fmt::format("unknown table layout '{}'", layout));
}

std::string emit_table(const AllocationProblem& problem, const AllocationResult& result,
                       std::string_view layout, const CsvOptions& options) {
  if (layout != "table4")
    throw Error(ErrorKind::LayoutMismatch,
                fmt::format("a single allocation only fits layout table4, not '{}'", layout));
  return allocation_table(problem, result).to_csv(options);
}

std::string_view table_layout_for(BuiltinSweep sweep) { return to_string(sweep); }

std::vector<std::string> charts_for(BuiltinSweep sweep) {
  switch (sweep) {
    case BuiltinSweep::Table4: return {};
    case BuiltinSweep::Fig15: return {"fig15"};
    case BuiltinSweep::Tables5to7: return {"fig16", "fig17", "fig18"};
    case BuiltinSweep::Tables8to10: return {"fig19", "fig20", "fig21"};
  }
  return {};
}

}  // namespace caas
