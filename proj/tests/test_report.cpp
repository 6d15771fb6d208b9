#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "caas/golden.hpp"
#include "caas/report.hpp"
#include "support.hpp"

using namespace caas;
using caas::testing::error_kind;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string c; std::getline(in, c, ',');) out.push_back(c);
  return out;
}

const ReproductionRun& run() {
  static const ReproductionRun r = run_reproduction(baseline_scenario());
  return r;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.0139614, false) == "0.01396");
  CHECK(format_number(630.0, false) == "630");
  CHECK(format_number(1.0, false) == "1");
  const double x = 0.1 + 0.2;
  CHECK(std::strtod(format_number(x, true).c_str(), nullptr) == x);
}

TEST_CASE("table4 layout for the baseline") {
  const std::string csv = sweep_tables(run().table4, "table4").at(0).to_csv();
  const auto rows = lines(csv);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == "vno,sla,service,w_usr,r_srv_provided,r_vno_provided");
  CHECK(rows[1] == "GB,GB,voice,1,0.064,315.2");
  CHECK(rows[3].rfind("GB,GB,eMBB,0.01396,8.796,", 0) == 0);
  CHECK(rows[8].rfind("BE,BE,IoT,0.7037,0.7037,", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("full precision CSV round-trips") {
  const std::string csv = sweep_tables(run().table4, "table4").at(0).to_csv({true});
  const auto rows = lines(csv);
  const AllocationResult& r = *run().table4.points[0].result;
  for (std::size_t s = 0; s < r.aggregates.size(); ++s) {
    const auto cells = split(rows[s + 1]);
    CHECK(std::strtod(cells[3].c_str(), nullptr) == r.user_weights[s]);
    CHECK(std::strtod(cells[4].c_str(), nullptr) == r.user_rates[s]);
  }
}

TEST_CASE("capacity layout: three tables, services by factors") {
  const auto tables = sweep_tables(run().capacity, "tables5-7");
  REQUIRE(tables.size() == 3);
  CHECK(tables[0].name == "table5");
  CHECK(tables[2].name == "table7");
  const auto rows = lines(tables[0].to_csv());
  REQUIRE(rows.size() == 4);
  CHECK(split(rows[0]).size() == 6);
  CHECK(rows[2].rfind("IoT,0.7857,1,1,1,1", 0) == 0);
  const auto be = lines(tables[2].to_csv());
  CHECK(be[2] == "IoT,0.07857,0.4993,0.7037,0.908,1");
}

TEST_CASE("layout mismatches and empty sweeps") {
  CHECK(error_kind([] { sweep_tables(run().capacity, "tables8-10"); }) == ErrorKind::LayoutMismatch);
  CHECK(error_kind([] { sweep_tables(run().capacity, "table4"); }) == ErrorKind::LayoutMismatch);
  CHECK(error_kind([] { sweep_tables(run().users, "nope"); }) == ErrorKind::LayoutMismatch);
  const AllocationResult& r = *run().table4.points[0].result;
  CHECK(error_kind([&] { emit_table(*run().table4.points[0].problem, r, "fig15"); }) ==
        ErrorKind::LayoutMismatch);

  SweepResult empty = run().capacity;
  empty.points.clear();
  for (const TableDoc& t : sweep_tables(empty, "tables5-7")) CHECK(lines(t.to_csv()).size() == 1);
  CHECK(error_kind([&] { emit_chart(empty, "fig16"); }) == ErrorKind::EmptySweep);
  CHECK(error_kind([] { emit_chart(run().users, "fig16"); }) == ErrorKind::LayoutMismatch);
}

TEST_CASE("row and header counts must agree") {
  TableDoc t;
  t.name = "bad";
  t.headers = {"a", "b"};
  t.rows = {{TableCell::label("x")}};
  CHECK(error_kind([&] { t.to_csv(); }) == ErrorKind::LayoutMismatch);
}

TEST_CASE("weight chart: three line series over the weight axis") {
  const ChartDoc c = build_chart(run().fig15, "fig15");
  CHECK(c.kind == ChartKind::Line);
  REQUIRE(c.series.size() == 3);
  CHECK(c.x.front() == 1.0);
  CHECK(c.x.back() == 10.0);
  for (const ChartSeries& s : c.series) CHECK(s.values.size() == 10);
  CHECK(c.y_label.find('%') != std::string::npos);
  const std::string svg = render_svg(c);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
  CHECK(svg.find("href") == std::string::npos);
  CHECK(svg.find("</svg>\n") == svg.size() - 7);
}

TEST_CASE("rate chart for the best-effort tenant falls with load") {
  const ChartDoc c = build_chart(run().users, "fig21");
  CHECK(c.y_label.find("Mbps") != std::string::npos);
  for (const ChartSeries& s : c.series)
    for (std::size_t i = 1; i < s.values.size(); ++i) CHECK(*s.values[i] <= *s.values[i - 1] + 1e-12);
}

TEST_CASE("single-point chart draws one marker per series") {
  SweepResult one = run().fig15;
  one.points.resize(1);
  const std::string svg = emit_chart(one, "fig15");
  std::size_t circles = 0;
  for (std::size_t at = svg.find("<circle"); at != std::string::npos; at = svg.find("<circle", at + 1))
    ++circles;
  CHECK(circles == 3);
}

TEST_CASE("charts are byte-deterministic") {
  for (const char* k : {"fig19", "fig20", "fig21"}) CHECK(emit_chart(run().users, k) == emit_chart(run().users, k));
  CHECK(emit_chart(run().fig15, "fig15") == emit_chart(run_sweep(builtin_sweep(BuiltinSweep::Fig15, baseline_scenario())), "fig15"));
}

TEST_CASE("golden constants") {
  int flagged = 0;
  bool saw_iot = false;
  for (const GoldenCell& g : golden_cells()) {
    flagged += g.flagged;
    if (g.table == 5 && g.service == "IoT" && g.axis == 0.5) {
      CHECK(g.value == 0.7857);
      saw_iot = true;
    }
  }
  CHECK(saw_iot);
  CHECK(flagged == 2);
}

TEST_CASE("reproduction report lists comparisons and the flagged cells") {
  const ReproductionReport rep = reproduction_report(run());
  CHECK(rep.flagged_cells.size() == 2);
  CHECK(rep.all_converged);
  CHECK(rep.max_kkt_residual <= 1e-8);
  CHECK(rep.n_max_total == 645);
  int t4_weights = 0;
  for (const Comparison& c : rep.comparisons) {
    if (c.section == "table 4" && c.item.size() > 2 && c.item.substr(c.item.size() - 2) == " w") {
      ++t4_weights;
      CHECK(c.pass);
    }
    if (c.section == "table 5" && c.item == "GB IoT x0.5") CHECK(c.pass);
  }
  CHECK(t4_weights == 9);
  const std::string text = rep.to_text();
  CHECK(text.find("[flagged reference cells]") != std::string::npos);
  CHECK(text.find(rep.pass() ? "RESULT: PASS" : "RESULT: FAIL") != std::string::npos);
}

TEST_CASE("report verdict follows the comparisons") {
  ReproductionReport rep;
  rep.comparisons.push_back({"s", "a", 1.0, 1.0, "abs 0", false, true});
  CHECK(rep.pass());
  rep.comparisons.push_back({"s", "b", 2.0, 1.0, "abs 0", true, false});
  CHECK(rep.pass());
  rep.comparisons.push_back({"s", "c", 2.0, 1.0, "abs 0", false, false});
  CHECK_FALSE(rep.pass());
}
