#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "caas/error.hpp"
#include "caas/report.hpp"

namespace caas {

namespace {

constexpr std::array<std::string_view, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c",
                                                      "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Fixed-point coordinates keep the output byte-stable.
std::string px(double v) { return fmt::format("{:.2f}", v); }

double nice_ceiling(double v) {
  if (!(v > 0.0)) return 1.0;
  const double mag = std::pow(10.0, std::floor(std::log10(v)));
  for (double step : {1.0, 2.0, 2.5, 5.0, 10.0})
    if (step * mag >= v * (1.0 - 1e-12)) return step * mag;
  return 10.0 * mag;
}

struct YScale {
  bool log = false;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> ticks;
};

YScale make_scale(const ChartDoc& c) {
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -std::numeric_limits<double>::infinity();
  for (const ChartSeries& s : c.series)
    for (const auto& v : s.values)
      if (v && (!c.log_y || *v > 0.0)) {
        vmin = std::min(vmin, *v);
        vmax = std::max(vmax, *v);
      }
  YScale y;
  y.log = c.log_y;
  if (c.log_y) {
    if (!std::isfinite(vmin)) vmin = vmax = 1.0;
    y.lo = std::floor(std::log10(vmin));
    y.hi = std::ceil(std::log10(vmax));
    if (y.hi <= y.lo) y.hi = y.lo + 1.0;
    for (double e = y.lo; e <= y.hi + 0.5; e += 1.0) y.ticks.push_back(std::pow(10.0, e));
  } else {
    y.lo = 0.0;
    y.hi = std::isfinite(vmax) ? nice_ceiling(vmax) : 1.0;
    for (int i = 0; i <= 5; ++i) y.ticks.push_back(y.hi * i / 5.0);
  }
  return y;
}

std::size_t vno_index(const SweepResult& sweep, std::string_view kind, int offset) {
  const std::size_t v = static_cast<std::size_t>(offset);
  if (v >= sweep.vno_names.size())
    throw Error(ErrorKind::LayoutMismatch,
                fmt::format("chart {} needs at least {} VNOs", kind, v + 1));
  return v;
}

int figure_number(std::string_view kind) {
  if (kind.size() != 5 || kind.substr(0, 3) != "fig") return 0;
  const int n = (kind[3] - '0') * 10 + (kind[4] - '0');
  return n >= 15 && n <= 21 ? n : 0;
}

}  // namespace

bool is_chart_kind(std::string_view kind) { return figure_number(kind) != 0; }

ChartDoc build_chart(const SweepResult& sweep, std::string_view kind) {
  const int fig = figure_number(kind);
  if (fig == 0) throw Error(ErrorKind::LayoutMismatch, fmt::format("unknown chart '{}'", kind));
  const SweepAxis want = fig == 15 ? SweepAxis::VnoWeight
                         : fig <= 18 ? SweepAxis::CrrmScale
                                     : SweepAxis::UserScale;
  if (sweep.axis != want)
    throw Error(ErrorKind::LayoutMismatch,
                fmt::format("chart {} needs a {} sweep, got {}", kind, to_string(want),
                            to_string(sweep.axis)));
  if (sweep.points.empty()) throw Error(ErrorKind::EmptySweep, "sweep has no points to chart");

  ChartDoc c;
  c.name = std::string(kind);
  for (const SweepOutcome& p : sweep.points) {
    c.x.push_back(p.axis_value);
    c.x_ticks.push_back(fig == 15 ? fmt::format("{:g}", p.axis_value) : p.label);
  }

  if (fig == 15) {
    c.title = fmt::format("Capacity share per VNO vs weight of {}", sweep.vno);
    c.x_label = fmt::format("weight of {}", sweep.vno);
    c.y_label = "capacity share (%)";
    c.kind = ChartKind::Line;
    for (std::size_t v = 0; v < sweep.vno_names.size(); ++v) {
      ChartSeries s{sweep.vno_names[v], {}};
      for (const SweepOutcome& p : sweep.points)
        s.values.push_back(p.feasible() ? std::optional<double>(p.vno_share_pct[v]) : std::nullopt);
      c.series.push_back(std::move(s));
    }
    return c;
  }

  const std::size_t v = vno_index(sweep, kind, fig <= 18 ? fig - 16 : fig - 19);
  const std::string& vno = sweep.vno_names[v];
  c.title = fig <= 18 ? fmt::format("VNO{} ({}) per-user rate vs pool capacity", v + 1, vno)
                      : fmt::format("VNO{} ({}) per-user rate vs load", v + 1, vno);
  c.x_label = fig <= 18 ? "pool capacity factor" : "load (share of max users)";
  c.y_label = "per-user rate (Mbps)";
  c.kind = ChartKind::GroupedBar;
  c.log_y = true;
  for (const std::string& svc : sweep.service_names[v]) {
    ChartSeries s{svc, {}};
    for (const SweepOutcome& p : sweep.points) s.values.push_back(p.user_rate(vno, svc));
    c.series.push_back(std::move(s));
  }
  return c;
}

std::string render_svg(const ChartDoc& c) {
  const double left = 70.0, right = 120.0, top = 40.0, bottom = 55.0;
  const double w = c.width, h = c.height;
  const double pw = w - left - right, ph = h - top - bottom;
  const YScale ys = make_scale(c);
  const std::size_t n = c.x.size();

  auto ymap = [&](double v) {
    const double t = ys.log ? (std::log10(v) - ys.lo) / (ys.hi - ys.lo) : (v - ys.lo) / (ys.hi - ys.lo);
    return top + ph * (1.0 - t);
  };
  const double slot = n == 0 ? pw : pw / static_cast<double>(n);
  auto xmap = [&](std::size_t i) { return left + slot * (static_cast<double>(i) + 0.5); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\" font-family=\"sans-serif\" font-size=\"11\">\n",
      c.width, c.height, c.width, c.height);
  out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
                     c.width, c.height);
  out += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                     px(left + pw / 2), escape(c.title));

  // Grid and y ticks.
  for (double t : ys.ticks) {
    const double y = ymap(t);
    out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#dddddd\"/>\n",
                       px(left), px(y), px(left + pw), px(y));
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", px(left - 6),
                       px(y + 4), escape(fmt::format("{:g}", t)));
  }
  out += fmt::format(
      "<path d=\"M{} {} L{} {} L{} {}\" fill=\"none\" stroke=\"black\"/>\n", px(left), px(top),
      px(left), px(top + ph), px(left + pw), px(top + ph));
  for (std::size_t i = 0; i < n; ++i) {
    const double x = xmap(i);
    out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", px(x),
                       px(top + ph), px(x), px(top + ph + 4));
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", px(x),
                       px(top + ph + 17), escape(c.x_ticks[i]));
  }
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                     px(left + pw / 2), px(h - 14), escape(c.x_label));
  out += fmt::format(
      "<text x=\"16\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{}</text>\n",
      px(top + ph / 2), px(top + ph / 2), escape(c.y_label));

  const std::size_t ns = c.series.size();
  for (std::size_t k = 0; k < ns; ++k) {
    const ChartSeries& s = c.series[k];
    const std::string_view color = kPalette[k % kPalette.size()];
    auto usable = [&](std::size_t i) {
      return i < s.values.size() && s.values[i] && (!ys.log || *s.values[i] > 0.0);
    };
    if (c.kind == ChartKind::Line) {
      std::string d;
      bool pen = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (!usable(i)) {
          pen = false;
          continue;
        }
        d += fmt::format("{}{} {} ", pen ? "L" : "M", px(xmap(i)), px(ymap(*s.values[i])));
        pen = true;
      }
      if (!d.empty()) {
        d.pop_back();
        out += fmt::format("<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n", d,
                           color);
      }
      for (std::size_t i = 0; i < n; ++i)
        if (usable(i))
          out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\"/>\n", px(xmap(i)),
                             px(ymap(*s.values[i])), color);
    } else {
      const double group = 0.8 * slot;
      const double bar = ns == 0 ? group : group / static_cast<double>(ns);
      for (std::size_t i = 0; i < n; ++i) {
        if (!usable(i)) continue;
        const double x0 = xmap(i) - group / 2 + bar * static_cast<double>(k);
        const double y = ymap(*s.values[i]);
        out += fmt::format(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n", px(x0), px(y),
            px(bar), px(std::max(0.0, top + ph - y)), color);
      }
    }
    const double ly = top + 14.0 + 18.0 * static_cast<double>(k);
    out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"12\" height=\"12\" fill=\"{}\"/>\n",
                       px(left + pw + 14), px(ly - 10), color);
    out += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", px(left + pw + 32), px(ly),
                       escape(s.name));
  }
  out += "</svg>\n";
  return out;
}

std::string emit_chart(const SweepResult& sweep, std::string_view kind) {
  return render_svg(build_chart(sweep, kind));
}

}  // namespace caas
