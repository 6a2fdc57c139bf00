// Copyright 2026 The landmark-frames Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lmf/error.hpp"
#include "lmf/experiment.hpp"

namespace lmf {
namespace {

std::string cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string("NA");
}

std::string csv_quote(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// "Nice" axis range covering [lo, hi] with about five ticks.
struct Axis {
  double lo = 0.0, hi = 1.0, step = 0.2;
};

Axis nice_axis(double lo, double hi) {
  if (!(hi > lo)) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (raw <= step) break;
  }
  return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

constexpr double kWidth = 720, kHeight = 420;
constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 70;

struct Frame {
  Axis x, y;
  double px(double v) const { return kLeft + (v - x.lo) / (x.hi - x.lo) * (kWidth - kLeft - kRight); }
  double py(double v) const { return kHeight - kBottom - (v - y.lo) / (y.hi - y.lo) * (kHeight - kTop - kBottom); }
};

std::string header(const std::string& title) {
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth, 0) + "\" height=\"" +
                  num(kHeight, 0) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(kWidth / 2, 0) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
       xml_escape(title) + "</text>\n";
  return s;
}

std::string y_axis(const Frame& f, const std::string& label, bool x_ticks) {
  std::string s;
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom;
  s += "<line x1=\"" + num(x0) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x0) + "\" y2=\"" + num(y0) +
       "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x1) + "\" y2=\"" + num(y0) +
       "\" stroke=\"black\"/>\n";
  for (double v = f.y.lo; v <= f.y.hi + f.y.step * 1e-6; v += f.y.step) {
    const double y = f.py(v);
    s += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y) + "\" x2=\"" + num(x1) + "\" y2=\"" + num(y) +
         "\" stroke=\"#dddddd\"/>\n";
    s += "<text x=\"" + num(x0 - 6) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" + num(v, 2) + "</text>\n";
  }
  if (x_ticks) {
    for (double v = f.x.lo; v <= f.x.hi + f.x.step * 1e-6; v += f.x.step) {
      const double x = f.px(v);
      s += "<text x=\"" + num(x) + "\" y=\"" + num(y0 + 18) + "\" text-anchor=\"middle\">" + num(v, 2) +
           "</text>\n";
    }
  }
  s += "<text transform=\"translate(18," + num((kTop + y0) / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
       xml_escape(label) + "</text>\n";
  return s;
}

std::string bar_chart(const ExperimentReport& report) {
  std::vector<std::pair<std::string, double>> bars;
  for (const auto& r : report.rows)
    if (r.delta_per) bars.emplace_back(r.strategy, *r.delta_per);
  double lo = 0.0, hi = 0.0;
  for (const auto& b : bars) {
    lo = std::min(lo, b.second);
    hi = std::max(hi, b.second);
  }
  Frame f;
  f.y = nice_axis(lo, hi);
  std::string s = header("PER increment by strategy (" + report.model_tag + ")");
  s += y_axis(f, "PER increment (%)", false);
  const double span = kWidth - kLeft - kRight;
  const double slot = bars.empty() ? span : span / static_cast<double>(bars.size());
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double x = kLeft + slot * static_cast<double>(i) + slot * 0.15;
    const double y_zero = f.py(0.0), y_val = f.py(bars[i].second);
    s += "<rect x=\"" + num(x) + "\" y=\"" + num(std::min(y_zero, y_val)) + "\" width=\"" + num(slot * 0.7) +
         "\" height=\"" + num(std::abs(y_zero - y_val)) + "\" fill=\"#4477aa\"/>\n";
    s += "<text x=\"" + num(x + slot * 0.35) + "\" y=\"" + num(kHeight - kBottom + 16) +
         "\" text-anchor=\"middle\">" + xml_escape(bars[i].first) + "</text>\n";
  }
  return s + "</svg>\n";
}

std::string line_chart(const ExperimentReport& report) {
  struct Series {
    std::string name, colour;
    std::vector<std::pair<double, double>> points;
  };
  Series per{"PER (%)", "#4477aa", {}}, inc{"PER increment (%)", "#cc6677", {}};
  for (const auto& r : report.rows) {
    if (!r.x) continue;
    if (r.per) per.points.emplace_back(*r.x, *r.per);
    if (r.delta_per) inc.points.emplace_back(*r.x, *r.delta_per);
  }
  double xlo = INFINITY, xhi = -INFINITY, ylo = 0.0, yhi = 0.0;
  for (const auto* s : {&per, &inc})
    for (const auto& [x, y] : s->points) {
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  if (!std::isfinite(xlo)) xlo = 0.0, xhi = 1.0;
  Frame f;
  f.x = nice_axis(xlo, xhi);
  f.y = nice_axis(ylo, yhi);
  const std::string param = report.parameter ? std::string(to_string(*report.parameter)) : "value";
  std::string s = header("PER against " + param + " (" + report.model_tag + ")");
  s += y_axis(f, "percent", true);
  s += "<text x=\"" + num((kLeft + kWidth - kRight) / 2) + "\" y=\"" + num(kHeight - 24) +
       "\" text-anchor=\"middle\">" + xml_escape(param) + "</text>\n";
  double legend_y = kTop + 10;
  for (const auto* series : {&per, &inc}) {
    std::string pts;
    for (const auto& [x, y] : series->points) {
      if (!pts.empty()) pts += ' ';
      pts += num(f.px(x)) + "," + num(f.py(y));
    }
    s += "<polyline fill=\"none\" stroke=\"" + series->colour + "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
    for (const auto& [x, y] : series->points)
      s += "<circle cx=\"" + num(f.px(x)) + "\" cy=\"" + num(f.py(y)) + "\" r=\"3\" fill=\"" + series->colour +
           "\"/>\n";
    const double lx = kWidth - kRight + 15;
    s += "<line x1=\"" + num(lx) + "\" y1=\"" + num(legend_y) + "\" x2=\"" + num(lx + 20) + "\" y2=\"" +
         num(legend_y) + "\" stroke=\"" + series->colour + "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + num(lx + 26) + "\" y=\"" + num(legend_y + 4) + "\">" + xml_escape(series->name) +
         "</text>\n";
    legend_y += 20;
  }
  return s + "</svg>\n";
}

}  // namespace

std::string write_results_csv(const ExperimentReport& report) {
  std::string out = "# seed=" + std::to_string(report.seed) + " model_tag=" + report.model_tag;
  if (report.baseline_per) out += " baseline_per=" + format_double(*report.baseline_per);
  out += "\n";
  out += "strategy,drop_rate,per,delta_per,mean,stdev,p_wilcoxon,p_t\n";
  for (const auto& r : report.rows) {
    out += csv_quote(r.strategy) + "," + cell(r.drop_rate) + "," + cell(r.per) + "," + cell(r.delta_per) + "," +
           cell(r.mean) + "," + cell(r.stdev) + "," + cell(r.p_wilcoxon) + "," + cell(r.p_t) + "\n";
  }
  return out;
}

std::string write_errors_csv(const ExperimentReport& report) {
  std::string out = "strategy,error\n";
  for (const auto& e : report.errors) out += csv_quote(e.strategy) + "," + csv_quote(e.error) + "\n";
  return out;
}

std::string render_svg(const ExperimentReport& report) {
  return report.kind == "sweep" ? line_chart(report) : bar_chart(report);
}

std::vector<std::filesystem::path> emit_report(const ExperimentReport& report, ReportFormats formats,
                                               const std::filesystem::path& dir) {
  if (report.rows.empty()) fail(ErrorCode::kEmptyInput, "no report rows to emit");
  std::vector<std::filesystem::path> written;
  auto put = [&](const char* name, const std::string& data) {
    write_file_atomic(dir / name, data);
    written.push_back(dir / name);
  };
  put("results.csv", write_results_csv(report));
  put("errors.csv", write_errors_csv(report));
  put("stats.csv", write_stats_csv(report.tests));
  if (formats.svg) put("results.svg", render_svg(report));
  return written;
}

}  // namespace lmf
