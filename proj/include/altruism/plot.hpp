// Copyright 2026 The Altruism Learning Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ALTRUISM_PLOT_HPP_
#define ALTRUISM_PLOT_HPP_

// SVG figures rendered from a run directory. Output depends only on the
// files read, so identical traces give byte-identical SVGs.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "altruism/errors.hpp"
#include "altruism/trace.hpp"

namespace altruism {
namespace plot_internal {

inline std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

inline const char* SeriesColor(int k) {
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                  "#ff7f0e", "#9467bd", "#8c564b"};
  return kColors[k % 6];
}

// Axes box with a linear data-to-pixel map.
class Figure {
 public:
  Figure(std::string title, std::string x_label, std::string y_label,
         double x_lo, double x_hi, double y_lo, double y_hi)
      : x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi) {
    if (x_hi_ <= x_lo_) x_hi_ = x_lo_ + 1.0;
    if (y_hi_ <= y_lo_) y_hi_ = y_lo_ + 1.0;
    body_ << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
          << kPlotW << "\" height=\"" << kPlotH
          << "\" fill=\"white\" stroke=\"black\"/>\n";
    Text(kWidth / 2.0, 20, title, "middle", 14);
    Text(kLeft + kPlotW / 2.0, kHeight - 8, x_label, "middle", 12);
    body_ << "<text x=\"14\" y=\"" << Num(kTop + kPlotH / 2.0)
          << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 "
             "14 "
          << Num(kTop + kPlotH / 2.0) << ")\">" << y_label << "</text>\n";
    Ticks();
  }

  double X(double v) const {
    return kLeft + (v - x_lo_) / (x_hi_ - x_lo_) * kPlotW;
  }
  double Y(double v) const {
    return kTop + kPlotH - (v - y_lo_) / (y_hi_ - y_lo_) * kPlotH;
  }

  void Line(double x0, double y0, double x1, double y1, const char* color,
            bool dashed = false) {
    body_ << "<line x1=\"" << Num(X(x0)) << "\" y1=\"" << Num(Y(y0))
          << "\" x2=\"" << Num(X(x1)) << "\" y2=\"" << Num(Y(y1))
          << "\" stroke=\"" << color << "\""
          << (dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
  }

  void Polyline(const std::vector<std::pair<double, double>>& pts,
                const char* color) {
    body_ << "<polyline fill=\"none\" stroke-width=\"2\" stroke=\"" << color
          << "\" points=\"";
    for (std::size_t k = 0; k < pts.size(); ++k) {
      body_ << (k ? " " : "") << Num(X(pts[k].first)) << ','
            << Num(Y(pts[k].second));
    }
    body_ << "\"/>\n";
  }

  void Marker(double x, double y, const char* color) {
    body_ << "<circle cx=\"" << Num(X(x)) << "\" cy=\"" << Num(Y(y))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
  }

  // Rectangle between data corners (x0,y0) and (x1,y1).
  void Rect(double x0, double y0, double x1, double y1, const char* color,
            double opacity = 1.0) {
    const double px = std::min(X(x0), X(x1)), py = std::min(Y(y0), Y(y1));
    const double w = std::fabs(X(x1) - X(x0)), h = std::fabs(Y(y1) - Y(y0));
    body_ << "<rect x=\"" << Num(px) << "\" y=\"" << Num(py) << "\" width=\""
          << Num(w) << "\" height=\"" << Num(h) << "\" fill=\"" << color
          << "\"";
    if (opacity < 1.0) body_ << " fill-opacity=\"" << Num(opacity) << "\"";
    body_ << "/>\n";
  }

  void Legend(int slot, const std::string& label, const char* color) {
    const double x = kLeft + kPlotW + 12;
    const double y = kTop + 10 + 18 * slot;
    body_ << "<rect x=\"" << Num(x) << "\" y=\"" << Num(y - 9)
          << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
    Text(x + 14, y, label, "start", 11);
  }

  std::string Svg() const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
        << kHeight << "\" font-family=\"sans-serif\">\n"
        << body_.str() << "</svg>\n";
    return out.str();
  }

 private:
  static constexpr int kWidth = 720;
  static constexpr int kHeight = 420;
  static constexpr int kLeft = 60;
  static constexpr int kTop = 34;
  static constexpr int kPlotW = 540;
  static constexpr int kPlotH = 330;

  void Text(double x, double y, const std::string& s, const char* anchor,
            int size) {
    body_ << "<text x=\"" << Num(x) << "\" y=\"" << Num(y) << "\" font-size=\""
          << size << "\" text-anchor=\"" << anchor << "\">" << s
          << "</text>\n";
  }

  void Ticks() {
    for (int k = 0; k <= 4; ++k) {
      const double xv = x_lo_ + (x_hi_ - x_lo_) * k / 4.0;
      const double yv = y_lo_ + (y_hi_ - y_lo_) * k / 4.0;
      Text(X(xv), kTop + kPlotH + 16, Num(xv), "middle", 10);
      Text(kLeft - 6, Y(yv) + 4, Num(yv), "end", 10);
    }
  }

  double x_lo_, x_hi_, y_lo_, y_hi_;
  std::ostringstream body_;
};

struct RunData {
  std::vector<TraceRow> trace;
  std::vector<nlohmann::json> steps;
  double x_left = FeatureParams().x_left;
  double x_right = FeatureParams().x_right;
};

inline RunData LoadRun(const std::filesystem::path& dir) {
  RunData run;
  std::ifstream trace(dir / "trace.csv");
  if (!trace) throw InputError("no trace.csv in " + dir.string());
  run.trace = ReadTraceCsv(trace);
  if (run.trace.empty()) throw InputError("trace.csv in " + dir.string() +
                                          " has no rows");
  std::ifstream beliefs(dir / "belief.jsonl");
  if (!beliefs) throw InputError("no belief.jsonl in " + dir.string());
  std::string line;
  while (std::getline(beliefs, line)) {
    if (!line.empty()) run.steps.push_back(nlohmann::json::parse(line));
  }
  if (run.steps.empty()) {
    throw InputError("belief.jsonl in " + dir.string() + " has no records");
  }
  std::ifstream summary(dir / "summary.json");
  if (summary) {
    const auto j = nlohmann::json::parse(summary);
    if (j.contains("lanes")) {
      run.x_left = j["lanes"].value("x_left", run.x_left);
      run.x_right = j["lanes"].value("x_right", run.x_right);
    }
  }
  return run;
}

inline std::vector<std::pair<double, double>> Path(const RunData& run,
                                                   const std::string& vehicle) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : run.trace) {
    if (r.vehicle == vehicle) pts.emplace_back(r.state.y, r.state.x);
  }
  return pts;
}

inline std::string TrajectoryPlot(const RunData& run) {
  const double half = 0.5 * (run.x_right - run.x_left);
  double y_lo = run.trace.front().state.y, y_hi = y_lo;
  for (const auto& r : run.trace) {
    y_lo = std::min(y_lo, r.state.y);
    y_hi = std::max(y_hi, r.state.y);
  }
  Figure fig("Trajectories", "longitudinal position y (m)",
             "lateral position x (m)", std::floor(y_lo), std::ceil(y_hi),
             run.x_left - half, run.x_right + half);
  fig.Line(std::floor(y_lo), run.x_left - half, std::ceil(y_hi),
           run.x_left - half, "black");
  fig.Line(std::floor(y_lo), run.x_right + half, std::ceil(y_hi),
           run.x_right + half, "black");
  fig.Line(std::floor(y_lo), 0.5 * (run.x_left + run.x_right), std::ceil(y_hi),
           0.5 * (run.x_left + run.x_right), "gray", true);
  const char* names[] = {"leader", "follower"};
  for (int k = 0; k < 2; ++k) {
    const auto pts = Path(run, names[k]);
    if (pts.empty()) continue;
    fig.Polyline(pts, SeriesColor(k));
    fig.Marker(pts.front().first, pts.front().second, SeriesColor(k));
    fig.Legend(k, names[k], SeriesColor(k));
  }
  return fig.Svg();
}

inline std::string RelativePositionPlot(const RunData& run) {
  std::vector<std::pair<double, double>> pts;
  const auto leader = Path(run, "leader");
  const auto follower = Path(run, "follower");
  const std::size_t n = std::min(leader.size(), follower.size());
  double lo = 0.0, hi = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double d = leader[t].first - follower[t].first;
    pts.emplace_back(static_cast<double>(t), d);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  Figure fig("Leader position relative to follower", "step",
             "y_leader - y_follower (m)", 0.0,
             std::max<double>(1.0, static_cast<double>(n) - 1.0),
             std::floor(lo), std::ceil(hi));
  fig.Line(0.0, 0.0, std::max<double>(1.0, static_cast<double>(n) - 1.0), 0.0,
           "gray", true);
  fig.Polyline(pts, SeriesColor(0));
  return fig.Svg();
}

// Posterior density per step as a heat map over alpha.
inline std::string BeliefPlot(const RunData& run) {
  const double steps = static_cast<double>(run.steps.size());
  Figure fig("Belief over alpha", "step", "alpha", 0.0, steps, 0.0, 1.0);
  for (std::size_t t = 0; t < run.steps.size(); ++t) {
    const auto& post = run.steps[t].at("posterior");
    const auto points = post.at("points").get<std::vector<double>>();
    const auto masses = post.at("masses").get<std::vector<double>>();
    const double x0 = static_cast<double>(t), x1 = x0 + 1.0;
    if (!post.at("atom").is_null()) {
      const double a = post["atom"].get<double>();
      fig.Line(x0, a, x1, a, SeriesColor(0));
      continue;
    }
    double peak = 0.0;
    for (std::size_t k = 0; k < masses.size(); ++k) {
      peak = std::max(peak, masses[k] / (points[k + 1] - points[k]));
    }
    for (std::size_t k = 0; k < masses.size(); ++k) {
      const double density = masses[k] / (points[k + 1] - points[k]);
      if (density <= 0.0) continue;
      fig.Rect(x0, points[k], x1, points[k + 1], SeriesColor(0),
               density / peak);
    }
  }
  return fig.Svg();
}

// Expected reward and exploration bonus for each action, stacked, per step.
inline std::string BonusBarsPlot(const RunData& run) {
  double lo = 0.0, hi = 0.0;
  std::vector<std::string> labels;
  for (const auto& step : run.steps) {
    for (const auto& e : step.at("evaluations")) {
      lo = std::min({lo, e.at("expected_reward").get<double>(),
                     e.at("total").get<double>()});
      hi = std::max({hi, e.at("expected_reward").get<double>(),
                     e.at("total").get<double>()});
      const auto label = e.at("label").get<std::string>();
      if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
        labels.push_back(label);
      }
    }
  }
  const double steps = static_cast<double>(run.steps.size());
  Figure fig("Expected reward (solid) and bonus (light) per action", "step",
             "value", 0.0, steps, std::floor(lo), std::ceil(hi));
  fig.Line(0.0, 0.0, steps, 0.0, "gray");
  for (std::size_t t = 0; t < run.steps.size(); ++t) {
    const auto& evals = run.steps[t].at("evaluations");
    const double width = 0.8 / static_cast<double>(std::max<std::size_t>(
                                   1, evals.size()));
    for (std::size_t a = 0; a < evals.size(); ++a) {
      const double x0 = static_cast<double>(t) + 0.1 + width * a;
      const double reward = evals[a].at("expected_reward").get<double>();
      const double total = evals[a].at("total").get<double>();
      const char* color = SeriesColor(static_cast<int>(a));
      fig.Rect(x0, 0.0, x0 + width, reward, color);
      if (total != reward) fig.Rect(x0, reward, x0 + width, total, color, 0.35);
    }
  }
  for (std::size_t a = 0; a < labels.size(); ++a) {
    fig.Legend(static_cast<int>(a), labels[a], SeriesColor(static_cast<int>(a)));
  }
  return fig.Svg();
}

}  // namespace plot_internal

inline constexpr const char* kPlotFiles[] = {
    "trajectory.svg", "relative_position.svg", "belief.svg", "bonus_bars.svg"};

// Writes the four figures into `dir` and returns their paths.
inline std::vector<std::filesystem::path> PlotRun(
    const std::filesystem::path& dir) {
  using namespace plot_internal;
  const RunData run = LoadRun(dir);
  const std::string svgs[] = {TrajectoryPlot(run), RelativePositionPlot(run),
                              BeliefPlot(run), BonusBarsPlot(run)};
  std::vector<std::filesystem::path> written;
  for (int k = 0; k < 4; ++k) {
    const auto path = dir / kPlotFiles[k];
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << svgs[k];
    written.push_back(path);
  }
  return written;
}

}  // namespace altruism

#endif  // ALTRUISM_PLOT_HPP_
