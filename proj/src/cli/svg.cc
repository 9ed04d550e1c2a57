// Copyright 2026 The qvi Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qvi/cli/svg.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qvi/linalg.h"

namespace qvi::cli {
namespace {

constexpr double kWidth = 640.0;
constexpr double kPanelHeight = 360.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 36.0;
constexpr double kMarginBottom = 44.0;
constexpr std::array<const char*, 6> kColors = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void Add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool Empty() const { return !(lo <= hi); }
  void Pad() {
    if (hi == lo) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

std::string Escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
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

std::string Num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Maps data coordinates into one panel.
struct Panel {
  double top;
  double height;
  Range x;
  Range y;
  bool log_x;
  bool log_y;

  double Px(double v) const {
    const double t = (v - x.lo) / (x.hi - x.lo);
    return kMarginLeft + t * (kWidth - kMarginLeft - kMarginRight);
  }
  double Py(double v) const {
    const double t = (v - y.lo) / (y.hi - y.lo);
    return top + height - kMarginBottom - t * (height - kMarginTop - kMarginBottom);
  }
};

bool Usable(double v, bool log) {
  return std::isfinite(v) && (!log || v > 0.0);
}

double Axis(double v, bool log) { return log ? std::log10(v) : v; }

void DrawAxes(std::ostringstream& svg, const Panel& p, const std::string& title) {
  const double x0 = kMarginLeft;
  const double x1 = kWidth - kMarginRight;
  const double y0 = p.top + p.height - kMarginBottom;
  const double y1 = p.top + kMarginTop;
  svg << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << (x1 - x0)
      << "\" height=\"" << (y0 - y1)
      << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  if (!title.empty()) {
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << p.top + 22
        << "\" text-anchor=\"middle\" font-size=\"14\">" << Escape(title)
        << "</text>\n";
  }
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = p.x.lo + (p.x.hi - p.x.lo) * i / kTicks;
    const double fy = p.y.lo + (p.y.hi - p.y.lo) * i / kTicks;
    const double px = p.Px(fx);
    const double py = p.Py(fy);
    svg << "<line x1=\"" << px << "\" y1=\"" << y0 << "\" x2=\"" << px
        << "\" y2=\"" << y0 + 5 << "\" stroke=\"#444\"/>\n";
    svg << "<text x=\"" << px << "\" y=\"" << y0 + 18
        << "\" text-anchor=\"middle\" font-size=\"10\">"
        << (p.log_x ? "1e" + Num(fx) : Num(fx)) << "</text>\n";
    svg << "<line x1=\"" << x0 - 5 << "\" y1=\"" << py << "\" x2=\"" << x0
        << "\" y2=\"" << py << "\" stroke=\"#444\"/>\n";
    svg << "<text x=\"" << x0 - 8 << "\" y=\"" << py + 3
        << "\" text-anchor=\"end\" font-size=\"10\">"
        << (p.log_y ? "1e" + Num(fy) : Num(fy)) << "</text>\n";
  }
}

}  // namespace

std::string RenderSvgPlot(std::span<const PlotSeries> series, PlotKind kind,
                          const std::string& title) {
  const bool log_axes = kind == PlotKind::kErrorVsIterLogLog;
  bool any = false;
  for (const PlotSeries& s : series) {
    if (s.x.size() != s.y.size()) {
      throw InputError("plot series '" + s.label + "' has mismatched x/y");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      any = any || (Usable(s.x[i], log_axes) && Usable(s.y[i], log_axes));
    }
  }
  if (!any) throw InputError("plot: no plottable data");

  const bool stems = kind == PlotKind::kSignalStem;
  const std::size_t panels = stems ? series.size() : 1;
  const double height = kPanelHeight * static_cast<double>(panels);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << kWidth << ' '
      << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (stems) {
    for (std::size_t k = 0; k < series.size(); ++k) {
      const PlotSeries& s = series[k];
      Panel p{kPanelHeight * k, kPanelHeight, {}, {}, false, false};
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!Usable(s.x[i], false) || !Usable(s.y[i], false)) continue;
        p.x.Add(s.x[i]);
        p.y.Add(s.y[i]);
      }
      if (p.x.Empty()) continue;
      p.y.Add(0.0);
      p.x.Pad();
      p.y.Pad();
      DrawAxes(svg, p, k == 0 && !title.empty() ? title + ": " + s.label
                                                 : s.label);
      const char* color = kColors[k % kColors.size()];
      svg << "<g stroke=\"" << color << "\" fill=\"" << color << "\">\n";
      const double base = p.Py(0.0);
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!Usable(s.x[i], false) || !Usable(s.y[i], false)) continue;
        const double px = p.Px(s.x[i]);
        const double py = p.Py(s.y[i]);
        svg << "<line x1=\"" << px << "\" y1=\"" << base << "\" x2=\"" << px
            << "\" y2=\"" << py << "\"/><circle cx=\"" << px << "\" cy=\""
            << py << "\" r=\"2\"/>\n";
      }
      svg << "</g>\n";
    }
  } else {
    Panel p{0.0, kPanelHeight, {}, {}, log_axes, log_axes};
    for (const PlotSeries& s : series) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!Usable(s.x[i], log_axes) || !Usable(s.y[i], log_axes)) continue;
        p.x.Add(Axis(s.x[i], log_axes));
        p.y.Add(Axis(s.y[i], log_axes));
      }
    }
    p.x.Pad();
    p.y.Pad();
    DrawAxes(svg, p, title);
    for (std::size_t k = 0; k < series.size(); ++k) {
      const PlotSeries& s = series[k];
      const char* color = kColors[k % kColors.size()];
      svg << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!Usable(s.x[i], log_axes) || !Usable(s.y[i], log_axes)) continue;
        svg << p.Px(Axis(s.x[i], log_axes)) << ','
            << p.Py(Axis(s.y[i], log_axes)) << ' ';
      }
      svg << "\"/>\n";
      svg << "<text x=\"" << kWidth - kMarginRight - 6 << "\" y=\""
          << kMarginTop + 16 + 14 * k << "\" text-anchor=\"end\" font-size=\"11\" fill=\""
          << color << "\">" << Escape(s.label) << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

void EmitSvgPlot(std::span<const PlotSeries> series, PlotKind kind,
                 const std::filesystem::path& path, const std::string& title) {
  const std::string text = RenderSvgPlot(series, kind, title);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace qvi::cli
