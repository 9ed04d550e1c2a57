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

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace qvi::cli {

enum class PlotKind {
  kErrorVsIterLogLog,  // log-log axes, one polyline per series
  kRatioVsIter,        // linear axes, one polyline per series
  kSignalStem,         // one stem panel per series, stacked
};

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Standalone SVG document. Points that cannot be shown on a log axis
// (nonpositive or non-finite) are skipped. Throws InputError when there is no
// series or every series is empty.
std::string RenderSvgPlot(std::span<const PlotSeries> series, PlotKind kind,
                          const std::string& title);

void EmitSvgPlot(std::span<const PlotSeries> series, PlotKind kind,
                 const std::filesystem::path& path,
                 const std::string& title = "");

}  // namespace qvi::cli
