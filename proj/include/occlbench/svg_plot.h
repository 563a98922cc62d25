/* Copyright 2026 The Occlbench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef OCCLBENCH_SVG_PLOT_H_
#define OCCLBENCH_SVG_PLOT_H_

#include <string>
#include <string_view>

#include "occlbench/confidence_analysis.h"

namespace occlbench {

// Marker colors: full blue, upper green, lower red, baseline black; any
// other tag is drawn in gray.
std::string_view TagColor(std::string_view tag);

struct PlotOptions {
  std::string title;
  // Column that orders the x axis (ascending).
  std::string sort_tag = "full";
  int width = 800;
  int height = 400;
};

// Scatter of every column against the frame index, rows sorted by
// sort_tag. Depends only on the series values, so a series re-read from its
// CSV renders byte-identically.
std::string ConfidencePlotSvg(const ConfidenceSeries& series,
                              const PlotOptions& options);

// Per-frame decrease baseline - variant, frames ordered by the variant
// column. Non-negative decreases are black, improvements red; a dashed line
// marks the lost threshold.
std::string DifferencePlotSvg(const ConfidenceSeries& series,
                              std::string_view baseline_tag,
                              std::string_view variant_tag,
                              double lost_threshold,
                              const PlotOptions& options);

}  // namespace occlbench

#endif  // OCCLBENCH_SVG_PLOT_H_
