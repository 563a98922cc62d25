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
#include "occlbench/svg_plot.h"

#include <algorithm>
#include <array>
#include <charconv>

namespace occlbench {
namespace {

constexpr double kMarginLeft = 60.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;

std::string Fixed(double v) {
  std::array<char, 64> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                           std::chars_format::fixed, 2);
  return std::string(buf.data(), res.ptr);
}

std::string Escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Maps data coordinates (frame index, value in [y_min, y_max]) to pixels.
struct PlotArea {
  double width;
  double height;
  double y_min;
  double y_max;
  std::size_t count;

  double PlotWidth() const { return width - kMarginLeft - kMarginRight; }
  double PlotHeight() const { return height - kMarginTop - kMarginBottom; }
  double X(std::size_t i) const {
    if (count <= 1) return kMarginLeft + PlotWidth() / 2.0;
    return kMarginLeft + PlotWidth() * static_cast<double>(i) /
                             static_cast<double>(count - 1);
  }
  double Y(double v) const {
    const double t = (std::clamp(v, y_min, y_max) - y_min) / (y_max - y_min);
    return kMarginTop + PlotHeight() * (1.0 - t);
  }
};

std::string Open(const PlotArea& f, std::string_view title,
                 std::string_view y_label) {
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
       std::to_string(static_cast<int>(f.width)) + "\" height=\"" +
       std::to_string(static_cast<int>(f.height)) + "\" viewBox=\"0 0 " +
       std::to_string(static_cast<int>(f.width)) + " " +
       std::to_string(static_cast<int>(f.height)) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + Fixed(f.width / 2.0) +
       "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"14\">" +
       Escape(title) + "</text>\n";
  // Axes.
  s += "<line x1=\"" + Fixed(kMarginLeft) + "\" y1=\"" + Fixed(kMarginTop) +
       "\" x2=\"" + Fixed(kMarginLeft) + "\" y2=\"" +
       Fixed(f.height - kMarginBottom) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + Fixed(kMarginLeft) + "\" y1=\"" +
       Fixed(f.height - kMarginBottom) + "\" x2=\"" +
       Fixed(f.width - kMarginRight) + "\" y2=\"" +
       Fixed(f.height - kMarginBottom) + "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = f.y_min + (f.y_max - f.y_min) * k / 4.0;
    s += "<text x=\"" + Fixed(kMarginLeft - 6.0) + "\" y=\"" +
         Fixed(f.Y(v) + 4.0) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" "
         "font-size=\"10\">" +
         Fixed(v) + "</text>\n";
  }
  s += "<text x=\"" + Fixed(f.width / 2.0) + "\" y=\"" +
       Fixed(f.height - 15.0) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"12\">frame index (sorted)</text>\n";
  s += "<text x=\"15\" y=\"" + Fixed(f.height / 2.0) +
       "\" transform=\"rotate(-90 15 " + Fixed(f.height / 2.0) +
       ")\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"12\">" +
       Escape(y_label) + "</text>\n";
  return s;
}

std::string Marker(double x, double y, std::string_view color) {
  return "<circle cx=\"" + Fixed(x) + "\" cy=\"" + Fixed(y) +
         "\" r=\"2.5\" fill=\"" + std::string(color) + "\"/>\n";
}

}  // namespace

std::string_view TagColor(std::string_view tag) {
  if (tag == "full") return "blue";
  if (tag == "upper") return "green";
  if (tag == "lower") return "red";
  if (tag == "baseline") return "black";
  return "gray";
}

std::string ConfidencePlotSvg(const ConfidenceSeries& series,
                              const PlotOptions& options) {
  const ConfidenceSeries sorted =
      series.HasTag(options.sort_tag)
          ? SortByTag(series, options.sort_tag).series
          : series;
  PlotArea f{static_cast<double>(options.width),
          static_cast<double>(options.height), 0.0, 1.0,
          sorted.frames.size()};
  std::string s = Open(f, options.title, "confidence");

  // Baseline first so the model markers draw on top of it.
  std::vector<std::string> order;
  if (sorted.HasTag("baseline")) order.push_back("baseline");
  for (const auto& tag : sorted.model_tags) {
    if (tag != "baseline") order.push_back(tag);
  }
  double legend_x = kMarginLeft + 10.0;
  for (const auto& tag : order) {
    const auto& col = sorted.Column(tag);
    const auto color = TagColor(tag);
    s += "<g id=\"series-" + Escape(tag) + "\">\n";
    for (std::size_t i = 0; i < col.size(); ++i) {
      s += Marker(f.X(i), f.Y(col[i]), color);
    }
    s += "</g>\n";
    s += Marker(legend_x, kMarginTop - 8.0, color);
    s += "<text x=\"" + Fixed(legend_x + 6.0) + "\" y=\"" +
         Fixed(kMarginTop - 4.0) +
         "\" font-family=\"sans-serif\" font-size=\"10\">" + Escape(tag) +
         "</text>\n";
    legend_x += 80.0;
  }
  s += "</svg>\n";
  return s;
}

std::string DifferencePlotSvg(const ConfidenceSeries& series,
                              std::string_view baseline_tag,
                              std::string_view variant_tag,
                              double lost_threshold,
                              const PlotOptions& options) {
  const ConfidenceSeries sorted = SortByTag(series, variant_tag).series;
  const auto& base = sorted.Column(baseline_tag);
  const auto& var = sorted.Column(variant_tag);
  PlotArea f{static_cast<double>(options.width),
          static_cast<double>(options.height), -1.0, 1.0,
          sorted.frames.size()};
  std::string s = Open(f, options.title, "confidence decrease");
  s += "<line x1=\"" + Fixed(kMarginLeft) + "\" y1=\"" + Fixed(f.Y(0.0)) +
       "\" x2=\"" + Fixed(options.width - kMarginRight) + "\" y2=\"" +
       Fixed(f.Y(0.0)) + "\" stroke=\"gray\"/>\n";
  s += "<line x1=\"" + Fixed(kMarginLeft) + "\" y1=\"" +
       Fixed(f.Y(lost_threshold)) + "\" x2=\"" +
       Fixed(options.width - kMarginRight) + "\" y2=\"" +
       Fixed(f.Y(lost_threshold)) +
       "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
  s += "<g id=\"decrease\">\n";
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double d = base[i] - var[i];
    s += Marker(f.X(i), f.Y(d), d < 0.0 ? "red" : "black");
  }
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace occlbench
