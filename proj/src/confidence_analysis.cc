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
#include "occlbench/confidence_analysis.h"

#include <algorithm>
#include <numeric>

#include "occlbench/csv.h"
#include "occlbench/error.h"

namespace occlbench {

bool ConfidenceSeries::HasTag(std::string_view tag) const {
  return values.find(std::string(tag)) != values.end();
}

const std::vector<double>& ConfidenceSeries::Column(
    std::string_view tag) const {
  auto it = values.find(std::string(tag));
  if (it == values.end()) {
    throw ArgumentError("unknown model tag '" + std::string(tag) + "'");
  }
  return it->second;
}

void ConfidenceSeries::Validate() const {
  if (model_tags.size() != values.size()) {
    throw ArgumentError("series: model_tags and values disagree");
  }
  for (const auto& tag : model_tags) {
    const auto& col = Column(tag);
    if (col.size() != frames.size()) {
      throw ArgumentError("series: column '" + tag + "' has " +
                          std::to_string(col.size()) + " values for " +
                          std::to_string(frames.size()) + " frames");
    }
    for (double v : col) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ArgumentError("series: value outside [0, 1] in '" + tag + "'");
      }
    }
  }
}

ConfidenceSeries BuildSeries(
    const std::vector<std::pair<std::string, DetectionSet>>& models,
    const LabelSet& groundtruth, const SeriesOptions& options,
    std::vector<std::string>* warnings) {
  ConfidenceSeries series;
  for (const auto& [id, frame] : groundtruth) {
    const bool has_class = std::any_of(
        frame.objects.begin(), frame.objects.end(),
        [&](const ObjectLabel& o) { return o.class_name == options.class_name; });
    if (has_class) series.frames.push_back(id);
  }
  for (const auto& [tag, dets] : models) {
    if (series.HasTag(tag)) {
      throw ArgumentError("duplicate model tag '" + tag + "'");
    }
    std::vector<double> column;
    column.reserve(series.frames.size());
    for (const auto& id : series.frames) {
      const auto& gts = groundtruth.at(id).objects;
      auto it = dets.find(id);
      if (it == dets.end()) {
        if (warnings != nullptr) {
          warnings->push_back("model " + tag + ": no detections for frame " +
                              id + ", treated as empty");
        }
        column.push_back(0.0);
        continue;
      }
      column.push_back(FrameConfidence(it->second.objects, gts,
                                       options.class_name,
                                       options.iou_threshold,
                                       options.aggregation));
    }
    series.model_tags.push_back(tag);
    series.values.emplace(tag, std::move(column));
  }
  return series;
}

SortedView SortByTag(const ConfidenceSeries& series,
                     std::string_view reference_tag, bool ascending) {
  const auto& ref = series.Column(reference_tag);
  SortedView view;
  view.permutation.resize(ref.size());
  std::iota(view.permutation.begin(), view.permutation.end(), std::size_t{0});
  std::stable_sort(view.permutation.begin(), view.permutation.end(),
                   [&](std::size_t a, std::size_t b) {
                     return ascending ? ref[a] < ref[b] : ref[a] > ref[b];
                   });
  view.series = ApplyPermutation(series, view.permutation);
  return view;
}

ConfidenceSeries ApplyPermutation(const ConfidenceSeries& series,
                                  const std::vector<std::size_t>& permutation) {
  if (permutation.size() != series.frames.size()) {
    throw ArgumentError("permutation length does not match the series");
  }
  ConfidenceSeries out;
  out.model_tags = series.model_tags;
  out.frames.reserve(permutation.size());
  for (std::size_t i : permutation) out.frames.push_back(series.frames.at(i));
  for (const auto& [tag, col] : series.values) {
    std::vector<double> reordered;
    reordered.reserve(permutation.size());
    for (std::size_t i : permutation) reordered.push_back(col.at(i));
    out.values.emplace(tag, std::move(reordered));
  }
  return out;
}

std::optional<DiffStats> ComputeDiffStats(const ConfidenceSeries& series,
                                          std::string_view baseline_tag,
                                          std::string_view variant_tag,
                                          double lost_threshold) {
  const auto& base = series.Column(baseline_tag);
  const auto& var = series.Column(variant_tag);
  if (base.empty()) return std::nullopt;

  DiffStats stats;
  stats.lost_threshold = lost_threshold;
  stats.decreases.reserve(base.size());
  std::size_t lost = 0, improved = 0, degraded = 0, unchanged = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double d = base[i] - var[i];
    stats.decreases.push_back(d);
    sum += d;
    if (d > lost_threshold || (var[i] == 0.0 && base[i] > 0.0)) {
      ++lost;
    } else if (d < 0.0) {
      ++improved;
    } else if (d > 0.0) {
      ++degraded;
    } else {
      ++unchanged;
    }
  }
  const double n = static_cast<double>(base.size());
  stats.mean_decrease = sum / n;
  stats.frac_lost = lost / n;
  stats.frac_improved = improved / n;
  stats.frac_degraded = degraded / n;
  stats.frac_unchanged = unchanged / n;
  return stats;
}

double ImprovementFraction(const ConfidenceSeries& series,
                           std::string_view tag_a, std::string_view tag_b) {
  const auto& a = series.Column(tag_a);
  const auto& b = series.Column(tag_b);
  if (a.empty()) return 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(a.size());
}

double MeanConfidence(const ConfidenceSeries& series, std::string_view tag) {
  const auto& col = series.Column(tag);
  if (col.empty()) return 0.0;
  return std::accumulate(col.begin(), col.end(), 0.0) /
         static_cast<double>(col.size());
}

std::string SeriesToCsv(const ConfidenceSeries& series) {
  CsvTable table;
  table.header.push_back("frame_id");
  for (const auto& tag : series.model_tags) table.header.push_back(tag);
  for (std::size_t i = 0; i < series.frames.size(); ++i) {
    std::vector<std::string> row{series.frames[i]};
    for (const auto& tag : series.model_tags) {
      row.push_back(FormatNumber(series.Column(tag)[i]));
    }
    table.rows.push_back(std::move(row));
  }
  return WriteCsv(table);
}

ConfidenceSeries SeriesFromCsv(std::string_view csv) {
  const CsvTable table = ParseCsv(csv);
  if (table.header.empty() || table.header[0] != "frame_id") {
    throw FormatError("series CSV must start with a frame_id column");
  }
  ConfidenceSeries series;
  for (std::size_t c = 1; c < table.header.size(); ++c) {
    series.model_tags.push_back(table.header[c]);
    series.values[table.header[c]];
  }
  for (const auto& row : table.rows) {
    series.frames.push_back(row[0]);
    for (std::size_t c = 1; c < row.size(); ++c) {
      series.values[table.header[c]].push_back(
          ParseCsvNumber(row[c], table.header[c]));
    }
  }
  series.Validate();
  return series;
}

std::string StatsToCsv(const std::vector<StatsRow>& rows) {
  CsvTable table;
  table.header = {"baseline",      "variant",       "mean_decrease",
                  "frac_lost",     "frac_improved", "frac_degraded",
                  "frac_unchanged", "lost_threshold"};
  for (const auto& r : rows) {
    table.rows.push_back(
        {r.baseline_tag, r.variant_tag, FormatNumber(r.stats.mean_decrease),
         FormatNumber(r.stats.frac_lost), FormatNumber(r.stats.frac_improved),
         FormatNumber(r.stats.frac_degraded),
         FormatNumber(r.stats.frac_unchanged),
         FormatNumber(r.stats.lost_threshold)});
  }
  return WriteCsv(table);
}

}  // namespace occlbench
