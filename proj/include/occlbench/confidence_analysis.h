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
#ifndef OCCLBENCH_CONFIDENCE_ANALYSIS_H_
#define OCCLBENCH_CONFIDENCE_ANALYSIS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "occlbench/eval_metrics.h"
#include "occlbench/kitti_io.h"

namespace occlbench {

// Per-frame confidence of several models over one frame list.
struct ConfidenceSeries {
  std::vector<std::string> frames;
  // Column order for output; every tag has an entry in `values`.
  std::vector<std::string> model_tags;
  std::map<std::string, std::vector<double>> values;

  bool HasTag(std::string_view tag) const;
  // Throws ArgumentError for an unknown tag.
  const std::vector<double>& Column(std::string_view tag) const;
  // Throws ArgumentError when a column length differs from frames.size() or
  // a value leaves [0, 1].
  void Validate() const;

  friend bool operator==(const ConfidenceSeries&,
                         const ConfidenceSeries&) = default;
};

struct SeriesOptions {
  std::string class_name = "Pedestrian";
  double iou_threshold = 0.5;
  ConfidenceAggregation aggregation = ConfidenceAggregation::kMax;
};

// Builds one column per model over the frames of `groundtruth` that contain
// at least one object of the class, in lexicographic frame order. A frame a
// model has no detections file for counts as zero detections and is
// reported through `warnings`.
ConfidenceSeries BuildSeries(
    const std::vector<std::pair<std::string, DetectionSet>>& models,
    const LabelSet& groundtruth, const SeriesOptions& options,
    std::vector<std::string>* warnings = nullptr);

// permutation[i] is the original index of the row placed at position i.
struct SortedView {
  std::vector<std::size_t> permutation;
  ConfidenceSeries series;
};

// Stable sort of every column by the reference column.
SortedView SortByTag(const ConfidenceSeries& series,
                     std::string_view reference_tag, bool ascending = true);
ConfidenceSeries ApplyPermutation(const ConfidenceSeries& series,
                                  const std::vector<std::size_t>& permutation);

// Confidence change from a baseline to a variant, frame by frame.
//
// decrease[i] = baseline[i] - variant[i]. Each frame lands in exactly one
// bucket, checked in this order:
//   lost      decrease > lost_threshold, or the variant dropped to exactly 0
//             from a positive baseline
//   improved  decrease < 0
//   degraded  0 < decrease <= lost_threshold
//   unchanged decrease == 0
struct DiffStats {
  double mean_decrease = 0.0;
  double frac_lost = 0.0;
  double frac_improved = 0.0;
  double frac_degraded = 0.0;
  double frac_unchanged = 0.0;
  double lost_threshold = 0.5;
  std::vector<double> decreases;
};

inline constexpr double kDefaultLostThreshold = 0.5;

// nullopt for an empty series. Throws ArgumentError for unknown tags.
std::optional<DiffStats> ComputeDiffStats(
    const ConfidenceSeries& series, std::string_view baseline_tag,
    std::string_view variant_tag,
    double lost_threshold = kDefaultLostThreshold);

// Fraction of frames where tag_a is strictly more confident than tag_b.
// 0 for an empty series.
double ImprovementFraction(const ConfidenceSeries& series,
                           std::string_view tag_a, std::string_view tag_b);

double MeanConfidence(const ConfidenceSeries& series, std::string_view tag);

// "frame_id,<tag>,<tag>..." then one row per frame.
std::string SeriesToCsv(const ConfidenceSeries& series);
ConfidenceSeries SeriesFromCsv(std::string_view csv);

struct StatsRow {
  std::string baseline_tag;
  std::string variant_tag;
  DiffStats stats;
};

std::string StatsToCsv(const std::vector<StatsRow>& rows);

}  // namespace occlbench

#endif  // OCCLBENCH_CONFIDENCE_ANALYSIS_H_
