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
#ifndef OCCLBENCH_EVAL_METRICS_H_
#define OCCLBENCH_EVAL_METRICS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "occlbench/bounding_box.h"
#include "occlbench/kitti_io.h"

namespace occlbench {

// Intersection over union with real-valued areas. 0 for disjoint boxes.
double Iou(const BoundingBox& a, const BoundingBox& b);

struct MatchPair {
  std::size_t detection_index = 0;
  std::size_t groundtruth_index = 0;
  double iou = 0.0;
  friend bool operator==(const MatchPair&, const MatchPair&) = default;
};

// Indices refer to the caller's input lists. Objects of other classes appear
// in none of the lists.
struct MatchResult {
  std::vector<MatchPair> pairs;
  std::vector<std::size_t> unmatched_detections;
  std::vector<std::size_t> unmatched_groundtruth;
  double iou_threshold = 0.5;
};

// Greedy matching of one frame. Detections of `class_name` are visited in
// descending score (ties keep input order); each takes the still unmatched
// ground truth of maximal IoU (ties go to the lower index) when that IoU is
// >= iou_threshold. Throws ArgumentError unless iou_threshold is in (0, 1].
MatchResult MatchDetections(std::span<const Detection> detections,
                            std::span<const ObjectLabel> groundtruth,
                            std::string_view class_name, double iou_threshold);

enum class PrMode {
  // Fixed IoU threshold, cutoff swept over every distinct detection score.
  kConfidenceSweep,
  // Score cutoff 0, IoU threshold swept over a grid.
  kIouSweep,
};

std::string_view PrModeName(PrMode mode);
PrMode ParsePrMode(std::string_view name);

struct PrPoint {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  friend bool operator==(const PrPoint&, const PrPoint&) = default;
};

// Points are ordered by descending threshold.
struct PrCurve {
  PrMode mode = PrMode::kConfidenceSweep;
  std::vector<PrPoint> points;
  std::size_t num_gt = 0;
  std::size_t num_det = 0;

  // AP is undefined for a class without ground truth.
  bool defined() const { return num_gt > 0; }
};

// 0.05, 0.10, ..., 1.00.
std::vector<double> DefaultIouGrid();

struct PrOptions {
  double iou_threshold = 0.5;
  PrMode mode = PrMode::kConfidenceSweep;
  std::vector<double> iou_grid = DefaultIouGrid();
};

// Precision/recall accumulated over every frame present in either set. A
// frame missing from `detections` has no detections; detections in frames
// without ground truth are false positives.
PrCurve ComputePrCurve(const DetectionSet& detections,
                       const LabelSet& groundtruth,
                       std::string_view class_name, const PrOptions& options);

// All-points interpolated AP: precision is replaced by its running maximum
// over higher recall, then summed over recall increments. nullopt when the
// curve is undefined; 0 for a defined curve without points (no detections).
std::optional<double> AveragePrecision(const PrCurve& curve);

struct ClassReport {
  std::optional<double> ap;
  std::size_t num_gt = 0;
  std::size_t num_det = 0;
  std::size_t num_matched = 0;
};

struct EvalReport {
  std::map<std::string, ClassReport> per_class;
  // Mean AP over classes whose AP is defined.
  std::optional<double> map;
  double iou_threshold = 0.5;
  PrMode mode = PrMode::kConfidenceSweep;
};

// Evaluates `classes`, or every class occurring in either set when empty.
EvalReport Evaluate(const DetectionSet& detections, const LabelSet& groundtruth,
                    const PrOptions& options,
                    std::span<const std::string> classes = {});

// "# mode=<m> iou_threshold=<t> map=<v>" followed by
// "class,ap,num_gt,num_det,num_matched" and one row per class. Undefined
// values are written as "nan".
std::string EvalReportToCsv(const EvalReport& report);

enum class ConfidenceAggregation { kMax, kMean };

// Inherent confidence of one frame: the maximum (or mean) score over the
// detections matched to a ground truth of `class_name`; 0 when nothing
// matched.
double FrameConfidence(std::span<const Detection> detections,
                       std::span<const ObjectLabel> groundtruth,
                       std::string_view class_name, double iou_threshold,
                       ConfidenceAggregation aggregation =
                           ConfidenceAggregation::kMax);

}  // namespace occlbench

#endif  // OCCLBENCH_EVAL_METRICS_H_
