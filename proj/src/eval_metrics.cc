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
#include "occlbench/eval_metrics.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "occlbench/error.h"

namespace occlbench {
namespace {

const std::vector<Detection> kNoDetections;
const std::vector<ObjectLabel> kNoLabels;

// Per-detection outcome at a fixed IoU threshold, in processing order.
struct ScoredOutcome {
  double score = 0.0;
  bool true_positive = false;
};

std::vector<std::string> FrameUniverse(const DetectionSet& detections,
                                       const LabelSet& groundtruth) {
  std::set<std::string> ids;
  for (const auto& [id, f] : detections) ids.insert(id);
  for (const auto& [id, f] : groundtruth) ids.insert(id);
  return {ids.begin(), ids.end()};
}

template <typename Set>
const auto& ObjectsOf(const Set& set, const std::string& id,
                      const auto& fallback) {
  auto it = set.find(id);
  return it == set.end() ? fallback : it->second.objects;
}

std::size_t CountClass(const auto& objects, std::string_view class_name) {
  return static_cast<std::size_t>(
      std::count_if(objects.begin(), objects.end(), [&](const auto& o) {
        return o.class_name == class_name;
      }));
}

std::string FormatValue(std::optional<double> v) {
  return v ? FormatNumber(*v) : std::string("nan");
}

}  // namespace

double Iou(const BoundingBox& a, const BoundingBox& b) {
  const auto inter = Intersect(a, b);
  if (!inter) return 0.0;
  const double i = inter->Area();
  const double u = a.Area() + b.Area() - i;
  if (!(u > 0.0)) return 0.0;
  return std::clamp(i / u, 0.0, 1.0);
}

MatchResult MatchDetections(std::span<const Detection> detections,
                            std::span<const ObjectLabel> groundtruth,
                            std::string_view class_name,
                            double iou_threshold) {
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
    throw ArgumentError("iou_threshold must lie in (0, 1]");
  }
  MatchResult result;
  result.iou_threshold = iou_threshold;

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < detections.size(); ++i) {
    if (detections[i].class_name == class_name) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return detections[a].score > detections[b].score;
  });

  std::vector<std::size_t> gt_indices;
  for (std::size_t j = 0; j < groundtruth.size(); ++j) {
    if (groundtruth[j].class_name == class_name) gt_indices.push_back(j);
  }
  std::vector<bool> taken(groundtruth.size(), false);

  for (std::size_t d : order) {
    double best_iou = -1.0;
    std::size_t best_gt = 0;
    for (std::size_t g : gt_indices) {
      if (taken[g]) continue;
      const double v = Iou(detections[d].bbox, groundtruth[g].bbox);
      // Strict comparison keeps the lower index on ties.
      if (v > best_iou) {
        best_iou = v;
        best_gt = g;
      }
    }
    if (best_iou >= iou_threshold) {
      taken[best_gt] = true;
      result.pairs.push_back({d, best_gt, best_iou});
    } else {
      result.unmatched_detections.push_back(d);
    }
  }
  std::sort(result.unmatched_detections.begin(),
            result.unmatched_detections.end());
  for (std::size_t g : gt_indices) {
    if (!taken[g]) result.unmatched_groundtruth.push_back(g);
  }
  return result;
}

std::string_view PrModeName(PrMode mode) {
  return mode == PrMode::kConfidenceSweep ? "confidence" : "iou";
}

PrMode ParsePrMode(std::string_view name) {
  if (name == "confidence") return PrMode::kConfidenceSweep;
  if (name == "iou") return PrMode::kIouSweep;
  throw ArgumentError("unknown AP mode '" + std::string(name) +
                      "' (expected confidence or iou)");
}

std::vector<double> DefaultIouGrid() {
  std::vector<double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(i * 0.05);
  return grid;
}

PrCurve ComputePrCurve(const DetectionSet& detections,
                       const LabelSet& groundtruth,
                       std::string_view class_name, const PrOptions& options) {
  PrCurve curve;
  curve.mode = options.mode;
  const auto frames = FrameUniverse(detections, groundtruth);
  for (const auto& id : frames) {
    curve.num_gt += CountClass(ObjectsOf(groundtruth, id, kNoLabels), class_name);
    curve.num_det +=
        CountClass(ObjectsOf(detections, id, kNoDetections), class_name);
  }

  auto outcomes_at = [&](double iou_threshold) {
    std::vector<ScoredOutcome> outcomes;
    for (const auto& id : frames) {
      const auto& dets = ObjectsOf(detections, id, kNoDetections);
      const auto& gts = ObjectsOf(groundtruth, id, kNoLabels);
      const MatchResult m =
          MatchDetections(dets, gts, class_name, iou_threshold);
      for (const auto& p : m.pairs) {
        outcomes.push_back({dets[p.detection_index].score, true});
      }
      for (std::size_t d : m.unmatched_detections) {
        outcomes.push_back({dets[d].score, false});
      }
    }
    return outcomes;
  };

  const double num_gt = static_cast<double>(curve.num_gt);
  if (options.mode == PrMode::kConfidenceSweep) {
    auto outcomes = outcomes_at(options.iou_threshold);
    std::stable_sort(outcomes.begin(), outcomes.end(),
                     [](const ScoredOutcome& a, const ScoredOutcome& b) {
                       return a.score > b.score;
                     });
    std::size_t tp = 0;
    std::size_t fp = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      (outcomes[i].true_positive ? tp : fp) += 1;
      const bool last_of_score =
          i + 1 == outcomes.size() || outcomes[i + 1].score != outcomes[i].score;
      if (!last_of_score) continue;
      curve.points.push_back(
          {outcomes[i].score, static_cast<double>(tp) / (tp + fp),
           num_gt > 0 ? tp / num_gt : 0.0});
    }
    return curve;
  }

  std::vector<double> grid = options.iou_grid;
  std::sort(grid.begin(), grid.end(), std::greater<>());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (double t : grid) {
    const auto outcomes = outcomes_at(t);
    if (outcomes.empty()) continue;
    const auto tp = static_cast<std::size_t>(
        std::count_if(outcomes.begin(), outcomes.end(),
                      [](const ScoredOutcome& o) { return o.true_positive; }));
    curve.points.push_back(
        {t, static_cast<double>(tp) / outcomes.size(),
         num_gt > 0 ? tp / num_gt : 0.0});
  }
  return curve;
}

std::optional<double> AveragePrecision(const PrCurve& curve) {
  if (!curve.defined()) return std::nullopt;
  if (curve.points.empty()) return 0.0;
  std::vector<PrPoint> pts = curve.points;
  std::stable_sort(pts.begin(), pts.end(), [](const PrPoint& a, const PrPoint& b) {
    return a.recall < b.recall;
  });
  std::vector<double> envelope(pts.size());
  double running = 0.0;
  for (std::size_t i = pts.size(); i-- > 0;) {
    running = std::max(running, pts[i].precision);
    envelope[i] = running;
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ap += (pts[i].recall - prev_recall) * envelope[i];
    prev_recall = pts[i].recall;
  }
  return std::clamp(ap, 0.0, 1.0);
}

EvalReport Evaluate(const DetectionSet& detections, const LabelSet& groundtruth,
                    const PrOptions& options,
                    std::span<const std::string> classes) {
  std::set<std::string> class_set(classes.begin(), classes.end());
  if (class_set.empty()) {
    for (const auto& [id, f] : groundtruth) {
      for (const auto& o : f.objects) class_set.insert(o.class_name);
    }
    for (const auto& [id, f] : detections) {
      for (const auto& o : f.objects) class_set.insert(o.class_name);
    }
  }

  EvalReport report;
  report.iou_threshold = options.iou_threshold;
  report.mode = options.mode;
  const auto frames = FrameUniverse(detections, groundtruth);
  double ap_sum = 0.0;
  std::size_t ap_count = 0;
  for (const auto& cls : class_set) {
    const PrCurve curve = ComputePrCurve(detections, groundtruth, cls, options);
    ClassReport cr;
    cr.ap = AveragePrecision(curve);
    cr.num_gt = curve.num_gt;
    cr.num_det = curve.num_det;
    for (const auto& id : frames) {
      cr.num_matched += MatchDetections(ObjectsOf(detections, id, kNoDetections),
                                        ObjectsOf(groundtruth, id, kNoLabels),
                                        cls, options.iou_threshold)
                            .pairs.size();
    }
    if (cr.ap) {
      ap_sum += *cr.ap;
      ++ap_count;
    }
    report.per_class.emplace(cls, cr);
  }
  if (ap_count > 0) report.map = ap_sum / static_cast<double>(ap_count);
  return report;
}

std::string EvalReportToCsv(const EvalReport& report) {
  std::string out = "# mode=" + std::string(PrModeName(report.mode)) +
                    " iou_threshold=" + FormatNumber(report.iou_threshold) +
                    " map=" + FormatValue(report.map) + "\n";
  out += "class,ap,num_gt,num_det,num_matched\n";
  for (const auto& [cls, cr] : report.per_class) {
    out += cls + "," + FormatValue(cr.ap) + "," + std::to_string(cr.num_gt) +
           "," + std::to_string(cr.num_det) + "," +
           std::to_string(cr.num_matched) + "\n";
  }
  return out;
}

double FrameConfidence(std::span<const Detection> detections,
                       std::span<const ObjectLabel> groundtruth,
                       std::string_view class_name, double iou_threshold,
                       ConfidenceAggregation aggregation) {
  const MatchResult m =
      MatchDetections(detections, groundtruth, class_name, iou_threshold);
  if (m.pairs.empty()) return 0.0;
  if (aggregation == ConfidenceAggregation::kMax) {
    double best = 0.0;
    for (const auto& p : m.pairs) {
      best = std::max(best, detections[p.detection_index].score);
    }
    return best;
  }
  double sum = 0.0;
  for (const auto& p : m.pairs) sum += detections[p.detection_index].score;
  return sum / static_cast<double>(m.pairs.size());
}

}  // namespace occlbench
