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
#include "occlbench/cascade.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "occlbench/error.h"
#include "occlbench/eval_metrics.h"

namespace occlbench {
namespace {

struct Candidate {
  BoundingBox bbox;
  std::vector<CascadeSource> halves;
  bool used = false;
};

int PartRank(BodyPart p) {
  switch (p) {
    case BodyPart::kFull:
      return 0;
    case BodyPart::kUpper:
      return 1;
    case BodyPart::kLower:
      return 2;
  }
  return 3;
}

void SortSources(std::vector<CascadeSource>& sources) {
  std::stable_sort(sources.begin(), sources.end(),
                   [](const CascadeSource& a, const CascadeSource& b) {
                     return PartRank(a.part) < PartRank(b.part);
                   });
}

CascadeHypothesis MakeHypothesis(const BoundingBox& bbox,
                                 std::vector<CascadeSource> sources,
                                 bool gated, const CascadeParams& params) {
  SortSources(sources);
  CascadeHypothesis h;
  h.bbox = bbox;
  h.fused_score = FusedScore(sources, params);
  h.agreement = Agreement(sources);
  h.sources = std::move(sources);
  h.gated = gated;
  return h;
}

double VerticalGap(const BoundingBox& upper, const BoundingBox& lower) {
  return std::abs(lower.top - upper.bottom);
}

}  // namespace

void CascadeParams::Validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(gate_threshold)) {
    throw ArgumentError("cascade: gate_threshold must lie in [0, 1]");
  }
  if (!in_unit(pairing_min_horizontal_overlap)) {
    throw ArgumentError(
        "cascade: pairing_min_horizontal_overlap must lie in [0, 1]");
  }
  if (!(vertical_adjacency_tolerance >= 0.0)) {
    throw ArgumentError("cascade: vertical_adjacency_tolerance must be >= 0");
  }
  if (!(association_iou >= 0.0 && association_iou < 1.0)) {
    throw ArgumentError("cascade: association_iou must lie in [0, 1)");
  }
  if (w_full < 0.0 || w_upper < 0.0 || w_lower < 0.0) {
    throw ArgumentError("cascade: fusion weights must be non-negative");
  }
  if (std::abs(w_full + w_upper + w_lower - 1.0) > 1e-9) {
    throw ArgumentError("cascade: fusion weights must sum to 1");
  }
}

const CascadeSource* CascadeHypothesis::Source(BodyPart part) const {
  for (const auto& s : sources) {
    if (s.part == part) return &s;
  }
  return nullptr;
}

double HorizontalOverlap(const BoundingBox& a, const BoundingBox& b) {
  const double overlap =
      std::min(a.right, b.right) - std::max(a.left, b.left);
  const double narrower = std::min(a.Width(), b.Width());
  if (!(overlap > 0.0) || !(narrower > 0.0)) return 0.0;
  return std::clamp(overlap / narrower, 0.0, 1.0);
}

std::vector<std::pair<std::size_t, std::size_t>> PairHalves(
    std::span<const Detection> upper, std::span<const Detection> lower,
    const CascadeParams& params) {
  struct Admissible {
    double combined;
    double gap;
    double overlap;
    std::size_t u;
    std::size_t l;
  };
  std::vector<Admissible> candidates;
  for (std::size_t u = 0; u < upper.size(); ++u) {
    for (std::size_t l = 0; l < lower.size(); ++l) {
      const auto& ub = upper[u].bbox;
      const auto& lb = lower[l].bbox;
      const double overlap = HorizontalOverlap(ub, lb);
      const double gap = VerticalGap(ub, lb);
      if (overlap < params.pairing_min_horizontal_overlap || overlap <= 0.0) {
        continue;
      }
      if (gap > params.vertical_adjacency_tolerance * ub.Height()) continue;
      candidates.push_back(
          {upper[u].score + lower[l].score, gap, overlap, u, l});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Admissible& a, const Admissible& b) {
              return std::tie(b.combined, a.gap, b.overlap, a.u, a.l) <
                     std::tie(a.combined, b.gap, a.overlap, b.u, b.l);
            });
  std::vector<bool> upper_used(upper.size(), false);
  std::vector<bool> lower_used(lower.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& c : candidates) {
    if (upper_used[c.u] || lower_used[c.l]) continue;
    upper_used[c.u] = true;
    lower_used[c.l] = true;
    pairs.emplace_back(c.u, c.l);
  }
  return pairs;
}

BoundingBox ReconstructFull(const BoundingBox& upper,
                            const BoundingBox& lower) {
  return {std::min(upper.left, lower.left), upper.top,
          std::max(upper.right, lower.right), lower.bottom};
}

BoundingBox ReconstructFromUpper(const BoundingBox& upper) {
  return {upper.left, upper.top, upper.right, upper.bottom + upper.Height()};
}

BoundingBox ReconstructFromLower(const BoundingBox& lower) {
  return {lower.left, lower.top - lower.Height(), lower.right, lower.bottom};
}

double FusedScore(std::span<const CascadeSource> sources,
                  const CascadeParams& params) {
  if (sources.empty()) return 0.0;
  double weighted = 0.0;
  double total_weight = 0.0;
  for (const auto& s : sources) {
    const double w = s.part == BodyPart::kFull    ? params.w_full
                     : s.part == BodyPart::kUpper ? params.w_upper
                                                  : params.w_lower;
    weighted += w * s.score;
    total_weight += w;
  }
  if (total_weight > 0.0) {
    return std::clamp(weighted / total_weight, 0.0, 1.0);
  }
  // Every present source has weight 0; fall back to the plain mean.
  double sum = 0.0;
  for (const auto& s : sources) sum += s.score;
  return sum / static_cast<double>(sources.size());
}

double Agreement(std::span<const CascadeSource> sources) {
  if (sources.size() < 2) return 0.0;
  const auto [lo, hi] = std::minmax_element(
      sources.begin(), sources.end(),
      [](const CascadeSource& a, const CascadeSource& b) {
        return a.score < b.score;
      });
  return hi->score - lo->score;
}

std::vector<CascadeHypothesis> CascadeDecide(std::span<const Detection> full,
                                             std::span<const Detection> upper,
                                             std::span<const Detection> lower,
                                             const CascadeParams& params) {
  params.Validate();

  std::vector<std::size_t> full_order(full.size());
  std::iota(full_order.begin(), full_order.end(), std::size_t{0});
  std::stable_sort(full_order.begin(), full_order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return full[a].score > full[b].score;
                   });

  std::vector<CascadeHypothesis> passed;
  std::vector<std::size_t> low_full;
  for (std::size_t i : full_order) {
    if (full[i].score >= params.gate_threshold) {
      passed.push_back(MakeHypothesis(
          full[i].bbox, {{BodyPart::kFull, full[i].score, full[i].bbox}},
          false, params));
    } else {
      low_full.push_back(i);
    }
  }

  std::vector<Candidate> candidates;
  std::vector<bool> upper_paired(upper.size(), false);
  std::vector<bool> lower_paired(lower.size(), false);
  for (const auto& [u, l] : PairHalves(upper, lower, params)) {
    upper_paired[u] = true;
    lower_paired[l] = true;
    candidates.push_back(
        {ReconstructFull(upper[u].bbox, lower[l].bbox),
         {{BodyPart::kUpper, upper[u].score, upper[u].bbox},
          {BodyPart::kLower, lower[l].score, lower[l].bbox}}});
  }
  for (std::size_t u = 0; u < upper.size(); ++u) {
    if (upper_paired[u]) continue;
    candidates.push_back({ReconstructFromUpper(upper[u].bbox),
                          {{BodyPart::kUpper, upper[u].score, upper[u].bbox}}});
  }
  for (std::size_t l = 0; l < lower.size(); ++l) {
    if (lower_paired[l]) continue;
    candidates.push_back({ReconstructFromLower(lower[l].bbox),
                          {{BodyPart::kLower, lower[l].score, lower[l].bbox}}});
  }

  std::vector<CascadeHypothesis> gated;
  for (std::size_t i : low_full) {
    Candidate* best = nullptr;
    double best_iou = params.association_iou;
    for (auto& c : candidates) {
      if (c.used) continue;
      const double v = Iou(c.bbox, full[i].bbox);
      if (v > best_iou) {
        best_iou = v;
        best = &c;
      }
    }
    std::vector<CascadeSource> sources{
        {BodyPart::kFull, full[i].score, full[i].bbox}};
    BoundingBox box = full[i].bbox;
    if (best != nullptr) {
      best->used = true;
      sources.insert(sources.end(), best->halves.begin(), best->halves.end());
      box = best->bbox;
    }
    gated.push_back(MakeHypothesis(box, std::move(sources), true, params));
  }
  if (params.gate_threshold > 0.0) {
    for (auto& c : candidates) {
      if (c.used) continue;
      c.used = true;
      gated.push_back(MakeHypothesis(c.bbox, c.halves, true, params));
    }
  }

  std::vector<CascadeHypothesis> kept;
  for (auto& h : gated) {
    CascadeHypothesis* target = nullptr;
    double best_iou = params.association_iou;
    for (auto& p : passed) {
      const double v = Iou(h.bbox, p.bbox);
      if (v > best_iou) {
        best_iou = v;
        target = &p;
      }
    }
    if (target == nullptr) {
      kept.push_back(std::move(h));
      continue;
    }
    for (const auto& s : h.sources) {
      if (s.part == BodyPart::kFull || target->Source(s.part) != nullptr) {
        continue;
      }
      target->sources.push_back(s);
    }
    SortSources(target->sources);
    target->agreement = Agreement(target->sources);
  }

  passed.insert(passed.end(), std::make_move_iterator(kept.begin()),
                std::make_move_iterator(kept.end()));
  return passed;
}

std::string SourcesToString(const CascadeHypothesis& h) {
  std::string out;
  for (const auto& s : h.sources) {
    if (!out.empty()) out += '|';
    out += std::string(BodyPartName(s.part)) + ":" + FormatNumber(s.score);
  }
  return out;
}

std::string CascadeCsvHeader() {
  return "frame_id,left,top,right,bottom,fused_score,agreement,gated,sources";
}

std::string CascadeCsvRow(const std::string& frame_id,
                          const CascadeHypothesis& h) {
  return frame_id + "," + FormatNumber(h.bbox.left) + "," +
         FormatNumber(h.bbox.top) + "," + FormatNumber(h.bbox.right) + "," +
         FormatNumber(h.bbox.bottom) + "," + FormatNumber(h.fused_score) + "," +
         FormatNumber(h.agreement) + "," + (h.gated ? "1" : "0") + "," +
         SourcesToString(h);
}

DetectionFrame HypothesesToFrame(const std::string& frame_id,
                                 const std::vector<CascadeHypothesis>& hyps,
                                 const std::string& class_name) {
  DetectionFrame frame;
  frame.frame_id = frame_id;
  for (const auto& h : hyps) {
    frame.objects.push_back(MakeDetection(class_name, h.bbox, h.fused_score));
  }
  return frame;
}

}  // namespace occlbench
