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
#ifndef OCCLBENCH_CASCADE_H_
#define OCCLBENCH_CASCADE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "occlbench/bounding_box.h"
#include "occlbench/kitti_io.h"
#include "occlbench/label_transform.h"

namespace occlbench {

struct CascadeParams {
  // Full-body detections at or above this score bypass the cascade. A
  // missing full-body detection counts as confidence 0, so at 0 the cascade
  // never activates.
  double gate_threshold = 0.5;
  double pairing_min_horizontal_overlap = 0.3;
  // |lower.top - upper.bottom| allowed, as a fraction of the upper height.
  double vertical_adjacency_tolerance = 0.5;
  double w_full = 0.5;
  double w_upper = 0.25;
  double w_lower = 0.25;
  // IoU above which half-body evidence is attributed to a full-body box.
  double association_iou = 0.5;

  // Throws ArgumentError on out-of-range values.
  void Validate() const;
};

struct CascadeSource {
  BodyPart part = BodyPart::kFull;
  double score = 0.0;
  BoundingBox bbox;
  friend bool operator==(const CascadeSource&, const CascadeSource&) = default;
};

struct CascadeHypothesis {
  BoundingBox bbox;
  double fused_score = 0.0;
  // Largest pairwise score difference among the sources; 0 for one source.
  double agreement = 0.0;
  // At most one source per body part, ordered full, upper, lower.
  std::vector<CascadeSource> sources;
  bool gated = false;

  const CascadeSource* Source(BodyPart part) const;
};

// Overlap of the two horizontal spans divided by the narrower width.
double HorizontalOverlap(const BoundingBox& a, const BoundingBox& b);

// Greedy one-to-one pairing of upper- and lower-body detections. Admissible
// pairs overlap horizontally by at least pairing_min_horizontal_overlap and
// have the lower top within vertical_adjacency_tolerance * upper height of
// the upper bottom. Pairs are taken by descending summed score, then by
// smaller vertical gap, larger overlap, and input order.
std::vector<std::pair<std::size_t, std::size_t>> PairHalves(
    std::span<const Detection> upper, std::span<const Detection> lower,
    const CascadeParams& params);

// Bounding union of a stacked pair: (min left, upper top, max right, lower
// bottom).
BoundingBox ReconstructFull(const BoundingBox& upper, const BoundingBox& lower);
// Single-half fallback: the half box extended by its own height, downward
// for an upper half and upward for a lower half.
BoundingBox ReconstructFromUpper(const BoundingBox& upper);
BoundingBox ReconstructFromLower(const BoundingBox& lower);

// Weighted mean of the present sources' scores with the weights renormalized
// over those sources.
double FusedScore(std::span<const CascadeSource> sources,
                  const CascadeParams& params);
double Agreement(std::span<const CascadeSource> sources);

// Fuses one frame's full, upper and lower detections.
//
//  1. Full detections with score >= gate pass through (gated = false).
//  2. Halves are paired; each pair, and each unpaired half via the fallback
//     rule, yields a reconstructed candidate.
//  3. Each remaining full detection, highest score first, takes the unused
//     candidate of highest IoU above association_iou; the combined
//     hypothesis is gated, boxed by the reconstruction when halves
//     contributed.
//  4. Unassociated candidates stand alone (gated) when a missing full
//     detection opens the gate (gate_threshold > 0).
//  5. Gated hypotheses overlapping a pass-through detection with IoU >
//     association_iou are merged into the best-overlapping one: its half
//     sources and agreement are updated, its score and box kept.
//
// Output order: pass-through hypotheses by descending score, then gated ones
// in creation order.
std::vector<CascadeHypothesis> CascadeDecide(
    std::span<const Detection> full, std::span<const Detection> upper,
    std::span<const Detection> lower, const CascadeParams& params);

std::string SourcesToString(const CascadeHypothesis& h);

// Sidecar row fields: frame_id,left,top,right,bottom,fused_score,agreement,
// gated,sources.
std::string CascadeCsvHeader();
std::string CascadeCsvRow(const std::string& frame_id,
                          const CascadeHypothesis& h);

// The hypotheses as 16-field detection records of `class_name`.
DetectionFrame HypothesesToFrame(const std::string& frame_id,
                                 const std::vector<CascadeHypothesis>& hyps,
                                 const std::string& class_name);

}  // namespace occlbench

#endif  // OCCLBENCH_CASCADE_H_
