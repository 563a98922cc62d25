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
#ifndef OCCLBENCH_SPLIT_MANIFEST_H_
#define OCCLBENCH_SPLIT_MANIFEST_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "occlbench/kitti_io.h"

namespace occlbench {

enum class Bucket { kTrain, kTest, kValidation };

std::string_view BucketName(Bucket bucket);
Bucket ParseBucket(std::string_view name);

struct SplitRatios {
  double train = 0.0;
  double test = 0.0;
  double validation = 0.0;
  friend bool operator==(const SplitRatios&, const SplitRatios&) = default;
};

struct SplitManifest {
  std::uint64_t seed = 0;
  SplitRatios ratios;
  std::map<std::string, Bucket> assignment;
  // Per-frame flag: the frame contains the target class and nothing else.
  // Filled by MarkTargetOnlyFrames(); not part of the serialized form.
  std::map<std::string, bool> target_only;

  std::vector<std::string> Members(Bucket bucket) const;

  friend bool operator==(const SplitManifest&, const SplitManifest&) = default;
};

// Deterministic train/test/validation split.
//
// Ids are sorted first, so the result depends on the id set rather than its
// order. The sorted list is shuffled with Rng(seed).Shuffle and cut at the
// cumulative boundaries floor(n * train) and floor(n * (train + test)); the
// validation bucket takes the remainder.
//
// Throws ArgumentError on duplicate or empty ids, negative ratios, or ratios
// not summing to 1 within 1e-9.
SplitManifest MakeSplit(std::span<const std::string> frame_ids,
                        const SplitRatios& ratios, std::uint64_t seed);

// Frames containing at least one object of `class_name`.
std::vector<std::string> FramesContaining(const LabelSet& labels,
                                          std::string_view class_name);
// Frames whose objects are all of `class_name` (and at least one).
std::vector<std::string> FramesContainingOnly(const LabelSet& labels,
                                              std::string_view class_name);

void MarkTargetOnlyFrames(SplitManifest& manifest, const LabelSet& labels,
                          std::string_view class_name);

// "# seed=<n> ratios=<a>,<b>,<c>" followed by "frame_id<TAB>bucket" lines
// in frame id order.
std::string SerializeManifest(const SplitManifest& manifest);
SplitManifest ParseManifest(std::string_view text);

}  // namespace occlbench

#endif  // OCCLBENCH_SPLIT_MANIFEST_H_
