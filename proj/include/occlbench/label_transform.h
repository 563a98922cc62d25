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
#ifndef OCCLBENCH_LABEL_TRANSFORM_H_
#define OCCLBENCH_LABEL_TRANSFORM_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "occlbench/bounding_box.h"
#include "occlbench/kitti_io.h"

namespace occlbench {

enum class BodyPart { kFull, kUpper, kLower };

std::string_view BodyPartName(BodyPart part);
// Accepts "full", "upper", "lower". Throws ArgumentError otherwise.
BodyPart ParseBodyPart(std::string_view name);

// Cuts a box at its vertical midpoint top + (bottom - top) / 2, computed in
// real coordinates without rounding. Upper keeps the top half, Lower the
// bottom half, Full returns the box unchanged.
BoundingBox SplitBox(const BoundingBox& bbox, BodyPart part);

// Replaces the box of every `target_class` object with SplitBox(bbox, part).
// Truncation and occlusion flags pass through unchanged. Object order and
// all non-target objects are preserved exactly.
LabelFrame TransformFrame(const LabelFrame& frame, BodyPart part,
                          std::string_view target_class);

struct DeriveResult {
  std::size_t frames = 0;
  std::size_t transformed_objects = 0;
  std::vector<std::string> warnings;
};

// Materializes a derived label directory: reads every label file of
// `input_dir`, applies TransformFrame, and writes the results plus a
// DERIVED.txt provenance file (part, class, source path, source hash).
//
// Throws ArgumentError when `output_dir` exists and is non-empty and `force`
// is false, or when `input_dir` is itself a derived Upper/Lower directory
// (halving twice is not a valid dataset).
DeriveResult DeriveLabelDir(const std::filesystem::path& input_dir,
                            const std::filesystem::path& output_dir,
                            BodyPart part, std::string_view target_class,
                            bool force = false);

}  // namespace occlbench

#endif  // OCCLBENCH_LABEL_TRANSFORM_H_
