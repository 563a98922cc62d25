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
#ifndef OCCLBENCH_SYNTHETIC_H_
#define OCCLBENCH_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "occlbench/image.h"
#include "occlbench/kitti_io.h"
#include "occlbench/label_transform.h"
#include "occlbench/pipeline_config.h"

namespace occlbench {

// Procedural stand-ins for the KITTI images: a street-like background with
// rectangle-drawn pedestrians and cars, labelled in KITTI format.
struct SyntheticOptions {
  int frames = 20;
  int width = 320;
  int height = 160;
  std::uint64_t seed = 7;
};

struct SyntheticFrame {
  Image image;
  LabelFrame labels;
};

SyntheticFrame MakeSyntheticFrame(int index, const SyntheticOptions& options);

// Writes images/<id>.png and labels/<id>.txt under `root`, ids "000000"...
void WriteSyntheticDataset(const std::filesystem::path& root,
                           const SyntheticOptions& options);

// Cardboard-box and brick-wall occluder textures.
Image MakeBoxTexture(int width = 48, int height = 48);
Image MakeWallTexture(int width = 64, int height = 32);

// Mean absolute channel difference between two images inside `box`
// (rounded outward, clipped), scaled to [0, 1]. 0 for an empty region.
double RegionCorruption(const Image& clean, const Image& variant,
                        const BoundingBox& box);

// Stand-in detector built from ground truth: for each target-class object
// it reports the `part` box with jitter and a score that drops with the
// pixel corruption between `clean` and `variant` inside that box. Per-object
// base scores and box jitter depend only on (seed, frame, object, part), so
// the same object scores alike across image variants; `variant_tag` seeds
// the per-variant noise. Scores below the floor are dropped.
DetectionFrame SimulateDetections(const LabelFrame& groundtruth, BodyPart part,
                                  const Image& clean, const Image& variant,
                                  std::string_view variant_tag,
                                  const SimulatedDetectorParams& params,
                                  std::string_view target_class,
                                  std::uint64_t seed);

// Ground truth replayed as detections with a constant score.
DetectionFrame ReplayAsDetections(const LabelFrame& groundtruth,
                                  double score = 1.0);

}  // namespace occlbench

#endif  // OCCLBENCH_SYNTHETIC_H_
