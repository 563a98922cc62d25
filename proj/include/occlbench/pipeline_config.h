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
#ifndef OCCLBENCH_PIPELINE_CONFIG_H_
#define OCCLBENCH_PIPELINE_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "occlbench/cascade.h"
#include "occlbench/eval_metrics.h"
#include "occlbench/occlusion_synth.h"

namespace occlbench {

// Parameters of the ground-truth perturbing stand-in detector.
struct SimulatedDetectorParams {
  double base_score_min = 0.70;
  double base_score_max = 0.98;
  // Score lost per unit of mean absolute pixel change inside the box.
  double corruption_weight = 1.5;
  double score_sigma = 0.02;
  // Box jitter, as a fraction of box width/height.
  double box_sigma = 0.03;
  // Detections scoring below this are dropped (missed objects).
  double score_floor = 0.05;
  double false_positive_rate = 0.1;
};

// Everything one pipeline run needs. Stored as a flat "key=value" file;
// relative paths resolve against the config file's directory.
struct PipelineConfig {
  std::filesystem::path dataset_root;
  std::string labels_dir = "labels";
  std::string images_dir = "images";
  // Empty: detections come from the simulated detector. Otherwise a
  // directory holding <variant>/<model>/<frame>.txt detection files.
  std::string detections_dir;
  std::string target_class = "Pedestrian";
  double iou_threshold = 0.5;
  PrMode ap_mode = PrMode::kConfidenceSweep;
  // Subset of box, wall, gray, gray_box; "original" is always evaluated.
  std::vector<std::string> variants = {"box", "wall", "gray", "gray_box"};
  std::filesystem::path box_texture;
  std::filesystem::path wall_texture;
  double box_width_factor = 1.0;
  double wall_width_factor = 1.5;
  ResizeFilter resize_filter = ResizeFilter::kBilinear;
  double lost_threshold = 0.5;
  CascadeParams cascade;
  SimulatedDetectorParams detector;
  std::filesystem::path output_dir;
  std::uint64_t seed = 7;
  int jobs = 1;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&);
};

// Canonical serialization: one "key=value" per line, fixed key order.
std::string SerializeConfig(const PipelineConfig& config);
// Unknown keys, malformed lines and bad values throw FormatError or
// ParseError. Lines starting with '#' and blank lines are ignored.
PipelineConfig ParseConfig(std::string_view text);

// Reads a config file, resolving relative paths against its directory.
PipelineConfig LoadConfig(const std::filesystem::path& path);

// Throws IoError when a referenced input path does not exist.
void CheckConfigPaths(const PipelineConfig& config);

}  // namespace occlbench

#endif  // OCCLBENCH_PIPELINE_CONFIG_H_
