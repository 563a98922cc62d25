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
#ifndef OCCLBENCH_PIPELINE_H_
#define OCCLBENCH_PIPELINE_H_

#include <filesystem>
#include <string>
#include <vector>

#include "occlbench/pipeline_config.h"

namespace occlbench {

struct PipelineSummaryRow {
  std::string variant;
  std::string model;
  double map = 0.0;
  double mean_confidence = 0.0;
};

struct PipelineResult {
  std::vector<PipelineSummaryRow> summary;
  // Paths relative to the output directory, sorted.
  std::vector<std::string> artifacts;
  std::vector<std::string> warnings;
};

// Runs the whole experiment: derived upper/lower labels, occluded and
// grayscale image variants, detections (simulated or read from
// detections_dir), evaluation, confidence series, difference statistics,
// cascade fusion, plots, and manifest.txt with the SHA-256 of every artifact.
//
// Output layout under output_dir:
//   config.txt
//   labels/{upper,lower}/            derived labels + DERIVED.txt
//   images/<variant>/                box, wall, gray, gray_box PNGs
//   detections/<variant>/<model>/    16-field files (simulated runs only)
//   eval/<variant>_<model>.csv       per-class AP tables
//   confidence/<variant>.csv         baseline,full,upper,lower per frame
//   stats.csv                        DiffStats per (variant, model)
//   cascade/<variant>/ + cascade/<variant>.csv
//   plots/<variant>_confidence.svg, plots/<variant>_difference.svg
//   summary.csv
//   manifest.txt
//
// Throws on any input error. Outputs are byte-identical across runs and
// independent of `jobs`.
PipelineResult RunPipeline(const PipelineConfig& config);

// "sha256  relative/path" lines for every regular file under `dir` except
// manifest.txt, sorted by path.
std::string BuildManifest(const std::filesystem::path& dir);

}  // namespace occlbench

#endif  // OCCLBENCH_PIPELINE_H_
