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
#include "occlbench/pipeline.h"

#include <algorithm>
#include <array>
#include <map>

#include "occlbench/cascade.h"
#include "occlbench/confidence_analysis.h"
#include "occlbench/error.h"
#include "occlbench/eval_metrics.h"
#include "occlbench/hashing.h"
#include "occlbench/image.h"
#include "occlbench/kitti_io.h"
#include "occlbench/label_transform.h"
#include "occlbench/occlusion_synth.h"
#include "occlbench/parallel.h"
#include "occlbench/svg_plot.h"
#include "occlbench/synthetic.h"

namespace occlbench {
namespace {

namespace fs = std::filesystem;

constexpr std::array<BodyPart, 3> kParts = {BodyPart::kFull, BodyPart::kUpper,
                                            BodyPart::kLower};
constexpr std::string_view kManifestName = "manifest.txt";

// Detections per model for one image variant.
using ModelDetections = std::map<std::string, DetectionSet>;

Image MakeVariant(const std::string& variant, const Image& clean,
                  const LabelFrame& labels, const OverlaySpec& box,
                  const OverlaySpec& wall,
                  std::vector<CompositeWarning>* warnings) {
  if (variant == "original") return clean;
  if (variant == "box") return OccludeFrame(clean, labels, box, warnings);
  if (variant == "wall") return OccludeFrame(clean, labels, wall, warnings);
  if (variant == "gray") return ToGrayscale(clean);
  if (variant == "gray_box") {
    return ToGrayscale(OccludeFrame(clean, labels, box, warnings));
  }
  throw ArgumentError("unknown variant '" + variant + "'");
}

DetectionSet FilterClass(const DetectionSet& set, const std::string& cls) {
  DetectionSet out;
  for (const auto& [id, frame] : set) {
    DetectionFrame f;
    f.frame_id = id;
    for (const auto& d : frame.objects) {
      if (d.class_name == cls) f.objects.push_back(d);
    }
    out.emplace(id, std::move(f));
  }
  return out;
}

const std::vector<Detection>& DetsOf(const DetectionSet& set,
                                     const std::string& id) {
  static const std::vector<Detection> kEmpty;
  auto it = set.find(id);
  return it == set.end() ? kEmpty : it->second.objects;
}

void PrepareOutputDir(const fs::path& out) {
  if (fs::exists(out) && !fs::is_empty(out)) {
    if (!fs::exists(out / kManifestName)) {
      throw ArgumentError("output directory " + out.string() +
                          " is not empty and holds no previous run");
    }
    fs::remove_all(out);
  }
  fs::create_directories(out);
}

}  // namespace

std::string BuildManifest(const fs::path& dir) {
  std::vector<std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string rel = fs::relative(entry.path(), dir).generic_string();
    if (rel == kManifestName) continue;
    files.push_back(rel);
  }
  std::sort(files.begin(), files.end());
  std::string out;
  for (const auto& rel : files) {
    out += Sha256File(dir / rel) + "  " + rel + "\n";
  }
  return out;
}

PipelineResult RunPipeline(const PipelineConfig& config) {
  CheckConfigPaths(config);
  config.cascade.Validate();
  if (config.output_dir.empty()) throw ArgumentError("output_dir is not set");
  const fs::path out = config.output_dir;
  PrepareOutputDir(out);
  WriteTextFile(out / "config.txt", SerializeConfig(config));

  PipelineResult result;
  const std::string& cls = config.target_class;
  const fs::path labels_root = config.dataset_root / config.labels_dir;
  const fs::path images_root = config.dataset_root / config.images_dir;

  // Derived label sets.
  std::map<BodyPart, LabelSet> gt;
  gt[BodyPart::kFull] = ReadLabelDir(labels_root);
  for (BodyPart part : {BodyPart::kUpper, BodyPart::kLower}) {
    const fs::path dir = out / "labels" / std::string(BodyPartName(part));
    auto derived = DeriveLabelDir(labels_root, dir, part, cls);
    result.warnings.insert(result.warnings.end(), derived.warnings.begin(),
                           derived.warnings.end());
    gt[part] = ReadLabelDir(dir);
  }
  const LabelSet& gt_full = gt[BodyPart::kFull];
  std::vector<std::string> frame_ids;
  for (const auto& [id, f] : gt_full) frame_ids.push_back(id);

  std::vector<std::string> variants = {"original"};
  variants.insert(variants.end(), config.variants.begin(),
                  config.variants.end());

  OverlaySpec box_spec;
  OverlaySpec wall_spec;
  if (!config.box_texture.empty() && fs::exists(config.box_texture)) {
    box_spec.texture = ReadPng(config.box_texture);
  }
  if (!config.wall_texture.empty() && fs::exists(config.wall_texture)) {
    wall_spec.texture = ReadPng(config.wall_texture);
  }
  box_spec.kind = OcclusionKind::kBox;
  box_spec.width_factor = config.box_width_factor;
  box_spec.resize_filter = config.resize_filter;
  box_spec.target_class = cls;
  wall_spec.kind = OcclusionKind::kWall;
  wall_spec.width_factor = config.wall_width_factor;
  wall_spec.resize_filter = config.resize_filter;
  wall_spec.target_class = cls;

  const bool simulate = config.detections_dir.empty();

  // Per frame: image variants and, for simulated runs, detections. Slots are
  // indexed [frame][variant][part] so workers never share state.
  std::vector<std::vector<std::array<DetectionFrame, 3>>> simulated(
      frame_ids.size());
  std::vector<std::vector<std::string>> frame_warnings(frame_ids.size());
  ParallelFor(frame_ids.size(), config.jobs, [&](std::size_t i) {
    const std::string& id = frame_ids[i];
    const LabelFrame& labels = gt_full.at(id);
    const fs::path image_path = images_root / (id + ".png");
    if (!fs::exists(image_path)) {
      throw IoError("frame " + id + ": image missing: " + image_path.string());
    }
    const Image clean = ReadPng(image_path);
    simulated[i].resize(variants.size());
    for (std::size_t v = 0; v < variants.size(); ++v) {
      std::vector<CompositeWarning> warnings;
      const Image img =
          MakeVariant(variants[v], clean, labels, box_spec, wall_spec, &warnings);
      for (const auto& w : warnings) {
        frame_warnings[i].push_back(variants[v] + ": " + w.message);
      }
      if (variants[v] != "original") {
        WritePng(img, out / "images" / variants[v] / (id + ".png"));
      }
      if (!simulate) continue;
      for (std::size_t p = 0; p < kParts.size(); ++p) {
        simulated[i][v][p] = SimulateDetections(
            labels, kParts[p], clean, img, variants[v],
            config.detector, cls, config.seed);
      }
    }
  });
  for (auto& w : frame_warnings) {
    result.warnings.insert(result.warnings.end(), w.begin(), w.end());
  }

  std::map<std::string, ModelDetections> detections;
  for (std::size_t v = 0; v < variants.size(); ++v) {
    for (std::size_t p = 0; p < kParts.size(); ++p) {
      const std::string model(BodyPartName(kParts[p]));
      DetectionSet set;
      if (simulate) {
        for (std::size_t i = 0; i < frame_ids.size(); ++i) {
          set.emplace(frame_ids[i], simulated[i][v][p]);
        }
        WriteDetectionDir(set, out / "detections" / variants[v] / model);
      } else {
        set = ReadDetectionDir(fs::path(config.detections_dir) / variants[v] /
                               model);
      }
      detections[variants[v]][model] = FilterClass(set, cls);
    }
  }

  PrOptions pr;
  pr.iou_threshold = config.iou_threshold;
  pr.mode = config.ap_mode;
  const std::vector<std::string> classes = {cls};
  SeriesOptions series_options;
  series_options.class_name = cls;
  series_options.iou_threshold = config.iou_threshold;

  auto column = [&](const DetectionSet& dets, BodyPart part) {
    auto s = BuildSeries({{"x", dets}}, gt[part], series_options,
                         &result.warnings);
    return s.values.at("x");
  };
  const ConfidenceSeries frames_only =
      BuildSeries({}, gt_full, series_options, nullptr);
  const auto baseline =
      column(detections.at("original").at("full"), BodyPart::kFull);

  std::vector<StatsRow> stats_rows;
  std::string improvement_csv = "variant,lower_over_full,upper_over_full\n";
  for (const auto& variant : variants) {
    auto& models = detections.at(variant);

    // Cascade over the class-filtered detections of this variant.
    DetectionSet cascade_set;
    std::string sidecar = CascadeCsvHeader() + "\n";
    for (const auto& id : frame_ids) {
      const auto hyps = CascadeDecide(DetsOf(models.at("full"), id),
                                      DetsOf(models.at("upper"), id),
                                      DetsOf(models.at("lower"), id),
                                      config.cascade);
      for (const auto& h : hyps) sidecar += CascadeCsvRow(id, h) + "\n";
      cascade_set.emplace(id, HypothesesToFrame(id, hyps, cls));
    }
    WriteDetectionDir(cascade_set, out / "cascade" / variant);
    WriteTextFile(out / "cascade" / (variant + ".csv"), sidecar);
    models["cascade"] = std::move(cascade_set);

    ConfidenceSeries series = frames_only;
    auto add = [&series](const std::string& tag, std::vector<double> values) {
      series.model_tags.push_back(tag);
      series.values.emplace(tag, std::move(values));
    };
    add("baseline", baseline);
    for (BodyPart part : kParts) {
      const std::string model(BodyPartName(part));
      add(model, column(models.at(model), part));
    }
    add("cascade", column(models.at("cascade"), BodyPart::kFull));
    WriteTextFile(out / "confidence" / (variant + ".csv"), SeriesToCsv(series));

    for (const std::string model : {"full", "upper", "lower", "cascade"}) {
      const BodyPart part = model == "upper"   ? BodyPart::kUpper
                            : model == "lower" ? BodyPart::kLower
                                               : BodyPart::kFull;
      const EvalReport report = Evaluate(models.at(model), gt[part], pr, classes);
      WriteTextFile(out / "eval" / (variant + "_" + model + ".csv"),
                    EvalReportToCsv(report));
      result.summary.push_back({variant, model, report.map.value_or(0.0),
                                MeanConfidence(series, model)});
    }

    PlotOptions plot;
    plot.title = "Inherent confidence: " + variant;
    WriteTextFile(out / "plots" / (variant + "_confidence.svg"),
                  ConfidencePlotSvg(series, plot));
    if (variant != "original") {
      plot.title = "Confidence decrease (full body): " + variant;
      WriteTextFile(out / "plots" / (variant + "_difference.svg"),
                    DifferencePlotSvg(series, "baseline", "full",
                                      config.lost_threshold, plot));
      for (const std::string model : {"full", "upper", "lower", "cascade"}) {
        if (auto stats = ComputeDiffStats(series, "baseline", model,
                                          config.lost_threshold)) {
          stats_rows.push_back({"original/full", variant + "/" + model, *stats});
        }
      }
    }
    improvement_csv += variant + "," +
                       FormatNumber(ImprovementFraction(series, "lower", "full")) +
                       "," +
                       FormatNumber(ImprovementFraction(series, "upper", "full")) +
                       "\n";
  }
  WriteTextFile(out / "stats.csv", StatsToCsv(stats_rows));
  WriteTextFile(out / "improvement.csv", improvement_csv);

  std::string summary = "variant,model,map,mean_confidence\n";
  for (const auto& row : result.summary) {
    summary += row.variant + "," + row.model + "," + FormatNumber(row.map) +
               "," + FormatNumber(row.mean_confidence) + "\n";
  }
  WriteTextFile(out / "summary.csv", summary);

  const std::string manifest = BuildManifest(out);
  WriteTextFile(out / kManifestName, manifest);
  for (const auto& entry : fs::recursive_directory_iterator(out)) {
    if (entry.is_regular_file()) {
      result.artifacts.push_back(
          fs::relative(entry.path(), out).generic_string());
    }
  }
  std::sort(result.artifacts.begin(), result.artifacts.end());
  return result;
}

}  // namespace occlbench
