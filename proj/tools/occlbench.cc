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
// Command-line front end: one subcommand per processing stage plus
// `pipeline`, which runs them all from a config file.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "occlbench/cascade.h"
#include "occlbench/confidence_analysis.h"
#include "occlbench/csv.h"
#include "occlbench/error.h"
#include "occlbench/eval_metrics.h"
#include "occlbench/image.h"
#include "occlbench/kitti_io.h"
#include "occlbench/label_transform.h"
#include "occlbench/occlusion_synth.h"
#include "occlbench/parallel.h"
#include "occlbench/pipeline.h"
#include "occlbench/pipeline_config.h"
#include "occlbench/split_manifest.h"
#include "occlbench/svg_plot.h"
#include "occlbench/synthetic.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace occlbench {
namespace {

void Warn(const std::string& message) {
  std::cerr << json{{"warning", message}}.dump() << "\n";
}

int DefaultJobs() {
  const char* env = std::getenv("OCCLBENCH_JOBS");
  if (env == nullptr || *env == '\0') return 1;
  int jobs = 0;
  const std::string_view text(env);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), jobs);
  if (ec != std::errc() || ptr != text.data() + text.size() || jobs < 1) {
    throw ArgumentError("OCCLBENCH_JOBS must be a positive integer, got '" +
                        std::string(text) + "'");
  }
  return jobs;
}

std::vector<std::string> ImageIds(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      ids.push_back(entry.path().stem().string());
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

// --- synth / textures ------------------------------------------------------

struct SynthArgs {
  fs::path out;
  SyntheticOptions options;
};

int RunSynth(const SynthArgs& a) {
  WriteSyntheticDataset(a.out, a.options);
  std::cout << "wrote " << a.options.frames << " frames to " << a.out.string()
            << "\n";
  return 0;
}

int RunTextures(const fs::path& out) {
  fs::create_directories(out);
  WritePng(MakeBoxTexture(), out / "box.png");
  WritePng(MakeWallTexture(), out / "wall.png");
  return 0;
}

// --- split / split-labels --------------------------------------------------

struct SplitArgs {
  fs::path labels;
  std::vector<double> ratios = {0.7, 0.1, 0.2};
  std::uint64_t seed = 7;
  std::string filter = "all";
  std::string class_name = "Pedestrian";
  fs::path out;
};

int RunSplit(const SplitArgs& a) {
  const LabelSet labels = ReadLabelDir(a.labels);
  std::vector<std::string> ids;
  if (a.filter == "all") {
    for (const auto& [id, frame] : labels) ids.push_back(id);
  } else if (a.filter == "containing") {
    ids = FramesContaining(labels, a.class_name);
  } else {
    ids = FramesContainingOnly(labels, a.class_name);
  }
  const SplitManifest manifest =
      MakeSplit(ids, {a.ratios[0], a.ratios[1], a.ratios[2]}, a.seed);
  const std::string text = SerializeManifest(manifest);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    WriteTextFile(a.out, text);
  }
  return 0;
}

struct SplitLabelsArgs {
  std::string part;
  std::string class_name = "Pedestrian";
  fs::path in;
  fs::path out;
  bool force = false;
};

int RunSplitLabels(const SplitLabelsArgs& a) {
  const auto result =
      DeriveLabelDir(a.in, a.out, ParseBodyPart(a.part), a.class_name, a.force);
  for (const auto& w : result.warnings) Warn(w);
  std::cout << json{{"frames", result.frames},
                    {"transformed_objects", result.transformed_objects}}
                   .dump()
            << "\n";
  return 0;
}

// --- occlude / grayscale ---------------------------------------------------

struct OccludeArgs {
  fs::path images;
  fs::path labels;
  std::string kind = "box";
  fs::path texture;
  double width_factor = 1.0;
  std::string filter = "bilinear";
  std::string class_name = "Pedestrian";
  bool gray = false;
  fs::path out;
  int jobs = 1;
};

int RunOcclude(const OccludeArgs& a) {
  OverlaySpec spec;
  spec.kind = ParseOcclusionKind(a.kind);
  spec.texture = ReadPng(a.texture);
  spec.width_factor = a.width_factor;
  spec.resize_filter = ParseResizeFilter(a.filter);
  spec.target_class = a.class_name;
  spec.Validate();

  const LabelSet labels = ReadLabelDir(a.labels);
  std::vector<std::string> ids;
  for (const auto& [id, frame] : labels) ids.push_back(id);
  for (const auto& id : ImageIds(a.images)) {
    if (!labels.contains(id)) Warn("frame " + id + ": image has no label file");
  }
  fs::create_directories(a.out);
  std::vector<std::vector<std::string>> warnings(ids.size());
  ParallelFor(ids.size(), a.jobs, [&](std::size_t i) {
    const fs::path src = a.images / (ids[i] + ".png");
    if (!fs::exists(src)) {
      warnings[i].push_back("frame " + ids[i] + ": label has no image");
      return;
    }
    std::vector<CompositeWarning> composite;
    Image out = OccludeFrame(ReadPng(src), labels.at(ids[i]), spec, &composite);
    if (a.gray) out = ToGrayscale(out);
    WritePng(out, a.out / (ids[i] + ".png"));
    for (const auto& w : composite) {
      warnings[i].push_back("frame " + ids[i] + ": " + w.message);
    }
  });
  for (const auto& list : warnings) {
    for (const auto& w : list) Warn(w);
  }
  return 0;
}

int RunGrayscale(const fs::path& in, const fs::path& out, int jobs) {
  const auto ids = ImageIds(in);
  fs::create_directories(out);
  ParallelFor(ids.size(), jobs, [&](std::size_t i) {
    WritePng(ToGrayscale(ReadPng(in / (ids[i] + ".png"))),
             out / (ids[i] + ".png"));
  });
  return 0;
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  fs::path gt;
  fs::path clean;
  fs::path images;
  std::string part = "full";
  std::string variant_tag = "original";
  std::string class_name = "Pedestrian";
  fs::path params;
  std::uint64_t seed = 7;
  bool replay = false;
  fs::path out;
};

int RunSimulate(const SimulateArgs& a) {
  const BodyPart part = ParseBodyPart(a.part);
  const SimulatedDetectorParams params =
      a.params.empty() ? SimulatedDetectorParams{} : LoadConfig(a.params).detector;
  const fs::path variant_dir = a.images.empty() ? a.clean : a.images;
  const LabelSet gt = ReadLabelDir(a.gt);
  DetectionSet out;
  if (a.replay) {
    for (const auto& [id, frame] : gt) out[id] = ReplayAsDetections(frame);
    WriteDetectionDir(out, a.out);
    return 0;
  }
  for (const auto& [id, frame] : gt) {
    const Image clean = ReadPng(a.clean / (id + ".png"));
    const Image variant = variant_dir == a.clean ? clean : ReadPng(variant_dir / (id + ".png"));
    out[id] = SimulateDetections(frame, part, clean, variant, a.variant_tag, params,
                                 a.class_name, a.seed);
  }
  WriteDetectionDir(out, a.out);
  return 0;
}

// --- eval / confidence / compare ---------------------------------------------

struct EvalArgs {
  fs::path dets;
  fs::path gt;
  std::vector<std::string> classes;
  double iou = 0.5;
  std::string mode = "confidence";
  fs::path out;
};

int RunEval(const EvalArgs& a) {
  PrOptions options;
  options.iou_threshold = a.iou;
  options.mode = ParsePrMode(a.mode);
  const EvalReport report =
      Evaluate(ReadDetectionDir(a.dets), ReadLabelDir(a.gt), options, a.classes);
  const std::string csv = EvalReportToCsv(report);
  if (!a.out.empty()) WriteTextFile(a.out, csv);
  for (const auto& [cls, r] : report.per_class) {
    std::cout << cls << " AP=" << (r.ap ? FormatNumber(*r.ap) : "nan") << "\n";
  }
  std::cout << "mAP=" << (report.map ? FormatNumber(*report.map) : "nan") << "\n";
  return 0;
}

struct SeriesArgs {
  std::vector<std::string> dets;  // tag=DIR
  fs::path gt;
  std::string class_name = "Pedestrian";
  double iou = 0.5;
  std::string aggregation = "max";
};

ConfidenceSeries LoadSeries(const SeriesArgs& a) {
  std::vector<std::pair<std::string, DetectionSet>> models;
  for (const auto& spec : a.dets) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ArgumentError("--dets entries must look like tag=DIR, got '" + spec + "'");
    }
    models.emplace_back(spec.substr(0, eq), ReadDetectionDir(spec.substr(eq + 1)));
  }
  SeriesOptions options;
  options.class_name = a.class_name;
  options.iou_threshold = a.iou;
  if (a.aggregation == "max") {
    options.aggregation = ConfidenceAggregation::kMax;
  } else if (a.aggregation == "mean") {
    options.aggregation = ConfidenceAggregation::kMean;
  } else {
    throw ArgumentError("unknown aggregation '" + a.aggregation + "'");
  }
  std::vector<std::string> warnings;
  ConfidenceSeries series = BuildSeries(models, ReadLabelDir(a.gt), options, &warnings);
  for (const auto& w : warnings) Warn(w);
  return series;
}

struct ConfidenceArgs {
  SeriesArgs series;
  fs::path out;
  fs::path plot;
  std::string sort_tag;
};

int RunConfidence(const ConfidenceArgs& a) {
  const ConfidenceSeries series = LoadSeries(a.series);
  const std::string csv = SeriesToCsv(series);
  if (a.out.empty()) {
    std::cout << csv;
  } else {
    WriteTextFile(a.out, csv);
  }
  if (!a.plot.empty()) {
    PlotOptions options;
    options.sort_tag = a.sort_tag.empty()
                           ? (series.HasTag("full") ? "full" : series.model_tags.front())
                           : a.sort_tag;
    WriteTextFile(a.plot, ConfidencePlotSvg(series, options));
  }
  for (const auto& tag : series.model_tags) {
    std::cerr << json{{"tag", tag}, {"mean_confidence", MeanConfidence(series, tag)}}.dump()
              << "\n";
  }
  return 0;
}

struct CompareArgs {
  fs::path baseline;
  fs::path variant;
  SeriesArgs series;
  double lost_threshold = kDefaultLostThreshold;
  fs::path out;
};

int RunCompare(CompareArgs a) {
  a.series.dets = {"baseline=" + a.baseline.string(), "variant=" + a.variant.string()};
  const ConfidenceSeries series = LoadSeries(a.series);
  const auto stats = ComputeDiffStats(series, "baseline", "variant", a.lost_threshold);
  if (!stats) throw ArgumentError("no frames contain " + a.series.class_name);
  const std::string csv = StatsToCsv({{"baseline", "variant", *stats}});
  std::cout << csv;
  if (!a.out.empty()) {
    fs::create_directories(a.out);
    WriteTextFile(a.out / "stats.csv", csv);
    WriteTextFile(a.out / "confidence.csv", SeriesToCsv(series));
    PlotOptions options;
    options.sort_tag = "variant";
    WriteTextFile(a.out / "difference.svg",
                  DifferencePlotSvg(series, "baseline", "variant", a.lost_threshold,
                                    options));
  }
  return 0;
}

// --- cascade -------------------------------------------------------------------

struct CascadeArgs {
  fs::path full;
  fs::path upper;
  fs::path lower;
  fs::path params;
  std::string class_name = "Pedestrian";
  fs::path out;
};

std::vector<Detection> ClassDets(const DetectionSet& set, const std::string& id,
                                 const std::string& cls) {
  std::vector<Detection> out;
  if (auto it = set.find(id); it != set.end()) {
    for (const auto& d : it->second.objects) {
      if (d.class_name == cls) out.push_back(d);
    }
  }
  return out;
}

int RunCascade(const CascadeArgs& a) {
  const CascadeParams params =
      a.params.empty() ? CascadeParams{} : LoadConfig(a.params).cascade;
  params.Validate();
  const DetectionSet full = ReadDetectionDir(a.full);
  const DetectionSet upper = ReadDetectionDir(a.upper);
  const DetectionSet lower = ReadDetectionDir(a.lower);
  std::vector<std::string> ids;
  for (const auto* set : {&full, &upper, &lower}) {
    for (const auto& [id, frame] : *set) ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  DetectionSet out;
  std::string sidecar = CascadeCsvHeader() + "\n";
  std::size_t gated = 0;
  for (const auto& id : ids) {
    const auto hyps = CascadeDecide(ClassDets(full, id, a.class_name),
                                    ClassDets(upper, id, a.class_name),
                                    ClassDets(lower, id, a.class_name), params);
    for (const auto& h : hyps) {
      sidecar += CascadeCsvRow(id, h) + "\n";
      gated += h.gated;
    }
    out[id] = HypothesesToFrame(id, hyps, a.class_name);
  }
  WriteDetectionDir(out, a.out);
  WriteTextFile(a.out / "cascade.csv", sidecar);
  std::cout << json{{"frames", ids.size()}, {"gated_hypotheses", gated}}.dump() << "\n";
  return 0;
}

// --- plot ------------------------------------------------------------------------

struct PlotArgs {
  fs::path csv;
  std::string kind = "confidence";
  std::string baseline = "baseline";
  std::string variant = "full";
  std::string sort_tag = "full";
  std::string title;
  double lost_threshold = kDefaultLostThreshold;
  fs::path out;
};

int RunPlot(const PlotArgs& a) {
  const ConfidenceSeries series = SeriesFromCsv(ReadTextFile(a.csv));
  PlotOptions options;
  options.title = a.title;
  options.sort_tag = a.sort_tag;
  if (a.kind == "confidence") {
    WriteTextFile(a.out, ConfidencePlotSvg(series, options));
  } else {
    options.sort_tag = a.variant;
    WriteTextFile(a.out, DifferencePlotSvg(series, a.baseline, a.variant,
                                           a.lost_threshold, options));
  }
  return 0;
}

// --- pipeline ---------------------------------------------------------------------

struct PipelineArgs {
  fs::path config;
  fs::path out;
  std::optional<int> jobs;
};

int RunPipelineCommand(const PipelineArgs& a) {
  PipelineConfig config = LoadConfig(a.config);
  if (!a.out.empty()) config.output_dir = fs::absolute(a.out);
  if (a.jobs) {
    config.jobs = *a.jobs;
  } else if (std::getenv("OCCLBENCH_JOBS") != nullptr) {
    config.jobs = DefaultJobs();
  }
  const PipelineResult result = RunPipeline(config);
  for (const auto& w : result.warnings) Warn(w);
  std::cout << "variant,model,map,mean_confidence\n";
  for (const auto& row : result.summary) {
    std::cout << row.variant << "," << row.model << "," << FormatNumber(row.map) << ","
              << FormatNumber(row.mean_confidence) << "\n";
  }
  return 0;
}

std::string ErrorType(const std::exception& e) {
  if (dynamic_cast<const FormatError*>(&e)) return "format";
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  if (dynamic_cast<const GeometryError*>(&e)) return "geometry";
  if (dynamic_cast<const ArgumentError*>(&e)) return "argument";
  if (dynamic_cast<const IoError*>(&e)) return "io";
  if (dynamic_cast<const fs::filesystem_error*>(&e)) return "io";
  return "internal";
}

int Main(int argc, char** argv) {
  CLI::App app{"Occlusion robustness benchmark for pedestrian detectors"};
  app.require_subcommand(1);
  std::function<int()> action;

  SynthArgs synth;
  auto* cmd = app.add_subcommand("synth", "Write the procedural street dataset");
  cmd->add_option("--out", synth.out, "Dataset root")->required();
  cmd->add_option("--frames", synth.options.frames)->check(CLI::PositiveNumber);
  cmd->add_option("--width", synth.options.width)->check(CLI::PositiveNumber);
  cmd->add_option("--height", synth.options.height)->check(CLI::PositiveNumber);
  cmd->add_option("--seed", synth.options.seed);
  cmd->callback([&] { action = [&] { return RunSynth(synth); }; });

  fs::path textures_out;
  cmd = app.add_subcommand("textures", "Write box.png and wall.png occluder textures");
  cmd->add_option("--out", textures_out)->required();
  cmd->callback([&] { action = [&] { return RunTextures(textures_out); }; });

  SplitArgs split;
  cmd = app.add_subcommand("split", "Write a train/test/validation manifest");
  cmd->add_option("--labels", split.labels)->required()->check(CLI::ExistingDirectory);
  cmd->add_option("--ratios", split.ratios, "train,test,validation")
      ->delimiter(',')
      ->expected(3);
  cmd->add_option("--seed", split.seed);
  cmd->add_option("--filter", split.filter)
      ->check(CLI::IsMember({"all", "containing", "only"}));
  cmd->add_option("--class", split.class_name);
  cmd->add_option("--out", split.out);
  cmd->callback([&] { action = [&] { return RunSplit(split); }; });

  SplitLabelsArgs split_labels;
  cmd = app.add_subcommand("split-labels", "Derive upper or lower half-body labels");
  cmd->add_option("--part", split_labels.part)
      ->required()
      ->check(CLI::IsMember({"upper", "lower"}));
  cmd->add_option("--class", split_labels.class_name);
  cmd->add_option("--in", split_labels.in)->required()->check(CLI::ExistingDirectory);
  cmd->add_option("--out", split_labels.out)->required();
  cmd->add_flag("--force", split_labels.force, "Overwrite a non-empty output");
  cmd->callback([&] { action = [&] { return RunSplitLabels(split_labels); }; });

  OccludeArgs occlude;
  cmd = app.add_subcommand("occlude", "Paste box or wall occluders onto pedestrians");
  cmd->add_option("--images", occlude.images)->required()->check(CLI::ExistingDirectory);
  cmd->add_option("--labels", occlude.labels)->required()->check(CLI::ExistingDirectory);
  cmd->add_option("--kind", occlude.kind)->check(CLI::IsMember({"box", "wall"}));
  cmd->add_option("--texture", occlude.texture)->required()->check(CLI::ExistingFile);
  cmd->add_option("--width-factor", occlude.width_factor)->check(CLI::PositiveNumber);
  cmd->add_option("--filter", occlude.filter)
      ->check(CLI::IsMember({"nearest", "bilinear"}));
  cmd->add_option("--class", occlude.class_name);
  cmd->add_flag("--gray", occlude.gray, "Convert to grayscale after occluding");
  cmd->add_option("--out", occlude.out)->required();
  cmd->add_option("--jobs", occlude.jobs)->check(CLI::PositiveNumber);
  cmd->callback([&] { action = [&] { return RunOcclude(occlude); }; });

  fs::path gray_in, gray_out;
  int gray_jobs = 1;
  cmd = app.add_subcommand("grayscale", "Convert every PNG in a directory to gray");
  cmd->add_option("--in", gray_in)->required()->check(CLI::ExistingDirectory);
  cmd->add_option("--out", gray_out)->required();
  cmd->add_option("--jobs", gray_jobs)->check(CLI::PositiveNumber);
  cmd->callback([&] { action = [&] { return RunGrayscale(gray_in, gray_out, gray_jobs); }; });

  SimulateArgs simulate;
  cmd = app.add_subcommand("simulate", "Noise-perturbed ground-truth detector");
  cmd->add_option("--gt", simulate.gt)->required()->check(CLI::ExistingDirectory);
  cmd->add_option("--clean", simulate.clean, "Unmodified images")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmd->add_option("--images", simulate.images, "Images to score (default: --clean)")
      ->check(CLI::ExistingDirectory);
  cmd->add_option("--part", simulate.part)
      ->check(CLI::IsMember({"full", "upper", "lower"}));
  cmd->add_option("--variant-tag", simulate.variant_tag);
  cmd->add_option("--class", simulate.class_name);
  cmd->add_option("--params", simulate.params, "Config file with detector.* keys")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", simulate.seed);
  cmd->add_flag("--replay", simulate.replay, "Emit the ground truth with score 1.0");
  cmd->add_option("--out", simulate.out)->required();
  cmd->callback([&] { action = [&] { return RunSimulate(simulate); }; });

  EvalArgs eval;
  cmd = app.add_subcommand("eval", "Per-class AP and mAP");
  cmd->add_option("--dets", eval.dets)->required()->check(CLI::ExistingDirectory);
  cmd->add_option("--gt", eval.gt)->required()->check(CLI::ExistingDirectory);
  cmd->add_option("--class", eval.classes, "Repeatable; default every class");
  cmd->add_option("--iou", eval.iou);
  cmd->add_option("--mode", eval.mode)->check(CLI::IsMember({"confidence", "iou"}));
  cmd->add_option("--out", eval.out, "CSV report");
  cmd->callback([&] { action = [&] { return RunEval(eval); }; });

  const auto add_series_options = [](CLI::App* c, SeriesArgs& s) {
    c->add_option("--gt", s.gt)->required()->check(CLI::ExistingDirectory);
    c->add_option("--class", s.class_name);
    c->add_option("--iou", s.iou);
    c->add_option("--aggregation", s.aggregation)->check(CLI::IsMember({"max", "mean"}));
  };

  ConfidenceArgs confidence;
  cmd = app.add_subcommand("confidence", "Per-frame confidence table");
  cmd->add_option("--dets", confidence.series.dets, "tag=DIR,...")
      ->required()
      ->delimiter(',');
  add_series_options(cmd, confidence.series);
  cmd->add_option("--out", confidence.out, "CSV table");
  cmd->add_option("--plot", confidence.plot, "SVG scatter plot");
  cmd->add_option("--sort-tag", confidence.sort_tag);
  cmd->callback([&] { action = [&] { return RunConfidence(confidence); }; });

  CompareArgs compare;
  cmd = app.add_subcommand("compare", "Confidence difference statistics");
  cmd->add_option("--baseline", compare.baseline)->required()->check(CLI::ExistingDirectory);
  cmd->add_option("--variant", compare.variant)->required()->check(CLI::ExistingDirectory);
  add_series_options(cmd, compare.series);
  cmd->add_option("--lost-threshold", compare.lost_threshold);
  cmd->add_option("--out", compare.out, "Directory for stats, table and plot");
  cmd->callback([&] { action = [&] { return RunCompare(compare); }; });

  CascadeArgs cascade;
  cmd = app.add_subcommand("cascade", "Fuse full, upper and lower detections");
  cmd->add_option("--full", cascade.full)->required()->check(CLI::ExistingDirectory);
  cmd->add_option("--upper", cascade.upper)->required()->check(CLI::ExistingDirectory);
  cmd->add_option("--lower", cascade.lower)->required()->check(CLI::ExistingDirectory);
  cmd->add_option("--params", cascade.params, "Config file with cascade.* keys")
      ->check(CLI::ExistingFile);
  cmd->add_option("--class", cascade.class_name);
  cmd->add_option("--out", cascade.out)->required();
  cmd->callback([&] { action = [&] { return RunCascade(cascade); }; });

  PlotArgs plot;
  cmd = app.add_subcommand("plot", "Render an SVG from a confidence CSV");
  cmd->add_option("--csv", plot.csv)->required()->check(CLI::ExistingFile);
  cmd->add_option("--kind", plot.kind)->check(CLI::IsMember({"confidence", "difference"}));
  cmd->add_option("--baseline", plot.baseline);
  cmd->add_option("--variant", plot.variant);
  cmd->add_option("--sort-tag", plot.sort_tag);
  cmd->add_option("--title", plot.title);
  cmd->add_option("--lost-threshold", plot.lost_threshold);
  cmd->add_option("--out", plot.out)->required();
  cmd->callback([&] { action = [&] { return RunPlot(plot); }; });

  PipelineArgs pipeline;
  cmd = app.add_subcommand("pipeline", "Run every stage from a config file");
  cmd->add_option("--config", pipeline.config)->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", pipeline.out, "Overrides output_dir");
  cmd->add_option("--jobs", pipeline.jobs, "Default: OCCLBENCH_JOBS or the config")
      ->check(CLI::PositiveNumber);
  cmd->callback([&] { action = [&] { return RunPipelineCommand(pipeline); }; });

  const int default_jobs = DefaultJobs();
  occlude.jobs = default_jobs;
  gray_jobs = default_jobs;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  }
  return action();
}

}  // namespace
}  // namespace occlbench

int main(int argc, char** argv) {
  try {
    return occlbench::Main(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"type", occlbench::ErrorType(e)}, {"message", e.what()}}}}
                     .dump()
              << "\n";
    return 1;
  }
}
